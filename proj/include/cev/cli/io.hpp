#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "cev/asymptotics/budget.hpp"
#include "cev/core/vectors.hpp"
#include "cev/mixtures/mixture.hpp"
#include "cev/mixtures/npmle.hpp"
#include "cev/mixtures/summary.hpp"
#include "cev/procedures/result.hpp"
#include "cev/simbench/scenario.hpp"

namespace cev::io {

enum class Format { raw_matrix, summary_stats, values };

struct ValuesColumn {
  Eigen::VectorXd values;
  std::optional<NullMask> null_mask;
};

// values: header `value` with optional `is_null` (0/1).
// summary_stats: header `xbar,s2,sigma_hat2,n`.
// raw_matrix: a header naming n columns, then one row per hypothesis.
using Ingested = std::variant<TestingProblem, std::vector<SummaryStats>, ValuesColumn>;
Ingested ingest_data(const std::filesystem::path& path, Format format);

ValuesColumn read_values(const std::filesystem::path& path);
EVector read_evalues(const std::filesystem::path& path);
PVector read_pvalues(const std::filesystem::path& path);
std::vector<SummaryStats> read_summary(const std::filesystem::path& path);
TestingProblem read_raw_matrix(const std::filesystem::path& path);

// Summary statistics recomputed from the raw matrix must agree with the
// summary file to 1e-9 relative.
TestingProblem read_problem(const std::optional<std::filesystem::path>& raw,
                            const std::optional<std::filesystem::path>& summary);

std::string values_csv(const Eigen::VectorXd& values,
                       const std::optional<NullMask>& null_mask);
std::string summary_csv(const std::vector<SummaryStats>& stats);

// {"rejected": [1-based...], "R": ..., "k_star": ..., "F": ...}
std::string result_json(const ProcedureResult& result);
ProcedureResult parse_result_json(const std::string& text);
// index,value,rejected with 1-based index.
std::string result_csv(const ProcedureResult& result, const Eigen::VectorXd& values);

// {"support": [...], "weights": [...], "loglik": ..., "gap": ...}
std::string mixture_json(const DiscreteMixture& G, std::optional<double> loglik,
                         std::optional<double> gap);
DiscreteMixture parse_mixture_json(const std::string& text);
DiscreteMixture read_mixture(const std::filesystem::path& path);
std::string mixture_csv(const DiscreteMixture& G);

std::string budget_json(const BudgetEstimate& b,
                        const std::vector<ApproxBudget>& approx = {});

std::string read_text(const std::filesystem::path& path);
void write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace cev::io
