#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "cev/procedures/result.hpp"
#include "cev/simbench/methods.hpp"
#include "cev/simbench/scenario.hpp"

namespace cev {

struct MethodResult {
  Method method = Method::eb;
  double fdr = 0.0;
  double power = 0.0;
  double fdr_se = 0.0;
  double power_se = 0.0;
};

// Means over replications of F / (R v 1) and of true discoveries divided by
// the configured number of non-nulls, with standard errors.
MethodResult estimate_fdr_power(Method method,
                                std::span<const ProcedureResult> results,
                                const Scenario& s, bool want_power = true);

struct ScenarioResult {
  Scenario scenario;
  std::vector<MethodResult> methods;
  std::vector<std::vector<ProcedureResult>> replicates;  // [method][rep]
  int cui_fallbacks = 0;

  const MethodResult& result(Method m) const;
};

struct StudyOptions {
  std::vector<Method> methods = all_methods();
  MethodSettings settings;
  int threads = 1;
};

std::vector<ScenarioResult> run_study(std::span<const Scenario> scenarios,
                                      const StudyOptions& options = {});

// Grid over n in {5, 10}, both variance modes and the given effect sizes.
std::vector<Scenario> desk_scenarios(std::uint64_t seed, bool full_scale,
                                     std::vector<double> xis = {2, 3, 4, 5, 6});

void write_results_csv(std::ostream& out, std::span<const ScenarioResult> results);
void write_plot_data(std::ostream& out, std::span<const ScenarioResult> results);

inline constexpr const char* kResultsHeader =
    "scenario_id,K,n,variance_mode,xi,alpha,method,fdr,fdr_se,power,power_se";

}  // namespace cev
