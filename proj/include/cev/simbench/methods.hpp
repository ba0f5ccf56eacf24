#pragma once

#include <Eigen/Core>
#include <optional>
#include <string>
#include <vector>

#include "cev/core/vectors.hpp"
#include "cev/mixtures/localization.hpp"
#include "cev/mixtures/npmle.hpp"
#include "cev/mixtures/universal.hpp"
#include "cev/procedures/result.hpp"
#include "cev/simbench/scenario.hpp"

namespace cev {

enum class Method { z_oracle, eb_oracle, eb, cui, ttest, ui };

const std::vector<Method>& all_methods();
std::string to_string(Method m);
Method parse_method(const std::string& text);

struct MethodSettings {
  double grid_lo = kDefaultGridLo;
  double grid_hi = kDefaultGridHi;
  Eigen::Index grid_size = kDefaultGridSize;
  double cui_delta = 0.01;
  std::size_t constraint_points = 50;
  NpmleOptions npmle;
};

// Per-replication fits shared by the data-driven methods.
struct ReplicationArtifacts {
  Eigen::VectorXd grid;
  std::optional<NpmleFit> npmle;
  std::optional<Localization> localization;
  std::optional<CuiSolver> cui;
  bool cui_infeasible = false;
};

ReplicationArtifacts fit_artifacts(const TestingProblem& problem,
                                   const std::vector<Method>& methods,
                                   const MethodSettings& settings);

EVector method_evalues(Method method, const TestingProblem& problem,
                       const Scenario& s, ReplicationArtifacts& artifacts);

// e-BH at level alpha (alpha - delta for CUI). When the localization LP is
// infeasible, CUI falls back to the UI e-values.
ProcedureResult run_method(Method method, const TestingProblem& problem,
                           const Scenario& s, ReplicationArtifacts& artifacts,
                           const MethodSettings& settings);

}  // namespace cev
