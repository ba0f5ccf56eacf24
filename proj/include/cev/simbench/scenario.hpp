#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cev/core/vectors.hpp"
#include "cev/mixtures/summary.hpp"

namespace cev {

enum class VarianceMode {
  constant,  // every variance is 1
  uniform,   // variances iid Unif[0.5, 2]
};

std::string to_string(VarianceMode mode);
VarianceMode parse_variance_mode(const std::string& text);

// One cell of the simultaneous t-test study. The first n_nulls hypotheses
// are null; the rest have standardized effect xi / sqrt(n).
struct Scenario {
  int K = 500;
  int n = 5;
  int n_nulls = 450;
  double xi = 4.0;
  VarianceMode variance_mode = VarianceMode::uniform;
  double alpha = 0.1;
  int reps = 50;
  std::uint64_t seed = 0;

  void validate() const;
  double effect() const;  // xi / sqrt(n)
  std::string id() const;
};

// K groups of n observations with their summary statistics and, when
// simulated, the truth.
struct TestingProblem {
  Eigen::MatrixXd data;  // K x n
  std::vector<SummaryStats> stats;
  std::optional<NullMask> null_mask;
  std::optional<Eigen::VectorXd> true_sigma2;
  int rep = 0;

  Index K() const noexcept { return static_cast<Index>(stats.size()); }
  int n() const noexcept { return static_cast<int>(data.cols()); }
  std::vector<double> sigma_hat2() const;

  static TestingProblem from_matrix(Eigen::MatrixXd data);
};

// Deterministic in (seed, rep); scenarios sharing a seed share the
// underlying noise and variances.
TestingProblem generate_scenario_data(const Scenario& s, int rep);

}  // namespace cev
