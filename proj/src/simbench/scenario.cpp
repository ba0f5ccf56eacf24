#include "cev/simbench/scenario.hpp"

#include <cmath>
#include <string>

#include "cev/asymptotics/rng.hpp"
#include "cev/core/errors.hpp"
#include "cev/core/format.hpp"

namespace cev {

std::string to_string(VarianceMode mode) {
  return mode == VarianceMode::constant ? "constant" : "uniform";
}

VarianceMode parse_variance_mode(const std::string& text) {
  if (text == "constant") return VarianceMode::constant;
  if (text == "uniform") return VarianceMode::uniform;
  throw ConfigError("unknown variance mode '" + text + "' (expected constant or uniform)");
}

void Scenario::validate() const {
  if (K < 1) throw ConfigError("scenario needs K >= 1");
  if (n < 3) throw ConfigError("scenario needs n >= 3");
  if (n_nulls < 0 || n_nulls > K) throw ConfigError("scenario needs 0 <= n_nulls <= K");
  if (!(alpha > 0.0 && alpha < 1.0)) throw ConfigError("scenario alpha must lie in (0, 1)");
  if (reps < 1) throw ConfigError("scenario needs reps >= 1");
  if (!std::isfinite(xi)) throw ConfigError("effect size must be finite");
}

double Scenario::effect() const { return xi / std::sqrt(static_cast<double>(n)); }

std::string Scenario::id() const {
  return "K" + std::to_string(K) + "_n" + std::to_string(n) + "_" +
         to_string(variance_mode) + "_xi" + format_double(xi);
}

std::vector<double> TestingProblem::sigma_hat2() const {
  std::vector<double> out;
  out.reserve(stats.size());
  for (const auto& s : stats) out.push_back(s.sigma_hat2);
  return out;
}

TestingProblem TestingProblem::from_matrix(Eigen::MatrixXd data) {
  if (data.rows() < 1 || data.cols() < 2) {
    throw ShapeError("data matrix needs K >= 1 rows and n >= 2 columns");
  }
  TestingProblem p;
  p.stats.reserve(static_cast<std::size_t>(data.rows()));
  for (Index k = 0; k < data.rows(); ++k) {
    p.stats.push_back(SummaryStats::from_sample(data.row(k).transpose()));
  }
  p.data = std::move(data);
  return p;
}

TestingProblem generate_scenario_data(const Scenario& s, int rep) {
  s.validate();
  RngStream rng(s.seed, static_cast<std::uint64_t>(rep));
  Eigen::VectorXd sigma2(s.K);
  for (Index k = 0; k < s.K; ++k) {
    sigma2[k] = s.variance_mode == VarianceMode::constant ? 1.0 : rng.uniform(0.5, 2.0);
  }
  Eigen::MatrixXd data(s.K, s.n);
  const double effect = s.effect();
  NullMask nulls(s.K);
  for (Index k = 0; k < s.K; ++k) {
    nulls[k] = k < s.n_nulls;
    const double sigma = std::sqrt(sigma2[k]);
    const double mean = nulls[k] ? 0.0 : effect * sigma;
    for (Index i = 0; i < s.n; ++i) data(k, i) = mean + sigma * rng.normal();
  }
  TestingProblem p = TestingProblem::from_matrix(std::move(data));
  p.null_mask = std::move(nulls);
  p.true_sigma2 = std::move(sigma2);
  p.rep = rep;
  return p;
}

}  // namespace cev
