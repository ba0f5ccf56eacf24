#include "cev/asymptotics/clt.hpp"

#include <cmath>

#include "cev/core/errors.hpp"

namespace cev {

namespace {

double studentized(const SummaryStats& stats, bool use_sigma_hat) {
  const double scale2 = use_sigma_hat ? stats.sigma_hat2 : stats.s2;
  if (!(scale2 > 0.0)) {
    throw DegenerateSampleError("studentizing scale is zero");
  }
  return std::sqrt(static_cast<double>(stats.n)) * stats.xbar / std::sqrt(scale2);
}

}  // namespace

double clt_evalue(const SummaryStats& stats, double lambda, bool symmetric,
                  bool use_sigma_hat) {
  const double t = studentized(stats, use_sigma_hat);
  const double up = std::exp(lambda * t - 0.5 * lambda * lambda);
  if (!symmetric) return up;
  return 0.5 * up + 0.5 * std::exp(-lambda * t - 0.5 * lambda * lambda);
}

double mixture_clt_evalue(const SummaryStats& stats,
                          const DiscreteMixture& lambda_mixture,
                          bool use_sigma_hat) {
  const double t = studentized(stats, use_sigma_hat);
  double e = 0.0;
  for (Eigen::Index l = 0; l < lambda_mixture.size(); ++l) {
    const double lambda = lambda_mixture.support()[l];
    e += lambda_mixture.weights()[l] * std::exp(lambda * t - 0.5 * lambda * lambda);
  }
  return e;
}

EVector sum_of_squares_compound(std::span<const SummaryStats> stats) {
  if (stats.empty()) throw ShapeError("sum-of-squares construction needs K >= 1");
  double total = 0.0;
  for (const auto& s : stats) total += s.sigma_hat2;
  if (!(total > 0.0)) {
    throw DegenerateSampleError("all sample variances are zero");
  }
  const auto K = static_cast<double>(stats.size());
  Eigen::VectorXd e(static_cast<Eigen::Index>(stats.size()));
  for (std::size_t k = 0; k < stats.size(); ++k) {
    e[static_cast<Eigen::Index>(k)] = K * stats[k].s2 / total;
  }
  return EVector(std::move(e));
}

}  // namespace cev
