#include "cev/mixtures/summary.hpp"

#include <cmath>
#include <string>

#include "cev/core/errors.hpp"

namespace cev {

SummaryStats SummaryStats::from_sample(
    const Eigen::Ref<const Eigen::VectorXd>& x) {
  if (x.size() < 2) throw DomainError("summary statistics need n >= 2");
  if (!x.allFinite()) throw DomainError("sample contains a non-finite value");
  SummaryStats s;
  s.n = static_cast<int>(x.size());
  s.xbar = x.mean();
  s.s2 = x.squaredNorm() / s.n;
  s.sigma_hat2 = (x.array() - s.xbar).square().sum() / (s.n - 1);
  return s;
}

SummaryStats SummaryStats::checked(double xbar, double s2, double sigma_hat2,
                                   int n) {
  if (n < 2) throw DomainError("summary statistics need n >= 2");
  if (!std::isfinite(xbar) || !std::isfinite(s2) || !std::isfinite(sigma_hat2)) {
    throw DomainError("summary statistics must be finite");
  }
  if (s2 < 0.0 || sigma_hat2 < 0.0) {
    throw DomainError("second moment and variance must be nonnegative");
  }
  const double lhs = n * s2;
  const double rhs = (n - 1) * sigma_hat2 + n * xbar * xbar;
  if (std::abs(lhs - rhs) > 1e-9 * std::max({std::abs(lhs), std::abs(rhs), 1e-300})) {
    throw DomainError("summary statistics violate n s2 = (n - 1) sigma_hat2 + n xbar^2: " +
                      std::to_string(lhs) + " vs " + std::to_string(rhs));
  }
  return SummaryStats{xbar, s2, sigma_hat2, n};
}

double SummaryStats::t_statistic() const {
  if (!(sigma_hat2 > 0.0)) {
    throw DegenerateSampleError("t statistic undefined for zero sample variance");
  }
  return std::sqrt(static_cast<double>(n)) * xbar / std::sqrt(sigma_hat2);
}

}  // namespace cev
