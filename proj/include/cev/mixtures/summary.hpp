#pragma once

#include <Eigen/Core>

namespace cev {

// Sufficient statistics of one group of n observations.
struct SummaryStats {
  double xbar = 0.0;
  double s2 = 0.0;          // mean of squares
  double sigma_hat2 = 0.0;  // unbiased sample variance
  int n = 0;

  static SummaryStats from_sample(const Eigen::Ref<const Eigen::VectorXd>& x);

  // Validates n >= 2, s2 >= 0, sigma_hat2 >= 0 and
  // n s2 = (n - 1) sigma_hat2 + n xbar^2 to 1e-9 relative.
  static SummaryStats checked(double xbar, double s2, double sigma_hat2, int n);

  int dof() const noexcept { return n - 1; }

  // sqrt(n) xbar / sigma_hat; throws DegenerateSampleError if sigma_hat2 = 0.
  double t_statistic() const;
};

}  // namespace cev
