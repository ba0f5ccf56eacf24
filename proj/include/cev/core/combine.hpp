#pragma once

#include <Eigen/Core>
#include <span>

#include "cev/core/vectors.hpp"

namespace cev {

// Weighted average of compound e-vectors; weights must sum to 1.
EVector convex_combine(std::span<const EVector> vectors,
                       std::span<const double> weights);

// Requires sum(w) <= K.
EVector apply_weights(const EVector& e, const Eigen::VectorXd& w);
PVector apply_weights(const PVector& p, const Eigen::VectorXd& w);

class ApproxBudget {
 public:
  ApproxBudget(double epsilon, double delta);
  double epsilon() const noexcept { return epsilon_; }
  double delta() const noexcept { return delta_; }

 private:
  double epsilon_;
  double delta_;
};

// (eps, delta) -> (0, (eps + delta) / (1 + eps)).
ApproxBudget epsilon_to_delta(const ApproxBudget& b);

}  // namespace cev
