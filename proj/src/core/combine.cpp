#include "cev/core/combine.hpp"

#include <cmath>
#include <string>

#include "cev/core/extended.hpp"

namespace cev {

namespace {

void check_weights(const Eigen::VectorXd& w, Index K) {
  if (w.size() != K) {
    throw ShapeError("weight vector has length " + std::to_string(w.size()) +
                     ", expected " + std::to_string(K));
  }
  double total = 0.0;
  for (Index k = 0; k < K; ++k) {
    total += ext::require_nonnegative(w[k], "weight");
  }
  if (std::isinf(total) || total > static_cast<double>(K) * (1.0 + 1e-12)) {
    throw ConfigError("weights sum to " + std::to_string(total) +
                      ", exceeding K = " + std::to_string(K));
  }
}

}  // namespace

EVector convex_combine(std::span<const EVector> vectors,
                       std::span<const double> weights) {
  if (vectors.empty()) throw ConfigError("convex_combine needs at least one vector");
  if (vectors.size() != weights.size()) {
    throw ShapeError("convex_combine: " + std::to_string(vectors.size()) +
                     " vectors but " + std::to_string(weights.size()) +
                     " weights");
  }
  double total = 0.0;
  for (double w : weights) total += ext::require_nonnegative(w, "weight");
  if (std::abs(total - 1.0) > 1e-12) {
    throw ConfigError("convex weights sum to " + std::to_string(total) +
                      ", expected 1");
  }
  const Index K = vectors.front().size();
  Eigen::VectorXd out = Eigen::VectorXd::Zero(K);
  for (std::size_t l = 0; l < vectors.size(); ++l) {
    if (vectors[l].size() != K) {
      throw ShapeError("convex_combine: vectors have different lengths");
    }
    if (weights[l] == 0.0) continue;
    for (Index k = 0; k < K; ++k) {
      out[k] += ext::weight_evalue(vectors[l][k], weights[l]);
    }
  }
  return EVector(std::move(out), vectors.front().null_mask());
}

EVector apply_weights(const EVector& e, const Eigen::VectorXd& w) {
  check_weights(w, e.size());
  Eigen::VectorXd out(e.size());
  for (Index k = 0; k < e.size(); ++k) out[k] = ext::weight_evalue(e[k], w[k]);
  return e.with_values(std::move(out));
}

PVector apply_weights(const PVector& p, const Eigen::VectorXd& w) {
  check_weights(w, p.size());
  Eigen::VectorXd out(p.size());
  for (Index k = 0; k < p.size(); ++k) out[k] = ext::divide(p[k], w[k]);
  return p.with_values(std::move(out));
}

ApproxBudget::ApproxBudget(double epsilon, double delta)
    : epsilon_(epsilon), delta_(delta) {
  if (std::isnan(epsilon) || epsilon < 0.0) {
    throw DomainError("epsilon must be nonnegative");
  }
  if (!(delta >= 0.0 && delta <= 1.0)) {
    throw DomainError("delta must lie in [0, 1]");
  }
}

ApproxBudget epsilon_to_delta(const ApproxBudget& b) {
  if (std::isinf(b.epsilon())) return ApproxBudget(0.0, 1.0);
  return ApproxBudget(0.0, (b.epsilon() + b.delta()) / (1.0 + b.epsilon()));
}

}  // namespace cev
