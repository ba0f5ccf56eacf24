#include "cev/mixtures/mixture.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "cev/core/errors.hpp"

namespace cev {

namespace {

void check_weights(const Eigen::VectorXd& weights) {
  if (weights.size() == 0) throw ConfigError("mixture needs at least one atom");
  for (Eigen::Index i = 0; i < weights.size(); ++i) {
    if (!(weights[i] >= 0.0) || std::isinf(weights[i])) {
      throw DomainError("mixture weights must be finite and nonnegative");
    }
  }
  if (std::abs(weights.sum() - 1.0) > 1e-10) {
    throw ConfigError("mixture weights sum to " + std::to_string(weights.sum()) +
                      ", expected 1");
  }
}

}  // namespace

DiscreteMixture::DiscreteMixture(Eigen::VectorXd support,
                                 Eigen::VectorXd weights)
    : support_(std::move(support)), weights_(std::move(weights)) {
  if (support_.size() != weights_.size()) {
    throw ShapeError("mixture support and weights differ in length");
  }
  check_weights(weights_);
  for (Eigen::Index i = 0; i < support_.size(); ++i) {
    if (!std::isfinite(support_[i])) {
      throw DomainError("mixture support must be finite");
    }
    if (i > 0 && !(support_[i] > support_[i - 1])) {
      throw ConfigError("mixture support must be strictly increasing");
    }
  }
}

DiscreteMixture DiscreteMixture::point_mass(double x) {
  return DiscreteMixture(Eigen::VectorXd::Constant(1, x),
                         Eigen::VectorXd::Ones(1));
}

DiscreteMixture DiscreteMixture::empirical(std::span<const double> sample) {
  if (sample.empty()) throw ConfigError("empirical mixture of an empty sample");
  std::vector<double> sorted(sample.begin(), sample.end());
  std::sort(sorted.begin(), sorted.end());
  std::vector<double> atoms;
  std::vector<double> counts;
  for (double v : sorted) {
    if (!atoms.empty() && atoms.back() == v) {
      counts.back() += 1.0;
    } else {
      atoms.push_back(v);
      counts.push_back(1.0);
    }
  }
  const auto n = static_cast<double>(sorted.size());
  Eigen::VectorXd support = Eigen::Map<Eigen::VectorXd>(
      atoms.data(), static_cast<Eigen::Index>(atoms.size()));
  Eigen::VectorXd weights = Eigen::Map<Eigen::VectorXd>(
                                counts.data(), static_cast<Eigen::Index>(counts.size())) /
                            n;
  return DiscreteMixture(std::move(support), std::move(weights));
}

double DiscreteMixture::cdf(double t) const {
  double mass = 0.0;
  for (Eigen::Index i = 0; i < support_.size() && support_[i] <= t; ++i) {
    mass += weights_[i];
  }
  return std::min(mass, 1.0);
}

void DiscreteMixture::require_within(double lo, double hi) const {
  if (support_[0] < lo || support_[support_.size() - 1] > hi) {
    throw DomainError("mixture support leaves [" + std::to_string(lo) + ", " +
                      std::to_string(hi) + "]");
  }
}

bool operator==(const DiscreteMixture& a, const DiscreteMixture& b) {
  return a.support_.size() == b.support_.size() && a.support_ == b.support_ &&
         a.weights_ == b.weights_;
}

JointMixture::JointMixture(Eigen::VectorXd lambda, Eigen::VectorXd sigma2,
                           Eigen::VectorXd weights)
    : lambda_(std::move(lambda)),
      sigma2_(std::move(sigma2)),
      weights_(std::move(weights)) {
  if (lambda_.size() != weights_.size() || sigma2_.size() != weights_.size()) {
    throw ShapeError("joint mixture components differ in length");
  }
  check_weights(weights_);
  for (Eigen::Index i = 0; i < weights_.size(); ++i) {
    if (!std::isfinite(lambda_[i])) throw DomainError("effect atoms must be finite");
    if (!(sigma2_[i] > 0.0) || std::isinf(sigma2_[i])) {
      throw DomainError("variance atoms must be positive and finite");
    }
  }
}

JointMixture JointMixture::product(const DiscreteMixture& effect,
                                   const DiscreteMixture& variance) {
  const Eigen::Index a = effect.size();
  const Eigen::Index b = variance.size();
  Eigen::VectorXd lambda(a * b), sigma2(a * b), weights(a * b);
  for (Eigen::Index i = 0; i < a; ++i) {
    for (Eigen::Index j = 0; j < b; ++j) {
      lambda[i * b + j] = effect.support()[i];
      sigma2[i * b + j] = variance.support()[j];
      weights[i * b + j] = effect.weights()[i] * variance.weights()[j];
    }
  }
  weights /= weights.sum();
  return JointMixture(std::move(lambda), std::move(sigma2), std::move(weights));
}

Eigen::VectorXd log_grid(double lo, double hi, Eigen::Index B) {
  if (!(lo > 0.0 && hi > lo) || !std::isfinite(hi)) {
    throw DomainError("grid needs 0 < lo < hi < inf");
  }
  if (B < 2) throw ConfigError("grid needs at least two points");
  Eigen::VectorXd grid =
      Eigen::VectorXd::LinSpaced(B, std::log(lo), std::log(hi)).array().exp();
  grid[0] = lo;
  grid[B - 1] = hi;
  return grid;
}

}  // namespace cev
