#include "cev/procedures/merge.hpp"

#include <cmath>
#include <string>

#include "cev/core/extended.hpp"

namespace cev {

namespace {

double merge_custom(const PVector& p, const EVector& e,
                    const std::function<double(double)>& f) {
  const auto K = static_cast<double>(p.size());
  auto score = [&](double alpha) {
    double sum = 0.0;
    for (Index k = 0; k < p.size(); ++k) {
      if (e[k] == 0.0) continue;
      sum += e[k] * f(p[k] / alpha);
    }
    return sum / K;
  };
  // score is nondecreasing in alpha.
  if (!(score(1.0) >= 1.0)) return 1.0;
  double lo = 0.0;
  double hi = 1.0;
  for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    if (score(mid) >= 1.0) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

}  // namespace

double merge_pvalues(const PVector& p, const EVector& e, const MergeSpec& spec) {
  if (p.size() != e.size()) throw ShapeError("p and e differ in length");
  for (Index k = 0; k < e.size(); ++k) {
    if (std::isinf(e[k])) throw DomainError("merging needs finite e-values");
    if (std::isinf(p[k])) throw DomainError("merging needs finite p-values");
  }
  const auto K = static_cast<double>(p.size());
  const double e_sum = e.values().sum();
  switch (spec.kind()) {
    case MergeSpec::Kind::twice_mean: {
      const double den = e_sum - K / 2.0;
      if (den <= 0.0) return 1.0;
      return std::min(e.values().dot(p.values()) / den, 1.0);
    }
    case MergeSpec::Kind::geometric: {
      if (e_sum <= 0.0) return 1.0;
      const double e_bar = e_sum / K;
      double weighted_log = 0.0;
      for (Index k = 0; k < p.size(); ++k) {
        if (e[k] == 0.0) continue;
        if (p[k] == 0.0) return 0.0;
        weighted_log += e[k] * std::log(p[k]);
      }
      return std::min(std::exp(1.0 / e_bar + weighted_log / e_sum), 1.0);
    }
    case MergeSpec::Kind::custom:
      if (!spec.f()) throw ConfigError("custom merge needs a function");
      return merge_custom(p, e, spec.f());
  }
  return 1.0;
}

double star_approx_fdr_bound(double alpha, const ApproxBudget& b,
                             double tail_prob) {
  if (!(tail_prob >= 0.0 && tail_prob <= 1.0)) {
    throw DomainError("tail probability must lie in [0, 1]");
  }
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw DomainError("alpha must lie in (0, 1)");
  }
  return alpha * (1.0 + b.epsilon()) + std::sqrt(b.delta()) + tail_prob;
}

}  // namespace cev
