#pragma once

#include <functional>

#include "cev/core/combine.hpp"
#include "cev/core/vectors.hpp"

namespace cev {

// e-weighted p-merging function. For custom kinds, f must be decreasing with
// integral at most 1 on [0, 1], f >= 0 on [0, 1] and f <= 0 beyond 1.
class MergeSpec {
 public:
  enum class Kind { twice_mean, geometric, custom };

  static MergeSpec twice_mean() { return MergeSpec(Kind::twice_mean, {}); }
  static MergeSpec geometric() { return MergeSpec(Kind::geometric, {}); }
  static MergeSpec custom(std::function<double(double)> f) {
    return MergeSpec(Kind::custom, std::move(f));
  }

  Kind kind() const noexcept { return kind_; }
  const std::function<double(double)>& f() const noexcept { return f_; }

 private:
  MergeSpec(Kind kind, std::function<double(double)> f)
      : kind_(kind), f_(std::move(f)) {}
  Kind kind_;
  std::function<double(double)> f_;
};

// Smallest alpha at which (1/K) sum_k E_k f(P_k / alpha) >= 1, capped at 1.
// E is assumed independent of P.
double merge_pvalues(const PVector& p, const EVector& e, const MergeSpec& spec);

// alpha (1 + eps) + sqrt(delta) + tail_prob.
double star_approx_fdr_bound(double alpha, const ApproxBudget& b,
                             double tail_prob);

}  // namespace cev
