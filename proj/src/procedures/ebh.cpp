#include "cev/procedures/ebh.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "cev/core/calibrator.hpp"
#include "cev/core/extended.hpp"

namespace cev {

namespace {

// Threshold comparisons allow this much relative slack so that values such as
// 3 * 0.2 / 2 are not rejected by rounding.
constexpr double kRelTol = 1e-12;

void require_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw DomainError("alpha must lie in (0, 1), got " + std::to_string(alpha));
  }
}

std::vector<Index> order_by(const Eigen::VectorXd& v, bool descending) {
  std::vector<Index> order(static_cast<std::size_t>(v.size()));
  std::iota(order.begin(), order.end(), Index{0});
  std::sort(order.begin(), order.end(), [&](Index a, Index b) {
    if (v[a] != v[b]) return descending ? v[a] > v[b] : v[a] < v[b];
    return a < b;
  });
  return order;
}

ProcedureResult take_first(const std::vector<Index>& order, Index k_star,
                           const std::optional<NullMask>& truth) {
  ProcedureResult result;
  result.k_star = k_star;
  result.rejected.assign(order.begin(), order.begin() + k_star);
  std::sort(result.rejected.begin(), result.rejected.end());
  if (truth) return with_truth(std::move(result), *truth);
  return result;
}

}  // namespace

ProcedureResult with_truth(ProcedureResult result, const NullMask& null_mask) {
  Index f = 0;
  for (Index k : result.rejected) {
    if (k < 0 || k >= null_mask.size()) {
      throw ShapeError("rejected index outside the null mask");
    }
    if (null_mask[k]) ++f;
  }
  result.false_discoveries = f;
  return result;
}

NullMask rejection_mask(const ProcedureResult& result, Index K) {
  NullMask mask = NullMask::Constant(K, false);
  for (Index k : result.rejected) {
    if (k < 0 || k >= K) throw ShapeError("rejected index outside 0..K-1");
    mask[k] = true;
  }
  return mask;
}

ProcedureResult ebh(const EVector& e, double alpha) {
  require_alpha(alpha);
  const Index K = e.size();
  const auto order = order_by(e.values(), /*descending=*/true);
  const double target = static_cast<double>(K) * (1.0 - kRelTol);
  Index k_star = 0;
  for (Index k = 1; k <= K; ++k) {
    const double ek = e[order[static_cast<std::size_t>(k - 1)]];
    if (static_cast<double>(k) * ek * alpha >= target) k_star = k;
  }
  return take_first(order, k_star, e.null_mask());
}

ProcedureResult weighted_pbh(const PVector& p, const EVector& w, double alpha) {
  require_alpha(alpha);
  if (p.size() != w.size()) {
    throw ShapeError("p-values and weights differ in length");
  }
  const Index K = p.size();
  Eigen::VectorXd q(K);
  for (Index k = 0; k < K; ++k) q[k] = ext::divide(p[k], w[k]);
  const auto order = order_by(q, /*descending=*/false);
  Index k_star = 0;
  for (Index k = 1; k <= K; ++k) {
    const double qk = q[order[static_cast<std::size_t>(k - 1)]];
    if (static_cast<double>(K) * qk <=
        alpha * static_cast<double>(k) * (1.0 + kRelTol)) {
      k_star = k;
    }
  }
  return take_first(order, k_star, p.null_mask());
}

ProcedureResult pbh(const PVector& p, double alpha) {
  return weighted_pbh(p, EVector(Eigen::VectorXd::Ones(p.size())), alpha);
}

ProcedureResult by_procedure(const PVector& p, double alpha) {
  require_alpha(alpha);
  const auto calibrator = Calibrator::by_step(p.size(), alpha);
  ProcedureResult via_ebh = ebh(calibrate_p_to_e(p, calibrator), alpha);
  const ProcedureResult direct = pbh(p, alpha / harmonic_number(p.size()));
  if (via_ebh.rejected != direct.rejected) {
    throw NumericalError(
        "BY: calibrated e-BH and BH at alpha / l_K disagree (" +
        std::to_string(via_ebh.R()) + " vs " + std::to_string(direct.R()) +
        " rejections)");
  }
  return via_ebh;
}

}  // namespace cev
