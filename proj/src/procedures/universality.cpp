#include "cev/procedures/universality.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "cev/core/combine.hpp"
#include "cev/core/extended.hpp"

namespace cev {

EVector implied_compound_evalues(const ProcedureResult& result, Index K,
                                 double alpha) {
  if (K < 1) throw ShapeError("K must be positive");
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw DomainError("alpha must lie in (0, 1)");
  }
  const double value = static_cast<double>(K) /
                       (alpha * static_cast<double>(std::max<Index>(result.R(), 1)));
  Eigen::VectorXd e = Eigen::VectorXd::Zero(K);
  for (Index k : result.rejected) {
    if (k < 0 || k >= K) {
      throw ShapeError("rejected index " + std::to_string(k) +
                       " outside 0.." + std::to_string(K - 1));
    }
    e[k] = value;
  }
  return EVector(std::move(e));
}

EVector tighten_compound(const EVector& e, double budget) {
  const auto K = static_cast<double>(e.size());
  if (std::isnan(budget) || budget <= 0.0 || budget > K) {
    throw ConfigError("tightening budget must lie in (0, K], got " +
                      std::to_string(budget));
  }
  Eigen::VectorXd out(e.size());
  for (Index k = 0; k < e.size(); ++k) {
    out[k] = ext::weight_evalue(e[k], K / budget);
  }
  return e.with_values(std::move(out));
}

EVector derandomize(std::span<const DerandomizationRun> runs, Index K) {
  if (runs.empty()) throw ConfigError("derandomize needs at least one run");
  std::vector<EVector> aligned;
  std::vector<double> weights;
  aligned.reserve(runs.size());
  std::optional<NullMask> truth;
  for (std::size_t l = 0; l < runs.size(); ++l) {
    const auto& run = runs[l];
    if (!run.subset) {
      if (run.e.size() != K) {
        throw ShapeError("run " + std::to_string(l) + " has " +
                         std::to_string(run.e.size()) + " e-values, expected " +
                         std::to_string(K));
      }
      if (!truth) truth = run.e.null_mask();
      aligned.push_back(run.e);
    } else {
      const auto& subset = *run.subset;
      if (static_cast<Index>(subset.size()) != run.e.size()) {
        throw ShapeError("run " + std::to_string(l) +
                         ": subset and e-values differ in length");
      }
      Eigen::VectorXd padded = Eigen::VectorXd::Ones(K);
      NullMask seen = NullMask::Constant(K, false);
      for (std::size_t i = 0; i < subset.size(); ++i) {
        const Index k = subset[i];
        if (k < 0 || k >= K || seen[k]) {
          throw ShapeError("run " + std::to_string(l) +
                           ": subset index out of range or repeated");
        }
        seen[k] = true;
        padded[k] = run.e[static_cast<Index>(i)];
      }
      aligned.emplace_back(std::move(padded));
    }
    weights.push_back(run.weight);
  }
  EVector combined = convex_combine(aligned, weights);
  return truth ? EVector(combined.values(), truth) : combined;
}

}  // namespace cev
