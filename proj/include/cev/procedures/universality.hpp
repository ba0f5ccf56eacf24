#pragma once

#include <optional>
#include <span>
#include <vector>

#include "cev/core/vectors.hpp"
#include "cev/procedures/result.hpp"

namespace cev {

// E_k = K / (alpha (R v 1)) on rejected k, 0 elsewhere.
EVector implied_compound_evalues(const ProcedureResult& result, Index K,
                                 double alpha);

// Rescales by K / budget, where budget is the worst-case null sum of means.
EVector tighten_compound(const EVector& e, double budget);

// One study in a combination. If subset is set, e holds values for those
// global indices only and every other hypothesis is padded with 1.
struct DerandomizationRun {
  EVector e;
  double weight;
  std::optional<std::vector<Index>> subset;
};

EVector derandomize(std::span<const DerandomizationRun> runs, Index K);

}  // namespace cev
