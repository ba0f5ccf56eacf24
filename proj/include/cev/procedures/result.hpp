#pragma once

#include <optional>
#include <vector>

#include "cev/core/vectors.hpp"

namespace cev {

// Output of a multiple testing procedure. Indices are 0-based here and
// 1-based in every serialized form.
struct ProcedureResult {
  std::vector<Index> rejected;  // ascending
  Index k_star = 0;
  std::optional<Index> false_discoveries;

  Index R() const noexcept { return static_cast<Index>(rejected.size()); }
};

// Fills false_discoveries from a truth mask.
ProcedureResult with_truth(ProcedureResult result, const NullMask& null_mask);

// Indicator vector of the rejection set.
NullMask rejection_mask(const ProcedureResult& result, Index K);

}  // namespace cev
