#pragma once

#include "cev/core/vectors.hpp"
#include "cev/procedures/result.hpp"

namespace cev {

// Rejects the k* largest e-values, k* = max{k : k E_[k] / K >= 1/alpha}.
// Ties at the boundary are broken toward the lowest index.
ProcedureResult ebh(const EVector& e, double alpha);

// Rejects the k* smallest Q = P/W, k* = max{k : K Q_(k) / k <= alpha}.
ProcedureResult weighted_pbh(const PVector& p, const EVector& w, double alpha);

// Benjamini-Hochberg.
ProcedureResult pbh(const PVector& p, double alpha);

// Benjamini-Yekutieli, computed as e-BH on by-step calibrated p-values and
// checked against BH at level alpha / l_K.
ProcedureResult by_procedure(const PVector& p, double alpha);

}  // namespace cev
