#pragma once

// Arithmetic on [0, inf] with the conventions used throughout the library:
//   inf * 0 = inf   (weighting an e-value)
//   0 / 0   = 0
//   x / 0   = inf   for x > 0
// NaN is never produced; NaN inputs throw DomainError.

#include <limits>

namespace cev::ext {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Throws DomainError if x is NaN. Returns x.
double require_number(double x, const char* what);

// Throws DomainError if x is NaN or negative.
double require_nonnegative(double x, const char* what);

// e * w for e, w >= 0 with inf * 0 = inf.
double weight_evalue(double e, double w);

// x / y for x, y >= 0 with 0/0 = 0 and x/0 = inf.
double divide(double x, double y);

// min(1/e, 1) with 1/inf = 0 and 1/0 capped at 1.
double evalue_to_pvalue(double e);

}  // namespace cev::ext
