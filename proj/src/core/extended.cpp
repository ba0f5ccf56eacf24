#include "cev/core/extended.hpp"

#include <cmath>
#include <string>

#include "cev/core/errors.hpp"

namespace cev::ext {

double require_number(double x, const char* what) {
  if (std::isnan(x)) throw DomainError(std::string(what) + " is NaN");
  return x;
}

double require_nonnegative(double x, const char* what) {
  require_number(x, what);
  if (x < 0.0) {
    throw DomainError(std::string(what) + " is negative: " + std::to_string(x));
  }
  return x;
}

double weight_evalue(double e, double w) {
  if (std::isinf(e) || std::isinf(w)) return kInf;
  return e * w;
}

double divide(double x, double y) {
  if (x == 0.0) return 0.0;
  if (y == 0.0) return kInf;
  if (std::isinf(y)) return std::isinf(x) ? kInf : 0.0;
  return x / y;
}

double evalue_to_pvalue(double e) {
  if (e <= 1.0) return 1.0;
  return std::isinf(e) ? 0.0 : 1.0 / e;
}

}  // namespace cev::ext
