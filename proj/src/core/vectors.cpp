#include "cev/core/vectors.hpp"

#include <cmath>
#include <string>

namespace cev::detail {

void validate_test_vector(const Eigen::VectorXd& values,
                          const std::optional<NullMask>& mask,
                          const char* what) {
  if (values.size() < 1) {
    throw ShapeError(std::string(what) + " vector must have K >= 1 entries");
  }
  for (Index k = 0; k < values.size(); ++k) {
    const double v = values[k];
    if (std::isnan(v) || v < 0.0) {
      throw DomainError(std::string(what) + " at index " + std::to_string(k) +
                        " must be nonnegative, got " + std::to_string(v));
    }
  }
  if (mask && mask->size() != values.size()) {
    throw ShapeError(std::string(what) + " null mask has length " +
                     std::to_string(mask->size()) + ", expected " +
                     std::to_string(values.size()));
  }
}

}  // namespace cev::detail
