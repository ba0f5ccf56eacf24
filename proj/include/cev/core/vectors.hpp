#pragma once

#include <Eigen/Core>
#include <optional>

#include "cev/core/errors.hpp"

namespace cev {

using Index = Eigen::Index;
using NullMask = Eigen::Array<bool, Eigen::Dynamic, 1>;

namespace detail {
void validate_test_vector(const Eigen::VectorXd& values,
                          const std::optional<NullMask>& mask,
                          const char* what);
}

// Length-K vector of per-hypothesis statistics with optional ground truth.
// Entries are nonnegative and never NaN.
template <class Tag>
class TestVector {
 public:
  explicit TestVector(Eigen::VectorXd values,
                      std::optional<NullMask> null_mask = std::nullopt)
      : values_(std::move(values)), null_mask_(std::move(null_mask)) {
    detail::validate_test_vector(values_, null_mask_, Tag::name);
  }

  const Eigen::VectorXd& values() const noexcept { return values_; }
  const std::optional<NullMask>& null_mask() const noexcept {
    return null_mask_;
  }
  Index size() const noexcept { return values_.size(); }
  double operator[](Index k) const { return values_[k]; }

  // Same truth, new values.
  TestVector with_values(Eigen::VectorXd values) const {
    return TestVector(std::move(values), null_mask_);
  }

  friend bool operator==(const TestVector& a, const TestVector& b) {
    if (a.values_.size() != b.values_.size()) return false;
    if (a.values_ != b.values_) return false;
    if (a.null_mask_.has_value() != b.null_mask_.has_value()) return false;
    return !a.null_mask_ || (*a.null_mask_ == *b.null_mask_).all();
  }

 private:
  Eigen::VectorXd values_;
  std::optional<NullMask> null_mask_;
};

struct EValueTag {
  static constexpr const char* name = "e-value";
};

// p-values may be infinite after division by a zero weight.
struct PValueTag {
  static constexpr const char* name = "p-value";
};

using EVector = TestVector<EValueTag>;
using PVector = TestVector<PValueTag>;

}  // namespace cev
