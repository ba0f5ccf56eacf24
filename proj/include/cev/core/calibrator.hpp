#pragma once

#include <Eigen/Core>
#include <variant>
#include <vector>

#include "cev/core/vectors.hpp"

namespace cev {

// K / ceil(K / x) for x >= 1, 0 for x < 1, K at x = inf.
double by_step_function(Index K, double x);

// Decreasing p-to-e map h with h = 0 on (1, inf) and integral over [0,1] at
// most 1.
class Calibrator {
 public:
  struct Power {
    double kappa;
  };
  struct ByStep {
    Index K;
    double alpha;
    double harmonic;
  };
  // Right-continuous step function: value[i] on [knot[i], knot[i+1]), with
  // knot[0] = 0 and the last interval closed at 1.
  struct Table {
    std::vector<double> knots;
    std::vector<double> values;
  };

  // h(p) = kappa * p^(kappa - 1).
  static Calibrator power(double kappa = 0.5);
  // h(p) = T(alpha / (l_K p)) / alpha with l_K the K-th harmonic number.
  static Calibrator by_step(Index K, double alpha);
  static Calibrator custom_table(std::vector<double> knots,
                                 std::vector<double> values);

  double operator()(double p) const;

  // Exact integral of h over [0, 1].
  double integral() const;

  const std::variant<Power, ByStep, Table>& kind() const noexcept {
    return kind_;
  }

 private:
  explicit Calibrator(std::variant<Power, ByStep, Table> kind)
      : kind_(std::move(kind)) {}
  std::variant<Power, ByStep, Table> kind_;
};

double harmonic_number(Index K);

EVector calibrate_p_to_e(const PVector& p, const Calibrator& h);
PVector calibrate_e_to_p(const EVector& e);

}  // namespace cev
