#include "cev/core/calibrator.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "cev/core/extended.hpp"

namespace cev {

namespace {

void require_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw DomainError("alpha must lie in (0, 1), got " + std::to_string(alpha));
  }
}

// ceil(q), treating q within 1e-12 relative of an integer as that integer.
double snapped_ceil(double q) {
  const double r = std::round(q);
  if (std::abs(q - r) <= 1e-12 * std::max(1.0, std::abs(r))) return r;
  return std::ceil(q);
}

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

}  // namespace

double harmonic_number(Index K) {
  double sum = 0.0;
  for (Index k = K; k >= 1; --k) sum += 1.0 / static_cast<double>(k);
  return sum;
}

double by_step_function(Index K, double x) {
  ext::require_number(x, "step argument");
  if (K < 1) throw DomainError("K must be positive");
  const auto k = static_cast<double>(K);
  if (std::isinf(x) && x > 0) return k;
  if (x <= 0.0) return 0.0;
  // ceil(K/x) > K exactly when x < 1.
  const double steps = std::max(1.0, snapped_ceil(k / x));
  return steps > k ? 0.0 : k / steps;
}

Calibrator Calibrator::power(double kappa) {
  if (!(kappa > 0.0 && kappa < 1.0)) {
    throw DomainError("power calibrator needs kappa in (0, 1)");
  }
  return Calibrator(Power{kappa});
}

Calibrator Calibrator::by_step(Index K, double alpha) {
  if (K < 1) throw DomainError("K must be positive");
  require_alpha(alpha);
  return Calibrator(ByStep{K, alpha, harmonic_number(K)});
}

Calibrator Calibrator::custom_table(std::vector<double> knots,
                                    std::vector<double> values) {
  if (knots.empty() || knots.size() != values.size()) {
    throw ConfigError("calibrator table needs equal, nonzero numbers of knots and values");
  }
  if (knots.front() != 0.0) throw ConfigError("first calibrator knot must be 0");
  for (std::size_t i = 0; i < knots.size(); ++i) {
    ext::require_nonnegative(values[i], "calibrator value");
    if (std::isinf(values[i])) {
      throw ConfigError("calibrator table values must be finite");
    }
    if (knots[i] >= 1.0 || std::isnan(knots[i])) {
      throw ConfigError("calibrator knots must lie in [0, 1)");
    }
    if (i > 0 && !(knots[i] > knots[i - 1])) {
      throw ConfigError("calibrator knots must be strictly increasing");
    }
    if (i > 0 && values[i] > values[i - 1]) {
      throw ConfigError("calibrator table must be nonincreasing");
    }
  }
  Calibrator c(Table{std::move(knots), std::move(values)});
  if (c.integral() > 1.0 + 1e-9) {
    throw ConfigError("calibrator integrates to " + std::to_string(c.integral()) +
                      " > 1");
  }
  return c;
}

double Calibrator::operator()(double p) const {
  ext::require_nonnegative(p, "p-value");
  if (p > 1.0) return 0.0;
  return std::visit(
      Overloaded{
          [p](const Power& c) {
            if (p == 0.0) return ext::kInf;
            return c.kappa * std::pow(p, c.kappa - 1.0);
          },
          [p](const ByStep& c) {
            const double x =
                p == 0.0 ? ext::kInf : c.alpha / (c.harmonic * p);
            return by_step_function(c.K, x) / c.alpha;
          },
          [p](const Table& c) {
            auto it = std::upper_bound(c.knots.begin(), c.knots.end(), p);
            return c.values[static_cast<std::size_t>(it - c.knots.begin()) - 1];
          }},
      kind_);
}

double Calibrator::integral() const {
  return std::visit(
      Overloaded{[](const Power&) { return 1.0; },
                 [](const ByStep& c) {
                   // Step j in 1..K has width alpha/(K l_K) and height K/(j alpha).
                   const auto K = static_cast<double>(c.K);
                   const double width = c.alpha / (K * c.harmonic);
                   double sum = 0.0;
                   for (Index j = c.K; j >= 1; --j) {
                     sum += width * K / (static_cast<double>(j) * c.alpha);
                   }
                   return sum;
                 },
                 [](const Table& c) {
                   double sum = 0.0;
                   for (std::size_t i = 0; i < c.knots.size(); ++i) {
                     const double right =
                         i + 1 < c.knots.size() ? c.knots[i + 1] : 1.0;
                     sum += c.values[i] * (right - c.knots[i]);
                   }
                   return sum;
                 }},
      kind_);
}

EVector calibrate_p_to_e(const PVector& p, const Calibrator& h) {
  Eigen::VectorXd e(p.size());
  for (Index k = 0; k < p.size(); ++k) e[k] = h(p[k]);
  return EVector(std::move(e), p.null_mask());
}

PVector calibrate_e_to_p(const EVector& e) {
  Eigen::VectorXd p(e.size());
  for (Index k = 0; k < e.size(); ++k) p[k] = ext::evalue_to_pvalue(e[k]);
  return PVector(std::move(p), e.null_mask());
}

}  // namespace cev
