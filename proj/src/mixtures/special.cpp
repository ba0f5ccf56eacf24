#include "cev/mixtures/special.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "cev/core/errors.hpp"

namespace cev {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr double kEps = 1e-16;
constexpr int kMaxTerms = 100000;

// Series for P(a, x), good for x < a + 1.
double gamma_series(double a, double x) {
  double term = 1.0 / a;
  double sum = term;
  for (int n = 1; n < kMaxTerms; ++n) {
    term *= x / (a + n);
    sum += term;
    if (std::abs(term) < std::abs(sum) * kEps) break;
  }
  return std::exp(-x + a * std::log(x) - log_gamma(a)) * sum;
}

// Modified Lentz continued fraction for Q(a, x), good for x >= a + 1.
double gamma_continued_fraction(double a, double x) {
  constexpr double tiny = 1e-300;
  double b = x + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < kMaxTerms; ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::abs(delta - 1.0) < kEps) break;
  }
  return std::exp(-x + a * std::log(x) - log_gamma(a)) * h;
}

void require_gamma_args(double a, double x) {
  if (!(a > 0.0) || std::isnan(x) || x < 0.0) {
    throw DomainError("incomplete gamma needs a > 0 and x >= 0");
  }
}

}  // namespace

double log_sum_exp(const Eigen::Ref<const Eigen::VectorXd>& v) {
  if (v.size() == 0) return kNegInf;
  const double m = v.maxCoeff();
  if (std::isinf(m)) return m;
  return m + std::log((v.array() - m).exp().sum());
}

double log_sum_exp(const Eigen::Ref<const Eigen::VectorXd>& v,
                   const Eigen::Ref<const Eigen::VectorXd>& weights) {
  double m = kNegInf;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (weights[i] > 0.0 && v[i] > m) m = v[i];
  }
  if (std::isinf(m)) return m;
  double sum = 0.0;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (weights[i] > 0.0) sum += weights[i] * std::exp(v[i] - m);
  }
  return m + std::log(sum);
}

double log_gamma(double x) {
  if (!(x > 0.0)) throw DomainError("log_gamma needs x > 0");
  int sign = 0;
  return ::lgamma_r(x, &sign);
}

double regularized_gamma_p(double a, double x) {
  require_gamma_args(a, x);
  if (x == 0.0) return 0.0;
  if (std::isinf(x)) return 1.0;
  if (x < a + 1.0) return gamma_series(a, x);
  return 1.0 - gamma_continued_fraction(a, x);
}

double regularized_gamma_q(double a, double x) {
  require_gamma_args(a, x);
  if (x == 0.0) return 1.0;
  if (std::isinf(x)) return 0.0;
  if (x < a + 1.0) return 1.0 - gamma_series(a, x);
  return gamma_continued_fraction(a, x);
}

}  // namespace cev
