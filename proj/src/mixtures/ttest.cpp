#include "cev/mixtures/ttest.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "cev/core/errors.hpp"
#include "cev/mixtures/special.hpp"

namespace cev {

namespace {

// Integral of f over [lo, hi] by composite Simpson.
template <class F>
double simpson(F&& f, double lo, double hi, int intervals) {
  if (!(hi > lo)) return 0.0;
  const double h = (hi - lo) / intervals;
  double sum = f(lo) + f(hi);
  for (int i = 1; i < intervals; ++i) {
    sum += (i % 2 == 1 ? 4.0 : 2.0) * f(lo + i * h);
  }
  return sum * h / 3.0;
}

}  // namespace

double log_t_density_ratio(double t, int nu, double ncp) {
  if (nu < 1) throw DomainError("t density needs nu >= 1");
  if (!std::isfinite(t) || !std::isfinite(ncp)) {
    throw DomainError("t statistic and noncentrality must be finite");
  }
  if (ncp == 0.0) return 0.0;
  // f_ncp(t) / f_0(t) = exp(-ncp^2/2) (2 b^a / Gamma(a)) int_0^inf u^nu exp(c u - b u^2) du
  const double v = nu;
  const double a = 0.5 * (v + 1.0);
  const double b = 0.5 * (1.0 + t * t / v);
  const double c = ncp * t / std::sqrt(v);
  const double mode = (c + std::sqrt(c * c + 8.0 * b * v)) / (4.0 * b);
  const double log_peak = v * std::log(mode) + c * mode - b * mode * mode;
  auto integrand = [&](double u) {
    if (u <= 0.0) return 0.0;
    return std::exp(v * std::log(u) + c * u - b * u * u - log_peak);
  };
  // The log integrand is concave with curvature at least 2b everywhere and
  // nu / mode^2 + 2b at the mode.
  const double local = 1.0 / std::sqrt(v / (mode * mode) + 2.0 * b);
  const double global = 1.0 / std::sqrt(2.0 * b);
  const double lo = std::max(0.0, mode - 14.0 * local);
  const double near = mode + 14.0 * local;
  const double far = std::max(near, mode + 14.0 * global);
  const double integral = simpson(integrand, lo, mode, 800) +
                          simpson(integrand, mode, near, 800) +
                          simpson(integrand, near, far, 800);
  return -0.5 * ncp * ncp + std::log(2.0) + a * std::log(b) - log_gamma(a) +
         log_peak + std::log(integral);
}

double ttest_evalue(const SummaryStats& stats, double ncp) {
  return std::exp(log_t_density_ratio(stats.t_statistic(), stats.dof(), ncp));
}

}  // namespace cev
