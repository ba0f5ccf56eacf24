#include "cev/mixtures/localization.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "cev/core/errors.hpp"
#include "cev/mixtures/likelihood.hpp"

namespace cev {

double Localization::ecdf(double t) const {
  const auto it = std::upper_bound(ecdf_knots.begin(), ecdf_knots.end(), t);
  return static_cast<double>(it - ecdf_knots.begin()) /
         static_cast<double>(ecdf_knots.size());
}

double dkw_radius(std::size_t K, double delta) {
  if (K < 1) throw ShapeError("localization needs K >= 1");
  if (!(delta > 0.0 && delta < 1.0)) {
    throw DomainError("localization delta must lie in (0, 1)");
  }
  return std::sqrt((1.0 + std::log(2.0 / delta)) / (2.0 * static_cast<double>(K)));
}

Localization build_localization(std::span<const double> sigma_hat2,
                                double delta, std::size_t max_points) {
  Localization loc;
  loc.delta = delta;
  loc.radius = dkw_radius(sigma_hat2.size(), delta);
  loc.ecdf_knots.assign(sigma_hat2.begin(), sigma_hat2.end());
  for (double v : loc.ecdf_knots) {
    if (std::isnan(v) || v < 0.0) {
      throw DomainError("sample variances must be nonnegative");
    }
  }
  std::sort(loc.ecdf_knots.begin(), loc.ecdf_knots.end());
  std::vector<double> distinct = loc.ecdf_knots;
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  if (max_points == 0 || distinct.size() <= max_points) {
    loc.constraint_points = std::move(distinct);
    return loc;
  }
  const auto K = static_cast<double>(loc.ecdf_knots.size());
  const auto M = static_cast<double>(max_points);
  for (std::size_t j = 1; j <= max_points; ++j) {
    const auto rank = static_cast<std::size_t>(std::ceil(static_cast<double>(j) * K / (M + 1.0)));
    const double t = loc.ecdf_knots[std::clamp<std::size_t>(rank, 1, loc.ecdf_knots.size()) - 1];
    if (loc.constraint_points.empty() || loc.constraint_points.back() != t) {
      loc.constraint_points.push_back(t);
    }
  }
  return loc;
}

double ks_distance(const Localization& loc, const DiscreteMixture& G, int nu) {
  const auto& knots = loc.ecdf_knots;
  const auto K = static_cast<double>(knots.size());
  double worst = 0.0;
  std::size_t i = 0;
  while (i < knots.size()) {
    std::size_t j = i;
    while (j < knots.size() && knots[j] == knots[i]) ++j;
    double model = 0.0;
    for (Eigen::Index l = 0; l < G.size(); ++l) {
      model += G.weights()[l] * chisq_scale_cdf(knots[i], G.support()[l], nu);
    }
    const double below = static_cast<double>(i) / K;
    const double at = static_cast<double>(j) / K;
    worst = std::max({worst, std::abs(at - model), std::abs(below - model)});
    i = j;
  }
  return worst;
}

bool contains(const Localization& loc, const DiscreteMixture& G, int nu) {
  return ks_distance(loc, G, nu) <= loc.radius;
}

}  // namespace cev
