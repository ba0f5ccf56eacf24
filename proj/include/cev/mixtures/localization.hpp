#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "cev/mixtures/mixture.hpp"

namespace cev {

// Kolmogorov-Smirnov band around the empirical CDF of sample variances.
struct Localization {
  double radius = 0.0;
  double delta = 0.0;
  std::vector<double> ecdf_knots;         // sorted sample
  std::vector<double> constraint_points;  // subset of the knots

  // Fraction of the sample <= t.
  double ecdf(double t) const;
};

// sqrt((1 + log(2 / delta)) / (2 K)).
double dkw_radius(std::size_t K, double delta);

// Constraint points are max_points evenly spaced sample quantiles, or the
// whole distinct sample when it is smaller.
Localization build_localization(std::span<const double> sigma_hat2,
                                double delta, std::size_t max_points = 50);

// Exact sup_t |ECDF(t) - F_G(t)|, F_G the marginal CDF of the sample variance
// under G.
double ks_distance(const Localization& loc, const DiscreteMixture& G, int nu);

bool contains(const Localization& loc, const DiscreteMixture& G, int nu);

}  // namespace cev
