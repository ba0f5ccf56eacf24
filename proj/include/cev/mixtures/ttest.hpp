#pragma once

#include "cev/mixtures/summary.hpp"

namespace cev {

// log of f_{nu, ncp}(t) / f_nu(t), noncentral over central t densities.
double log_t_density_ratio(double t, int nu, double ncp);

// Likelihood ratio of the t-statistic under noncentrality ncp = sqrt(n)
// lambda. Depends on the data only through t.
double ttest_evalue(const SummaryStats& stats, double ncp);

}  // namespace cev
