#pragma once

#include <Eigen/Core>

#include "cev/mixtures/mixture.hpp"
#include "cev/mixtures/summary.hpp"

namespace cev {

// Density of the sample variance with nu degrees of freedom when the true
// variance is sigma2. nu must be at least 2.
double log_chisq_scale_density(double sigma_hat2, double sigma2, int nu);
double chisq_scale_density(double sigma_hat2, double sigma2, int nu);
double chisq_scale_cdf(double t, double sigma2, int nu);

// Log density of n iid N(lambda sigma, sigma2) observations.
double normal_loglik(const Eigen::Ref<const Eigen::VectorXd>& x, double lambda,
                     double sigma2);
double normal_loglik(const SummaryStats& stats, double lambda, double sigma2);

// log of the integral of the null density against G.
double log_null_marginal(const SummaryStats& stats, const DiscreteMixture& G);
// log of the integral of the alternative density against Q.
double log_alt_marginal(const SummaryStats& stats, const JointMixture& Q);

// Ratio of the Q-mixture likelihood to the G-mixture null likelihood, with
// 0/0 = 0 and x/0 = inf.
double bayes_factor(const SummaryStats& stats, const DiscreteMixture& G,
                    const JointMixture& Q);
double bayes_factor(const Eigen::Ref<const Eigen::VectorXd>& x,
                    const DiscreteMixture& G, const JointMixture& Q);

// exp(a - b) with the quotient conventions above for a, b in [-inf, inf).
double ratio_from_logs(double log_num, double log_den);

}  // namespace cev
