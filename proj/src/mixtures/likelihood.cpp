#include "cev/mixtures/likelihood.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "cev/core/errors.hpp"
#include "cev/core/extended.hpp"
#include "cev/mixtures/special.hpp"

namespace cev {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

void require_dof(int nu) {
  if (nu < 2) {
    throw DomainError("sample-variance density needs nu >= 2, got " +
                      std::to_string(nu));
  }
}

void require_variance(double sigma2) {
  if (!(sigma2 > 0.0) || std::isinf(sigma2)) {
    throw DomainError("variance must be positive and finite");
  }
}

}  // namespace

double log_chisq_scale_density(double sigma_hat2, double sigma2, int nu) {
  require_dof(nu);
  require_variance(sigma2);
  ext::require_nonnegative(sigma_hat2, "sample variance");
  const double half = 0.5 * nu;
  double out = half * std::log(static_cast<double>(nu)) -
               half * std::log(2.0 * sigma2) - log_gamma(half) -
               nu * sigma_hat2 / (2.0 * sigma2);
  if (nu != 2) {
    if (sigma_hat2 == 0.0) return kNegInf;
    out += (half - 1.0) * std::log(sigma_hat2);
  }
  return out;
}

double chisq_scale_density(double sigma_hat2, double sigma2, int nu) {
  return std::exp(log_chisq_scale_density(sigma_hat2, sigma2, nu));
}

double chisq_scale_cdf(double t, double sigma2, int nu) {
  require_dof(nu);
  require_variance(sigma2);
  ext::require_number(t, "CDF argument");
  if (t <= 0.0) return 0.0;
  return regularized_gamma_p(0.5 * nu, nu * t / (2.0 * sigma2));
}

double normal_loglik(const Eigen::Ref<const Eigen::VectorXd>& x, double lambda,
                     double sigma2) {
  require_variance(sigma2);
  const double mean = lambda * std::sqrt(sigma2);
  const double ss = (x.array() - mean).square().sum();
  return -0.5 * static_cast<double>(x.size()) *
             std::log(2.0 * std::numbers::pi * sigma2) -
         ss / (2.0 * sigma2);
}

double normal_loglik(const SummaryStats& stats, double lambda, double sigma2) {
  require_variance(sigma2);
  const double n = stats.n;
  const double mean = lambda * std::sqrt(sigma2);
  const double ss =
      std::max(n * stats.s2 - 2.0 * mean * n * stats.xbar + n * mean * mean, 0.0);
  return -0.5 * n * std::log(2.0 * std::numbers::pi * sigma2) - ss / (2.0 * sigma2);
}

double log_null_marginal(const SummaryStats& stats, const DiscreteMixture& G) {
  Eigen::VectorXd terms(G.size());
  for (Eigen::Index l = 0; l < G.size(); ++l) {
    terms[l] = normal_loglik(stats, 0.0, G.support()[l]);
  }
  return log_sum_exp(terms, G.weights());
}

double log_alt_marginal(const SummaryStats& stats, const JointMixture& Q) {
  Eigen::VectorXd terms(Q.size());
  for (Eigen::Index l = 0; l < Q.size(); ++l) {
    terms[l] = normal_loglik(stats, Q.lambda()[l], Q.sigma2()[l]);
  }
  return log_sum_exp(terms, Q.weights());
}

double ratio_from_logs(double log_num, double log_den) {
  if (log_num == kNegInf) return 0.0;
  if (log_den == kNegInf) return ext::kInf;
  return std::exp(log_num - log_den);
}

double bayes_factor(const SummaryStats& stats, const DiscreteMixture& G,
                    const JointMixture& Q) {
  return ratio_from_logs(log_alt_marginal(stats, Q), log_null_marginal(stats, G));
}

double bayes_factor(const Eigen::Ref<const Eigen::VectorXd>& x,
                    const DiscreteMixture& G, const JointMixture& Q) {
  if (x.size() < 1) throw ShapeError("bayes_factor needs at least one observation");
  Eigen::VectorXd den(G.size());
  for (Eigen::Index l = 0; l < G.size(); ++l) {
    den[l] = normal_loglik(x, 0.0, G.support()[l]);
  }
  Eigen::VectorXd num(Q.size());
  for (Eigen::Index l = 0; l < Q.size(); ++l) {
    num[l] = normal_loglik(x, Q.lambda()[l], Q.sigma2()[l]);
  }
  return ratio_from_logs(log_sum_exp(num, Q.weights()),
                         log_sum_exp(den, G.weights()));
}

}  // namespace cev
