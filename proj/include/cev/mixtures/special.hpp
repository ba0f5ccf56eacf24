#pragma once

#include <Eigen/Core>

namespace cev {

// log(sum exp(v)); -inf for an empty or all -inf input.
double log_sum_exp(const Eigen::Ref<const Eigen::VectorXd>& v);

// log(sum w_i exp(v_i)) for nonnegative weights.
double log_sum_exp(const Eigen::Ref<const Eigen::VectorXd>& v,
                   const Eigen::Ref<const Eigen::VectorXd>& weights);

// Thread-safe log Gamma for x > 0.
double log_gamma(double x);

// Regularized lower incomplete gamma P(a, x) and its complement Q(a, x).
double regularized_gamma_p(double a, double x);
double regularized_gamma_q(double a, double x);

}  // namespace cev
