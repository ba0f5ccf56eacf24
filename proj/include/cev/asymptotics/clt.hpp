#pragma once

#include <span>

#include "cev/core/vectors.hpp"
#include "cev/mixtures/mixture.hpp"
#include "cev/mixtures/summary.hpp"

namespace cev {

// exp(lambda T - lambda^2 / 2) with T = sqrt(n) xbar / S, S the root mean
// square (or the sample standard deviation when use_sigma_hat). The
// symmetric form averages over +lambda and -lambda.
double clt_evalue(const SummaryStats& stats, double lambda, bool symmetric,
                  bool use_sigma_hat = false);

// Mixture of the one-sided form over a finite distribution of lambda.
double mixture_clt_evalue(const SummaryStats& stats,
                          const DiscreteMixture& lambda_mixture,
                          bool use_sigma_hat = false);

// E_k = K S_k^2 / sum_j sigma_hat_j^2.
EVector sum_of_squares_compound(std::span<const SummaryStats> stats);

}  // namespace cev
