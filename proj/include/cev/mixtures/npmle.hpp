#pragma once

#include <Eigen/Core>
#include <span>
#include <vector>

#include "cev/mixtures/mixture.hpp"

namespace cev {

enum class NpmleSolver {
  // Sequential quadratic programming on a working set of grid points with
  // column generation. Converges to the gap tolerance in a few dozen steps.
  active_set,
  // Multiplicative EM updates on the full grid.
  em,
};

struct NpmleOptions {
  NpmleSolver solver = NpmleSolver::active_set;
  int max_iterations = 10000;
  double relative_tolerance = 1e-9;  // EM stopping rule
  double gap_tolerance = 1e-6;
  bool record_trace = false;
};

struct NpmleFit {
  DiscreteMixture mixture;  // atoms with positive weight only
  double loglik = 0.0;      // sum_k log f(sigma_hat2_k)
  double gap = 0.0;         // max_l (1/K) sum_k L_kl / f_k - 1
  int iterations = 0;
  std::vector<double> trace;  // log-likelihood per iteration when recorded
};

// Maximizes sum_k log sum_l pi_l p(sigma_hat2_k | grid_l) over the simplex.
// Throws ConvergenceError if the optimality gap exceeds the tolerance.
NpmleFit npmle_fit(std::span<const double> sigma_hat2, int nu,
                   const Eigen::VectorXd& grid, const NpmleOptions& options = {});

// sum_k log f_G(sigma_hat2_k).
double mixture_loglik(std::span<const double> sigma_hat2, int nu,
                      const DiscreteMixture& G);

}  // namespace cev
