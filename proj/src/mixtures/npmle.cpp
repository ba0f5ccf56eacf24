#include "cev/mixtures/npmle.hpp"

#include <Eigen/Cholesky>
#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "cev/core/errors.hpp"
#include "cev/mixtures/likelihood.hpp"
#include "cev/mixtures/special.hpp"

namespace cev {

namespace {

using Eigen::Index;
using Eigen::MatrixXd;
using Eigen::VectorXd;

constexpr double kInf = std::numeric_limits<double>::infinity();

// Likelihood matrix with each row divided by its maximum.
struct ScaledLikelihood {
  MatrixXd L;          // K x B, entries in [0, 1]
  VectorXd row_log_max;  // K
};

ScaledLikelihood build_likelihood(std::span<const double> s, int nu,
                                  const VectorXd& grid) {
  const auto K = static_cast<Index>(s.size());
  const Index B = grid.size();
  ScaledLikelihood out{MatrixXd(K, B), VectorXd(K)};
  VectorXd row(B);
  for (Index k = 0; k < K; ++k) {
    for (Index l = 0; l < B; ++l) {
      row[l] = log_chisq_scale_density(s[static_cast<std::size_t>(k)], grid[l], nu);
    }
    const double m = row.maxCoeff();
    if (!std::isfinite(m)) {
      throw DegenerateSampleError(
          "sample variance " + std::to_string(s[static_cast<std::size_t>(k)]) +
          " has zero likelihood at every grid point");
    }
    out.row_log_max[k] = m;
    out.L.row(k) = (row.array() - m).exp().matrix().transpose();
  }
  return out;
}

// -(1/K) sum log d + sum x, the objective whose minimizer over x >= 0 lies on
// the simplex and maximizes the likelihood.
double objective(const VectorXd& d, double mass) {
  if ((d.array() <= 0.0).any()) return kInf;
  return -d.array().log().mean() + mass;
}

// min 0.5 q'Hq + b'q over q >= 0, starting from a feasible q.
VectorXd solve_nonnegative_qp(const MatrixXd& H, const VectorXd& b, VectorXd q) {
  const Index m = b.size();
  std::vector<bool> free(static_cast<std::size_t>(m));
  for (Index i = 0; i < m; ++i) free[static_cast<std::size_t>(i)] = q[i] > 0.0;
  for (Index iter = 0; iter < 20 * m + 50; ++iter) {
    std::vector<Index> F;
    for (Index i = 0; i < m; ++i) {
      if (free[static_cast<std::size_t>(i)]) F.push_back(i);
    }
    VectorXd z = VectorXd::Zero(m);
    if (!F.empty()) {
      const auto f = static_cast<Index>(F.size());
      MatrixXd Hff(f, f);
      VectorXd rhs(f);
      for (Index i = 0; i < f; ++i) {
        rhs[i] = -b[F[static_cast<std::size_t>(i)]];
        for (Index j = 0; j < f; ++j) {
          Hff(i, j) = H(F[static_cast<std::size_t>(i)], F[static_cast<std::size_t>(j)]);
        }
      }
      const VectorXd zf = Hff.ldlt().solve(rhs);
      for (Index i = 0; i < f; ++i) z[F[static_cast<std::size_t>(i)]] = zf[i];
    }
    bool interior = true;
    for (Index i : F) interior = interior && z[i] > 0.0;
    if (interior) {
      q = z;
      const VectorXd w = H * q + b;
      Index release = -1;
      double most_negative = -1e-13;
      for (Index i = 0; i < m; ++i) {
        if (!free[static_cast<std::size_t>(i)] && w[i] < most_negative) {
          most_negative = w[i];
          release = i;
        }
      }
      if (release < 0) return q;
      free[static_cast<std::size_t>(release)] = true;
      continue;
    }
    // Step toward z until the first free coordinate hits zero.
    double step = 1.0;
    for (Index i : F) {
      if (z[i] <= 0.0) step = std::min(step, q[i] / (q[i] - z[i]));
    }
    q += step * (z - q);
    for (Index i : F) {
      if (q[i] <= 1e-300 || (z[i] <= 0.0 && q[i] <= 1e-14 * q.maxCoeff())) {
        q[i] = 0.0;
        free[static_cast<std::size_t>(i)] = false;
      }
    }
  }
  return q.cwiseMax(0.0);
}

struct WorkingSetState {
  std::vector<Index> columns;
  VectorXd x;  // weights on columns
};

VectorXd gather_columns_times(const MatrixXd& L, const WorkingSetState& s) {
  VectorXd d = VectorXd::Zero(L.rows());
  for (std::size_t j = 0; j < s.columns.size(); ++j) {
    const double xj = s.x[static_cast<Index>(j)];
    if (xj != 0.0) d.noalias() += xj * L.col(s.columns[j]);
  }
  return d;
}

// Sequential quadratic programming restricted to the working set.
int solve_restricted(const MatrixXd& L, WorkingSetState& s) {
  const Index K = L.rows();
  const auto m = static_cast<Index>(s.columns.size());
  MatrixXd Ls(K, m);
  for (Index j = 0; j < m; ++j) Ls.col(j) = L.col(s.columns[static_cast<std::size_t>(j)]);
  VectorXd d = Ls * s.x;
  double f = objective(d, s.x.sum());
  int it = 0;
  for (; it < 200; ++it) {
    const MatrixXd W = d.cwiseInverse().asDiagonal() * Ls;
    const VectorXd g = VectorXd::Ones(m) - W.colwise().sum().transpose() / K;
    double kkt = 0.0;
    for (Index j = 0; j < m; ++j) {
      kkt = std::max(kkt, s.x[j] > 0.0 ? std::abs(g[j]) : -g[j]);
    }
    if (kkt <= 1e-11) break;
    MatrixXd H = W.transpose() * W / static_cast<double>(K);
    H.diagonal().array() += 1e-10 * H.diagonal().maxCoeff() + 1e-300;
    const VectorXd q = solve_nonnegative_qp(H, g - H * s.x, s.x);
    const VectorXd p = q - s.x;
    const double slope = g.dot(p);
    if (!(slope < 0.0)) break;
    double t = 1.0;
    bool accepted = false;
    for (int ls = 0; ls < 60; ++ls, t *= 0.5) {
      const VectorXd x_new = s.x + t * p;
      const VectorXd d_new = Ls * x_new;
      const double f_new = objective(d_new, x_new.sum());
      if (f_new <= f + 1e-4 * t * slope) {
        s.x = x_new.cwiseMax(0.0);
        d = Ls * s.x;
        f = objective(d, s.x.sum());
        accepted = true;
        break;
      }
    }
    if (!accepted) break;
  }
  return it + 1;
}

NpmleFit finish(const ScaledLikelihood& lik, VectorXd x, const VectorXd& grid,
                int iterations, std::vector<double> trace,
                const NpmleOptions& options) {
  x = x.cwiseMax(0.0);
  x /= x.sum();
  const VectorXd d = lik.L * x;
  if ((d.array() <= 0.0).any()) {
    throw ConvergenceError("NPMLE assigns zero likelihood to an observation", kInf);
  }
  const double K = static_cast<double>(lik.L.rows());
  const double gap =
      (lik.L.transpose() * d.cwiseInverse()).maxCoeff() / K - 1.0;
  const double loglik = d.array().log().sum() + lik.row_log_max.sum();
  if (!(gap <= options.gap_tolerance)) {
    throw ConvergenceError("NPMLE optimality gap " + std::to_string(gap) +
                               " exceeds tolerance",
                           gap);
  }
  std::vector<double> support;
  std::vector<double> weights;
  for (Index l = 0; l < x.size(); ++l) {
    if (x[l] > 0.0) {
      support.push_back(grid[l]);
      weights.push_back(x[l]);
    }
  }
  Eigen::Map<VectorXd> w(weights.data(), static_cast<Index>(weights.size()));
  w /= w.sum();
  return NpmleFit{
      DiscreteMixture(
          Eigen::Map<VectorXd>(support.data(), static_cast<Index>(support.size())),
          w),
      loglik, std::max(gap, 0.0), iterations, std::move(trace)};
}

NpmleFit fit_em(const ScaledLikelihood& lik, const VectorXd& grid,
                const NpmleOptions& options) {
  const Index B = grid.size();
  const double K = static_cast<double>(lik.L.rows());
  const double offset = lik.row_log_max.sum();
  VectorXd x = VectorXd::Constant(B, 1.0 / static_cast<double>(B));
  VectorXd d = lik.L * x;
  double ll = d.array().log().sum() + offset;
  std::vector<double> trace;
  if (options.record_trace) trace.push_back(ll);
  int it = 0;
  while (it < options.max_iterations) {
    ++it;
    x = x.cwiseProduct(lik.L.transpose() * d.cwiseInverse()) / K;
    d = lik.L * x;
    const double ll_new = d.array().log().sum() + offset;
    if (options.record_trace) trace.push_back(ll_new);
    if (ll_new < ll - 1e-10 * (1.0 + std::abs(ll))) {
      throw NumericalError("EM log-likelihood decreased at iteration " +
                           std::to_string(it));
    }
    const double gain = (ll_new - ll) / std::max(std::abs(ll), 1e-300);
    ll = ll_new;
    if (gain < options.relative_tolerance) break;
  }
  return finish(lik, std::move(x), grid, it, std::move(trace), options);
}

NpmleFit fit_active_set(const ScaledLikelihood& lik, std::span<const double> s,
                        const VectorXd& grid, const NpmleOptions& options) {
  const Index K = lik.L.rows();
  const Index B = grid.size();
  std::vector<bool> member(static_cast<std::size_t>(B), false);
  WorkingSetState state;
  auto add = [&](Index l) {
    if (!member[static_cast<std::size_t>(l)]) {
      member[static_cast<std::size_t>(l)] = true;
      state.columns.push_back(l);
    }
  };
  // Start from the grid points nearest to a spread of sample quantiles.
  std::vector<double> sorted(s.begin(), s.end());
  std::sort(sorted.begin(), sorted.end());
  const int n_start = 10;
  for (int j = 0; j < n_start; ++j) {
    const auto pos = static_cast<std::size_t>(
        (static_cast<double>(j) + 0.5) / n_start * static_cast<double>(sorted.size()));
    const double target = std::max(sorted[std::min(pos, sorted.size() - 1)], grid[0]);
    Index best = 0;
    (grid.array().log() - std::log(target)).abs().minCoeff(&best);
    add(best);
  }
  state.x = VectorXd::Constant(static_cast<Index>(state.columns.size()),
                               1.0 / static_cast<double>(state.columns.size()));
  {
    const VectorXd d = gather_columns_times(lik.L, state);
    std::vector<Index> extra;
    for (Index k = 0; k < K; ++k) {
      if (d[k] <= 0.0) {
        Index arg = 0;
        lik.L.row(k).maxCoeff(&arg);
        extra.push_back(arg);
      }
    }
    const auto before = static_cast<Index>(state.columns.size());
    for (Index l : extra) add(l);
    const auto after = static_cast<Index>(state.columns.size());
    state.x.conservativeResize(after);
    for (Index j = before; j < after; ++j) state.x[j] = 1.0 / static_cast<double>(after);
  }

  std::vector<double> trace;
  int iterations = 0;
  const double target_gap = 0.1 * options.gap_tolerance;
  for (int outer = 0; outer < 200 && iterations < options.max_iterations; ++outer) {
    iterations += solve_restricted(lik.L, state);
    const VectorXd d = gather_columns_times(lik.L, state);
    if (options.record_trace) {
      trace.push_back(d.array().log().sum() + lik.row_log_max.sum());
    }
    const VectorXd g = VectorXd::Ones(B) -
                       lik.L.transpose() * d.cwiseInverse() / static_cast<double>(K);
    Index worst = 0;
    const double min_g = g.minCoeff(&worst);
    if (min_g >= -target_gap) break;
    // Drop columns that left the support, then add the deepest violation and
    // every local minimum of the gradient that violates.
    WorkingSetState next;
    std::vector<double> kept;
    for (std::size_t j = 0; j < state.columns.size(); ++j) {
      const double xj = state.x[static_cast<Index>(j)];
      if (xj > 0.0) {
        next.columns.push_back(state.columns[j]);
        kept.push_back(xj);
      } else {
        member[static_cast<std::size_t>(state.columns[j])] = false;
      }
    }
    state.columns = std::move(next.columns);
    add(worst);
    for (Index l = 0; l < B; ++l) {
      const bool local_min =
          (l == 0 || g[l] <= g[l - 1]) && (l == B - 1 || g[l] <= g[l + 1]);
      if (local_min && g[l] < -target_gap) add(l);
    }
    state.x = VectorXd::Zero(static_cast<Index>(state.columns.size()));
    for (std::size_t j = 0; j < kept.size(); ++j) {
      state.x[static_cast<Index>(j)] = kept[j];
    }
  }
  VectorXd x = VectorXd::Zero(B);
  for (std::size_t j = 0; j < state.columns.size(); ++j) {
    x[state.columns[j]] += state.x[static_cast<Index>(j)];
  }
  return finish(lik, std::move(x), grid, iterations, std::move(trace), options);
}

void validate_grid(const VectorXd& grid) {
  if (grid.size() < 1) throw ConfigError("NPMLE grid is empty");
  for (Index l = 0; l < grid.size(); ++l) {
    if (!(grid[l] > 0.0) || !std::isfinite(grid[l])) {
      throw DomainError("NPMLE grid points must be positive and finite");
    }
    if (l > 0 && !(grid[l] > grid[l - 1])) {
      throw ConfigError("NPMLE grid must be strictly increasing");
    }
  }
}

}  // namespace

NpmleFit npmle_fit(std::span<const double> sigma_hat2, int nu,
                   const Eigen::VectorXd& grid, const NpmleOptions& options) {
  if (sigma_hat2.empty()) throw ShapeError("NPMLE needs at least one observation");
  validate_grid(grid);
  const ScaledLikelihood lik = build_likelihood(sigma_hat2, nu, grid);
  switch (options.solver) {
    case NpmleSolver::em:
      return fit_em(lik, grid, options);
    case NpmleSolver::active_set:
      return fit_active_set(lik, sigma_hat2, grid, options);
  }
  throw ConfigError("unknown NPMLE solver");
}

double mixture_loglik(std::span<const double> sigma_hat2, int nu,
                      const DiscreteMixture& G) {
  double total = 0.0;
  Eigen::VectorXd terms(G.size());
  for (double s : sigma_hat2) {
    for (Index l = 0; l < G.size(); ++l) {
      terms[l] = log_chisq_scale_density(s, G.support()[l], nu);
    }
    total += log_sum_exp(terms, G.weights());
  }
  return total;
}

}  // namespace cev
