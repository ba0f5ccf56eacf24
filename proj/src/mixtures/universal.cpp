#include "cev/mixtures/universal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "cev/core/errors.hpp"
#include "cev/mixtures/likelihood.hpp"

namespace cev {

namespace {

using Eigen::Index;
using Eigen::MatrixXd;
using Eigen::VectorXd;

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

VectorXd raw_null_logliks(const VectorXd& x, const VectorXd& grid) {
  if (grid.size() == 0) throw ConfigError("variance grid is empty");
  VectorXd out(grid.size());
  for (Index l = 0; l < grid.size(); ++l) out[l] = normal_loglik(x, 0.0, grid[l]);
  return out;
}

DenseSimplex build_band_lp(const Localization& loc, const VectorXd& grid, int nu) {
  if (loc.ecdf_knots.empty()) throw ConfigError("localization has no sample");
  const Index B = grid.size();
  if (B == 0) throw ConfigError("variance grid is empty");
  struct Row {
    VectorXd cdf;
    double rhs;
    double slack_sign;
  };
  std::vector<Row> rows;
  for (double t : loc.constraint_points) {
    const double level = loc.ecdf(t);
    VectorXd cdf(B);
    for (Index l = 0; l < B; ++l) cdf[l] = chisq_scale_cdf(t, grid[l], nu);
    // Rows whose bound cannot bind are skipped.
    if (level + loc.radius < 1.0) rows.push_back({cdf, level + loc.radius, 1.0});
    if (level - loc.radius > 0.0) rows.push_back({cdf, level - loc.radius, -1.0});
  }
  const auto n_band = static_cast<Index>(rows.size());
  MatrixXd A = MatrixXd::Zero(1 + n_band, B + n_band);
  VectorXd b(1 + n_band);
  A.row(0).head(B).setOnes();
  b[0] = 1.0;
  for (Index r = 0; r < n_band; ++r) {
    const Row& row = rows[static_cast<std::size_t>(r)];
    A.row(1 + r).head(B) = row.cdf.transpose();
    A(1 + r, B + r) = row.slack_sign;
    b[1 + r] = row.rhs;
  }
  return DenseSimplex(std::move(A), std::move(b));
}

}  // namespace

VectorXd null_logliks(const SummaryStats& stats, const VectorXd& grid) {
  if (grid.size() == 0) throw ConfigError("variance grid is empty");
  VectorXd out(grid.size());
  for (Index l = 0; l < grid.size(); ++l) out[l] = normal_loglik(stats, 0.0, grid[l]);
  return out;
}

double ui_evalue(const VectorXd& x, const LogDensity& log_numerator,
                 const VectorXd& grid) {
  return ratio_from_logs(log_numerator(x), raw_null_logliks(x, grid).maxCoeff());
}

double ui_evalue(const SummaryStats& stats, double log_numerator,
                 const VectorXd& grid) {
  return ratio_from_logs(log_numerator, null_logliks(stats, grid).maxCoeff());
}

double lui_evalue(const VectorXd& x, const LogDensity& log_numerator,
                  const VectorXd& grid, std::span<const Index> conf_subset) {
  if (conf_subset.empty()) throw ConfigError("LUI confidence subset is empty");
  double best = kNegInf;
  for (Index l : conf_subset) {
    if (l < 0 || l >= grid.size()) throw ShapeError("LUI subset index outside the grid");
    best = std::max(best, normal_loglik(x, 0.0, grid[l]));
  }
  return ratio_from_logs(log_numerator(x), best);
}

CuiSolver::CuiSolver(const Localization& loc, VectorXd grid, int nu)
    : grid_(std::move(grid)), nu_(nu), lp_(build_band_lp(loc, grid_, nu)) {}

double CuiSolver::log_denominator(const SummaryStats& stats) {
  if (stats.n - 1 != nu_) {
    throw ShapeError("CUI built for nu = " + std::to_string(nu_) +
                     " but the sample has n = " + std::to_string(stats.n));
  }
  const VectorXd logp = null_logliks(stats, grid_);
  const double top = logp.maxCoeff();
  VectorXd c = VectorXd::Zero(lp_.cols());
  c.head(grid_.size()) = (logp.array() - top).exp().matrix();
  const double obj = lp_.maximize(c);
  return obj > 0.0 ? top + std::log(obj) : kNegInf;
}

double CuiSolver::evalue(const SummaryStats& stats, double log_numerator) {
  return ratio_from_logs(log_numerator, log_denominator(stats));
}

VectorXd CuiSolver::evalues(std::span<const SummaryStats> stats,
                            const VectorXd& log_numerators) {
  const auto K = static_cast<Index>(stats.size());
  if (log_numerators.size() != K) throw ShapeError("CUI numerators have the wrong length");
  std::vector<Index> order(static_cast<std::size_t>(K));
  std::iota(order.begin(), order.end(), Index{0});
  std::sort(order.begin(), order.end(), [&](Index a, Index b) {
    return stats[static_cast<std::size_t>(a)].s2 < stats[static_cast<std::size_t>(b)].s2;
  });
  VectorXd out(K);
  for (Index k : order) out[k] = evalue(stats[static_cast<std::size_t>(k)], log_numerators[k]);
  return out;
}

double cui_evalue(const VectorXd& x, const LogDensity& log_numerator,
                  const Localization& loc, const VectorXd& grid, int nu) {
  if (x.size() != nu + 1) throw ShapeError("CUI sample size does not match nu");
  CuiSolver solver(loc, grid, nu);
  return solver.evalue(SummaryStats::from_sample(x), log_numerator(x));
}

}  // namespace cev
