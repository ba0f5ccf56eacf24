#include <gtest/gtest.h>

#include <algorithm>
#include <boost/math/distributions/chi_squared.hpp>
#include <cmath>
#include <limits>
#include <numeric>
#include <Eigen/LU>
#include <vector>

#include "cev/asymptotics/rng.hpp"
#include "cev/core/errors.hpp"
#include "cev/core/vectors.hpp"
#include "cev/mixtures/likelihood.hpp"
#include "cev/mixtures/localization.hpp"
#include "cev/mixtures/simplex.hpp"
#include "cev/mixtures/universal.hpp"

using namespace cev;
using Eigen::MatrixXd;
using Eigen::VectorXd;

namespace {

std::vector<double> variances(RngStream& rng, int K, int nu, double lo, double hi) {
  std::vector<double> out;
  for (int k = 0; k < K; ++k) {
    const double sigma2 = rng.uniform(lo, hi);
    double sum = 0.0;
    for (int i = 0; i < nu; ++i) {
      const double z = rng.normal();
      sum += z * z;
    }
    out.push_back(sigma2 * sum / nu);
  }
  return out;
}

double marginal_cdf(double t, const DiscreteMixture& G, int nu) {
  boost::math::chi_squared chi(nu);
  double F = 0.0;
  for (Index j = 0; j < G.size(); ++j) {
    F += G.weights()[j] * boost::math::cdf(chi, nu * t / G.support()[j]);
  }
  return F;
}

// Best basic feasible solution by enumerating every column subset.
double brute_lp(const MatrixXd& A, const VectorXd& b, const VectorXd& c) {
  const Index m = A.rows(), n = A.cols();
  double best = -std::numeric_limits<double>::infinity();
  std::vector<bool> pick(static_cast<std::size_t>(n), false);
  std::fill(pick.begin(), pick.begin() + m, true);
  do {
    std::vector<Index> cols;
    for (Index j = 0; j < n; ++j) {
      if (pick[static_cast<std::size_t>(j)]) cols.push_back(j);
    }
    MatrixXd B(m, m);
    for (Index i = 0; i < m; ++i) B.col(i) = A.col(cols[static_cast<std::size_t>(i)]);
    Eigen::FullPivLU<MatrixXd> lu(B);
    if (lu.rank() < m) continue;
    const VectorXd x = lu.solve(b);
    if ((x.array() < -1e-9).any()) continue;
    double obj = 0.0;
    for (Index i = 0; i < m; ++i) obj += c[cols[static_cast<std::size_t>(i)]] * x[i];
    best = std::max(best, obj);
  } while (std::prev_permutation(pick.begin(), pick.end()));
  return best;
}

}  // namespace

TEST(Localization, RadiusExamples) {
  EXPECT_NEAR(dkw_radius(2000, 0.01), std::sqrt((1 + std::log(200.0)) / 4000.0), 1e-15);
  EXPECT_NEAR(dkw_radius(2000, 0.01), 0.039681, 1e-6);
  EXPECT_NEAR(dkw_radius(1, 2.0 / std::exp(1.0)), 1.0, 1e-15);
  EXPECT_THROW(dkw_radius(10, 0.0), DomainError);
}

TEST(Localization, ConstraintPoints) {
  const std::vector<double> few = {3.0, 1.0, 2.0, 1.0};
  const auto a = build_localization(few, 0.05, 10);
  EXPECT_EQ(a.constraint_points, (std::vector<double>{1.0, 2.0, 3.0}));
  EXPECT_EQ(a.ecdf(1.0), 0.5);
  EXPECT_EQ(a.ecdf(0.5), 0.0);
  std::vector<double> many(99);
  std::iota(many.begin(), many.end(), 1.0);
  const auto b = build_localization(many, 0.05, 9);
  ASSERT_EQ(b.constraint_points.size(), 9u);
  EXPECT_EQ(b.constraint_points.front(), 10.0);
  EXPECT_EQ(b.constraint_points.back(), 90.0);
}

TEST(Localization, KsDistanceMatchesJumpFormula) {
  RngStream rng(71, 0);
  for (int trial = 0; trial < 20; ++trial) {
    const int nu = 2 + static_cast<int>(rng() % 6);
    const auto s = variances(rng, 50, nu, 0.5, 2.0);
    VectorXd sup(3), w(3);
    sup << 0.6, 1.0, 1.8;
    w << 0.3, 0.3, 0.4;
    const DiscreteMixture G(sup, w);
    const auto loc = build_localization(s, 0.05);
    auto sorted = s;
    std::sort(sorted.begin(), sorted.end());
    double want = 0.0;
    const double K = static_cast<double>(sorted.size());
    for (std::size_t i = 0; i < sorted.size(); ++i) {
      const double F = marginal_cdf(sorted[i], G, nu);
      want = std::max({want, std::abs((i + 1) / K - F), std::abs(i / K - F)});
    }
    EXPECT_NEAR(ks_distance(loc, G, nu), want, 1e-12);
    EXPECT_EQ(contains(loc, G, nu), want <= loc.radius);
  }
}

TEST(Simplex, SmallKnownProgram) {
  // max 3x + 2y s.t. x + y + s1 = 4, x + 3y + s2 = 6.
  MatrixXd A(2, 4);
  A << 1, 1, 1, 0, 1, 3, 0, 1;
  VectorXd b(2);
  b << 4, 6;
  DenseSimplex lp(A, b);
  VectorXd c(4);
  c << 3, 2, 0, 0;
  EXPECT_NEAR(lp.maximize(c), 12.0, 1e-12);
  EXPECT_NEAR(lp.solution()[0], 4.0, 1e-12);
  c << 1, 2, 0, 0;
  EXPECT_NEAR(lp.maximize(c), 5.0, 1e-12);
}

TEST(Simplex, Infeasible) {
  MatrixXd A(2, 2);
  A << 1, 1, 1, 1;
  VectorXd b(2);
  b << 1, 2;
  EXPECT_THROW(DenseSimplex(A, b), InfeasibleError);
}

TEST(Simplex, MatchesVertexEnumeration) {
  RngStream rng(72, 0);
  for (int trial = 0; trial < 300; ++trial) {
    const Index m = 2 + static_cast<Index>(rng() % 3);
    const Index n = m + 2 + static_cast<Index>(rng() % 4);
    MatrixXd A(m, n);
    for (Index i = 0; i < m; ++i) {
      for (Index j = 0; j < n; ++j) A(i, j) = std::floor(rng.uniform() * 4.0);
    }
    A.row(0).setOnes();  // bounded: the variables live on a simplex
    if (Eigen::FullPivLU<MatrixXd>(A).rank() < m) continue;
    VectorXd x0(n);
    for (Index j = 0; j < n; ++j) x0[j] = rng.uniform() < 0.5 ? 0.0 : rng.uniform();
    x0 /= std::max(x0.sum(), 1e-3);
    if (x0.sum() == 0.0) x0[0] = 1.0;
    const VectorXd b = A * x0;
    VectorXd c(n);
    for (Index j = 0; j < n; ++j) c[j] = std::floor(rng.uniform() * 5.0);
    DenseSimplex lp(A, b);
    const double got = lp.maximize(c);
    EXPECT_NEAR(got, brute_lp(A, b, c), 1e-9);
    const VectorXd x = lp.solution();
    EXPECT_LE((A * x - b).cwiseAbs().maxCoeff(), 1e-9);
    EXPECT_GE(x.minCoeff(), -1e-12);
  }
}

TEST(Universal, UiSelfRatioIsOne) {
  RngStream rng(73, 0);
  VectorXd x(5);
  for (Index i = 0; i < 5; ++i) x[i] = 1.3 * rng.normal();
  const auto stats = SummaryStats::from_sample(x);
  const VectorXd grid = log_grid(0.1, 10.0, 60);
  const VectorXd ll = null_logliks(stats, grid);
  EXPECT_NEAR(ui_evalue(stats, ll.maxCoeff(), grid), 1.0, 1e-12);
  const VectorXd single = VectorXd::Constant(1, 2.0);
  const double num = normal_loglik(x, 0.8, 2.0);
  EXPECT_NEAR(ui_evalue(stats, num, single), std::exp(num - normal_loglik(x, 0.0, 2.0)), 1e-12);
}

TEST(Universal, LuiSubsets) {
  RngStream rng(74, 0);
  VectorXd x(6);
  for (Index i = 0; i < 6; ++i) x[i] = 0.5 + rng.normal();
  const VectorXd grid = log_grid(0.1, 10.0, 30);
  const LogDensity num = [](const VectorXd& v) { return normal_loglik(v, 0.5, 1.0); };
  std::vector<Index> all(30);
  std::iota(all.begin(), all.end(), 0);
  EXPECT_NEAR(lui_evalue(x, num, grid, all), ui_evalue(x, num, grid), 1e-12);
  const std::vector<Index> one = {7};
  EXPECT_NEAR(lui_evalue(x, num, grid, one),
              std::exp(num(x) - normal_loglik(x, 0.0, grid[7])), 1e-12);
  EXPECT_THROW(lui_evalue(x, num, grid, std::vector<Index>{}), ConfigError);
}

TEST(Universal, VacuousBandReducesToUi) {
  RngStream rng(75, 0);
  const int n = 5;
  std::vector<SummaryStats> stats;
  std::vector<double> s;
  for (int k = 0; k < 40; ++k) {
    VectorXd x(n);
    for (int i = 0; i < n; ++i) x[i] = 1.2 * rng.normal();
    stats.push_back(SummaryStats::from_sample(x));
    s.push_back(stats.back().sigma_hat2);
  }
  auto loc = build_localization(s, 0.05);
  loc.radius = 1.5;
  const VectorXd grid = log_grid(0.05, 20.0, 80);
  CuiSolver cui(loc, grid, n - 1);
  for (const auto& st : stats) {
    const double num = normal_loglik(st, 0.7, 1.0);
    EXPECT_NEAR(cui.evalue(st, num), ui_evalue(st, num, grid), 1e-9 * ui_evalue(st, num, grid));
  }
}

TEST(Universal, CuiDominatesUi) {
  RngStream rng(76, 0);
  const int n = 5;
  std::vector<SummaryStats> stats;
  std::vector<double> s;
  for (int k = 0; k < 400; ++k) {
    VectorXd x(n);
    const double sd = std::sqrt(rng.uniform(0.5, 2.0));
    for (int i = 0; i < n; ++i) x[i] = sd * rng.normal();
    stats.push_back(SummaryStats::from_sample(x));
    s.push_back(stats.back().sigma_hat2);
  }
  const auto loc = build_localization(s, 0.01);
  const VectorXd grid = log_grid(1e-2, 1e2, 150);
  CuiSolver cui(loc, grid, n - 1);
  VectorXd nums(static_cast<Index>(stats.size()));
  for (std::size_t k = 0; k < stats.size(); ++k) {
    nums[static_cast<Index>(k)] = normal_loglik(stats[k], 1.0, 1.0);
  }
  const VectorXd batch = cui.evalues(stats, nums);
  for (std::size_t k = 0; k < stats.size(); ++k) {
    const double ui = ui_evalue(stats[k], nums[static_cast<Index>(k)], grid);
    EXPECT_GE(batch[static_cast<Index>(k)], ui * (1 - 1e-9));
    if (k % 50 == 0) {
      EXPECT_NEAR(cui.evalue(stats[k], nums[static_cast<Index>(k)]), batch[static_cast<Index>(k)],
                  1e-9 * batch[static_cast<Index>(k)]);
    }
  }
  EXPECT_THROW(cui.log_denominator(SummaryStats::checked(0.0, 1.0, 1.0 * 3 / 2, 3)), ShapeError);
}

TEST(Universal, InfeasibleBand) {
  RngStream rng(77, 0);
  const auto s = variances(rng, 2000, 4, 0.9, 1.1);
  const auto loc = build_localization(s, 0.01);
  EXPECT_THROW(CuiSolver(loc, log_grid(50.0, 100.0, 10), 4), InfeasibleError);
}
