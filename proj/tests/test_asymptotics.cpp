#include <gtest/gtest.h>

#include <atomic>
#include <cmath>
#include <numeric>
#include <set>
#include <stdexcept>
#include <vector>

#include "cev/asymptotics/budget.hpp"
#include "cev/asymptotics/clt.hpp"
#include "cev/asymptotics/parallel.hpp"
#include "cev/asymptotics/rng.hpp"
#include "cev/core/errors.hpp"
#include "cev/mixtures/summary.hpp"

using namespace cev;
using Eigen::VectorXd;

namespace {

SummaryStats stats_of(std::initializer_list<double> v) {
  VectorXd x(static_cast<Index>(v.size()));
  Index i = 0;
  for (double d : v) x[i++] = d;
  return SummaryStats::from_sample(x);
}

NullDraw<VectorXd> normal_nulls(RngStream& rng, Index K) {
  VectorXd z(K);
  for (Index k = 0; k < K; ++k) z[k] = rng.normal();
  return {z, NullMask::Constant(K, true)};
}

EVector gaussian_lr(const VectorXd& z) {
  return EVector((z.array() - 0.5).exp().matrix());
}

}  // namespace

TEST(Philox, KnownAnswers) {
  using A4 = std::array<std::uint32_t, 4>;
  EXPECT_EQ(philox4x32({0, 0, 0, 0}, {0, 0}),
            (A4{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8}));
  EXPECT_EQ(philox4x32({0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff}, {0xffffffff, 0xffffffff}),
            (A4{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd}));
  EXPECT_EQ(philox4x32({0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344}, {0xa4093822, 0x299f31d0}),
            (A4{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1}));
}

TEST(Rng, StreamsAreDeterministicAndDistinct) {
  RngStream a(7, 3), b(7, 3), c(7, 4), d(8, 3);
  std::set<std::uint32_t> seen;
  for (int i = 0; i < 100; ++i) {
    const auto x = a();
    EXPECT_EQ(x, b());
    seen.insert(x);
    seen.insert(c());
    seen.insert(d());
  }
  EXPECT_GT(seen.size(), 295u);
}

TEST(Rng, Moments) {
  RngStream rng(1, 0);
  const int n = 200000;
  double u = 0, z = 0, z2 = 0, e = 0;
  double umin = 1, umax = 0;
  for (int i = 0; i < n; ++i) {
    const double x = rng.uniform();
    umin = std::min(umin, x);
    umax = std::max(umax, x);
    u += x;
    const double g = rng.normal();
    z += g;
    z2 += g * g;
    e += rng.exponential();
  }
  EXPECT_GT(umin, 0.0);
  EXPECT_LT(umax, 1.0);
  EXPECT_NEAR(u / n, 0.5, 4 * std::sqrt(1.0 / 12 / n));
  EXPECT_NEAR(z / n, 0.0, 4 / std::sqrt(n));
  EXPECT_NEAR(z2 / n, 1.0, 4 * std::sqrt(2.0 / n));
  EXPECT_NEAR(e / n, 1.0, 4 / std::sqrt(n));
}

TEST(Parallel, VisitsEveryIndexOnce) {
  for (int threads : {1, 3, 8}) {
    std::vector<std::atomic<int>> hits(1000);
    parallel_for(hits.size(), threads, [&](std::size_t i) { hits[i]++; });
    for (const auto& h : hits) EXPECT_EQ(h.load(), 1);
  }
}

TEST(Parallel, RethrowsAndStops) {
  EXPECT_THROW(parallel_for(100, 4,
                            [](std::size_t i) {
                              if (i == 37) throw DomainError("boom");
                            }),
               DomainError);
}

TEST(Parallel, PairwiseSum) {
  std::vector<double> v(1001);
  std::iota(v.begin(), v.end(), 0.0);
  EXPECT_EQ(pairwise_sum(v), 500500.0);
  EXPECT_EQ(pairwise_sum(std::vector<double>{}), 0.0);
  RngStream rng(2, 0);
  std::vector<double> w(12345);
  long double exact = 0;
  for (auto& x : w) {
    x = rng.uniform() * 1e6;
    exact += x;
  }
  EXPECT_NEAR(pairwise_sum(w), static_cast<double>(exact), 1e-9 * static_cast<double>(exact));
}

TEST(Clt, Examples) {
  const auto s = stats_of({1.0, -1.0, 0.5, -0.5});
  EXPECT_EQ(clt_evalue(s, 0.0, false), 1.0);
  EXPECT_NEAR(clt_evalue(s, 1.0, false), std::exp(-0.5), 1e-15);
  const auto pos = stats_of({1.0, 2.0, 0.3});
  const auto neg = stats_of({-1.0, -2.0, -0.3});
  EXPECT_NEAR(clt_evalue(pos, 0.8, true), clt_evalue(neg, 0.8, true), 1e-12);
  // T = sqrt(n) xbar / sqrt(s2).
  const double T = std::sqrt(3.0) * pos.xbar / std::sqrt(pos.s2);
  EXPECT_NEAR(clt_evalue(pos, 0.8, false), std::exp(0.8 * T - 0.32), 1e-12);
  EXPECT_THROW(clt_evalue(stats_of({0.0, 0.0}), 1.0, false), DegenerateSampleError);
}

TEST(Clt, MixtureForms) {
  const auto s = stats_of({0.4, 1.1, -0.2, 0.9});
  EXPECT_NEAR(mixture_clt_evalue(s, DiscreteMixture::point_mass(0.7)), clt_evalue(s, 0.7, false),
              1e-12);
  VectorXd sup(2), w(2);
  sup << -0.7, 0.7;
  w << 0.5, 0.5;
  EXPECT_NEAR(mixture_clt_evalue(s, DiscreteMixture(sup, w)), clt_evalue(s, 0.7, true), 1e-12);
  VectorXd sup3(3), w3(3);
  sup3 << -1.0, 0.2, 2.0;
  w3 << 0.2, 0.5, 0.3;
  const double want = 0.2 * std::exp(-0.5) + 0.5 * std::exp(-0.02) + 0.3 * std::exp(-2.0);
  EXPECT_NEAR(mixture_clt_evalue(stats_of({1.0, -1.0}), DiscreteMixture(sup3, w3)), want, 1e-12);
  EXPECT_LE(want, 1.0);
}

TEST(Clt, NullMeanShrinksAndAlternativeGrows) {
  double prev_median = 0.0;
  for (int n : {100, 1000, 10000}) {
    const int reps = 1000;
    std::vector<double> null_e(reps), alt_e(reps);
    parallel_for(reps, 4, [&](std::size_t r) {
      RngStream rng(90 + static_cast<std::uint64_t>(n), r);
      VectorXd x(n), y(n);
      for (int i = 0; i < n; ++i) {
        x[i] = rng.normal();
        y[i] = 0.5 + rng.normal();
      }
      null_e[r] = clt_evalue(SummaryStats::from_sample(x), 1.0, false);
      alt_e[r] = clt_evalue(SummaryStats::from_sample(y), 1.0, false);
    });
    const auto est = summarize_budgets(null_e);
    EXPECT_LE(est.mean_budget, 1.0 + 3 * est.std_error + 5.0 / n);
    std::nth_element(alt_e.begin(), alt_e.begin() + reps / 2, alt_e.end());
    const double median = alt_e[reps / 2];
    EXPECT_GT(median, prev_median);
    prev_median = median;
  }
}

TEST(SumOfSquares, Examples) {
  const std::vector<SummaryStats> one = {stats_of({1.0, -1.0})};
  EXPECT_NEAR(sum_of_squares_compound(one)[0], 0.5, 1e-15);
  const std::vector<SummaryStats> same(4, stats_of({0.3, 1.2, -0.7}));
  const EVector e = sum_of_squares_compound(same);
  for (Index k = 1; k < 4; ++k) EXPECT_EQ(e[k], e[0]);
  EXPECT_THROW(sum_of_squares_compound(std::vector<SummaryStats>(2, stats_of({0.0, 0.0}))),
               DegenerateSampleError);
}

namespace {

NullDraw<std::vector<SummaryStats>> equal_variance_nulls(RngStream& rng, int K, int n) {
  std::vector<SummaryStats> stats;
  for (int k = 0; k < K; ++k) {
    VectorXd x(n);
    for (int i = 0; i < n; ++i) x[i] = rng.normal();
    stats.push_back(SummaryStats::from_sample(x));
  }
  return {stats, NullMask::Constant(K, true)};
}

// With equal variances the budget is (n-1)/n (1 + B/A) with B ~ chi2_K and
// A ~ chi2_{(n-1)K} independent, so its mean has a closed form.
double equal_variance_budget(int K, int n) {
  const double m = static_cast<double>((n - 1) * K);
  return (n - 1.0) / n * (1.0 + K / (m - 2.0));
}

}  // namespace

TEST(SumOfSquares, BudgetMatchesClosedForm) {
  const int K = 6, n = 10;
  MonteCarloOptions mc;
  mc.replications = 40000;
  mc.seed = 3;
  mc.threads = 4;
  const auto b = estimate_compound_budget(
      [&](RngStream& rng) { return equal_variance_nulls(rng, K, n); },
      [](const std::vector<SummaryStats>& s) { return sum_of_squares_compound(s); }, mc);
  EXPECT_NEAR(b.mean_budget, equal_variance_budget(K, n), 4 * b.std_error);
  EXPECT_LT(equal_variance_budget(500, n) - 1.0, 1e-4);
}

TEST(SumOfSquares, BudgetAtLargeK) {
  auto gen = [](RngStream& rng) {
    std::vector<SummaryStats> stats;
    for (int k = 0; k < 500; ++k) {
      VectorXd x(10);
      const double sd = 0.5 + (k % 5) * 0.3;
      for (int i = 0; i < 10; ++i) x[i] = sd * rng.normal();
      stats.push_back(SummaryStats::from_sample(x));
    }
    return NullDraw<std::vector<SummaryStats>>{stats, NullMask::Constant(500, true)};
  };
  MonteCarloOptions mc;
  mc.replications = 2000;
  mc.seed = 3;
  mc.threads = 4;
  const auto b = estimate_compound_budget(
      gen, [](const std::vector<SummaryStats>& s) { return sum_of_squares_compound(s); }, mc);
  EXPECT_LE(b.mean_budget, 1.0 + 3 * b.std_error);
}

TEST(Budget, ConstantIsExactlyOne) {
  MonteCarloOptions mc;
  mc.replications = 500;
  const auto b = estimate_compound_budget(
      [](RngStream& rng) { return normal_nulls(rng, 7); },
      [](const VectorXd& z) { return EVector(VectorXd::Ones(z.size())); }, mc);
  EXPECT_EQ(b.mean_budget, 1.0);
  EXPECT_EQ(b.std_error, 0.0);
  EXPECT_EQ(b.replications, 500);
}

TEST(Budget, BernoulliMatchesTruth) {
  // E = 3 with probability 1/4, else 0: mean 3/4.
  MonteCarloOptions mc;
  mc.replications = 20000;
  mc.seed = 4;
  auto gen = [](RngStream& rng) {
    VectorXd u(5);
    for (Index k = 0; k < 5; ++k) u[k] = rng.uniform();
    return NullDraw<VectorXd>{u, NullMask::Constant(5, true)};
  };
  const auto b = estimate_compound_budget(
      gen, [](const VectorXd& u) { return EVector(3.0 * (u.array() < 0.25).cast<double>().matrix()); },
      mc);
  EXPECT_NEAR(b.mean_budget, 0.75, 3 * b.std_error);
}

TEST(Budget, ThreadCountDoesNotMatter) {
  MonteCarloOptions mc;
  mc.replications = 1000;
  mc.seed = 5;
  auto gen = [](RngStream& rng) { return normal_nulls(rng, 20); };
  mc.threads = 1;
  const auto a = estimate_compound_budget(gen, gaussian_lr, mc);
  mc.threads = 6;
  const auto b = estimate_compound_budget(gen, gaussian_lr, mc);
  EXPECT_EQ(a.mean_budget, b.mean_budget);
  EXPECT_EQ(a.std_error, b.std_error);
}

TEST(Budget, OnlyNullsCountAndCapApplies) {
  MonteCarloOptions mc;
  mc.replications = 100;
  auto gen = [](RngStream&) {
    NullMask m(4);
    m << true, false, true, false;
    return NullDraw<VectorXd>{VectorXd::Zero(4), m};
  };
  auto con = [](const VectorXd&) {
    VectorXd e(4);
    e << 10.0, 100.0, 0.0, 100.0;
    return EVector(e);
  };
  EXPECT_EQ(estimate_compound_budget(gen, con, mc).mean_budget, 2.5);
  const auto capped = estimate_compound_budget(gen, con, mc, 2.0);
  EXPECT_EQ(capped.mean_budget, 0.5);
  EXPECT_EQ(capped.trimmed_at, 2.0);
}

TEST(Budget, Errors) {
  MonteCarloOptions mc;
  mc.replications = 99;
  auto gen = [](RngStream& rng) { return normal_nulls(rng, 3); };
  EXPECT_THROW(estimate_compound_budget(gen, gaussian_lr, mc), ConfigError);
  mc.replications = 999;
  const std::vector<double> eps = {0.0};
  EXPECT_THROW(estimate_approx_budget(gen, gaussian_lr, mc, eps), ConfigError);
  mc.replications = 100;
  auto no_nulls = [](RngStream&) { return NullDraw<VectorXd>{VectorXd::Zero(2), NullMask::Constant(2, false)}; };
  EXPECT_THROW(estimate_compound_budget(no_nulls, gaussian_lr, mc), ConfigError);
}

TEST(Budget, ApproximateTrimming) {
  MonteCarloOptions mc;
  mc.replications = 4000;
  mc.seed = 6;
  mc.threads = 4;
  auto gen = [](RngStream& rng) { return normal_nulls(rng, 50); };
  const std::vector<double> eps = {0.0, 1.0};
  const auto exact = estimate_approx_budget(gen, gaussian_lr, mc, eps);
  EXPECT_LE(exact[0].delta(), 0.02);
  auto doubled = [](const VectorXd& z) { return EVector(2.0 * gaussian_lr(z).values()); };
  const auto inflated = estimate_approx_budget(gen, doubled, mc, eps);
  EXPECT_GT(inflated[0].delta(), 0.3);
  EXPECT_LE(inflated[1].delta(), 0.02);
  // Budgets {3, 0, 1, 0} already average 1. For {3, 3, 1, 0} one of the
  // four replications must go.
  const std::vector<double> zero = {0.0};
  EXPECT_EQ(trimmed_budgets(std::vector<double>{3.0, 0.0, 1.0, 0.0}, zero)[0].delta(), 0.0);
  EXPECT_EQ(trimmed_budgets(std::vector<double>{3.0, 3.0, 1.0, 0.0}, zero)[0].delta(), 0.25);
  const std::vector<double> negative = {-0.9};
  EXPECT_THROW(trimmed_budgets(std::vector<double>{1.0}, negative), DomainError);
}
