#include <gtest/gtest.h>

#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/distributions/non_central_t.hpp>
#include <boost/math/distributions/normal.hpp>
#include <boost/math/distributions/students_t.hpp>
#include <cmath>
#include <numbers>

#include "cev/asymptotics/rng.hpp"
#include "cev/core/errors.hpp"
#include "cev/mixtures/likelihood.hpp"
#include "cev/mixtures/mixture.hpp"
#include "cev/mixtures/summary.hpp"
#include "cev/mixtures/ttest.hpp"

using namespace cev;
using Eigen::VectorXd;

namespace {

VectorXd sample(RngStream& rng, int n, double mean, double sd) {
  VectorXd x(n);
  for (int i = 0; i < n; ++i) x[i] = mean + sd * rng.normal();
  return x;
}

}  // namespace

TEST(Summary, FromSample) {
  VectorXd x(2);
  x << 1.0, -1.0;
  const auto s = SummaryStats::from_sample(x);
  EXPECT_EQ(s.xbar, 0.0);
  EXPECT_EQ(s.s2, 1.0);
  EXPECT_EQ(s.sigma_hat2, 2.0);
  EXPECT_EQ(s.dof(), 1);
  EXPECT_THROW(SummaryStats::from_sample(VectorXd::Ones(1)), DomainError);
}

TEST(Summary, IdentityCheck) {
  EXPECT_NO_THROW(SummaryStats::checked(1.0, 3.0, 2.5, 5));
  EXPECT_THROW(SummaryStats::checked(1.0, 3.0, 2.0, 5), DomainError);
  EXPECT_THROW(SummaryStats::from_sample(VectorXd::Zero(3)).t_statistic(), DegenerateSampleError);
}

TEST(ChiSquareScale, Examples) {
  EXPECT_NEAR(chisq_scale_density(1.0, 1.0, 4), 4.0 * std::exp(-2.0), 1e-14);
  EXPECT_EQ(chisq_scale_density(0.0, 1.0, 4), 0.0);
  EXPECT_THROW(chisq_scale_density(1.0, 1.0, 1), DomainError);
}

TEST(ChiSquareScale, MatchesBoostChiSquared) {
  // nu * sigma_hat2 / sigma2 is chi-square with nu degrees of freedom.
  for (int nu : {2, 3, 4, 9, 19}) {
    for (double sigma2 : {0.5, 1.0, 2.0}) {
      boost::math::chi_squared chi(nu);
      for (double t : {0.05, 0.3, 1.0, 2.7, 8.0}) {
        const double y = nu * t / sigma2;
        EXPECT_NEAR(chisq_scale_density(t, sigma2, nu), boost::math::pdf(chi, y) * nu / sigma2,
                    1e-12);
        EXPECT_NEAR(chisq_scale_cdf(t, sigma2, nu), boost::math::cdf(chi, y), 1e-12);
      }
    }
  }
}

TEST(ChiSquareScale, IntegratesToOne) {
  for (int nu : {2, 4, 9}) {
    for (double sigma2 : {0.5, 1.0, 2.0}) {
      // Simpson on [0, 60 sigma2] after the substitution t = u^2, which
      // smooths the behaviour at 0.
      const int m = 20000;
      const double hi = std::sqrt(60.0 * sigma2);
      const double h = hi / m;
      auto f = [&](double u) { return chisq_scale_density(u * u, sigma2, nu) * 2.0 * u; };
      double sum = f(0.0) + f(hi);
      for (int i = 1; i < m; ++i) sum += (i % 2 ? 4.0 : 2.0) * f(i * h);
      EXPECT_NEAR(sum * h / 3.0, 1.0, 1e-8) << nu << " " << sigma2;
    }
  }
}

TEST(NormalLoglik, Examples) {
  VectorXd one(1);
  one << 1.5 * std::sqrt(2.0);
  EXPECT_NEAR(normal_loglik(one, 1.5, 2.0), std::log(1.0 / std::sqrt(2 * std::numbers::pi * 2.0)),
              1e-14);
  EXPECT_NEAR(normal_loglik(VectorXd::Zero(2), 0.0, 1.0), -std::log(2 * std::numbers::pi), 1e-14);
}

TEST(NormalLoglik, StatsOverloadMatchesBoost) {
  RngStream rng(41, 0);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 10);
    const double lambda = 2.0 * rng.normal();
    const double sigma2 = 0.2 + 3.0 * rng.uniform();
    const VectorXd x = sample(rng, n, 0.3, 1.2);
    boost::math::normal dist(lambda * std::sqrt(sigma2), std::sqrt(sigma2));
    double want = 0.0;
    for (int i = 0; i < n; ++i) want += std::log(boost::math::pdf(dist, x[i]));
    EXPECT_NEAR(normal_loglik(x, lambda, sigma2), want, 1e-10);
    EXPECT_NEAR(normal_loglik(SummaryStats::from_sample(x), lambda, sigma2), want, 1e-9);
  }
}

TEST(BayesFactor, Identities) {
  RngStream rng(42, 0);
  for (int trial = 0; trial < 100; ++trial) {
    const VectorXd x = sample(rng, 5, rng.normal(), 1.0 + rng.uniform());
    const double s2 = 0.5 + rng.uniform();
    const auto G = DiscreteMixture::point_mass(s2);
    EXPECT_NEAR(bayes_factor(x, G, JointMixture::product(DiscreteMixture::point_mass(0.0), G)),
                1.0, 1e-12);
    VectorXd sup(3), w(3);
    sup << 0.5, 1.0, 3.0;
    w << 0.2, 0.5, 0.3;
    const DiscreteMixture G3(sup, w);
    EXPECT_NEAR(bayes_factor(x, G3, JointMixture::product(DiscreteMixture::point_mass(0.0), G3)),
                1.0, 1e-12);
  }
}

TEST(BayesFactor, SingleObservation) {
  const auto G = DiscreteMixture::point_mass(1.0);
  for (double lambda : {-1.0, 0.5, 2.0}) {
    for (double x : {-2.0, 0.0, 1.3}) {
      VectorXd v(1);
      v << x;
      const auto Q = JointMixture::product(DiscreteMixture::point_mass(lambda), G);
      EXPECT_NEAR(bayes_factor(v, G, Q), std::exp(lambda * x - lambda * lambda / 2), 1e-12);
    }
  }
}

TEST(BayesFactor, RatioConventions) {
  const double inf = std::numeric_limits<double>::infinity();
  EXPECT_EQ(ratio_from_logs(-inf, -inf), 0.0);
  EXPECT_EQ(ratio_from_logs(0.0, -inf), inf);
  EXPECT_NEAR(ratio_from_logs(std::log(3.0), std::log(2.0)), 1.5, 1e-15);
}

TEST(TTest, DensityRatioMatchesBoost) {
  // Boost's noncentral density loses accuracy far in the left tail, so it
  // serves as the oracle only where the ratio is moderate.
  for (int nu : {2, 4, 9, 30}) {
    boost::math::students_t central(nu);
    for (double ncp : {0.5, 2.0, 4.0, 6.0}) {
      boost::math::non_central_t alt(nu, ncp);
      for (double t : {-3.0, -0.5, 0.0, 1.0, 2.5, 5.0, 9.0}) {
        const double want = std::log(boost::math::pdf(alt, t) / boost::math::pdf(central, t));
        if (want < -10.0) continue;
        EXPECT_NEAR(log_t_density_ratio(t, nu, ncp), want, 1e-7 * std::max(1.0, std::abs(want)))
            << nu << " " << ncp << " " << t;
      }
    }
  }
}

TEST(TTest, DensityRatioTails) {
  // 40-digit quadrature of the integral form of the noncentral t density.
  struct Ref {
    double t;
    int nu;
    double ncp;
    double log_ratio;
  };
  const Ref refs[] = {
      {-3, 30, 6, -32.037433296026781}, {-0.5, 30, 6, -20.940025120935731},
      {-3, 9, 6, -27.647948172536577},  {-2, 4, 4, -12.520693286204216},
      {9, 30, 6, 17.81188502066537},    {25, 4, 6, 6.7914164506571532},
      {-5, 2, 2, -4.3902695399465281},
  };
  for (const auto& r : refs) {
    EXPECT_NEAR(log_t_density_ratio(r.t, r.nu, r.ncp), r.log_ratio, 1e-8 * std::abs(r.log_ratio))
        << r.t << " " << r.nu << " " << r.ncp;
  }
}

TEST(TTest, DependsOnlyOnT) {
  RngStream rng(43, 0);
  VectorXd x = sample(rng, 6, 0.8, 1.5);
  const double e = ttest_evalue(SummaryStats::from_sample(x), 3.0);
  std::reverse(x.begin(), x.end());
  EXPECT_NEAR(ttest_evalue(SummaryStats::from_sample(x), 3.0), e, 1e-12 * e);
  // Scale invariance: t is unchanged by multiplying the data.
  EXPECT_NEAR(ttest_evalue(SummaryStats::from_sample(4.0 * x), 3.0), e, 1e-9 * e);
  EXPECT_NEAR(ttest_evalue(SummaryStats::from_sample(x), 0.0), 1.0, 1e-12);
}

TEST(TTest, NullMeanIsOne) {
  // Integrate the ratio against the central t density.
  for (int nu : {2, 4}) {
    boost::math::students_t central(nu);
    const double ncp = 2.0;
    const int m = 40000;
    const double lo = -200.0, hi = 200.0, h = (hi - lo) / m;
    auto f = [&](double t) {
      return std::exp(log_t_density_ratio(t, nu, ncp)) * boost::math::pdf(central, t);
    };
    double sum = f(lo) + f(hi);
    for (int i = 1; i < m; ++i) sum += (i % 2 ? 4.0 : 2.0) * f(lo + i * h);
    EXPECT_NEAR(sum * h / 3.0, 1.0, 2e-3);
  }
}
