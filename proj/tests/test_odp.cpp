#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "cev/asymptotics/rng.hpp"
#include "cev/core/errors.hpp"
#include "cev/mixtures/odp.hpp"
#include "np_oracle.hpp"

using namespace cev;
using Eigen::VectorXd;

namespace {

LogDensity normal_ld(double mean, double var) {
  return [=](const VectorXd& x) {
    return -0.5 * std::log(2 * std::numbers::pi * var) - (x[0] - mean) * (x[0] - mean) / (2 * var);
  };
}

VectorXd scalar(double x) { return VectorXd::Constant(1, x); }

}  // namespace

TEST(Odp, IdenticalComponents) {
  const std::vector<LogDensity> p = {normal_ld(0, 1), normal_ld(0, 1), normal_ld(0, 1)};
  const std::vector<LogDensity> q = {normal_ld(2, 1), normal_ld(2, 1), normal_ld(2, 1)};
  for (double x : {-1.0, 0.0, 2.5}) {
    EXPECT_NEAR(odp_statistic(scalar(x), p, q), std::exp(2 * x - 2), 1e-12);
    EXPECT_NEAR(odp_statistic(scalar(x), p, p), 1.0, 1e-12);
  }
}

TEST(Odp, EvaluesShareOneStatistic) {
  const std::vector<LogDensity> p = {normal_ld(0, 1), normal_ld(0, 4)};
  const std::vector<LogDensity> q = {normal_ld(2, 1), normal_ld(3, 4)};
  const std::vector<VectorXd> data = {scalar(0.7), scalar(0.7)};
  const EVector e = odp_evalues(data, p, q);
  EXPECT_EQ(e[0], e[1]);
  EXPECT_EQ(e[0], odp_statistic(scalar(0.7), p, q));
}

TEST(Odp, ZeroNullDensityGivesInfinity) {
  const LogDensity never = [](const VectorXd&) { return -std::numeric_limits<double>::infinity(); };
  const std::vector<LogDensity> p = {never};
  const std::vector<LogDensity> q = {normal_ld(0, 1)};
  EXPECT_EQ(odp_statistic(scalar(0.0), p, q), std::numeric_limits<double>::infinity());
}

TEST(Odp, CompoundBudgetTwoNulls) {
  const std::vector<LogDensity> p = {normal_ld(0, 1), normal_ld(0, 4)};
  const std::vector<LogDensity> q = {normal_ld(2, 1), normal_ld(2, 4)};
  RngStream rng(51, 0);
  const int reps = 100000;
  double sum = 0.0, sum2 = 0.0;
  for (int r = 0; r < reps; ++r) {
    const std::vector<VectorXd> data = {scalar(rng.normal()), scalar(2.0 * rng.normal())};
    const double b = odp_evalues(data, p, q).values().sum();
    sum += b;
    sum2 += b * b;
  }
  const double mean = sum / reps;
  EXPECT_LE(mean, 2.0 + 3.0 * std::sqrt((sum2 / reps - mean * mean) / reps));
}

TEST(OdpUtility, Examples) {
  EXPECT_NEAR(odp_general_utility(3.7, 1e-12, 1.0), 3.7, 1e-9);
  EXPECT_EQ(odp_general_utility(9.0, 0.5, 1.0, 10.0), 10.0);
  EXPECT_EQ(odp_general_utility(9.0, 0.5, 2.0), 40.5);
  EXPECT_THROW(odp_general_utility(1.0, 1.0, 1.0), DomainError);
  EXPECT_THROW(odp_general_utility(1.0, 0.5, 0.0), DomainError);
}

TEST(OdpUtility, NormalizedUnderNullMixture) {
  // Null mixture (N(0,1) + N(0,4)) / 2, alternative (N(2,1) + N(2,4)) / 2.
  const std::vector<LogDensity> p = {normal_ld(0, 1), normal_ld(0, 4)};
  const std::vector<LogDensity> q = {normal_ld(2, 1), normal_ld(2, 4)};
  auto pbar = [&](double x) { return 0.5 * (std::exp(p[0](scalar(x))) + std::exp(p[1](scalar(x)))); };
  const double h = 0.3, clip = 5.0;
  for (std::optional<double> c : {std::optional<double>{}, std::optional<double>{clip}}) {
    auto numerator = [&](double x) {
      const double v = std::pow(odp_statistic(scalar(x), p, q), 1.0 / (1.0 - h));
      return c ? std::min(v, *c) : v;
    };
    const int m = 20000;
    const double lo = -30.0, hi = 30.0, step = (hi - lo) / m;
    double norm = numerator(lo) * pbar(lo) + numerator(hi) * pbar(hi);
    for (int i = 1; i < m; ++i) {
      const double x = lo + i * step;
      norm += (i % 2 ? 4.0 : 2.0) * numerator(x) * pbar(x);
    }
    norm *= step / 3.0;
    RngStream rng(52, c ? 1 : 0);
    const int reps = 200000;
    double sum = 0.0, sum2 = 0.0;
    for (int r = 0; r < reps; ++r) {
      const double x = (rng.uniform() < 0.5 ? 1.0 : 2.0) * rng.normal();
      const double v = odp_general_utility(odp_statistic(scalar(x), p, q), h, norm, c);
      sum += v;
      sum2 += v * v;
    }
    const double mean = sum / reps;
    EXPECT_NEAR(mean, 1.0, 3.0 * std::sqrt((sum2 / reps - mean * mean) / reps));
  }
}

TEST(Odp, ThresholdingUndominated) {
  RngStream rng(53, 0);
  for (int i = 0; i < 5; ++i) {
    EXPECT_TRUE(oracle::thresholding_undominated(oracle::random_instance(rng, 2, 8)));
  }
}

TEST(Odp, OracleDetectsDominatedRule) {
  // Thresholding the reciprocal statistic picks the worst outcomes first.
  RngStream rng(54, 0);
  const auto inst = oracle::random_instance(rng, 2, 8);
  VectorXd fp, tp;
  oracle::outcome_masses(inst, fp, tp);
  const VectorXd s = oracle::odp_on_outcomes(inst);
  EXPECT_TRUE(oracle::threshold_rules_undominated(s, fp, tp));
  EXPECT_FALSE(oracle::threshold_rules_undominated(s.cwiseInverse(), fp, tp));
}
