// Copyright 2026 The subweibull Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <boost/math/distributions/normal.hpp>

#include <cmath>
#include <vector>

#include "subweibull/harness.hpp"

namespace sw = subweibull;

TEST(EmpiricalTail, Examples) {
  const auto r = sw::empirical_tail(sw::DistSpec::rademacher(), {1.0}, {0.5}, 10000, 1, 1);
  EXPECT_EQ(r.estimate[0], 1.0);
  const auto r2 = sw::empirical_tail(sw::DistSpec::rademacher(), {1.0, 1.0}, {1.5}, 100000, 2, 1);
  EXPECT_NEAR(r2.estimate[0], 0.5, 0.01);
  EXPECT_GE(r2.upper[0], 0.5);
  const double z = 1.959964;
  const double exact = 2 * boost::math::cdf(boost::math::complement(boost::math::normal(), z));
  const auto g = sw::empirical_tail(sw::DistSpec::gaussian(0, 1), {1.0}, {z}, 1000000, 3, 1);
  EXPECT_NEAR(g.estimate[0], exact, 0.002);
  EXPECT_GE(g.upper[0], exact);
}

TEST(EmpiricalTail, ThreadCountDoesNotChangeResults) {
  const auto a = sw::simulate_abs_sums(sw::DistSpec::symmetric_weibull(1.5, 1), std::vector<double>(7, 1.0), 20000,
                                       99, "t", 1);
  const auto b = sw::simulate_abs_sums(sw::DistSpec::symmetric_weibull(1.5, 1), std::vector<double>(7, 1.0), 20000,
                                       99, "t", 4);
  EXPECT_EQ(a, b);
}

TEST(EmpiricalTail, TooFewReplicates) {
  EXPECT_THROW(sw::empirical_tail(sw::DistSpec::rademacher(), {1.0}, {0.5}, 100, 1, 1), sw::error);
}

TEST(Enumerate, Examples) {
  const std::vector<double> w10(10, 1.0);
  EXPECT_DOUBLE_EQ(sw::enumerate_sum_tail(sw::DistSpec::rademacher(), w10, 10), 0.001953125);
  EXPECT_DOUBLE_EQ(sw::enumerate_sum_tail(sw::DistSpec::rademacher(), w10, 0), 1.0);
  EXPECT_DOUBLE_EQ(sw::enumerate_sum_tail(sw::DistSpec::bernoulli(0.5, true), std::vector<double>(4, 1.0), 2), 0.125);
}

TEST(Enumerate, NonUnitWeightsMatchBruteForce) {
  const std::vector<double> w = {1.0, 0.5, 0.25, 2.0, 1.5};
  for (double t : {0.1, 1.0, 2.5, 4.0}) {
    double p = 0;
    for (unsigned m = 0; m < 32; ++m) {
      double s = 0;
      for (int i = 0; i < 5; ++i) s += (m >> i & 1 ? 1.0 : -1.0) * w[i];
      if (std::abs(s) >= t) p += 1.0 / 32;
    }
    EXPECT_NEAR(sw::enumerate_sum_tail(sw::DistSpec::rademacher(), w, t), p, 1e-15) << t;
  }
}

TEST(Enumerate, OracleAgreement) {
  for (const auto& s : {sw::DistSpec::rademacher(), sw::DistSpec::bernoulli(0.1, true)})
    for (std::size_t n : {1u, 4u, 10u}) {
      const std::vector<double> w(n, 1.0);
      const std::vector<double> grid = {0.05, 0.5, 1.0, 2.0, 3.0};
      const auto e = sw::empirical_tail(s, w, grid, 200000, 17, 1);
      for (std::size_t i = 0; i < grid.size(); ++i) {
        const double p = sw::enumerate_sum_tail(s, w, grid[i]);
        const double se = std::sqrt(p * (1 - p) / 200000);
        EXPECT_NEAR(e.estimate[i], p, 5 * se + 1e-12) << s.describe() << " n=" << n << " t=" << grid[i];
      }
    }
}

TEST(ClopperPearson, KnownValues) {
  // Zero successes: 1 - (1 - c)^(1/n).
  EXPECT_NEAR(sw::clopper_pearson_upper(0, 1000, 0.999), 1 - std::pow(0.001, 1.0 / 1000), 1e-12);
  EXPECT_EQ(sw::clopper_pearson_upper(1000, 1000, 0.999), 1.0);
  EXPECT_GT(sw::clopper_pearson_upper(10, 1000, 0.999), 0.01);
}

TEST(Binomial, MaxAccepted) {
  EXPECT_EQ(sw::binomial_max_accepted(2000, std::exp(-2.0), 0.99), 307u);
  EXPECT_EQ(sw::binomial_max_accepted(2000, std::exp(-5.0), 0.99), 23u);
}

TEST(GaussianApps, Deterministic) {
  const auto a = sw::simulate_gaussian_apps(50, 3, 40, 5, 1);
  const auto b = sw::simulate_gaussian_apps(50, 3, 40, 5, 2);
  EXPECT_EQ(a.cov_error, b.cov_error);
  EXPECT_EQ(a.mean_error, b.mean_error);
  const auto r = sw::radius_allowing(a.cov_error, 3);
  EXPECT_LE(sw::exceed_fraction(a.cov_error, r), 3.0 / 40);
}
