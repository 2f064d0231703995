// Copyright 2026 The subweibull Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

#include "subweibull/orlicz.hpp"

namespace sw = subweibull;

TEST(Conjugate, Pairs) {
  EXPECT_EQ(sw::conjugate(2).beta, sw::ext_real::finite(2));
  EXPECT_TRUE(sw::conjugate(1).beta.infinite);
  EXPECT_DOUBLE_EQ(sw::conjugate(3).beta.value, 1.5);
  EXPECT_THROW(sw::conjugate(0.5), sw::error);
}

TEST(Aggregate, InfiniteExponentIsMax) {
  EXPECT_DOUBLE_EQ(sw::aggregate({1, -3, 2}, {1, 1, 1}, sw::ext_real::infinity()), 3.0);
  EXPECT_NEAR(sw::aggregate({1, 1, 1, 1}, {1, 1, 1, 1}, sw::ext_real::finite(2)), 2.0, 1e-15);
}

// Closed-form oracles: E exp(X^2/u^2) = (1 - 2/u^2)^(-1/2), exp(1/u^2), (1 - 1/u)^(-1).
TEST(NormExact, ClosedFormOracles) {
  EXPECT_NEAR(sw::orlicz_norm_exact(sw::DistSpec::gaussian(0, 1), 2).value, std::sqrt(8.0 / 3.0), 1e-6);
  EXPECT_NEAR(sw::orlicz_norm_exact(sw::DistSpec::rademacher(), 2).value, 1 / std::sqrt(std::log(2.0)), 1e-6);
  EXPECT_NEAR(sw::orlicz_norm_exact(sw::DistSpec::exponential(1, false), 1).value, 2.0, 1e-6);
}

// Symmetric Weibull(k, s) at alpha = k: (1 - (s/u)^k)^(-1/k) = 2.
TEST(NormExact, WeibullOracle) {
  for (double k : {1.0, 2.0, 4.0}) {
    const double expect = std::pow(1 - std::pow(2.0, -k), -1.0 / k);
    EXPECT_NEAR(sw::orlicz_norm_exact(sw::DistSpec::symmetric_weibull(k, 1), k).value, expect, 1e-6);
  }
}

// Uniform on [-h, h] at alpha = 1: E exp(|X|/u) = (u/h)(e^(h/u) - 1).
TEST(NormExact, UniformQuadratureMatchesOracle) {
  const double h = std::sqrt(3.0);
  const double u = sw::orlicz_norm_exact(sw::DistSpec::bounded_uniform(h), 1).value;
  EXPECT_NEAR(u / h * std::expm1(h / u), 2.0, 1e-8);
  const double u2 = sw::orlicz_norm_exact(sw::DistSpec::bounded_uniform(h), 2).value;
  const double crit = sw::log_orlicz_criterion(sw::DistSpec::bounded_uniform(h), 2, u2);
  EXPECT_NEAR(crit, std::log(2.0), 1e-8);
}

TEST(NormExact, Homogeneity) {
  for (const auto& s : {sw::DistSpec::gaussian(0, 1), sw::DistSpec::bernoulli(0.1, true),
                        sw::DistSpec::bounded_uniform(1.0), sw::DistSpec::symmetric_weibull(4, 1)})
    for (double alpha : {1.0, 2.0})
      for (double c : {0.5, 2.0, 10.0}) {
        const double base = sw::orlicz_norm_exact(s, alpha).value;
        EXPECT_NEAR(sw::orlicz_norm_exact(s.scaled(c), alpha).value, c * base, 2e-9 * c * base + 2e-9)
            << s.describe() << " alpha=" << alpha << " c=" << c;
      }
}

TEST(NormExact, ResidualWithinTolerance) {
  const auto r = sw::orlicz_norm_exact(sw::DistSpec::symmetric_weibull(4, 1), 3);
  EXPECT_LE(r.residual, r.tolerance);
  EXPECT_EQ(r.method, sw::norm_method::quadrature);
}

TEST(NormExact, SigmaBelowSqrtTwoNorm) {
  for (const auto& s : {sw::DistSpec::rademacher(), sw::DistSpec::bernoulli(0.1, true),
                        sw::DistSpec::bernoulli(0.01, true), sw::DistSpec::bounded_uniform(std::sqrt(3.0)),
                        sw::DistSpec::symmetric_weibull(4, 1)})
    for (double alpha : {1.0, 1.5, 2.0, 3.0, 4.0})
      EXPECT_LE(s.sd(), std::sqrt(2.0) * sw::orlicz_norm_exact(s, alpha).value) << s.describe();
}

TEST(NormExact, InfiniteNormIsInfeasible) {
  EXPECT_THROW(sw::orlicz_norm_exact(sw::DistSpec::gaussian(0, 1), 3), sw::error);
  EXPECT_THROW(sw::orlicz_norm_exact(sw::DistSpec::exponential(1, false), 1.5), sw::error);
}

TEST(NormEmpirical, Examples) {
  EXPECT_EQ(sw::orlicz_norm_empirical(std::vector<double>(200, 0.0), 2).value, 0.0);
  std::vector<double> alt;
  for (int i = 0; i < 500; ++i) alt.push_back(i % 2 ? -1.0 : 1.0);
  EXPECT_NEAR(sw::orlicz_norm_empirical(alt, 2).value, 1 / std::sqrt(std::log(2.0)), 1e-6);
  EXPECT_THROW(sw::orlicz_norm_empirical(std::vector<double>(99, 1.0), 2), sw::error);
}

TEST(NormEmpirical, GaussianPlugIn) {
  const auto b = sw::sample(sw::DistSpec::gaussian(0, 1), 1000000, 2);
  EXPECT_NEAR(sw::orlicz_norm_empirical(b, 2).value, std::sqrt(8.0 / 3.0), 0.02);
}

TEST(MomentFromNorm, Examples) {
  EXPECT_DOUBLE_EQ(sw::moment_from_norm(1, 2, 1, 1), 1.0);
  EXPECT_DOUBLE_EQ(sw::moment_from_norm(4, 2, 1, 1), 2.0);
  EXPECT_NEAR(sw::moment_from_norm(8, 4, 3, 1), 3 * std::pow(8.0, 0.25), 1e-12);
  EXPECT_NEAR(sw::moment_from_norm(8, 4, 3, 1), 5.0454, 1e-4);
}

TEST(ThirdMoment, Examples) {
  EXPECT_NEAR(sw::third_moment_bound(1, 1, 1, 1), std::log(2.0), 1e-12);
  EXPECT_NEAR(sw::third_moment_bound(1, 1, 2, 1), std::sqrt(std::log(2.0)), 1e-12);
  EXPECT_NEAR(sw::third_moment_bound(1, 1, 2, 1), 0.8326, 1e-4);
  EXPECT_THROW(sw::third_moment_bound(2, 1, 2, 1), sw::error);
}

TEST(SquareDiff, Examples) {
  EXPECT_EQ(sw::square_diff_floor(3, 1, 2), 4.0);
  EXPECT_EQ(sw::square_diff_floor(0, 5, 5), 25.0);
  EXPECT_EQ(sw::square_diff_floor(2, 0, 2), 4.0);
  EXPECT_THROW(sw::square_diff_floor(1, 1, 1), sw::error);
}

TEST(SquareDiff, RandomTriples) {
  std::mt19937_64 g(42);
  std::uniform_real_distribution<double> U(0.0, 10.0);
  for (int i = 0; i < 100000; ++i) {
    const double a = U(g), b = U(g);
    if (a == b) continue;
    const double t = std::abs(a - b) * std::uniform_real_distribution<double>(0.01, 1.0)(g);
    EXPECT_LE(sw::square_diff_floor(a, b, t), std::abs(a * a - b * b) * (1 + 1e-12) + 1e-12);
  }
}

TEST(IntegralTail, BoundDominatesQuadrature) {
  std::mt19937_64 g(7);
  std::uniform_real_distribution<double> K(0.1, 5), ratio(1, 20), q(-3, 0);
  for (int i = 0; i < 200; ++i) {
    const double k = K(g), tau = k * ratio(g), qq = q(g);
    EXPECT_LE(sw::integral_tail_quadrature(k, tau, qq), sw::integral_tail_bound(k, tau, qq) * (1 + 1e-9));
  }
}
