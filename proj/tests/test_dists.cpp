// Copyright 2026 The subweibull Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "subweibull/dists.hpp"

namespace sw = subweibull;

namespace {

std::vector<sw::DistSpec> suite_specs() {
  return {sw::DistSpec::rademacher(), sw::DistSpec::bernoulli(0.1, true), sw::DistSpec::bernoulli(0.01, true),
          sw::DistSpec::bounded_uniform(std::sqrt(3.0)), sw::DistSpec::symmetric_weibull(4, 1),
          sw::DistSpec::gaussian(0, 1), sw::DistSpec::exponential(1, true)};
}

double double_factorial(int k) {
  double r = 1;
  for (int j = k; j > 1; j -= 2) r *= j;
  return r;
}

}  // namespace

TEST(Sample, RademacherSupport) {
  const auto b = sw::sample(sw::DistSpec::rademacher(), 4, 7);
  ASSERT_EQ(b.values.size(), 4u);
  for (double v : b.values) EXPECT_TRUE(v == 1.0 || v == -1.0);
}

TEST(Sample, CenteredBernoulliMean) {
  const auto b = sw::sample(sw::DistSpec::bernoulli(0.5, true), 1000000, 3);
  double m = 0;
  for (double v : b.values) m += v;
  m /= b.values.size();
  EXPECT_GT(m, -0.01);
  EXPECT_LT(m, 0.01);
}

TEST(Sample, GaussianVariance) {
  const auto b = sw::sample(sw::DistSpec::gaussian(0, 1), 1000000, 1);
  double m = 0, v = 0;
  for (double x : b.values) m += x;
  m /= b.values.size();
  for (double x : b.values) v += (x - m) * (x - m);
  v /= b.values.size() - 1;
  EXPECT_NEAR(v, 1.0, 0.01);
}

TEST(Sample, DeterministicPerIndex) {
  const auto a = sw::sample(sw::DistSpec::symmetric_weibull(2, 1), 100, 11);
  const auto b = sw::sample(sw::DistSpec::symmetric_weibull(2, 1), 50, 11);
  for (std::size_t i = 0; i < 50; ++i) EXPECT_EQ(a.values[i], b.values[i]);
  const auto c = sw::sample(sw::DistSpec::symmetric_weibull(2, 1), 50, 12);
  EXPECT_NE(a.values[0], c.values[0]);
}

TEST(CentralMoment, BernoulliIdentity) {
  EXPECT_NEAR(sw::DistSpec::bernoulli(0.1, true).central_moment(3), 0.09 * (0.01 + 0.81), 1e-14);
}

TEST(CentralMoment, Rademacher) { EXPECT_NEAR(sw::DistSpec::rademacher().central_moment(2), 1.0, 1e-15); }

TEST(CentralMoment, GaussianDoubleFactorial) {
  for (int k = 2; k <= 12; k += 2)
    EXPECT_NEAR(sw::DistSpec::gaussian(0, 1).central_moment(k), double_factorial(k - 1),
                1e-12 * double_factorial(k - 1));
}

TEST(CentralMoment, ClosedFormMatchesQuadrature) {
  for (const auto& s : suite_specs())
    for (int k = 1; k <= 8; ++k) {
      const double c = s.central_moment(k), q = s.central_moment_quadrature(k);
      EXPECT_NEAR(c, q, 1e-7 * c) << s.describe() << " k=" << k;
    }
}

TEST(CentralMoment, JensenMonotone) {
  for (const auto& s : suite_specs()) {
    double prev = 0;
    for (int k = 2; k <= 12; ++k) {
      const double r = std::pow(s.central_moment(k), 1.0 / k);
      EXPECT_GE(r, prev * (1 - 1e-12)) << s.describe() << " k=" << k;
      prev = r;
    }
  }
}

TEST(CentralMoment, SampleAgreesWithinFiveStandardErrors) {
  for (const auto& s : {sw::DistSpec::rademacher(), sw::DistSpec::bernoulli(0.1, true),
                        sw::DistSpec::bounded_uniform(std::sqrt(3.0)), sw::DistSpec::symmetric_weibull(4, 1)}) {
    const auto b = sw::sample(s, 1000000, 5);
    for (int k = 2; k <= 6; ++k) {
      double m = 0, m2 = 0;
      for (double x : b.values) {
        const double v = std::pow(std::abs(x - s.mean()), k);
        m += v;
        m2 += v * v;
      }
      const double n = b.values.size();
      m /= n;
      const double se = std::sqrt(std::max(m2 / n - m * m, 0.0) / n);
      EXPECT_LE(std::abs(m - s.central_moment(k)), 5 * se + 1e-12) << s.describe() << " k=" << k;
    }
  }
}

TEST(CentralMoment, RejectsOrderZero) {
  EXPECT_THROW(sw::DistSpec::rademacher().central_moment(0), sw::error);
}

TEST(Mgf, ClosedFormsMatchQuadrature) {
  for (const auto& s : suite_specs())
    for (double l : {0.1, 0.5, 0.9})
      EXPECT_NEAR(s.log_mgf(l), s.log_mgf_quadrature(l), 1e-8) << s.describe() << " lambda=" << l;
}

TEST(Spec, ParameterErrors) {
  EXPECT_THROW(sw::DistSpec::bernoulli(1.5, true), sw::error);
  EXPECT_THROW(sw::DistSpec::gaussian(0, -1), sw::error);
  EXPECT_THROW(sw::DistSpec::symmetric_weibull(0.5, 1), sw::error);
}

TEST(Spec, ParseRoundTrip) {
  for (const auto& s : suite_specs()) EXPECT_EQ(sw::parse_dist(s.describe()).describe(), s.describe());
  EXPECT_DOUBLE_EQ(sw::parse_dist("gaussian(0,1)*2").sd(), 2.0);
  EXPECT_THROW(sw::parse_dist("cauchy(1)"), sw::error);
  EXPECT_THROW(sw::parse_dist("gaussian(0)"), sw::error);
}
