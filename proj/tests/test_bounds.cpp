// Copyright 2026 The subweibull Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <cmath>
#include <sstream>
#include <vector>

#include "subweibull/bounds.hpp"
#include "subweibull/harness.hpp"

namespace sw = subweibull;

namespace {

const sw::ConstantProfile shape = sw::shape_profile();
sw::ConstantProfile calibrated() { return sw::load_profile(SW_PROFILE_PATH); }

std::vector<double> ones(std::size_t n) { return std::vector<double>(n, 1.0); }

}  // namespace

TEST(TailOrlicz, Examples) {
  const auto v0 = sw::tail_orlicz(0, ones(4), ones(4), 2, shape);
  EXPECT_EQ(v0.raw, 2.0);
  EXPECT_EQ(v0.reported(), 1.0);
  EXPECT_NEAR(sw::tail_orlicz(2, ones(4), ones(4), 2, shape).raw, 2 * std::exp(-1.0), 1e-15);
  const auto v = sw::tail_orlicz(2, ones(1), ones(1), 4, shape);
  EXPECT_NEAR(v.raw, 2 * std::exp(-16.0), 1e-20);
  EXPECT_EQ(v.branch, "psi_alpha");
}

TEST(TailOrlicz, RejectsMismatchedLengths) {
  EXPECT_THROW(sw::tail_orlicz(1, ones(3), ones(2), 2, shape), sw::error);
  EXPECT_THROW(sw::tail_orlicz(-1, ones(2), ones(2), 2, shape), sw::error);
}

TEST(TailOrlicz, MonotoneInT) {
  const auto grid = sw::log_grid(0.01, 1000, 200);
  for (double alpha : {1.0, 1.5, 2.0, 3.0, 4.0})
    for (std::size_t n : {1u, 10u, 100u}) {
      double prev = 3.0;
      for (double t : grid) {
        const double v = sw::tail_orlicz(t, ones(n), ones(n), alpha, shape).raw;
        EXPECT_LE(v, prev);
        prev = v;
      }
    }
}

TEST(TailOrlicz, ScaleInvariance) {
  const std::vector<double> a = {1, 0.5, 2}, K = {1, 3, 0.2};
  for (double alpha : {1.0, 1.5, 3.0})
    for (double c : {0.1, 3.0})
      for (double t : {0.3, 2.0, 10.0}) {
        const double base = sw::tail_orlicz(t, a, K, alpha, shape).exponent;
        std::vector<double> ca = a, cK = K;
        for (auto& x : ca) x *= c;
        for (auto& x : cK) x *= c;
        EXPECT_NEAR(sw::tail_orlicz(c * t, ca, K, alpha, shape).exponent, base, 1e-10 * base);
        EXPECT_NEAR(sw::tail_orlicz(c * t, a, cK, alpha, shape).exponent, base, 1e-10 * base);
      }
}

TEST(TailOrlicz, ContinuousAcrossAlphaTwo) {
  for (double t : sw::log_grid(0.1, 100, 100)) {
    const double lo = sw::tail_orlicz(t, ones(10), ones(10), 2 - 1e-9, shape).exponent;
    const double hi = sw::tail_orlicz(t, ones(10), ones(10), 2 + 1e-9, shape).exponent;
    EXPECT_LE(std::abs(lo - hi), 1e-7 * std::max(lo, hi));
  }
}

TEST(TailSigmaL, Examples) {
  const std::vector<sw::SigmaLPair> p = {sw::make_pair(1, 1, 1)};
  EXPECT_EQ(sw::tail_sigma_l(0, ones(1), p, shape).raw, 2.0);
  EXPECT_NEAR(sw::tail_sigma_l(3, ones(1), p, shape).raw, 2 * std::exp(-3.0), 1e-15);
}

// Independent evaluation of the sub-exponential i.i.d. display:
// max{min{t^2/(n s^2), t/(K log(2K/s))}, min{t/(cK), t^2/(n s cK)}}.
TEST(TailSigmaL, SubExponentialWrapper) {
  const std::size_t n = 20;
  const double s = 0.3, K = 1.0;
  for (double t : sw::log_grid(0.01, 1000, 150)) {
    const double lg = std::log(2 * K / s);
    const double e1 = std::min(t * t / (n * s * s), t / (K * lg));
    const double e2 = std::min(t / K, t * t / (n * s * K));
    const auto v = sw::subexponential_iid_tail(t, n, s, K, shape);
    EXPECT_NEAR(v.exponent, std::max(e1, e2), 1e-10 * std::max(e1, e2));
  }
}

TEST(TailBest, SingleCandidateEqualsSigmaL) {
  const auto pr = sw::make_pair(0.5, 2, 1.5);
  for (double t : {0.1, 1.0, 10.0}) {
    const auto a = sw::tail_best(t, ones(3), std::vector<std::vector<sw::SigmaLPair>>(3, {pr}), shape);
    const auto b = sw::tail_sigma_l(t, ones(3), std::vector<sw::SigmaLPair>(3, pr), shape);
    EXPECT_DOUBLE_EQ(a.raw, b.raw);
  }
}

TEST(TailBest, BelowEachCanonicalCurve) {
  const std::size_t n = 50;
  const double sx = 0.2, K = 1.0;
  const auto cands = sw::canonical_pairs(sx, K, 2, shape);
  for (double t : sw::log_grid(0.01, 500, 200)) {
    const double best = sw::tail_best_iid(t, n, sx, K, 2, shape).raw;
    for (const auto& p : cands)
      EXPECT_LE(best, sw::tail_sigma_l(t, ones(n), std::vector<sw::SigmaLPair>(n, p), shape).raw * (1 + 1e-12));
  }
}

TEST(TailBest, FamilyByRegime) {
  const std::size_t n = 100;
  const double sx = 0.05, K = 1.0;
  EXPECT_EQ(sw::tail_best_iid(0.01, n, sx, K, 2, shape).branch.rfind("variance_log/", 0), 0u);
  const auto big = sw::tail_best_iid(10 * n * K, n, sx, K, 2, shape).branch;
  EXPECT_TRUE(big.rfind("geometric/", 0) == 0 || big.rfind("trivial/", 0) == 0) << big;
}

TEST(MgfUpper, Examples) {
  EXPECT_EQ(sw::mgf_upper(0, 2, 1, shape), 1.0);
  EXPECT_NEAR(sw::mgf_upper(2, 4, 1, shape), std::exp(std::pow(2.0, 4.0 / 3.0)), 1e-12);
  EXPECT_NEAR(std::log(sw::mgf_upper(2, 4, 1, shape)), 2.5198, 1e-4);
  const auto prof = calibrated();
  const double K = 1 / std::sqrt(std::log(2.0));
  for (double l = 0; l <= 5; l += 0.05) EXPECT_LE(std::cosh(l), sw::mgf_upper(l, 2, K, prof) * (1 + 1e-12));
}

TEST(MgfLower, Examples) {
  const double K = 1 / std::sqrt(std::log(2.0));
  const auto r0 = sw::mgf_lower(0, 1, K, 2);
  EXPECT_EQ(r0.bound, 1.0);
  EXPECT_TRUE(r0.valid);
  EXPECT_NEAR(r0.lambda_max, (1 / K) / std::sqrt(std::log(2 * K)), 1e-12);
  EXPECT_NEAR(r0.lambda_max, 0.8895, 1e-3);
  const auto r = sw::mgf_lower(0.5, 1, K, 2);
  EXPECT_NEAR(r.bound, std::exp(0.03125), 1e-12);
  EXPECT_LE(r.bound, std::cosh(0.5));
  EXPECT_FALSE(sw::mgf_lower(2, 1, K, 2).valid);
}

TEST(MgfSigmaL, Examples) {
  const auto pr = sw::make_pair(0.5, 2, 2);
  EXPECT_EQ(sw::mgf_upper_sigma_l(0, pr, shape).value(), 1.0);
  const double l = 1 / (2 * pr.L);
  const auto v = sw::mgf_upper_sigma_l(l, pr, shape);
  EXPECT_EQ(v.branch, sw::mgf_branch::small);
  EXPECT_NEAR(v.value(), std::exp(l * l * pr.sigma * pr.sigma), 1e-15);
  EXPECT_FALSE(sw::mgf_upper_sigma_l(2 / pr.L, sw::make_pair(0.5, 2, 1), shape).in_range());
}

TEST(MgfSigmaL, BernoulliVarianceLog) {
  const auto prof = calibrated();
  const auto s = sw::DistSpec::bernoulli(0.1, true);
  for (double alpha : {1.0, 1.5, 2.0}) {
    const double K = sw::orlicz_norm_exact(s, alpha).value;
    const auto pr = sw::pair_variance_log(s.sd(), K, alpha, prof);
    for (int i = 0; i <= 50; ++i) {
      const double l = 2.0 * i / (50.0 * pr.L);
      const auto b = sw::mgf_upper_sigma_l(l, pr, prof);
      if (!b.in_range()) {
        EXPECT_EQ(alpha, 1.0);
        continue;
      }
      EXPECT_LE(s.log_mgf(l), b.log_value + 1e-12) << "alpha=" << alpha << " lambda=" << l;
    }
  }
}

TEST(MomentBound, Examples) {
  EXPECT_NEAR(sw::moment_bound(2, ones(1), ones(1), 2, shape).value(), 2.0, 1e-12);
  const auto prof = calibrated();
  // Exhaustive enumeration over 2^10 sign vectors.
  double m4 = 0;
  for (unsigned m = 0; m < 1024; ++m) m4 += std::pow(2.0 * __builtin_popcount(m) - 10, 4);
  m4 /= 1024;
  EXPECT_EQ(m4, 280.0);
  const std::vector<double> K(10, 1 / std::sqrt(std::log(2.0)));
  EXPECT_LE(m4, sw::moment_bound(4, ones(10), K, 2, prof).value());
  for (std::size_t n : {1u, 5u, 50u}) {
    const double Kg = std::sqrt(8.0 / 3.0);
    EXPECT_LE(static_cast<double>(n), sw::moment_bound(2, ones(n), std::vector<double>(n, Kg), 2, prof).value());
  }
}

TEST(MomentBound, RademacherAndBernoulliSums) {
  const auto prof = calibrated();
  for (std::size_t n = 1; n <= 14; ++n) {
    const auto law = sw::sum_law(sw::DistSpec::rademacher(), ones(n));
    const std::vector<double> K(n, 1 / std::sqrt(std::log(2.0)));
    for (int p : {2, 4, 6, 8})
      EXPECT_LE(sw::absolute_moment(law, p), sw::moment_bound(p, ones(n), K, 2, prof).value()) << n << " " << p;
  }
  const auto b = sw::DistSpec::bernoulli(0.1, true);
  for (double alpha : {1.0, 2.0}) {
    const double Kb = sw::orlicz_norm_exact(b, alpha).value;
    for (std::size_t n = 1; n <= 12; ++n) {
      const auto law = sw::sum_law(b, ones(n));
      for (int p : {2, 4, 6, 8})
        EXPECT_LE(sw::absolute_moment(law, p),
                  sw::moment_bound(p, ones(n), std::vector<double>(n, Kb), alpha, prof).value())
            << n << " " << p;
    }
  }
}

TEST(SumNorm, Examples) {
  for (double alpha : {1.0, 2.0, 3.0}) {
    const auto b = sw::sum_norm_bound(ones(1), {3.0}, alpha, shape);
    EXPECT_NEAR(b.psi_alpha, 3.0, 1e-15);
    EXPECT_EQ(b.psi_2.has_value(), alpha >= 2);
    if (b.psi_2) {
      EXPECT_NEAR(*b.psi_2, 3.0, 1e-15);
    }
  }
  const auto b = sw::sum_norm_bound(ones(4), ones(4), 2, shape);
  EXPECT_NEAR(b.psi_alpha, 2.0, 1e-15);
  EXPECT_NEAR(*b.psi_2, 2.0, 1e-15);
  const auto c = sw::sum_norm_bound_sigma_l(ones(9), std::vector<sw::SigmaLPair>(9, sw::make_pair(1, 1, 1)), shape);
  EXPECT_NEAR(c.psi_alpha, 4.0, 1e-14);
}

TEST(Baseline, Examples) {
  const sw::IidScenario k{10, 2, 0.5, 1};
  const auto v = sw::baseline(sw::baseline_kind::koltchinskii, 1e-3, k, shape);
  EXPECT_EQ(v.branch, "psi2");
  EXPECT_NEAR(v.exponent, 1e-6 / (10 * 0.25), 1e-18);
  const auto m = sw::baseline(sw::baseline_kind::min_form, 30, {10, 3, 1, 1}, shape);
  EXPECT_NEAR(m.exponent, 90.0, 1e-10);
  EXPECT_NEAR(m.raw, 2 * std::exp(-90.0), 1e-50);
  for (double t : sw::log_grid(0.1, 100, 50))
    EXPECT_NEAR(sw::baseline(sw::baseline_kind::min_form, t, {10, 2, 1, 1}, shape).raw,
                sw::tail_orlicz(t, ones(10), ones(10), 2, shape).raw, 1e-12);
  EXPECT_THROW(sw::baseline(sw::baseline_kind::ledoux_low_alpha, 1, {10, 3, 1, 1}, shape), sw::error);
}

TEST(Compare, BreakpointAtNK) {
  const sw::IidScenario s{10, 4, 2, 2};
  const auto tab = sw::compare_curves(sw::log_grid(0.1, 1000, 100), s, {"orlicz_tail", "min_form"}, shape);
  ASSERT_EQ(tab.breakpoints.at("orlicz_tail").size(), 1u);
  EXPECT_EQ(tab.breakpoints.at("orlicz_tail")[0], 20.0);
  std::ostringstream os;
  sw::write_compare_csv(os, tab);
  EXPECT_NE(os.str().find("\n20,orlicz_tail,"), std::string::npos);
}

TEST(Compare, MaxFormAboveMinForm) {
  const sw::IidScenario s{10, 3, 1, 1};
  const auto tab = sw::compare_curves(sw::log_grid(0.1, 1000, 100), s, {"orlicz_tail", "min_form"}, shape);
  std::map<double, double> orl, mf;
  for (const auto& r : tab.rows) (r.curve == "orlicz_tail" ? orl : mf)[r.t] = r.neg_log_half;
  for (const auto& [t, v] : orl) EXPECT_GE(v, mf.at(t) * (1 - 1e-12));
}

// Low-alpha sigma-L curve: Gaussian-type, then linear mixing, then psi_alpha.
TEST(Compare, ThreeSegmentShape) {
  const sw::IidScenario s{100, 1.5, 0.05, 1};
  const auto tab = sw::compare_curves(sw::log_grid(0.01, 1e4, 400), s, {"sigma_l_variance_log"}, shape);
  std::vector<std::string> seq;
  for (const auto& r : tab.rows)
    if (seq.empty() || seq.back() != r.branch) seq.push_back(r.branch);
  EXPECT_EQ(seq, (std::vector<std::string>{"psi2", "psi1", "psi_alpha"}));
}

TEST(Compare, UnknownCurve) {
  EXPECT_THROW(sw::compare_curves({1.0}, {}, {"nope"}, shape), sw::error);
}
