// Copyright 2026 The subweibull Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "subweibull/bounds.hpp"
#include "subweibull/error.hpp"
#include "subweibull/orlicz.hpp"
#include "subweibull/profile.hpp"
#include "subweibull/sigma_l.hpp"

namespace subweibull {

// ---------------------------------------------------------------- martingales

enum class tail_policy { zero, user };

// Coefficients and conditional moment pairs of a martingale difference
// sequence. Under the user policy the remainders beyond the prefix are given
// as sums; the remainder of max |a_k| L_k is bounded by its l_beta sum.
struct MartingaleSpec {
  std::vector<double> a;
  std::vector<SigmaLPair> pairs;
  double alpha = 2.0;
  tail_policy policy = tail_policy::zero;
  std::optional<double> tail_a2_sigma2;
  std::optional<double> tail_abeta_lbeta;
};

namespace detail {

struct MartingaleSums {
  double log_sig2, log_l2, log_lb_beta, log_lmax;  // log_lb_beta = log sum |a|^beta L^beta (or log max at beta = inf)
};

inline MartingaleSums martingale_sums(const MartingaleSpec& m) {
  require_same_length(m.a.size(), m.pairs.size());
  for (const auto& p : m.pairs) require(p.alpha == m.alpha, error_kind::input, "pair alpha differs from spec alpha");
  const auto ep = conjugate(m.alpha);
  const auto s = field(m.pairs, &SigmaLPair::sigma);
  const auto L = field(m.pairs, &SigmaLPair::L);
  MartingaleSums r{};
  r.log_sig2 = 2.0 * log_aggregate(m.a, s, ext_real::finite(2.0));
  r.log_l2 = 2.0 * log_aggregate(m.a, L, ext_real::finite(2.0));
  r.log_lmax = log_aggregate(m.a, L, ext_real::infinity());
  r.log_lb_beta = ep.beta.infinite ? r.log_lmax : ep.beta.value * log_aggregate(m.a, L, ep.beta);
  if (m.policy == tail_policy::user) {
    require(m.tail_a2_sigma2.has_value() && m.tail_abeta_lbeta.has_value(), error_kind::input,
            "user tail policy needs the remainders of sum a^2 sigma^2 and sum |a|^beta L^beta");
    require(*m.tail_a2_sigma2 >= 0.0 && *m.tail_abeta_lbeta >= 0.0, error_kind::input,
            "tail sums must be nonnegative");
    const double tb = *m.tail_abeta_lbeta;
    r.log_sig2 = log_add(r.log_sig2, std::log(*m.tail_a2_sigma2));
    if (ep.beta.infinite) {
      r.log_lb_beta = std::max(r.log_lb_beta, std::log(tb));
      r.log_lmax = r.log_lb_beta;
      r.log_l2 = log_add(r.log_l2, 2.0 * std::log(tb));
    } else {
      const double b = ep.beta.value;
      r.log_lb_beta = log_add(r.log_lb_beta, std::log(tb));
      r.log_lmax = std::max(r.log_lmax, std::log(tb) / b);
      // beta <= 2: the remainder of sum a^2 L^2 is at most (remainder of the beta sum)^(2/beta).
      // beta > 2 never reads log_l2.
      r.log_l2 = log_add(r.log_l2, 2.0 / b * std::log(tb));
    }
  }
  return r;
}

}  // namespace detail

inline BoundCurve martingale_tail_curve(const MartingaleSpec& m, double C, const std::string& profile_id = "") {
  const auto s = detail::martingale_sums(m);
  const auto ep = conjugate(m.alpha);
  const double log_lb = ep.beta.infinite ? m.alpha * s.log_lmax : m.alpha / ep.beta.value * s.log_lb_beta;
  BoundCurve c;
  c.tag = "martingale_tail";
  c.profile_id = profile_id;
  c.C = C;
  c.expr = sigma_l_tail_exponent_from_sums(m.alpha, s.log_sig2, s.log_l2, log_lb, s.log_lmax);
  c.breakpoints = c.expr.breakpoints();
  c.params = {{"alpha", m.alpha}, {"terms", m.a.size()}, {"policy", m.policy == tail_policy::zero ? "zero" : "user"}};
  return c;
}

inline BoundValue martingale_tail(double t, const MartingaleSpec& m, const ConstantProfile& p) {
  return martingale_tail_curve(m, p.c("C_tail_sigl"), p.id).at(t);
}

inline SumNormBound martingale_norm_bound(const MartingaleSpec& m, const ConstantProfile& p) {
  const auto s = detail::martingale_sums(m);
  const auto ep = conjugate(m.alpha);
  const double C = p.c("C_norm");
  const double lb = ep.beta.infinite ? std::exp(s.log_lmax) : std::exp(s.log_lb_beta / ep.beta.value);
  if (m.alpha >= 2.0) return {C * lb, C * std::exp(0.5 * s.log_l2)};
  return {C * std::exp(0.5 * s.log_sig2) + C * lb, std::nullopt};
}

// ---------------------------------------------------------------- random vectors

enum class vector_form { heterogeneous, isotropic, sigma_l };

struct VectorTail {
  BoundValue bound;
  double anchor = 0.0;
  std::string anchor_kind;  // "sqrt_mean_sq_norm" or "sqrt_d_sigma"
};

// Exponent in s for P(| ||X|| - sqrt(E||X||^2) | >= s) with independent
// components of psi_alpha norm K_i and standard deviation sigma_i, alpha >= 2.
inline Expr vector_heterogeneous_exponent(const std::vector<double>& K, const std::vector<double>& sigma,
                                          double alpha) {
  require(alpha >= 2.0, error_kind::unsupported, "the Orlicz vector bounds need alpha >= 2");
  require(!K.empty() && K.size() == sigma.size(), error_kind::input, "K and sigma differ in length");
  const std::vector<double> ones(K.size(), 1.0);
  const double log_k4 = 4.0 * log_aggregate(ones, K, ext_real::finite(4.0));
  const double log_v = 2.0 * log_aggregate(ones, sigma, ext_real::finite(2.0));
  const ext_real gamma = alpha == 2.0 ? ext_real::infinity() : ext_real::finite(2.0 * alpha / (alpha - 2.0));
  const double log_b = alpha * log_aggregate(ones, K, gamma);
  auto t1 = Expr::term("s4", -log_k4, 4.0);
  auto t2 = Expr::term("s2", log_v - log_k4, 2.0);
  auto t3 = Expr::term("s_alpha", -log_b, alpha);
  auto t4 = Expr::term("s_half_alpha", alpha / 4.0 * log_v - log_b, alpha / 2.0);
  if (alpha >= 4.0) return Expr::max({t1, t2, t3, t4});
  return Expr::min({Expr::max({t1, t2}), Expr::max({t3, t4})});
}

// i.i.d. components; s is the deviation of ||X|| itself (the normalised
// statement is rescaled by sqrt(d)).
inline Expr vector_isotropic_exponent(std::size_t d, double K, double sigma_x, double alpha) {
  require(alpha >= 2.0, error_kind::unsupported, "the Orlicz vector bounds need alpha >= 2");
  require(d >= 1 && K > 0.0 && sigma_x > 0.0, error_kind::domain, "need d >= 1, K > 0, sigma > 0");
  const double ld = std::log(static_cast<double>(d)), lk = std::log(K), ls = std::log(sigma_x);
  // The heterogeneous exponent with K_i = K and sigma_i = sigma_x, including
  // the mixed s^(alpha/2) term; d * (s/sqrt(d))^p / c = s^p * d^(1 - p/2) / c.
  const double log_b = ld * (alpha / 2.0 - 1.0) + alpha * lk;
  auto t1 = Expr::term("s4", ld * (1.0 - 2.0) - 4.0 * lk, 4.0);
  auto t2 = Expr::term("s2", 2.0 * ls - 4.0 * lk, 2.0);
  auto t3 = Expr::term("s_alpha", -log_b, alpha);
  auto t4 = Expr::term("s_half_alpha", alpha / 4.0 * (ld + 2.0 * ls) - log_b, alpha / 2.0);
  if (alpha >= 4.0) return Expr::max({t1, t2, t3, t4});
  return Expr::min({Expr::max({t1, t2}), Expr::max({t3, t4})});
}

// Pair (sigma, L) at exponent alpha describes X_i^2 - E X_i^2.
inline Expr vector_sigma_l_exponent(std::size_t d, double sigma_x, const SigmaLPair& pr) {
  require(d >= 1 && sigma_x > 0.0, error_kind::domain, "need d >= 1 and sigma_x > 0");
  const double a = pr.alpha, ld = std::log(static_cast<double>(d)), lsx = std::log(sigma_x);
  const double ls = std::log(pr.sigma), lL = std::log(pr.L);
  auto quad = Expr::max({Expr::term("s4_sigma", -ld - 2.0 * ls, 4.0), Expr::term("s2_sigma", 2.0 * lsx - 2.0 * ls, 2.0)});
  auto lin = Expr::max({Expr::term("s2_L", -lL, 2.0), Expr::term("s_L", 0.5 * ld + lsx - lL, 1.0)});
  auto top = Expr::term("s2alpha_L", -(a - 1.0) * ld - a * lL, 2.0 * a);
  if (a >= 2.0)
    return Expr::max({top, Expr::term("s4_L", -ld - 2.0 * lL, 4.0), Expr::term("s2_L2", 2.0 * lsx - 2.0 * lL, 2.0),
                      Expr::min({quad, lin})});
  auto mid = Expr::term("salpha_L", (1.0 - a / 2.0) * ld + a * lsx - a * lL, a);
  return Expr::min({quad, Expr::min({Expr::max({top, mid}), lin})});
}

struct VectorScenario {
  vector_form form = vector_form::isotropic;
  double alpha = 2.0;                 // exponent of the components (Orlicz forms)
  std::vector<double> K;              // per-component norms (heterogeneous)
  std::vector<double> sigma;          // per-component standard deviations (heterogeneous)
  std::size_t d = 1;                  // isotropic and sigma_l forms
  double K_iso = 1.0;
  double sigma_x = 1.0;
  std::optional<SigmaLPair> square_pair;  // sigma_l form
};

inline Expr vector_exponent(const VectorScenario& v) {
  switch (v.form) {
    case vector_form::heterogeneous: return vector_heterogeneous_exponent(v.K, v.sigma, v.alpha);
    case vector_form::isotropic: return vector_isotropic_exponent(v.d, v.K_iso, v.sigma_x, v.alpha);
    case vector_form::sigma_l:
      require(v.square_pair.has_value(), error_kind::input, "sigma_l vector form needs a pair for the squares");
      return vector_sigma_l_exponent(v.d, v.sigma_x, *v.square_pair);
  }
  fail(error_kind::input, "unknown vector form");
}

inline double vector_anchor(const VectorScenario& v, std::string* kind = nullptr) {
  auto set = [&](const char* k) {
    if (kind) *kind = k;
  };
  switch (v.form) {
    case vector_form::heterogeneous: {
      double s = 0.0;
      for (double x : v.sigma) s += x * x;
      set("sqrt_mean_sq_norm");
      return std::sqrt(s);
    }
    case vector_form::isotropic: set("sqrt_d_sigma"); return std::sqrt(static_cast<double>(v.d)) * v.sigma_x;
    case vector_form::sigma_l:
      // Both anchors coincide for identically distributed mean-zero components.
      set(v.square_pair && v.square_pair->alpha >= 2.0 ? "sqrt_mean_sq_norm" : "sqrt_d_sigma");
      return std::sqrt(static_cast<double>(v.d)) * v.sigma_x;
  }
  return 0.0;
}

inline VectorTail vector_norm_tail(double s, const VectorScenario& v, double C) {
  require(s >= 0.0, error_kind::domain, "s must be >= 0");
  VectorTail out;
  out.anchor = vector_anchor(v, &out.anchor_kind);
  const Expr e = vector_exponent(v);
  if (s == 0.0) {
    out.bound = bound_from_exponent(0.0, e.eval(std::numeric_limits<double>::min()).label);
    return out;
  }
  const auto ev = e.eval(s);
  out.bound = bound_from_exponent(C * std::exp(ev.log_value), ev.label);
  return out;
}

inline VectorTail vector_norm_tail(double s, const VectorScenario& v, const ConstantProfile& p) {
  return vector_norm_tail(s, v, p.c("C_vector"));
}

// Smallest s with 2 exp(-C E(s)) <= exp(-t), i.e. C E(s) >= t + log 2.
inline double vector_radius(double t, const VectorScenario& v, double C) {
  require(t > 0.0 && C > 0.0, error_kind::domain, "need t > 0 and C > 0");
  const Expr e = vector_exponent(v);
  const double target = std::log((t + std::numbers::ln2) / C);
  double hi = 1.0;
  while (e.eval(hi).log_value < target) hi *= 2.0;
  double lo = hi / 2.0;
  while (e.eval(lo).log_value >= target) lo /= 2.0;
  for (int i = 0; i < 200 && hi - lo > 1e-14 * hi; ++i) {
    const double mid = 0.5 * (lo + hi);
    (e.eval(mid).log_value < target ? lo : hi) = mid;
  }
  return hi;
}

// ---------------------------------------------------------------- random matrices

// Rows are i.i.d. with (X_i' u)^2 - E(X_i' u)^2 described by `pair` for every
// unit u; M_min^2, M_max^2 are the extreme eigenvalues of the row covariance.
struct MatrixScenario {
  std::size_t d1 = 1;
  std::size_t d2 = 1;
  SigmaLPair pair;
  double M_min = 1.0;
  double M_max = 1.0;
};

namespace detail {
// C min{L r^(1/a), sigma r^(1/2) + L r} for a >= 2, C (sigma r^(1/2) + L min{r^(1/a), r}) below.
inline double deviation_radius(double r, double sigma, double L, double alpha, double C) {
  if (alpha >= 2.0) return C * std::min(L * std::pow(r, 1.0 / alpha), sigma * std::sqrt(r) + L * r);
  return C * (sigma * std::sqrt(r) + L * std::min(std::pow(r, 1.0 / alpha), r));
}
}  // namespace detail

inline double matrix_deviation_bound(double t, const MatrixScenario& m, double C) {
  require(t > 0.0, error_kind::domain, "t must be > 0");
  require(m.d1 >= 1 && m.d2 >= 1, error_kind::domain, "matrix dimensions must be positive");
  const double r = (t + static_cast<double>(m.d2)) / static_cast<double>(m.d1);
  return detail::deviation_radius(r, m.pair.sigma, m.pair.L, m.pair.alpha, C);
}

inline double matrix_deviation_bound(double t, const MatrixScenario& m, const ConstantProfile& p) {
  return matrix_deviation_bound(t, m, p.c("C_matrix"));
}

struct SingularValueInterval {
  double lower_smin_sq = 0.0;
  double upper_smax_sq = 0.0;
};

// d1 M_min^2 - w <= s_min^2 <= s_max^2 <= d1 M_max^2 + w with w = d1 times the
// deviation radius; the lower end is clamped at 0.
inline SingularValueInterval singular_value_interval(double t, const MatrixScenario& m, double C) {
  require(m.M_min <= m.M_max && m.M_min >= 0.0, error_kind::domain, "need 0 <= M_min <= M_max");
  const double w = static_cast<double>(m.d1) * matrix_deviation_bound(t, m, C);
  const double d1 = static_cast<double>(m.d1);
  return {std::max(0.0, d1 * m.M_min * m.M_min - w), d1 * m.M_max * m.M_max + w};
}

inline SingularValueInterval singular_value_interval(double t, const MatrixScenario& m, const ConstantProfile& p) {
  return singular_value_interval(t, m, p.c("C_matrix"));
}

// i.i.d. sub-Gaussian entries with standard deviation sigma_x and row
// projection norm K: upper bound on s_max^2 from the two squared pairs.
inline double subgaussian_smax_sq(double t, std::size_t d1, std::size_t d2, double sigma_x, double K, double C) {
  require(t > 0.0, error_kind::domain, "t must be > 0");
  require(sigma_x > 0.0 && sigma_x <= K, error_kind::domain, "need 0 < sigma_x <= K");
  const double u = static_cast<double>(d2) + t, n1 = static_cast<double>(d1), lg = std::log(2.0 * K / sigma_x);
  const double g = std::pow(K, 1.5) * std::sqrt(sigma_x) * std::sqrt(n1) + K * K * std::sqrt(u);
  const double v = sigma_x * K * std::sqrt(n1) * std::sqrt(lg) + K * K * std::sqrt(u) * lg;
  return n1 * sigma_x * sigma_x + C * std::sqrt(u) * std::min(g, v);
}

// (sqrt(d1) sigma + sqrt(2C) K sqrt(d2 + t))^2, an upper bound on the above
// once t >= sigma d1 / K - d2.
inline std::optional<double> subgaussian_smax_sq_simple(double t, std::size_t d1, std::size_t d2, double sigma_x,
                                                        double K, double C) {
  if (t < sigma_x * static_cast<double>(d1) / K - static_cast<double>(d2)) return std::nullopt;
  const double r = std::sqrt(static_cast<double>(d1)) * sigma_x + std::sqrt(2.0 * C) * K * std::sqrt(d2 + t);
  return r * r;
}

// ---------------------------------------------------------------- estimation

inline double mean_error_bound(double t, std::size_t n, std::size_t d, const SigmaLPair& pr, double C) {
  require(t > 0.0 && n >= 1 && d >= 1, error_kind::domain, "need t > 0, n >= 1, d >= 1");
  const double r = (t + static_cast<double>(d)) / static_cast<double>(n);
  return detail::deviation_radius(r, pr.sigma, pr.L, pr.alpha, C);
}

inline double mean_error_bound(double t, std::size_t n, std::size_t d, const SigmaLPair& pr,
                               const ConstantProfile& p) {
  return mean_error_bound(t, n, d, pr, p.c("C_mean"));
}

// Operator-norm radius for the sample covariance; failure probability 2 e^-t.
inline double cov_error_bound(double t, std::size_t n, std::size_t d, const SigmaLPair& pr, double C) {
  require(t > 0.0 && n >= 1 && d >= 1, error_kind::domain, "need t > 0, n >= 1, d >= 1");
  require(pr.alpha >= 2.0, error_kind::unsupported, "covariance bound needs alpha >= 2");
  const double r = (t + static_cast<double>(d)) / static_cast<double>(n);
  const double L2 = pr.L * pr.L;
  if (pr.alpha >= 4.0) return C * std::min(L2 * std::pow(r, 2.0 / pr.alpha), pr.sigma * pr.L * std::sqrt(r) + L2 * r);
  return C * pr.sigma * pr.L * std::sqrt(r) + C * std::min(L2 * std::pow(r, 2.0 / pr.alpha), L2 * r);
}

inline double cov_error_bound(double t, std::size_t n, std::size_t d, const SigmaLPair& pr,
                              const ConstantProfile& p) {
  return cov_error_bound(t, n, d, pr, p.c("C_cov"));
}

// Sub-Gaussian vectors with projection variance sigma_x^2 and norm K: the
// smallest radius over the three canonical pairs at alpha = 2.
inline double cov_error_bound_subgaussian(double t, std::size_t n, std::size_t d, double sigma_x, double K,
                                          const ConstantProfile& p) {
  double best = inf;
  for (const auto& pr : canonical_pairs(sigma_x, K, 2.0, p)) best = std::min(best, cov_error_bound(t, n, d, pr, p));
  return best;
}

}  // namespace subweibull
