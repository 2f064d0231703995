// Copyright 2026 The subweibull Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <numbers>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "subweibull/error.hpp"
#include "subweibull/expr.hpp"
#include "subweibull/orlicz.hpp"
#include "subweibull/profile.hpp"
#include "subweibull/sigma_l.hpp"

namespace subweibull {

// One evaluation of a tail bound 2 exp(-exponent).
struct BoundValue {
  double raw = 2.0;
  double log_raw = std::numbers::ln2;
  double exponent = 0.0;  // -log(raw / 2)
  std::string branch;
  double reported() const { return std::min(1.0, raw); }
};

inline BoundValue bound_from_exponent(double exponent, std::string branch) {
  BoundValue v;
  v.exponent = exponent;
  v.log_raw = std::numbers::ln2 - exponent;
  v.raw = std::exp(v.log_raw);
  v.branch = std::move(branch);
  return v;
}

// t -> 2 exp(-C * E(t)) with E a regime-wise exponent.
struct BoundCurve {
  std::string tag;
  std::string profile_id;
  double C = 1.0;
  Expr expr;
  std::vector<double> breakpoints;
  nlohmann::json params = nlohmann::json::object();

  BoundValue at(double t) const {
    require(t >= 0.0 && !std::isnan(t), error_kind::domain, "t must be >= 0");
    if (t == 0.0) return bound_from_exponent(0.0, expr.eval(std::numeric_limits<double>::min()).label);
    const auto v = expr.eval(t);
    return bound_from_exponent(C * std::exp(v.log_value), v.label);
  }
};

namespace detail {

inline void require_same_length(std::size_t a, std::size_t b) {
  require(a == b, error_kind::input, "weights and per-term parameters differ in length");
  require(a > 0, error_kind::input, "at least one term is required");
}

inline std::vector<double> field(const std::vector<SigmaLPair>& pairs, double SigmaLPair::*m) {
  std::vector<double> out;
  out.reserve(pairs.size());
  for (const auto& p : pairs) out.push_back(p.*m);
  return out;
}

inline double common_alpha(const std::vector<SigmaLPair>& pairs) {
  require(!pairs.empty(), error_kind::input, "no pairs supplied");
  const double a = pairs.front().alpha;
  for (const auto& p : pairs) require(p.alpha == a, error_kind::input, "pairs carry different alpha values");
  return a;
}

inline void require_finite_log(double v, const char* what) {
  require(std::isfinite(v), error_kind::input, std::string(what) + " is zero or not finite");
}

// All |a_i| w_i equal: returns that common value, else nullopt.
inline std::optional<double> common_scale(const std::vector<double>& a, const std::vector<double>& w) {
  const double c = std::abs(a[0] * w[0]);
  for (std::size_t i = 1; i < a.size(); ++i)
    if (std::abs(std::abs(a[i] * w[i]) - c) > 1e-15 * c) return std::nullopt;
  return c;
}

}  // namespace detail

// ---------------------------------------------------------------- exponents

// Exponent of the Orlicz-norm tail for weighted sums: psi2 and psi_alpha
// branches combined by max when alpha >= 2 and by min below.
inline Expr orlicz_tail_exponent(const std::vector<double>& a, const std::vector<double>& K, double alpha) {
  detail::require_same_length(a.size(), K.size());
  const auto ep = conjugate(alpha);
  const double log_s2 = 2.0 * log_aggregate(a, K, ext_real::finite(2.0));
  const double log_ba = alpha * log_aggregate(a, K, ep.beta);
  detail::require_finite_log(log_s2, "sum of a_i^2 K_i^2");
  auto psi2 = Expr::term("psi2", -log_s2, 2.0);
  auto psia = Expr::term("psi_alpha", -log_ba, alpha);
  return alpha >= 2.0 ? Expr::max({psi2, psia}) : Expr::min({psi2, psia});
}

// Exponent of the (sigma, L) tail from its four aggregates: log sum a^2 sigma^2,
// log sum a^2 L^2, alpha * log l_beta(aL), and log max |a| L.
inline Expr sigma_l_tail_exponent_from_sums(double alpha, double log_sig2, double log_l2, double log_lb,
                                            double log_lmax) {
  detail::require_finite_log(log_sig2, "sum of a_i^2 sigma_i^2");
  auto sig = Expr::term("psi2", -log_sig2, 2.0);
  auto l2 = Expr::term("psi2", -log_l2, 2.0);
  auto la = Expr::term("psi_alpha", -log_lb, alpha);
  auto lin = Expr::term("psi1", -log_lmax, 1.0);
  if (alpha >= 2.0) return Expr::max({l2, la, Expr::min({sig, lin})});
  return Expr::min({sig, Expr::max({la, lin})});
}

inline Expr sigma_l_tail_exponent(const std::vector<double>& a, const std::vector<SigmaLPair>& pairs) {
  detail::require_same_length(a.size(), pairs.size());
  const double alpha = detail::common_alpha(pairs);
  const auto ep = conjugate(alpha);
  const auto s = detail::field(pairs, &SigmaLPair::sigma);
  const auto L = detail::field(pairs, &SigmaLPair::L);
  return sigma_l_tail_exponent_from_sums(alpha, 2.0 * log_aggregate(a, s, ext_real::finite(2.0)),
                                         2.0 * log_aggregate(a, L, ext_real::finite(2.0)),
                                         alpha * log_aggregate(a, L, ep.beta),
                                         log_aggregate(a, L, ext_real::infinity()));
}

// ---------------------------------------------------------------- tails

inline BoundCurve orlicz_tail_curve(const std::vector<double>& a, const std::vector<double>& K, double alpha,
                                    double C, const std::string& profile_id = "") {
  BoundCurve c;
  c.tag = "orlicz_tail";
  c.profile_id = profile_id;
  c.C = C;
  c.expr = orlicz_tail_exponent(a, K, alpha);
  c.breakpoints = c.expr.breakpoints();
  // Equal |a_i| K_i = k: the two branches cross at exactly n k.
  if (auto k = detail::common_scale(a, K)) {
    const double exact = static_cast<double>(a.size()) * *k;
    for (double& b : c.breakpoints)
      if (std::abs(b - exact) <= 1e-9 * exact) b = exact;
  }
  c.params = {{"alpha", alpha}, {"n", a.size()}, {"C", C}};
  return c;
}

inline double tail_orlicz_constant(double alpha, const ConstantProfile& p) {
  return alpha >= 2.0 ? p.c("C_tail_max") : p.c("C_tail_min");
}

inline BoundCurve orlicz_tail_curve(const std::vector<double>& a, const std::vector<double>& K, double alpha,
                                    const ConstantProfile& p) {
  return orlicz_tail_curve(a, K, alpha, tail_orlicz_constant(alpha, p), p.id);
}

inline BoundValue tail_orlicz(double t, const std::vector<double>& a, const std::vector<double>& K, double alpha,
                              const ConstantProfile& p) {
  return orlicz_tail_curve(a, K, alpha, p).at(t);
}

inline BoundCurve sigma_l_tail_curve(const std::vector<double>& a, const std::vector<SigmaLPair>& pairs, double C,
                                     const std::string& profile_id = "") {
  BoundCurve c;
  c.tag = "sigma_l_tail";
  c.profile_id = profile_id;
  c.C = C;
  c.expr = sigma_l_tail_exponent(a, pairs);
  c.breakpoints = c.expr.breakpoints();
  c.params = {{"alpha", pairs.front().alpha}, {"n", a.size()}, {"C", C}};
  return c;
}

inline BoundValue tail_sigma_l(double t, const std::vector<double>& a, const std::vector<SigmaLPair>& pairs,
                               const ConstantProfile& p) {
  return sigma_l_tail_curve(a, pairs, p.c("C_tail_sigl"), p.id).at(t);
}

// Minimum over families of candidate pairs, one family used for every term.
// candidates[i][j] is the j-th family's pair for term i.
inline BoundValue tail_best(double t, const std::vector<double>& a,
                            const std::vector<std::vector<SigmaLPair>>& candidates, double C,
                            const std::vector<std::string>& family_labels = {}) {
  detail::require_same_length(a.size(), candidates.size());
  const std::size_t m = candidates.front().size();
  require(m > 0, error_kind::input, "empty candidate list");
  for (const auto& c : candidates) require(c.size() == m, error_kind::input, "candidate lists differ in length");
  BoundValue best;
  bool have = false;
  for (std::size_t j = 0; j < m; ++j) {
    std::vector<SigmaLPair> pick;
    pick.reserve(a.size());
    for (const auto& c : candidates) pick.push_back(c[j]);
    auto v = sigma_l_tail_curve(a, pick, C).at(t);
    const std::string fam = j < family_labels.size() ? family_labels[j] : to_string(pick.front().provenance);
    v.branch = fam + "/" + v.branch;
    if (!have || v.exponent > best.exponent) {
      best = v;
      have = true;
    }
  }
  return best;
}

inline BoundValue tail_best(double t, const std::vector<double>& a,
                            const std::vector<std::vector<SigmaLPair>>& candidates, const ConstantProfile& p) {
  return tail_best(t, a, candidates, p.c("C_tail_sigl"));
}

// ---------------------------------------------------------------- i.i.d. wrappers

// Sum of n i.i.d. variables with standard deviation sigma and psi_alpha norm K,
// using the three canonical pairs.
inline std::vector<std::vector<SigmaLPair>> iid_candidates(std::size_t n, double sigma_x, double K, double alpha,
                                                           const ConstantProfile& p) {
  return std::vector<std::vector<SigmaLPair>>(n, canonical_pairs(sigma_x, K, alpha, p));
}

inline BoundValue tail_best_iid(double t, std::size_t n, double sigma_x, double K, double alpha,
                                const ConstantProfile& p) {
  return tail_best(t, std::vector<double>(n, 1.0), iid_candidates(n, sigma_x, K, alpha, p), p);
}

// Sub-exponential sums: 2 exp(-C max{min{t^2/(n s^2), t/(K log(2K/s))}, min{t/(cK), t^2/(n s cK)}})
// with c the pair multiplier.
inline BoundValue subexponential_iid_tail(double t, std::size_t n, double sigma_x, double K,
                                          const ConstantProfile& p) {
  require_sigma_range(sigma_x, K);
  require(t >= 0.0, error_kind::domain, "t must be >= 0");
  const double C = p.c("C_tail_sigl"), cp = p.c("C_pair"), nn = static_cast<double>(n);
  if (t == 0.0) return bound_from_exponent(0.0, "psi2");
  const double Lv = lift_L(sigma_x, K * std::log(2.0 * K / sigma_x), p.c("C_pairfix"));
  const double sg = std::sqrt(sigma_x * K), Lg = lift_L(sg, cp * K, p.c("C_pairfix"));
  const double e1 = std::min(t * t / (nn * sigma_x * sigma_x), t / Lv);
  const double e2 = std::min(t / Lg, t * t / (nn * sg * sg));
  return bound_from_exponent(C * std::max(e1, e2), e1 >= e2 ? "variance_log" : "geometric");
}

// Sub-Gaussian sums: the variance_log branch uses log^(1/2)(2K/s), the form
// obtained by inserting that pair at alpha = 2.
inline BoundValue subgaussian_iid_tail(double t, std::size_t n, double sigma_x, double K,
                                       const ConstantProfile& p) {
  require_sigma_range(sigma_x, K);
  require(t >= 0.0, error_kind::domain, "t must be >= 0");
  const double C = p.c("C_tail_sigl"), cp = p.c("C_pair"), nn = static_cast<double>(n);
  if (t == 0.0) return bound_from_exponent(0.0, "psi2");
  const double fix = p.c("C_pairfix");
  const double Lt = lift_L(K, cp * K, fix);
  const double Lv = lift_L(sigma_x, K * std::sqrt(std::log(2.0 * K / sigma_x)), fix);
  const double sg = std::sqrt(sigma_x * K), Lg = lift_L(sg, cp * K, fix);
  const double e0 = t * t / (nn * Lt * Lt);
  const double e1 = std::min(t * t / (nn * sigma_x * sigma_x), t / Lv);
  const double e2 = std::min(t * t / (nn * sg * sg), t / Lg);
  const double e = std::max({e0, e1, e2});
  return bound_from_exponent(C * e, e == e0 ? "trivial" : (e == e1 ? "variance_log" : "geometric"));
}

// ---------------------------------------------------------------- MGF bounds

namespace detail {
inline double beta_value(double alpha) {
  const auto ep = conjugate(alpha);
  require(!ep.beta.infinite, error_kind::domain, "alpha = 1 has no finite conjugate");
  return ep.beta.value;
}
}  // namespace detail

// log of the Orlicz MGF bound with explicit constants; alpha > 1.
inline double log_mgf_upper(double lambda, double alpha, double K, double c_quad, double c_beta) {
  require(lambda >= 0.0, error_kind::domain, "lambda must be >= 0");
  require(alpha > 1.0, error_kind::domain, "the Orlicz MGF bound needs alpha > 1");
  const double b = detail::beta_value(alpha), x = lambda * K;
  if (x == 0.0) return 0.0;
  if (alpha >= 2.0) return c_quad * std::min(x * x, std::pow(x, b));
  if (x <= 1.0) return c_quad * b * x * x;
  return std::exp(b * std::log(c_beta)) * b * std::pow(x, b);
}

inline double mgf_upper(double lambda, double alpha, double K, const ConstantProfile& p) {
  return std::exp(log_mgf_upper(lambda, alpha, K, p.c("C_mgf_quad"), p.c("C_mgf_beta")));
}

// tau-parameterised form for alpha in (1, 2): quadratic up to tau/K, then beta power.
inline double log_mgf_upper_refined(double lambda, double alpha, double K, double tau, double c_quad,
                                    double c_beta) {
  require(lambda >= 0.0, error_kind::domain, "lambda must be >= 0");
  require(alpha > 1.0 && alpha < 2.0, error_kind::domain, "the refined MGF bound covers alpha in (1,2)");
  require(tau > 0.0 && tau < 1.0, error_kind::domain, "tau must lie in (0,1)");
  const double b = detail::beta_value(alpha), x = lambda * K;
  if (x <= tau) return c_quad / (1.0 - tau) * x * x;
  const double lead = b * std::log(c_beta) - (std::floor(b) + 1.0) * std::log(tau) - std::log1p(-tau);
  return std::exp(lead) * std::pow(x, b);
}

inline double mgf_upper_refined(double lambda, double alpha, double K, const ConstantProfile& p) {
  return std::exp(log_mgf_upper_refined(lambda, alpha, K, p.tau_mgf, p.c("C_mgf_quad"), p.c("C_mgf_beta")));
}

struct MgfLower {
  double bound = 1.0;
  bool valid = true;
  double lambda_max = 0.0;
};

inline double mgf_lower_lambda_max(double sigma_x, double K, double alpha) {
  require_sigma_range(sigma_x, K);
  return std::pow(std::log(2.0 * K / sigma_x), -1.0 / alpha) / K;
}

inline MgfLower mgf_lower(double lambda, double sigma_x, double K, double alpha) {
  require(lambda >= 0.0, error_kind::domain, "lambda must be >= 0");
  require(sigma_x > 0.0, error_kind::domain, "sigma_x must be positive");
  MgfLower r;
  r.lambda_max = mgf_lower_lambda_max(sigma_x, K, alpha);
  r.bound = std::exp(lambda * lambda * sigma_x * sigma_x / 8.0);
  r.valid = lambda <= r.lambda_max;
  return r;
}

enum class mgf_branch { small, quad_beta, beta, out_of_range };

inline const char* to_string(mgf_branch b) {
  switch (b) {
    case mgf_branch::small: return "small";
    case mgf_branch::quad_beta: return "quad_beta";
    case mgf_branch::beta: return "beta";
    case mgf_branch::out_of_range: return "out_of_range";
  }
  return "unknown";
}

struct MgfBound {
  double log_value = 0.0;
  mgf_branch branch = mgf_branch::small;
  bool in_range() const { return branch != mgf_branch::out_of_range; }
  double value() const { return in_range() ? std::exp(log_value) : std::nan(""); }
};

// Branches of the (sigma, L) MGF bound with explicit constants.
inline double log_mgf_sigma_l_small(double lambda, const SigmaLPair& pr, double c_quad) {
  return c_quad * lambda * lambda * pr.sigma * pr.sigma;
}
inline double log_mgf_sigma_l_quad_beta(double lambda, const SigmaLPair& pr, double c_quad) {
  const double x = lambda * pr.L;
  return c_quad * std::min(std::pow(x, detail::beta_value(pr.alpha)), x * x);
}
inline double log_mgf_sigma_l_beta(double lambda, const SigmaLPair& pr, double tau, double c_beta) {
  const double b = detail::beta_value(pr.alpha);
  const double lead = b * std::log(c_beta) - (std::floor(b) + 1.0) * std::log(tau) - std::log1p(-tau);
  return std::exp(lead) * std::pow(lambda * pr.L, b);
}

// Quadratic bound up to 1/L, then the alpha-specific branch; alpha = 1 has
// no bound past 1/L and reports out_of_range.
inline MgfBound mgf_upper_sigma_l(double lambda, const SigmaLPair& pr, double tau, double c_quad, double c_beta) {
  require(lambda >= 0.0, error_kind::domain, "lambda must be >= 0");
  if (lambda * pr.L <= 1.0) return {log_mgf_sigma_l_small(lambda, pr, c_quad), mgf_branch::small};
  if (pr.alpha >= 2.0) return {log_mgf_sigma_l_quad_beta(lambda, pr, c_quad), mgf_branch::quad_beta};
  if (pr.alpha > 1.0) return {log_mgf_sigma_l_beta(lambda, pr, tau, c_beta), mgf_branch::beta};
  return {0.0, mgf_branch::out_of_range};
}

inline MgfBound mgf_upper_sigma_l(double lambda, const SigmaLPair& pr, const ConstantProfile& p) {
  return mgf_upper_sigma_l(lambda, pr, p.tau_mgf, p.c("C_mgf_quad"), p.c("C_mgf_beta"));
}

// ---------------------------------------------------------------- moments

namespace detail {

// log of exp(-ratio^(2 alpha/(alpha-2))) with ratio = exp(log_ratio). Within
// 1e-6 of alpha = 2 the pointwise limit is used: 0 below ratio 1, 1 at or above.
inline double log_moment_damping(double log_ratio, double alpha) {
  if (std::abs(alpha - 2.0) <= 1e-6) return log_ratio < 0.0 ? -inf : 0.0;
  return -std::exp(2.0 * alpha / (alpha - 2.0) * log_ratio);
}

}  // namespace detail

struct MomentBound {
  double log_general = 0.0;  // log of the two-term form
  double log_min_form = inf;  // log of the min form, alpha >= 2 only
  double log_value = 0.0;     // the returned bound
  double value() const { return std::exp(log_value); }
};

// Moment bounds from two log-aggregates: log_l2 = log (sum a^2 s^2)^(1/2) and
// log_lb = log (sum |a|^beta w^beta)^(1/beta).
inline MomentBound moment_bound_from_aggregates(double p, double alpha, double log_l2, double log_lb, double C) {
  require(p >= 1.0, error_kind::domain, "p must be >= 1");
  const double lp = std::log(p), pc = p * std::log(C);
  MomentBound m;
  const double t1 = pc + 0.5 * p * lp + p * log_l2;
  const double t2 = pc + p / alpha * lp + p * log_lb + detail::log_moment_damping(log_lb - log_l2, alpha);
  m.log_general = log_add(t1, t2);
  if (alpha >= 2.0) {
    m.log_min_form = pc + std::min(0.5 * p * lp + p * log_l2, p / alpha * lp + p * log_lb);
    m.log_value = m.log_min_form;
  } else {
    m.log_value = m.log_general;
  }
  return m;
}

inline MomentBound moment_bound(double p, const std::vector<double>& a, const std::vector<double>& K, double alpha,
                                double C) {
  detail::require_same_length(a.size(), K.size());
  const auto ep = conjugate(alpha);
  return moment_bound_from_aggregates(p, alpha, log_aggregate(a, K, ext_real::finite(2.0)),
                                      log_aggregate(a, K, ep.beta), C);
}

inline MomentBound moment_bound(double p, const std::vector<double>& a, const std::vector<double>& K, double alpha,
                                const ConstantProfile& prof) {
  return moment_bound(p, a, K, alpha, prof.c("C_moment"));
}

// Moment bound in terms of (sigma, L): the two-term form with sigma in the
// quadratic part, for every alpha >= 1.
inline MomentBound moment_bound_sigma_l(double p, const std::vector<double>& a, const std::vector<SigmaLPair>& pairs,
                                        double C) {
  detail::require_same_length(a.size(), pairs.size());
  const double alpha = detail::common_alpha(pairs);
  const auto ep = conjugate(alpha);
  const double log_s = log_aggregate(a, detail::field(pairs, &SigmaLPair::sigma), ext_real::finite(2.0));
  const double log_l = log_aggregate(a, detail::field(pairs, &SigmaLPair::L), ep.beta);
  auto m = moment_bound_from_aggregates(p, alpha, log_s, log_l, C);
  m.log_min_form = inf;
  m.log_value = m.log_general;
  return m;
}

// ---------------------------------------------------------------- norm of sums

enum class norm_mode { orlicz, sigma_l };

struct SumNormBound {
  double psi_alpha = 0.0;
  std::optional<double> psi_2;
};

inline SumNormBound sum_norm_bound(const std::vector<double>& a, const std::vector<double>& K, double alpha, double C) {
  detail::require_same_length(a.size(), K.size());
  const auto ep = conjugate(alpha);
  const double l2 = aggregate(a, K, ext_real::finite(2.0));
  if (alpha >= 2.0) return {C * aggregate(a, K, ep.beta), C * l2};
  return {C * l2, std::nullopt};
}

inline SumNormBound sum_norm_bound_sigma_l(const std::vector<double>& a, const std::vector<SigmaLPair>& pairs,
                                           double C) {
  detail::require_same_length(a.size(), pairs.size());
  const double alpha = detail::common_alpha(pairs);
  const auto ep = conjugate(alpha);
  const auto s = detail::field(pairs, &SigmaLPair::sigma);
  const auto L = detail::field(pairs, &SigmaLPair::L);
  if (alpha >= 2.0) return {C * aggregate(a, L, ep.beta), C * aggregate(a, L, ext_real::finite(2.0))};
  return {C * aggregate(a, s, ext_real::finite(2.0)) + C * aggregate(a, L, ep.beta), std::nullopt};
}

inline SumNormBound sum_norm_bound(const std::vector<double>& a, const std::vector<double>& K, double alpha,
                                   const ConstantProfile& p) {
  return sum_norm_bound(a, K, alpha, p.c("C_norm"));
}

inline SumNormBound sum_norm_bound_sigma_l(const std::vector<double>& a, const std::vector<SigmaLPair>& pairs,
                                           const ConstantProfile& p) {
  return sum_norm_bound_sigma_l(a, pairs, p.c("C_norm"));
}

// ---------------------------------------------------------------- baselines

enum class baseline_kind { koltchinskii, min_form, ledoux_low_alpha };

inline const char* to_string(baseline_kind b) {
  switch (b) {
    case baseline_kind::koltchinskii: return "koltchinskii";
    case baseline_kind::min_form: return "min_form";
    case baseline_kind::ledoux_low_alpha: return "ledoux_low_alpha";
  }
  return "unknown";
}

inline baseline_kind parse_baseline(const std::string& s) {
  if (s == "koltchinskii") return baseline_kind::koltchinskii;
  if (s == "min_form") return baseline_kind::min_form;
  if (s == "ledoux_low_alpha") return baseline_kind::ledoux_low_alpha;
  fail(error_kind::input, "unknown baseline " + s);
}

// n i.i.d. terms with unit weights.
struct IidScenario {
  std::size_t n = 1;
  double alpha = 2.0;
  double sigma_x = 1.0;
  double K = 1.0;
};

inline Expr baseline_exponent(baseline_kind b, const IidScenario& s) {
  require(s.n >= 1 && s.K > 0.0 && s.sigma_x > 0.0, error_kind::domain, "scenario needs n >= 1, K > 0, sigma > 0");
  const double ln = std::log(static_cast<double>(s.n)), lk = std::log(s.K), a = s.alpha;
  switch (b) {
    case baseline_kind::koltchinskii: {
      require_sigma_range(s.sigma_x, s.K);
      const double lL = lk + std::log(std::log(2.0 * s.K / s.sigma_x)) / a;
      return Expr::min({Expr::term("psi2", -(ln + 2.0 * std::log(s.sigma_x)), 2.0), Expr::term("psi1", -lL, 1.0)});
    }
    case baseline_kind::min_form:
      return Expr::min({Expr::term("psi2", -(ln + 2.0 * lk), 2.0),
                        Expr::term("psi_alpha", -((a - 1.0) * ln + a * lk), a)});
    case baseline_kind::ledoux_low_alpha: {
      require(a <= 2.0, error_kind::unsupported, "the low-alpha norm baseline covers alpha in [1,2] only");
      // psi_alpha tail of a norm bound sqrt(n) sigma + n^(1/beta) K; sqrt(n) sigma
      // is an upper proxy for E|S|.
      const auto ep = conjugate(a);
      const double lb = ep.beta.infinite ? lk : lk + ln / ep.beta.value;
      const double N = std::sqrt(static_cast<double>(s.n)) * s.sigma_x + std::exp(lb);
      return Expr::term("psi_alpha", -a * std::log(N), a);
    }
  }
  fail(error_kind::input, "unknown baseline");
}

inline BoundCurve baseline_curve(baseline_kind b, const IidScenario& s, double C, const std::string& profile_id = "") {
  BoundCurve c;
  c.tag = to_string(b);
  c.profile_id = profile_id;
  c.C = C;
  c.expr = baseline_exponent(b, s);
  c.breakpoints = c.expr.breakpoints();
  if (b == baseline_kind::min_form) {
    const double exact = static_cast<double>(s.n) * s.K;
    for (double& x : c.breakpoints)
      if (std::abs(x - exact) <= 1e-9 * exact) x = exact;
  }
  c.params = {{"alpha", s.alpha}, {"n", s.n}, {"sigma_x", s.sigma_x}, {"K", s.K}, {"C", C}};
  if (b == baseline_kind::ledoux_low_alpha) c.params["note"] = "upper proxy";
  return c;
}

inline BoundValue baseline(baseline_kind b, double t, const IidScenario& s, const ConstantProfile& p) {
  return baseline_curve(b, s, p.c("C_tail_min"), p.id).at(t);
}

// ---------------------------------------------------------------- comparison

struct CompareRow {
  double t = 0.0;
  std::string curve;
  std::string branch;
  double neg_log_half = 0.0;
  double raw = 0.0;
  bool breakpoint = false;
};

struct CompareTable {
  std::string profile_id;
  std::vector<CompareRow> rows;
  std::map<std::string, std::vector<double>> breakpoints;
};

inline const std::vector<std::string>& curve_names() {
  static const std::vector<std::string> names = {
      "orlicz_tail",      "min_form",          "koltchinskii",           "ledoux_low_alpha",
      "sigma_l_trivial", "sigma_l_variance_log", "sigma_l_geometric", "best_tail"};
  return names;
}

// Curves for an i.i.d. scenario with unit weights; `curves` selects by name.
inline CompareTable compare_curves(const std::vector<double>& t_grid, const IidScenario& s,
                                   const std::vector<std::string>& curves, const ConstantProfile& p) {
  require(!t_grid.empty(), error_kind::input, "empty t grid");
  require(!curves.empty(), error_kind::input, "no curves requested");
  CompareTable out;
  out.profile_id = p.id;
  const std::vector<double> a(s.n, 1.0), K(s.n, s.K);
  auto pairs_of = [&](int j) {
    return std::vector<SigmaLPair>(s.n, canonical_pairs(s.sigma_x, s.K, s.alpha, p)[j]);
  };
  for (const auto& name : curves) {
    std::optional<BoundCurve> curve;
    if (name == "orlicz_tail") curve = orlicz_tail_curve(a, K, s.alpha, p);
    else if (name == "min_form") curve = baseline_curve(baseline_kind::min_form, s, p.c("C_tail_min"), p.id);
    else if (name == "koltchinskii") curve = baseline_curve(baseline_kind::koltchinskii, s, p.c("C_tail_min"), p.id);
    else if (name == "ledoux_low_alpha")
      curve = baseline_curve(baseline_kind::ledoux_low_alpha, s, p.c("C_tail_min"), p.id);
    else if (name == "sigma_l_trivial") curve = sigma_l_tail_curve(a, pairs_of(0), p.c("C_tail_sigl"), p.id);
    else if (name == "sigma_l_variance_log") curve = sigma_l_tail_curve(a, pairs_of(1), p.c("C_tail_sigl"), p.id);
    else if (name == "sigma_l_geometric") curve = sigma_l_tail_curve(a, pairs_of(2), p.c("C_tail_sigl"), p.id);
    else if (name != "best_tail") fail(error_kind::input, "unknown curve " + name);

    std::vector<std::pair<double, bool>> ts;
    for (double t : t_grid) ts.push_back({t, false});
    if (curve) {
      out.breakpoints[name] = curve->breakpoints;
      for (double b : curve->breakpoints)
        if (b >= t_grid.front() && b <= t_grid.back()) ts.push_back({b, true});
    } else {
      out.breakpoints[name] = {};
    }
    std::stable_sort(ts.begin(), ts.end(), [](auto& x, auto& y) { return x.first < y.first; });
    const auto cands = curve ? std::vector<std::vector<SigmaLPair>>{} : iid_candidates(s.n, s.sigma_x, s.K, s.alpha, p);
    for (auto [t, is_bp] : ts) {
      const BoundValue v = curve ? curve->at(t) : tail_best(t, a, cands, p);
      out.rows.push_back({t, name, v.branch, v.exponent, v.raw, is_bp});
    }
  }
  return out;
}

inline void write_compare_csv(std::ostream& os, const CompareTable& tab) {
  os << "t,curve_label,branch_label,neg_log_half_bound,raw_bound,profile_id,breakpoint\n";
  char buf[64];
  auto num = [&](double x) {
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return std::string(buf);
  };
  for (const auto& r : tab.rows)
    os << num(r.t) << ',' << r.curve << ',' << r.branch << ',' << num(r.neg_log_half) << ',' << num(r.raw) << ','
       << tab.profile_id << ',' << (r.breakpoint ? 1 : 0) << '\n';
}

}  // namespace subweibull
