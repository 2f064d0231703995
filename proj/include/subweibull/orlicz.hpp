// Copyright 2026 The subweibull Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "subweibull/dists.hpp"
#include "subweibull/error.hpp"
#include "subweibull/quadrature.hpp"

namespace subweibull {

// Extended real >= 1 used for conjugate exponents; +inf is a tagged value,
// never a large float.
struct ext_real {
  double value = 1.0;
  bool infinite = false;

  static ext_real infinity() { return {0.0, true}; }
  static ext_real finite(double v) { return {v, false}; }

  double as_double() const { return infinite ? inf : value; }
  bool operator==(const ext_real& o) const {
    return infinite == o.infinite && (infinite || value == o.value);
  }
};

struct ExponentPair {
  double alpha = 1.0;
  ext_real beta;
};

inline ExponentPair conjugate(double alpha) {
  require(alpha >= 1.0 && std::isfinite(alpha), error_kind::domain, "alpha must be >= 1");
  if (alpha == 1.0) return {1.0, ext_real::infinity()};
  return {alpha, ext_real::finite(alpha / (alpha - 1.0))};
}

// log of (sum_i |w_i|^gamma)^(1/gamma), or log max_i |w_i| when gamma = inf.
inline double log_lnorm(const std::vector<double>& w, ext_real gamma) {
  double best = -inf;
  for (double x : w)
    if (x != 0.0) best = std::max(best, std::log(std::abs(x)));
  if (gamma.infinite || best == -inf) return best;
  const double g = gamma.value;
  double s = 0.0;
  for (double x : w)
    if (x != 0.0) s += std::exp(g * (std::log(std::abs(x)) - best));
  return best + std::log(s) / g;
}

// Weighted aggregate (sum_i |a_i K_i|^gamma)^(1/gamma), computed in log space.
inline double log_aggregate(const std::vector<double>& a, const std::vector<double>& k, ext_real gamma) {
  require(a.size() == k.size(), error_kind::input, "weights and scales differ in length");
  std::vector<double> w(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    require(k[i] >= 0.0, error_kind::input, "scales must be nonnegative");
    w[i] = a[i] * k[i];
  }
  return log_lnorm(w, gamma);
}

inline double aggregate(const std::vector<double>& a, const std::vector<double>& k, ext_real gamma) {
  return std::exp(log_aggregate(a, k, gamma));
}

enum class norm_method { closed_form, quadrature, empirical };

inline const char* to_string(norm_method m) {
  switch (m) {
    case norm_method::closed_form: return "closed_form";
    case norm_method::quadrature: return "quadrature";
    case norm_method::empirical: return "empirical";
  }
  return "unknown";
}

struct OrliczNorm {
  double value = 0.0;
  double alpha = 1.0;
  norm_method method = norm_method::closed_form;
  double tolerance = 0.0;
  double residual = 0.0;
  std::size_t batch_size = 0;
};

inline constexpr double default_norm_tol = 1e-9;
inline constexpr double default_norm_rel_u = 1e-10;

namespace detail {

// Bisection on u for log E exp((|X|/u)^alpha) = log 2; `log_crit` is strictly
// decreasing in u.
template <class LogCrit>
std::pair<double, double> bisect_norm(LogCrit&& log_crit, double heuristic, double tol) {
  auto g = [&](double u) {
    const double lc = log_crit(u);
    return lc > 700 ? inf : std::exp(lc) - 2.0;
  };
  double lo = heuristic / 10, hi = heuristic * 10;
  int doublings = 0;
  while (!(g(lo) > 0.0)) {
    lo /= 2;
    if (++doublings > 60) throw numeric_error("norm bracket expansion (lower)", lo);
  }
  while (!(g(hi) <= 0.0)) {
    hi *= 2;
    if (++doublings > 60) throw numeric_error("norm bracket expansion (upper)", hi);
  }
  double mid = 0.5 * (lo + hi), gm = g(mid);
  for (int it = 0; it < 400; ++it) {
    if (hi - lo <= default_norm_rel_u * hi && std::abs(gm) <= tol) break;
    if (hi - lo <= 1e-15 * hi) break;
    if (gm > 0.0)
      lo = mid;
    else
      hi = mid;
    mid = 0.5 * (lo + hi);
    gm = g(mid);
  }
  return {mid, std::abs(gm)};
}

inline double log_crit_discrete(const std::vector<std::pair<double, double>>& atoms, double alpha, double u) {
  double s = -inf;
  for (auto [x, p] : atoms)
    if (p > 0.0) s = log_add(s, std::log(p) + std::pow(std::abs(x) / u, alpha));
  return s;
}

}  // namespace detail

// log E exp((|X|/u)^alpha) for a distribution spec, closed form where known.
inline double log_orlicz_criterion(const DistSpec& spec, double alpha, double u, norm_method* method = nullptr) {
  const double m = spec.multiplier();
  auto set = [&](norm_method nm) {
    if (method) *method = nm;
  };
  set(norm_method::closed_form);
  if (auto atoms = spec.support()) return detail::log_crit_discrete(*atoms, alpha, u);
  switch (spec.kind()) {
    case family::gaussian:
      if (alpha == 2.0 && spec.param1() == 0.0) {
        const double t = 2.0 * m * m * spec.param2() * spec.param2() / (u * u);
        return t >= 1.0 ? inf : -0.5 * std::log1p(-t);
      }
      break;
    case family::exponential:
      if (alpha == 1.0 && !spec.centered()) {
        const double x = m / (spec.param1() * u);
        return x >= 1.0 ? inf : -std::log1p(-x);
      }
      break;
    case family::symmetric_weibull:
      if (alpha == spec.param1()) {
        const double th = std::pow(m * spec.param2() / u, alpha);
        return th >= 1.0 ? inf : -std::log1p(-th) / alpha;
      }
      break;
    case family::bounded_uniform:
      if (alpha == 1.0) {
        const double x = m * spec.param1() / u;
        return x + std::log1p(-std::exp(-x)) - std::log(x);
      } else {
        // Integrand anchored at its endpoint maximum and written in the
        // distance z to the endpoint; the mass sits within a few widths w.
        set(norm_method::quadrature);
        const double h = m * spec.param1(), top = std::pow(h / u, alpha);
        auto f = [&](double z) { return std::exp(top * std::expm1(alpha * std::log1p(-z / h))); };
        const double w = std::min(h, std::pow(u / h, alpha) * h / alpha);
        const double split = std::min(h, 64.0 * w);
        auto near = integrate_interval(f, 0.0, split);
        const auto far = integrate_interval(f, split, h);
        near.value += far.value;
        near.error += far.error;
        require_converged(near, "orlicz criterion quadrature");
        return top + std::log(near.value / h);
      }
    default: break;
  }
  set(norm_method::quadrature);
  const auto r = spec.integrate([&](double x) { return std::pow(std::abs(x) / u, alpha); });
  // Overflowing integrals sit far above the log 2 level; only the sign matters there.
  if (!(r.value < 1e200) || !std::isfinite(r.error)) return inf;
  require_converged(r, "orlicz criterion quadrature");
  return std::log(r.value);
}

inline OrliczNorm orlicz_norm_exact(const DistSpec& spec, double alpha, double tol = default_norm_tol) {
  require(alpha >= 1.0, error_kind::domain, "alpha must be >= 1");
  if (alpha > spec.max_alpha())
    fail(error_kind::infeasible, "psi_" + std::to_string(alpha) + " norm of " + spec.describe() + " is infinite");
  norm_method method = norm_method::closed_form;
  const double h = std::sqrt(spec.raw_moment2());
  auto [u, res] = detail::bisect_norm(
      [&](double uu) { return log_orlicz_criterion(spec, alpha, uu, &method); }, h, tol);
  return {u, alpha, method, tol, res, 0};
}

// Norm of a finite-support law given as (atom, probability) pairs.
inline OrliczNorm orlicz_norm_discrete(const std::vector<std::pair<double, double>>& atoms, double alpha,
                                       double tol = default_norm_tol) {
  require(alpha >= 1.0, error_kind::domain, "alpha must be >= 1");
  double m2 = 0.0;
  for (auto [x, p] : atoms) m2 += p * x * x;
  if (m2 == 0.0) return {0.0, alpha, norm_method::closed_form, tol, 0.0, 0};
  auto [u, res] = detail::bisect_norm(
      [&](double uu) { return detail::log_crit_discrete(atoms, alpha, uu); }, std::sqrt(m2), tol);
  return {u, alpha, norm_method::closed_form, tol, res, 0};
}

// Plug-in estimator: the expectation is replaced by the batch mean.
inline OrliczNorm orlicz_norm_empirical(const std::vector<double>& values, double alpha,
                                        double tol = default_norm_tol) {
  require(alpha >= 1.0, error_kind::domain, "alpha must be >= 1");
  require(values.size() >= 100, error_kind::input, "empirical norm needs at least 100 values");
  double m2 = 0.0, amax = 0.0;
  for (double x : values) {
    m2 += x * x;
    amax = std::max(amax, std::abs(x));
  }
  if (amax == 0.0) return {0.0, alpha, norm_method::closed_form, tol, 0.0, values.size()};
  m2 /= static_cast<double>(values.size());
  const double logn = std::log(static_cast<double>(values.size()));
  auto log_crit = [&](double u) {
    // log-sum-exp anchored at the largest exponent
    const double top = std::pow(amax / u, alpha);
    double s = 0.0;
    for (double x : values) s += std::exp(std::pow(std::abs(x) / u, alpha) - top);
    return top + std::log(s) - logn;
  };
  auto [u, res] = detail::bisect_norm(log_crit, std::sqrt(m2), tol);
  return {u, alpha, norm_method::empirical, tol, res, values.size()};
}

inline OrliczNorm orlicz_norm_empirical(const SampleBatch& batch, double alpha, double tol = default_norm_tol) {
  return orlicz_norm_empirical(batch.values, alpha, tol);
}

// ||X||_k <= C k^(1/alpha) ||X||_psi_alpha.
inline double moment_from_norm(double k, double alpha, double norm, double C) {
  require(k >= 1.0, error_kind::domain, "k must be >= 1");
  require(alpha >= 1.0, error_kind::domain, "alpha must be >= 1");
  require(norm >= 0.0, error_kind::domain, "norm must be nonnegative");
  return C * std::pow(k, 1.0 / alpha) * norm;
}

// E|X|^3 <= C sigma^2 K log(2K/sigma)^(1/alpha).
inline double third_moment_bound(double sigma_x, double norm, double alpha, double C) {
  require(alpha >= 1.0, error_kind::domain, "alpha must be >= 1");
  require(sigma_x > 0.0 && sigma_x <= std::sqrt(2.0) * norm, error_kind::domain,
          "third moment bound needs 0 < sigma <= sqrt(2) * norm");
  return C * sigma_x * sigma_x * norm * std::pow(std::log(2.0 * norm / sigma_x), 1.0 / alpha);
}

// For a, b >= 0 with |a - b| >= t: |a^2 - b^2| >= max(b t, t^2).
inline double square_diff_floor(double a, double b, double t) {
  require(a >= 0.0 && b >= 0.0 && t > 0.0, error_kind::domain, "need a, b >= 0 and t > 0");
  require(std::abs(a - b) >= t, error_kind::input, "precondition |a - b| >= t violated");
  return std::max(b * t, t * t);
}

// Closed-form bound K^(q+1) exp(-tau/K) on the integral of s^q exp(-s/K) over [tau, inf).
inline double integral_tail_bound(double K, double tau, double q) {
  require(K > 0.0 && tau > 0.0, error_kind::domain, "need K, tau > 0");
  require(q <= 0.0 && tau / K >= 1.0, error_kind::domain, "need q <= 0 and tau/K >= 1");
  return std::pow(K, q + 1.0) * std::exp(-tau / K);
}

inline double integral_tail_quadrature(double K, double tau, double q) {
  const auto r = integrate_tail([&](double y) { return std::exp(q * std::log(tau + y) - (tau + y) / K); }, 0.0, K);
  require_converged(r, "integral tail quadrature");
  return r.value;
}

}  // namespace subweibull
