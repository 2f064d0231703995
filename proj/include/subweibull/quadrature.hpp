// Copyright 2026 The subweibull Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <limits>

#include "subweibull/error.hpp"

namespace subweibull {

struct quad_result {
  double value = 0.0;
  double error = 0.0;
};

inline constexpr double quad_rel_tol = 1e-9;
inline constexpr double quad_cutoff = 1e-16;

template <class F>
quad_result integrate_interval(F&& f, double a, double b) {
  if (!(b > a)) return {};
  double err = 0.0;
  const double v = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, a, b, 15, 1e-11, &err);
  return {v, err};
}

// Integral of a nonnegative f over [a, inf). The domain is cut where f falls
// below quad_cutoff of its observed peak; `scale` is the natural width of f.
template <class F>
quad_result integrate_tail(F&& f, double a, double scale) {
  double peak = 0.0, peak_x = a, x = a, step = scale / 64.0, cut = a;
  for (int i = 0; i < 4000; ++i) {
    const double fx = f(x);
    if (fx > peak) {
      peak = fx;
      peak_x = x;
    }
    cut = x;
    if (x > peak_x && peak > 0.0 && fx < quad_cutoff * peak) break;
    if (peak == 0.0 && x > a + 1e6 * scale) break;
    x += step;
    step *= 1.1;
  }
  if (peak == 0.0) return {};
  quad_result total;
  double lo = a, w = scale;
  while (lo < cut) {
    const double hi = std::min(cut, lo + w);
    const auto piece = integrate_interval(f, lo, hi);
    total.value += piece.value;
    total.error += piece.error;
    lo = hi;
    w *= 2.0;
  }
  total.error += quad_cutoff * peak * (cut - a);
  return total;
}

inline void require_converged(const quad_result& r, const char* what) {
  const double rel = r.error / std::max(std::abs(r.value), std::numeric_limits<double>::min());
  if (!(rel <= quad_rel_tol) && !(r.error < 1e-300)) throw numeric_error(what, rel);
}

}  // namespace subweibull
