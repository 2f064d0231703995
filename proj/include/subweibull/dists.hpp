// Copyright 2026 The subweibull Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <boost/math/special_functions/gamma.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "subweibull/error.hpp"
#include "subweibull/quadrature.hpp"
#include "subweibull/rng.hpp"

namespace subweibull {

inline constexpr double inf = std::numeric_limits<double>::infinity();

enum class family { gaussian, bernoulli, rademacher, exponential, symmetric_weibull, bounded_uniform };

inline const char* to_string(family f) {
  switch (f) {
    case family::gaussian: return "gaussian";
    case family::bernoulli: return "bernoulli";
    case family::rademacher: return "rademacher";
    case family::exponential: return "exponential";
    case family::symmetric_weibull: return "symmetric_weibull";
    case family::bounded_uniform: return "bounded_uniform";
  }
  return "unknown";
}

// log(exp(a) + exp(b)) without overflow.
inline double log_add(double a, double b) {
  if (a == -inf) return b;
  if (b == -inf) return a;
  const double m = std::max(a, b);
  return m + std::log1p(std::exp(-std::abs(a - b)));
}

// A distribution with exact variance and central moments. The variable is
// X = multiplier * B where B is the base family member; `multiplier` exists so
// that homogeneity properties can be checked by scaling the spec itself.
class DistSpec {
 public:
  static DistSpec gaussian(double mean, double sd) { return DistSpec(family::gaussian, mean, sd, false); }
  static DistSpec bernoulli(double p, bool centered) { return DistSpec(family::bernoulli, p, 0.0, centered); }
  static DistSpec rademacher() { return DistSpec(family::rademacher, 0.0, 0.0, false); }
  static DistSpec exponential(double rate, bool centered) {
    return DistSpec(family::exponential, rate, 0.0, centered);
  }
  static DistSpec symmetric_weibull(double shape, double scale) {
    return DistSpec(family::symmetric_weibull, shape, scale, false);
  }
  static DistSpec bounded_uniform(double half_width) {
    return DistSpec(family::bounded_uniform, half_width, 0.0, false);
  }

  DistSpec scaled(double c) const {
    require(c > 0.0 && std::isfinite(c), error_kind::parameter, "scale factor must be positive");
    DistSpec s = *this;
    s.mult_ *= c;
    return s;
  }

  family kind() const { return fam_; }
  double param1() const { return a_; }
  double param2() const { return b_; }
  bool centered() const { return centered_; }
  double multiplier() const { return mult_; }

  double mean() const {
    double m = 0.0;
    switch (fam_) {
      case family::gaussian: m = a_; break;
      case family::bernoulli: m = centered_ ? 0.0 : a_; break;
      case family::exponential: m = centered_ ? 0.0 : 1.0 / a_; break;
      default: m = 0.0;
    }
    return mult_ * m;
  }

  double variance() const { return central_moment(2); }
  double sd() const { return std::sqrt(variance()); }

  // E|X - EX|^k.
  double central_moment(int k) const {
    require(k >= 1, error_kind::domain, "moment order must be >= 1");
    return std::exp(log_central_moment(k));
  }

  double log_central_moment(int k) const {
    require(k >= 1, error_kind::domain, "moment order must be >= 1");
    const double lm = k * std::log(mult_);
    const double kd = k;
    switch (fam_) {
      case family::gaussian:
        return lm + kd * std::log(b_) + 0.5 * kd * std::numbers::ln2 + std::lgamma((kd + 1) / 2) -
               0.5 * std::log(std::numbers::pi);
      case family::rademacher: return lm;
      case family::bernoulli: {
        const double p = a_, q = 1 - a_;
        return lm + std::log(p) + std::log(q) + log_add((kd - 1) * std::log(p), (kd - 1) * std::log(q));
      }
      case family::exponential: {
        // E|Z-1|^k for Z ~ Exp(1) is e^{-1}(sum_j 1/(j!(k+j+1)) + k!).
        double s = 0.0, term = 1.0;
        for (int j = 0; j < 200; ++j) {
          if (j > 0) term /= j;
          s += term / (kd + j + 1);
          if (term < 1e-18) break;
        }
        return lm - kd * std::log(a_) - 1.0 + log_add(std::log(s), std::lgamma(kd + 1));
      }
      case family::symmetric_weibull:
        return lm + kd * std::log(b_) + std::lgamma((kd + 1) / a_) - std::lgamma(1 / a_);
      case family::bounded_uniform: return lm + kd * std::log(a_) - std::log(kd + 1);
    }
    return std::nan("");
  }

  // Same quantity by numerical integration; used to cross-check closed forms.
  double central_moment_quadrature(int k) const {
    require(k >= 1, error_kind::domain, "moment order must be >= 1");
    const double mu = mean();
    if (auto pts = support()) {
      double s = 0.0;
      for (auto [x, p] : *pts) s += p * std::pow(std::abs(x - mu), k);
      return s;
    }
    auto r = integrate(
        [&](double x) {
          const double d = std::abs(x - mu);
          return d == 0.0 ? -inf : k * std::log(d);
        },
        {mu});
    require_converged(r, "central moment quadrature");
    return r.value;
  }

  // E|X^2 - EX^2|^k, the moments of the centered square.
  double log_squared_central_moment(int k) const {
    require(k >= 1, error_kind::domain, "moment order must be >= 1");
    const double m2 = raw_moment2();
    if (auto pts = support()) {
      double s = -inf;
      for (auto [x, p] : *pts) {
        const double d = std::abs(x * x - m2);
        if (d > 0.0) s = log_add(s, std::log(p) + k * std::log(d));
      }
      return s;
    }
    const double r2 = std::sqrt(m2);
    auto r = integrate(
        [&](double x) {
          const double d = std::abs(x * x - m2);
          return d == 0.0 ? -inf : k * std::log(d);
        },
        {-r2, r2});
    require_converged(r, "squared moment quadrature");
    return std::log(r.value);
  }

  double raw_moment2() const {
    const double m = mean();
    return variance() + m * m;
  }

  // Largest alpha with a finite psi_alpha norm (infinite for bounded laws).
  double max_alpha() const {
    switch (fam_) {
      case family::gaussian: return 2.0;
      case family::exponential: return 1.0;
      case family::symmetric_weibull: return a_;
      default: return inf;
    }
  }

  // Atoms and probabilities for finite-support laws.
  std::optional<std::vector<std::pair<double, double>>> support() const {
    if (fam_ == family::rademacher) return std::vector<std::pair<double, double>>{{-mult_, 0.5}, {mult_, 0.5}};
    if (fam_ == family::bernoulli) {
      const double shift = centered_ ? a_ : 0.0;
      return std::vector<std::pair<double, double>>{{-shift * mult_, 1 - a_}, {(1 - shift) * mult_, a_}};
    }
    return std::nullopt;
  }

  // E exp(lh(X)) by quadrature against the density (continuous families).
  // `kinks` lists values of X where lh is not smooth; the domain is split there.
  template <class LH>
  quad_result integrate(LH&& lh, const std::vector<double>& kinks = {}) const {
    const double m = mult_;
    auto at = [&](double b) {
      const double v = lh(m * b) + log_density(b);
      return v == -inf ? 0.0 : std::exp(v);
    };
    // Integral of g(y) over [0, hi) (hi may be inf) with cuts at base values
    // b = origin + sign * y for every kink.
    auto piece = [&](auto&& g, double origin, double sign, double hi, double scale) {
      std::vector<double> cuts;
      for (double x : kinks) {
        const double y = sign * (x / m - origin);
        if (y > 0.0 && y < hi) cuts.push_back(y);
      }
      std::sort(cuts.begin(), cuts.end());
      quad_result total;
      double lo = 0.0;
      for (double c : cuts) {
        const auto r = integrate_interval(g, lo, c);
        total.value += r.value;
        total.error += r.error;
        lo = c;
      }
      const auto r = hi == inf ? integrate_tail(g, lo, scale) : integrate_interval(g, lo, hi);
      return quad_result{total.value + r.value, total.error + r.error};
    };
    auto both = [&](double origin, double hi, double scale) {
      const auto r = piece([&](double y) { return at(origin + y); }, origin, 1.0, hi, scale);
      const auto l = piece([&](double y) { return at(origin - y); }, origin, -1.0, hi, scale);
      return quad_result{r.value + l.value, r.error + l.error};
    };
    switch (fam_) {
      case family::gaussian: return both(a_, inf, b_);
      case family::exponential: {
        const double c = centered_ ? 1.0 / a_ : 0.0;
        return piece([&](double y) { return at(y - c); }, -c, 1.0, inf, 1.0 / a_);
      }
      case family::symmetric_weibull: return both(0.0, inf, b_);
      case family::bounded_uniform: return both(0.0, a_, a_);
      default: fail(error_kind::parameter, "quadrature requested for a discrete law");
    }
  }

  // log E exp(lambda (X - EX)).
  double log_mgf(double lambda) const {
    const double z = lambda * mult_;
    switch (fam_) {
      case family::gaussian: return 0.5 * z * z * b_ * b_;
      case family::rademacher: return log_cosh(z);
      case family::bernoulli: {
        const double p = a_;
        return log_add(std::log1p(-p) - z * p, std::log(p) + z * (1 - p));
      }
      case family::exponential: {
        const double x = z / a_;
        if (x >= 1.0) return inf;
        return -x - std::log1p(-x);
      }
      case family::bounded_uniform: {
        const double x = std::abs(z * a_);
        if (x < 1e-4) return x * x / 6.0 - x * x * x * x / 180.0;
        return x - std::numbers::ln2 + std::log1p(-std::exp(-2 * x)) - std::log(x);
      }
      case family::symmetric_weibull: return log_mgf_quadrature(lambda);
    }
    return std::nan("");
  }

  double log_mgf_quadrature(double lambda) const {
    const double mu = mean();
    if (auto pts = support()) {
      double s = -inf;
      for (auto [x, p] : *pts) s = log_add(s, std::log(p) + lambda * (x - mu));
      return s;
    }
    auto r = integrate([&](double x) { return lambda * (x - mu); });
    require_converged(r, "mgf quadrature");
    return std::log(r.value);
  }

  // One draw from two open-interval uniforms.
  double transform(double u0, double u1) const {
    double b = 0.0;
    switch (fam_) {
      case family::gaussian:
        b = a_ + b_ * std::sqrt(-2.0 * std::log(u0)) * std::cos(2.0 * std::numbers::pi * u1);
        break;
      case family::rademacher: b = u0 < 0.5 ? -1.0 : 1.0; break;
      case family::bernoulli: b = (u0 < a_ ? 1.0 : 0.0) - (centered_ ? a_ : 0.0); break;
      case family::exponential: b = -std::log(u0) / a_ - (centered_ ? 1.0 / a_ : 0.0); break;
      case family::symmetric_weibull: fail(error_kind::parameter, "symmetric weibull draws need the generator");
      case family::bounded_uniform: b = a_ * (2.0 * u0 - 1.0); break;
    }
    return mult_ * b;
  }

  double draw(const philox4x32& gen, std::uint32_t stream, std::uint64_t replicate, std::uint32_t index) const {
    if (fam_ == family::symmetric_weibull) return mult_ * b_ * weibull_magnitude(gen, stream, replicate, index);
    const auto u = uniforms(gen, stream, replicate, index);
    return transform(u.u0, u.u1);
  }

  // Signed draw from density ~ exp(-|y|^a) by rejection from the envelope
  // min(1, exp(a - 1 - a y)), which has unit mass on y > 0. Acceptance is
  // Gamma(1 + 1/a) >= 0.88; retries and the sign use salted stream ids.
  double weibull_magnitude(const philox4x32& gen, std::uint32_t stream, std::uint64_t replicate,
                           std::uint32_t index) const {
    const double a = a_, y0 = 1.0 - 1.0 / a;
    const double sign = uniforms(gen, stream ^ 0x5bd1e995u, replicate, index).u0 < 0.5 ? -1.0 : 1.0;
    for (std::uint32_t attempt = 0;; ++attempt) {
      const auto u = uniforms(gen, stream ^ (attempt * 0x9E3779B9u), replicate, index);
      double y, log_env;
      if (u.u0 < y0) {
        y = u.u0;
        log_env = 0.0;
      } else {
        y = y0 - std::log((u.u0 - y0) * a) / a;
        log_env = a - 1.0 - a * y;
      }
      if (std::log(u.u1) <= -std::pow(y, a) - log_env) return sign * y;
    }
  }

  std::string describe() const {
    std::string s = to_string(fam_);
    switch (fam_) {
      case family::gaussian: s += "(" + num(a_) + "," + num(b_) + ")"; break;
      case family::bernoulli: s += "(" + num(a_) + (centered_ ? ",centered)" : ")"); break;
      case family::exponential: s += "(" + num(a_) + (centered_ ? ",centered)" : ")"); break;
      case family::symmetric_weibull: s += "(" + num(a_) + "," + num(b_) + ")"; break;
      case family::bounded_uniform: s += "(" + num(a_) + ")"; break;
      case family::rademacher: break;
    }
    if (mult_ != 1.0) s += "*" + num(mult_);
    return s;
  }

 private:
  DistSpec(family f, double a, double b, bool centered) : fam_(f), a_(a), b_(b), centered_(centered) {
    switch (f) {
      case family::gaussian: require(b > 0 && std::isfinite(a), error_kind::parameter, "gaussian needs sd > 0"); break;
      case family::bernoulli: require(a > 0 && a < 1, error_kind::parameter, "bernoulli needs p in (0,1)"); break;
      case family::exponential: require(a > 0, error_kind::parameter, "exponential needs rate > 0"); break;
      case family::symmetric_weibull:
        require(a >= 1 && b > 0, error_kind::parameter, "symmetric weibull needs shape >= 1 and scale > 0");
        break;
      case family::bounded_uniform: require(a > 0, error_kind::parameter, "uniform needs half-width > 0"); break;
      case family::rademacher: break;
    }
  }

  static std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
  }

  static double log_cosh(double z) {
    const double x = std::abs(z);
    return x + std::log1p(std::exp(-2 * x)) - std::numbers::ln2;
  }

  double log_density(double b) const {
    switch (fam_) {
      case family::gaussian: {
        const double y = (b - a_) / b_;
        return -0.5 * y * y - std::log(b_) - 0.5 * std::log(2 * std::numbers::pi);
      }
      case family::exponential: {
        const double y = b + (centered_ ? 1.0 / a_ : 0.0);
        return y < 0 ? -inf : std::log(a_) - a_ * y;
      }
      case family::symmetric_weibull:
        return -std::pow(std::abs(b) / b_, a_) - std::log(2 * b_) - std::lgamma(1 + 1 / a_);
      case family::bounded_uniform: return std::abs(b) <= a_ ? -std::log(2 * a_) : -inf;
      default: return -inf;
    }
  }

  family fam_;
  double a_ = 0.0;  // mean | p | rate | shape | half-width
  double b_ = 0.0;  // sd | scale
  bool centered_ = false;
  double mult_ = 1.0;
};

struct SampleBatch {
  std::vector<double> values;
  std::uint64_t seed = 0;
  DistSpec spec;
};

// n draws, value i depends only on (spec, seed, i).
inline SampleBatch sample(const DistSpec& spec, std::size_t n, std::uint64_t seed) {
  require(n >= 1, error_kind::parameter, "sample size must be >= 1");
  require(n <= 0xffffffffull, error_kind::capacity, "sample size exceeds 2^32");
  const philox4x32 gen(seed);
  SampleBatch b{std::vector<double>(n), seed, spec};
  for (std::size_t i = 0; i < n; ++i) b.values[i] = spec.draw(gen, 0, 0, static_cast<std::uint32_t>(i));
  return b;
}

// Inverse of DistSpec::describe: "rademacher", "gaussian(0,1)",
// "bernoulli(0.1,centered)", "exponential(1)", "symmetric_weibull(4,1)",
// "bounded_uniform(1.7)", with an optional "*multiplier" suffix.
inline DistSpec parse_dist(const std::string& text) {
  std::string s = text;
  double mult = 1.0;
  if (const auto star = s.rfind('*'); star != std::string::npos) {
    try {
      mult = std::stod(s.substr(star + 1));
    } catch (const std::exception&) {
      fail(error_kind::input, "bad multiplier in " + text);
    }
    s = s.substr(0, star);
  }
  std::string name = s, inner;
  if (const auto open = s.find('('); open != std::string::npos) {
    require(s.back() == ')', error_kind::input, "unbalanced parentheses in " + text);
    name = s.substr(0, open);
    inner = s.substr(open + 1, s.size() - open - 2);
  }
  std::vector<double> args;
  bool centered = false;
  std::size_t pos = 0;
  while (pos <= inner.size() && !inner.empty()) {
    const auto comma = inner.find(',', pos);
    const std::string tok = inner.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    if (tok == "centered") {
      centered = true;
    } else {
      try {
        std::size_t used = 0;
        args.push_back(std::stod(tok, &used));
        require(used == tok.size(), error_kind::input, "bad number '" + tok + "' in " + text);
      } catch (const std::logic_error&) {
        fail(error_kind::input, "bad number '" + tok + "' in " + text);
      }
    }
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  auto need = [&](std::size_t k) {
    require(args.size() == k, error_kind::input, name + " takes " + std::to_string(k) + " parameter(s)");
  };
  auto build = [&]() -> DistSpec {
    if (name == "rademacher") {
      need(0);
      return DistSpec::rademacher();
    }
    if (name == "gaussian") {
      need(2);
      return DistSpec::gaussian(args[0], args[1]);
    }
    if (name == "bernoulli") {
      need(1);
      return DistSpec::bernoulli(args[0], centered);
    }
    if (name == "exponential") {
      need(1);
      return DistSpec::exponential(args[0], centered);
    }
    if (name == "symmetric_weibull") {
      need(2);
      return DistSpec::symmetric_weibull(args[0], args[1]);
    }
    if (name == "bounded_uniform") {
      need(1);
      return DistSpec::bounded_uniform(args[0]);
    }
    fail(error_kind::input, "unknown distribution " + name);
  };
  const DistSpec d = build();
  return mult == 1.0 ? d : d.scaled(mult);
}

}  // namespace subweibull
