// Copyright 2026 The subweibull Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <string>
#include <vector>

#include "subweibull/dists.hpp"
#include "subweibull/error.hpp"
#include "subweibull/profile.hpp"

namespace subweibull {

enum class pair_kind { trivial, variance_log, geometric, squared_variance_log, squared_geometric, user };

inline const char* to_string(pair_kind k) {
  switch (k) {
    case pair_kind::trivial: return "trivial";
    case pair_kind::variance_log: return "variance_log";
    case pair_kind::geometric: return "geometric";
    case pair_kind::squared_variance_log: return "squared_variance_log";
    case pair_kind::squared_geometric: return "squared_geometric";
    case pair_kind::user: return "user";
  }
  return "unknown";
}

// (sigma, L) with E|X|^k <= k^(k/alpha) sigma^2 L^(k-2) for all integers k >= 2.
struct SigmaLPair {
  double sigma = 1.0;
  double L = 1.0;
  double alpha = 1.0;
  pair_kind provenance = pair_kind::user;
};

// Restores sigma <= L: L is multiplied by c_fix until it reaches sigma, or set
// to sigma when c_fix <= 1.
inline double lift_L(double sigma, double L, double c_fix) {
  if (sigma <= L) return L;
  if (c_fix <= 1.0) return sigma;
  const int m = static_cast<int>(std::ceil(std::log(sigma / L) / std::log(c_fix) - 1e-12));
  double out = L * std::pow(c_fix, std::max(m, 1));
  return std::max(out, sigma);
}

inline SigmaLPair make_pair(double sigma, double L, double alpha, pair_kind kind = pair_kind::user) {
  require(sigma > 0.0 && L > 0.0 && std::isfinite(sigma) && std::isfinite(L), error_kind::domain,
          "sigma and L must be positive");
  require(alpha >= 1.0, error_kind::domain, "alpha must be >= 1");
  require(sigma <= L * (1 + 1e-12), error_kind::domain, "pairs must satisfy sigma <= L");
  return {sigma, L, alpha, kind};
}

inline SigmaLPair pair_trivial(double norm, double alpha, double C, double c_fix = 1.0) {
  require(norm > 0.0 && C > 0.0, error_kind::domain, "norm and C must be positive");
  return make_pair(norm, lift_L(norm, C * norm, c_fix), alpha, pair_kind::trivial);
}

inline void require_sigma_range(double sigma_x, double norm) {
  require(norm > 0.0 && sigma_x > 0.0 && sigma_x <= std::sqrt(2.0) * norm, error_kind::domain,
          "need 0 < sigma_x <= sqrt(2) * norm");
}

inline SigmaLPair pair_variance_log(double sigma_x, double norm, double alpha, double c_fix = 1.0) {
  require_sigma_range(sigma_x, norm);
  require(alpha >= 1.0, error_kind::domain, "alpha must be >= 1");
  const double L = norm * std::pow(std::log(2.0 * norm / sigma_x), 1.0 / alpha);
  return make_pair(sigma_x, lift_L(sigma_x, L, c_fix), alpha, pair_kind::variance_log);
}

inline SigmaLPair pair_geometric(double sigma_x, double norm, double alpha, double C, double c_fix = 1.0) {
  require_sigma_range(sigma_x, norm);
  require(C > 0.0, error_kind::domain, "C must be positive");
  const double s = std::sqrt(sigma_x * norm);
  return make_pair(s, lift_L(s, C * norm, c_fix), alpha, pair_kind::geometric);
}

enum class squared_variant { variance_log, geometric };

// Pair for X^2 - E X^2 at exponent alpha/2, built from sigma_X and ||X||_psi_alpha.
inline SigmaLPair pair_squared(double sigma_x, double norm, double alpha, squared_variant v, double C,
                               double c_fix = 1.0) {
  require_sigma_range(sigma_x, norm);
  require(alpha >= 2.0, error_kind::domain, "squared pairs need alpha >= 2 so that alpha/2 >= 1");
  require(C > 0.0, error_kind::domain, "C must be positive");
  double s = 0.0, L = 0.0;
  pair_kind kind = pair_kind::squared_geometric;
  if (v == squared_variant::variance_log) {
    require(norm > sigma_x, error_kind::domain, "squared variance_log pair needs norm > sigma_x");
    s = C * sigma_x * norm * std::sqrt(std::log(norm / sigma_x));
    L = C * norm * norm * std::log(2.0 * norm / sigma_x);
    kind = pair_kind::squared_variance_log;
  } else {
    s = C * std::sqrt(sigma_x * norm) * norm;
    L = C * norm * norm;
  }
  return make_pair(s, lift_L(s, L, c_fix), alpha / 2.0, kind);
}

// Profile-driven constructors.
inline SigmaLPair pair_trivial(double norm, double alpha, const ConstantProfile& p) {
  return pair_trivial(norm, alpha, p.c("C_pair"), p.c("C_pairfix"));
}
inline SigmaLPair pair_variance_log(double sigma_x, double norm, double alpha, const ConstantProfile& p) {
  return pair_variance_log(sigma_x, norm, alpha, p.c("C_pairfix"));
}
inline SigmaLPair pair_geometric(double sigma_x, double norm, double alpha, const ConstantProfile& p) {
  return pair_geometric(sigma_x, norm, alpha, p.c("C_pair"), p.c("C_pairfix"));
}
inline SigmaLPair pair_squared(double sigma_x, double norm, double alpha, squared_variant v,
                               const ConstantProfile& p) {
  return pair_squared(sigma_x, norm, alpha, v, p.c("C_sq"), p.c("C_pairfix"));
}

// The three canonical pairs for a variable with standard deviation sigma_x.
inline std::vector<SigmaLPair> canonical_pairs(double sigma_x, double norm, double alpha, const ConstantProfile& p) {
  return {pair_trivial(norm, alpha, p), pair_variance_log(sigma_x, norm, alpha, p),
          pair_geometric(sigma_x, norm, alpha, p)};
}

struct AdmissibilityReport {
  bool pass = true;
  int worst_k = 2;
  double min_log_margin = inf;  // min_k log(rhs_k / E|X|^k)
  std::map<int, double> margin;  // rhs_k - E|X|^k
  std::map<int, double> log_margin;
};

inline double log_admissible_rhs(int k, const SigmaLPair& pair) {
  return (k / pair.alpha) * std::log(static_cast<double>(k)) + 2.0 * std::log(pair.sigma) +
         (k - 2) * std::log(pair.L);
}

// Checks the moment condition for k = 2..k_max with moments given in log space
// (index k holds log E|X|^k; -inf encodes a zero moment).
inline AdmissibilityReport verify_admissible_log(const std::vector<double>& log_moments, const SigmaLPair& pair,
                                                 int k_max = 20) {
  require(k_max >= 2, error_kind::input, "k_max must be >= 2");
  require(static_cast<int>(log_moments.size()) > k_max, error_kind::input, "missing moments up to k_max");
  AdmissibilityReport r;
  for (int k = 2; k <= k_max; ++k) {
    const double lm = log_moments[k];
    require(!std::isnan(lm), error_kind::input, "moment of order " + std::to_string(k) + " missing");
    const double rhs = log_admissible_rhs(k, pair);
    const double lmar = rhs - lm;
    r.log_margin[k] = lmar;
    r.margin[k] = std::exp(rhs) - std::exp(lm);
    if (lmar < r.min_log_margin) {
      r.min_log_margin = lmar;
      r.worst_k = k;
    }
    if (lmar < -1e-12) r.pass = false;
  }
  return r;
}

inline AdmissibilityReport verify_admissible(const std::map<int, double>& moments, const SigmaLPair& pair,
                                             int k_max = 20) {
  std::vector<double> lm(k_max + 1, std::nan(""));
  for (int k = 2; k <= k_max; ++k) {
    auto it = moments.find(k);
    if (it == moments.end()) fail(error_kind::input, "moment of order " + std::to_string(k) + " missing");
    lm[k] = it->second > 0.0 ? std::log(it->second) : -inf;
  }
  return verify_admissible_log(lm, pair, k_max);
}

// Smallest C making (C^sp sigma0, C^lp L0) admissible; +inf if some order
// cannot be fixed by scaling.
inline double min_admissible_multiplier(const std::vector<double>& log_moments, double sigma0, double L0,
                                        double alpha, int sigma_power, int L_power, int k_max = 20) {
  double logc = -inf;
  for (int k = 2; k <= k_max; ++k) {
    const double lm = log_moments[k];
    if (lm == -inf) continue;
    const double base = (k / alpha) * std::log(static_cast<double>(k)) + 2.0 * std::log(sigma0) +
                        (k - 2) * std::log(L0);
    const int e = 2 * sigma_power + (k - 2) * L_power;
    if (e == 0) {
      if (lm > base + 1e-12) return inf;
      continue;
    }
    logc = std::max(logc, (lm - base) / e);
  }
  return std::exp(logc);
}

// Log central moments E|X - EX|^k for k = 0..k_max.
inline std::vector<double> log_central_moments(const DistSpec& spec, int k_max = 20) {
  std::vector<double> out(k_max + 1, 0.0);
  for (int k = 1; k <= k_max; ++k) out[k] = spec.log_central_moment(k);
  return out;
}

inline std::vector<double> log_squared_central_moments(const DistSpec& spec, int k_max = 20) {
  std::vector<double> out(k_max + 1, 0.0);
  for (int k = 1; k <= k_max; ++k) out[k] = spec.log_squared_central_moment(k);
  return out;
}

}  // namespace subweibull
