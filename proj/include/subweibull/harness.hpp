// Copyright 2026 The subweibull Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>
#include <boost/math/distributions/binomial.hpp>
#include <boost/math/special_functions/beta.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "subweibull/dists.hpp"
#include "subweibull/error.hpp"
#include "subweibull/rng.hpp"

namespace subweibull {

inline unsigned default_threads() { return std::max(1u, std::thread::hardware_concurrency()); }

// Runs body(i) for i in [0, count) on `threads` workers with a static split.
// Callers write only to slot i, so results do not depend on the thread count.
template <class Body>
void parallel_for(std::size_t count, unsigned threads, Body&& body) {
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(count, 1))));
  if (threads == 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  const std::size_t chunk = (count + threads - 1) / threads;
  for (unsigned w = 0; w < threads; ++w) {
    const std::size_t lo = w * chunk, hi = std::min(count, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([&body, lo, hi] {
      for (std::size_t i = lo; i < hi; ++i) body(i);
    });
  }
  for (auto& t : pool) t.join();
}

// ---------------------------------------------------------------- confidence

// One-sided Clopper-Pearson upper limit for k successes out of n.
inline double clopper_pearson_upper(std::uint64_t k, std::uint64_t n, double confidence) {
  require(n > 0 && k <= n, error_kind::input, "need 0 <= k <= n and n > 0");
  if (k == n) return 1.0;
  return boost::math::ibeta_inv(static_cast<double>(k + 1), static_cast<double>(n - k), confidence);
}

// Largest exceedance count k that a one-sided binomial test at `level`
// accepts: P(Bin(n, p) >= k) >= 1 - level.
inline std::uint64_t binomial_max_accepted(std::uint64_t n, double p, double level) {
  require(p > 0.0 && p < 1.0 && level > 0.0 && level < 1.0, error_kind::input, "need p, level in (0,1)");
  const boost::math::binomial_distribution<double> bin(static_cast<double>(n), p);
  std::uint64_t k = 0;
  // P(X >= k + 1) = 1 - cdf(k)
  while (k < n && boost::math::cdf(boost::math::complement(bin, static_cast<double>(k))) >= 1.0 - level) ++k;
  return k;
}

// ---------------------------------------------------------------- simulation

// |sum_i a_i X_i| for `replicates` independent copies; replicate r uses
// counters (i, r) in the stream derived from `label`.
inline std::vector<double> simulate_abs_sums(const DistSpec& spec, const std::vector<double>& weights,
                                             std::uint64_t replicates, std::uint64_t seed, const std::string& label,
                                             unsigned threads = default_threads()) {
  require(!weights.empty(), error_kind::input, "no weights");
  const philox4x32 gen(seed);
  const std::uint32_t stream = stream_id(label);
  std::vector<double> out(replicates);
  constexpr std::size_t block = 4096;
  const std::size_t nblocks = (replicates + block - 1) / block;
  parallel_for(nblocks, threads, [&](std::size_t b) {
    const std::uint64_t lo = b * block, hi = std::min<std::uint64_t>(replicates, lo + block);
    for (std::uint64_t r = lo; r < hi; ++r) {
      double s = 0.0;
      for (std::size_t i = 0; i < weights.size(); ++i)
        s += weights[i] * spec.draw(gen, stream, r, static_cast<std::uint32_t>(i));
      out[r] = std::abs(s);
    }
  });
  return out;
}

struct EmpiricalTail {
  std::vector<double> t_grid;
  std::vector<double> estimate;
  std::vector<double> upper;
  std::vector<std::uint64_t> count;
  std::uint64_t replicates = 0;
  std::uint64_t seed = 0;
  std::string scenario;
};

// Tail estimates from sorted |S| values.
inline EmpiricalTail tail_from_sorted(const std::vector<double>& sorted_abs, const std::vector<double>& t_grid,
                                      double confidence = 0.999) {
  EmpiricalTail e;
  e.t_grid = t_grid;
  e.replicates = sorted_abs.size();
  for (double t : t_grid) {
    // Sums that land on an atom can round just below it; count those too.
    const auto it = std::lower_bound(sorted_abs.begin(), sorted_abs.end(), t - 1e-12 * std::max(1.0, t));
    const auto k = static_cast<std::uint64_t>(sorted_abs.end() - it);
    e.count.push_back(k);
    e.estimate.push_back(static_cast<double>(k) / static_cast<double>(e.replicates));
    e.upper.push_back(clopper_pearson_upper(k, e.replicates, confidence));
  }
  return e;
}

inline EmpiricalTail empirical_tail(const DistSpec& spec, const std::vector<double>& weights,
                                    const std::vector<double>& t_grid, std::uint64_t replicates, std::uint64_t seed,
                                    unsigned threads = default_threads()) {
  require(replicates >= 10000, error_kind::input, "empirical tails need at least 10^4 replicates");
  const std::string label = "tail/" + spec.describe() + "/" + std::to_string(weights.size());
  auto v = simulate_abs_sums(spec, weights, replicates, seed, label, threads);
  std::sort(v.begin(), v.end());
  auto e = tail_from_sorted(v, t_grid);
  e.seed = seed;
  e.scenario = label;
  return e;
}

// Log-spaced grid of `points` values in [lo, hi].
inline std::vector<double> log_grid(double lo, double hi, int points) {
  require(lo > 0.0 && hi >= lo && points >= 1, error_kind::input, "need 0 < lo <= hi and points >= 1");
  std::vector<double> g(points);
  for (int i = 0; i < points; ++i)
    g[i] = points == 1 ? lo : std::exp(std::log(lo) + (std::log(hi) - std::log(lo)) * i / (points - 1));
  return g;
}

// ---------------------------------------------------------------- exact sum laws

using atom_list = std::vector<std::pair<double, double>>;

// Law of w * sum_{i<=n} X_i for i.i.d. X with two atoms, by the binomial count
// of the second atom.
inline atom_list sum_law_two_point(const atom_list& atoms, std::size_t n, double w = 1.0) {
  require(atoms.size() == 2, error_kind::input, "two-point law expected");
  const auto [v0, p0] = atoms[0];
  const auto [v1, p1] = atoms[1];
  (void)p0;
  atom_list out;
  out.reserve(n + 1);
  const double nn = static_cast<double>(n);
  for (std::size_t k = 0; k <= n; ++k) {
    const double kk = static_cast<double>(k);
    const double lp = std::lgamma(nn + 1) - std::lgamma(kk + 1) - std::lgamma(nn - kk + 1) + kk * std::log(p1) +
                      (nn - kk) * std::log1p(-p1);
    out.push_back({w * (kk * v1 + (nn - kk) * v0), std::exp(lp)});
  }
  return out;
}

// Law of sum_i a_i X_i by full enumeration, at most 2^24 outcomes.
inline atom_list sum_law_enumerated(const atom_list& atoms, const std::vector<double>& weights) {
  double outcomes = std::pow(static_cast<double>(atoms.size()), static_cast<double>(weights.size()));
  require(outcomes <= 16777216.0, error_kind::capacity, "enumeration exceeds 2^24 outcomes");
  atom_list cur{{0.0, 1.0}};
  for (double w : weights) {
    atom_list next;
    next.reserve(cur.size() * atoms.size());
    for (auto [s, p] : cur)
      for (auto [x, q] : atoms) next.push_back({s + w * x, p * q});
    cur = std::move(next);
  }
  return cur;
}

inline atom_list sum_law(const DistSpec& spec, const std::vector<double>& weights) {
  auto atoms = spec.support();
  require(atoms.has_value(), error_kind::input, "exact sums need a finite-support law");
  const bool equal = std::all_of(weights.begin(), weights.end(), [&](double w) { return w == weights.front(); });
  if (equal && atoms->size() == 2) return sum_law_two_point(*atoms, weights.size(), weights.front());
  return sum_law_enumerated(*atoms, weights);
}

// Exact P(|sum a_i X_i| >= t) for a finite-support law.
inline double enumerate_sum_tail(const DistSpec& spec, const std::vector<double>& weights, double t) {
  require(weights.size() <= 20, error_kind::capacity, "enumeration supports n <= 20");
  double p = 0.0;
  for (auto [s, q] : sum_law(spec, weights))
    if (std::abs(s) >= t * (1.0 - 1e-12)) p += q;
  return std::min(1.0, p);
}

// E|S|^p for a finite law.
inline double absolute_moment(const atom_list& law, double p) {
  double m = 0.0;
  for (auto [s, q] : law) m += q * std::pow(std::abs(s), p);
  return m;
}

// ---------------------------------------------------------------- Gaussian applications

// Per-replicate statistics of n i.i.d. N(0, I_d) rows.
struct GaussianAppStats {
  std::vector<double> mean_error;     // ||mu_hat||
  std::vector<double> cov_error;      // ||Sigma_hat - I||
  std::vector<double> gram_error;     // ||X'X/n - I||
  std::vector<double> smax_excess;    // s_max^2 - n
  std::vector<double> smin_deficit;   // n - s_min^2
};

inline GaussianAppStats simulate_gaussian_apps(std::size_t n, std::size_t d, std::uint64_t replicates,
                                               std::uint64_t seed, unsigned threads = default_threads()) {
  require(n >= 2 && d >= 1, error_kind::input, "need n >= 2 and d >= 1");
  const auto g = DistSpec::gaussian(0.0, 1.0);
  const philox4x32 gen(seed);
  const std::uint32_t stream = stream_id("app/gaussian/" + std::to_string(n) + "x" + std::to_string(d));
  GaussianAppStats st;
  for (auto* v : {&st.mean_error, &st.cov_error, &st.gram_error, &st.smax_excess, &st.smin_deficit})
    v->assign(replicates, 0.0);
  parallel_for(replicates, threads, [&](std::size_t r) {
    Eigen::MatrixXd X(n, d);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < d; ++j) X(i, j) = g.draw(gen, stream, r, static_cast<std::uint32_t>(i * d + j));
    const double nn = static_cast<double>(n);
    const Eigen::VectorXd mu = X.colwise().mean();
    const Eigen::MatrixXd gram = X.transpose() * X;
    const Eigen::MatrixXd cov = gram / nn - mu * mu.transpose();
    const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(d, d);
    auto opnorm = [](const Eigen::MatrixXd& m) {
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
      return es.eigenvalues().cwiseAbs().maxCoeff();
    };
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eg(gram, Eigen::EigenvaluesOnly);
    st.mean_error[r] = mu.norm();
    st.cov_error[r] = opnorm(cov - I);
    st.gram_error[r] = opnorm(gram / nn - I);
    st.smax_excess[r] = eg.eigenvalues().maxCoeff() - nn;
    st.smin_deficit[r] = nn - eg.eigenvalues().minCoeff();
  });
  return st;
}

// | ||X|| - sqrt(d) | for X ~ N(0, I_d).
inline std::vector<double> simulate_gaussian_norm_deviation(std::size_t d, std::uint64_t replicates,
                                                            std::uint64_t seed, unsigned threads = default_threads()) {
  const auto g = DistSpec::gaussian(0.0, 1.0);
  const philox4x32 gen(seed);
  const std::uint32_t stream = stream_id("app/norm/" + std::to_string(d));
  std::vector<double> out(replicates);
  parallel_for(replicates, threads, [&](std::size_t r) {
    double s = 0.0;
    for (std::size_t j = 0; j < d; ++j) {
      const double x = g.draw(gen, stream, r, static_cast<std::uint32_t>(j));
      s += x * x;
    }
    out[r] = std::abs(std::sqrt(s) - std::sqrt(static_cast<double>(d)));
  });
  return out;
}

// Smallest radius exceeded by at most `k` of the statistics: the (k+1)-th largest.
inline double radius_allowing(std::vector<double> stats, std::uint64_t k) {
  require(!stats.empty(), error_kind::input, "no statistics");
  if (k >= stats.size()) return 0.0;
  std::sort(stats.begin(), stats.end(), std::greater<>());
  return stats[k];
}

inline double exceed_fraction(const std::vector<double>& stats, double radius) {
  std::size_t c = 0;
  for (double s : stats)
    if (s > radius) ++c;
  return static_cast<double>(c) / static_cast<double>(stats.size());
}

}  // namespace subweibull
