// Copyright 2026 The subweibull Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <functional>
#include <limits>
#include <map>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "subweibull/apps.hpp"
#include "subweibull/bounds.hpp"
#include "subweibull/dists.hpp"
#include "subweibull/error.hpp"
#include "subweibull/harness.hpp"
#include "subweibull/orlicz.hpp"
#include "subweibull/profile.hpp"
#include "subweibull/sigma_l.hpp"
#include "subweibull/version.hpp"

namespace subweibull {

// ---------------------------------------------------------------- suite config

struct SuiteSpec {
  std::string label;
  DistSpec spec = DistSpec::rademacher();
  std::string text;
};

// Versioned scenario matrix for calibration and verification.
struct SuiteConfig {
  int version = 1;
  std::vector<SuiteSpec> specs;
  std::vector<double> alphas;

  std::vector<std::size_t> tail_n;
  std::uint64_t tail_replicates = 1000000;
  int tail_points = 25;
  double tail_confidence = 0.999;
  std::uint64_t tail_min_count = 10;

  std::vector<double> mgf_alphas;
  int mgf_points = 50;
  double mgf_lambda_scale = 5.0;  // lambda ranges over (0, scale / K]

  std::vector<std::size_t> moment_n;
  std::vector<int> moment_p;
  std::vector<std::size_t> norm_n;
  int k_max = 20;

  bool apps = true;
  std::size_t app_n = 2000;
  std::size_t app_d = 10;
  std::size_t app_vector_d = 200;
  std::uint64_t app_replicates = 2000;
  std::vector<double> app_t;
  double app_level = 0.99;

  double margin = 3.0;
  double tightness_max = 30.0;

  nlohmann::json to_json() const {
    nlohmann::json j;
    j["version"] = version;
    j["specs"] = nlohmann::json::array();
    for (const auto& s : specs) j["specs"].push_back({{"label", s.label}, {"dist", s.text}});
    j["alphas"] = alphas;
    j["tail"] = {{"n", tail_n},
                 {"replicates", tail_replicates},
                 {"t_points", tail_points},
                 {"confidence", tail_confidence},
                 {"min_count", tail_min_count}};
    j["mgf"] = {{"alphas", mgf_alphas}, {"points", mgf_points}, {"lambda_scale", mgf_lambda_scale}};
    j["moments"] = {{"n", moment_n}, {"p", moment_p}};
    j["norms"] = {{"n", norm_n}};
    j["admissibility"] = {{"k_max", k_max}};
    j["apps"] = {{"enabled", apps},        {"n", app_n},         {"d", app_d},         {"vector_d", app_vector_d},
                 {"replicates", app_replicates}, {"t", app_t}, {"level", app_level}};
    j["margin"] = margin;
    j["tightness_max"] = tightness_max;
    return j;
  }

  static SuiteConfig from_json(const nlohmann::json& j) {
    SuiteConfig c;
    try {
      c.version = j.value("version", 1);
      for (const auto& s : j.at("specs")) {
        SuiteSpec e;
        e.label = s.at("label").get<std::string>();
        e.text = s.at("dist").get<std::string>();
        e.spec = parse_dist(e.text);
        c.specs.push_back(e);
      }
      c.alphas = j.at("alphas").get<std::vector<double>>();
      const auto& t = j.at("tail");
      c.tail_n = t.at("n").get<std::vector<std::size_t>>();
      c.tail_replicates = t.at("replicates").get<std::uint64_t>();
      c.tail_points = t.at("t_points").get<int>();
      c.tail_confidence = t.at("confidence").get<double>();
      c.tail_min_count = t.at("min_count").get<std::uint64_t>();
      const auto& m = j.at("mgf");
      c.mgf_alphas = m.at("alphas").get<std::vector<double>>();
      c.mgf_points = m.at("points").get<int>();
      c.mgf_lambda_scale = m.at("lambda_scale").get<double>();
      c.moment_n = j.at("moments").at("n").get<std::vector<std::size_t>>();
      c.moment_p = j.at("moments").at("p").get<std::vector<int>>();
      c.norm_n = j.at("norms").at("n").get<std::vector<std::size_t>>();
      c.k_max = j.at("admissibility").at("k_max").get<int>();
      const auto& a = j.at("apps");
      c.apps = a.at("enabled").get<bool>();
      c.app_n = a.at("n").get<std::size_t>();
      c.app_d = a.at("d").get<std::size_t>();
      c.app_vector_d = a.at("vector_d").get<std::size_t>();
      c.app_replicates = a.at("replicates").get<std::uint64_t>();
      c.app_t = a.at("t").get<std::vector<double>>();
      c.app_level = a.at("level").get<double>();
      c.margin = j.at("margin").get<double>();
      c.tightness_max = j.at("tightness_max").get<double>();
    } catch (const nlohmann::json::exception& e) {
      fail(error_kind::input, std::string("malformed suite config: ") + e.what());
    }
    c.validate();
    return c;
  }

  void validate() const {
    require(!specs.empty(), error_kind::input, "suite config has no specs");
    require(!alphas.empty(), error_kind::input, "suite config has no alphas");
    for (double a : alphas) require(a >= 1.0, error_kind::input, "suite alphas must be >= 1");
    for (double a : mgf_alphas) require(a > 1.0, error_kind::input, "MGF alphas must be > 1");
    require(tail_replicates >= 10000, error_kind::input, "tail checks need at least 10^4 replicates");
    require(tail_points >= 2 && mgf_points >= 1, error_kind::input, "grids need at least two points");
    require(k_max >= 2, error_kind::input, "k_max must be >= 2");
    require(margin >= 1.0 && tightness_max >= margin, error_kind::input, "need 1 <= margin <= tightness_max");
    for (const auto& s : specs) {
      require(std::abs(s.spec.mean()) <= 1e-12, error_kind::input, "suite specs must have mean zero: " + s.label);
      for (double a : alphas)
        require(a <= s.spec.max_alpha(), error_kind::input, "spec " + s.label + " has no finite norm at some alpha");
    }
    if (apps) require(app_replicates >= 100 && !app_t.empty(), error_kind::input, "app checks need replicates and t");
  }

  std::string hash() const {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a64(to_json().dump())));
    return buf;
  }
};

inline SuiteConfig load_suite(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(error_kind::io, "cannot open suite config " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    fail(error_kind::input, "suite config " + path + " is not valid JSON: " + e.what());
  }
  return SuiteConfig::from_json(j);
}

// The shipped scenario matrix.
inline SuiteConfig default_suite() {
  SuiteConfig c;
  auto add = [&](const std::string& label, const std::string& text) { c.specs.push_back({label, parse_dist(text), text}); };
  add("rademacher", "rademacher");
  add("bernoulli_0.1", "bernoulli(0.1,centered)");
  add("bernoulli_0.01", "bernoulli(0.01,centered)");
  add("uniform_sqrt3", "bounded_uniform(1.7320508075688772)");
  add("weibull_4", "symmetric_weibull(4,1)");
  c.alphas = {1.0, 1.5, 2.0, 3.0, 4.0};
  c.tail_n = {1, 10, 100};
  c.mgf_alphas = {1.5, 2.0, 3.0, 4.0};
  c.moment_n = {1, 10, 100};
  c.moment_p = {2, 4, 6, 8};
  c.norm_n = {1, 10, 100};
  c.app_t = {2.0, 5.0};
  return c;
}

// ---------------------------------------------------------------- simulation cache

// Simulated data shared by every evaluation with the same seed; nothing here
// depends on the constant profile.
class SimCache {
 public:
  SimCache(std::uint64_t seed, unsigned threads) : seed_(seed), threads_(threads) {}

  std::uint64_t seed() const { return seed_; }

  const std::vector<double>& tail_sample(const SuiteSpec& s, std::size_t n, std::uint64_t replicates) {
    const std::string key = s.label + "/" + std::to_string(n) + "/" + std::to_string(replicates);
    auto it = tails_.find(key);
    if (it != tails_.end()) return it->second;
    auto v = simulate_abs_sums(s.spec, std::vector<double>(n, 1.0), replicates, seed_, "tail/" + s.label + "/" +
                                                                                          std::to_string(n),
                               threads_);
    std::sort(v.begin(), v.end());
    return tails_.emplace(key, std::move(v)).first->second;
  }

  const GaussianAppStats& apps(std::size_t n, std::size_t d, std::uint64_t replicates) {
    const std::string key = std::to_string(n) + "x" + std::to_string(d) + "/" + std::to_string(replicates);
    auto it = apps_.find(key);
    if (it != apps_.end()) return it->second;
    return apps_.emplace(key, simulate_gaussian_apps(n, d, replicates, seed_, threads_)).first->second;
  }

  const std::vector<double>& norm_deviation(std::size_t d, std::uint64_t replicates) {
    const std::string key = std::to_string(d) + "/" + std::to_string(replicates);
    auto it = norms_.find(key);
    if (it != norms_.end()) return it->second;
    return norms_.emplace(key, simulate_gaussian_norm_deviation(d, replicates, seed_, threads_)).first->second;
  }

  double orlicz(const SuiteSpec& s, double alpha) {
    const auto key = std::make_pair(s.label, alpha);
    auto it = norms_of_.find(key);
    if (it != norms_of_.end()) return it->second;
    return norms_of_.emplace(key, orlicz_norm_exact(s.spec, alpha).value).first->second;
  }

 private:
  std::uint64_t seed_;
  unsigned threads_;
  std::map<std::string, std::vector<double>> tails_;
  std::map<std::string, GaussianAppStats> apps_;
  std::map<std::string, std::vector<double>> norms_;
  std::map<std::pair<std::string, double>, double> norms_of_;
};

// ---------------------------------------------------------------- checks

// How a check constrains its constant: upper-type constants must be at least
// `needed`, tail-type constants (multipliers of a tail exponent) at most.
enum class constant_role { none, upper, tail };

struct CheckResult {
  std::string check_id;
  std::string scenario;
  std::string constant;  // empty for constant-free checks
  constant_role role = constant_role::none;
  double needed = std::nan("");
  double margin = std::nan("");  // >= 1 means the bound holds
  bool pass = false;
  nlohmann::json detail = nlohmann::json::object();
};

namespace detail {

inline std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", x);
  return buf;
}

inline nlohmann::json finite_or_null(double x) { return std::isfinite(x) ? nlohmann::json(x) : nlohmann::json(); }

// Accumulates the binding point of a constant check.
struct Binding {
  std::string check_id, scenario, constant;
  constant_role role;
  double needed = std::nan("");
  nlohmann::json detail;
  bool any = false;

  Binding(std::string id, std::string sc, std::string c, constant_role r)
      : check_id(std::move(id)), scenario(std::move(sc)), constant(std::move(c)), role(r) {}

  void add(double v, const nlohmann::json& d) {
    if (any && std::isnan(needed)) return;
    if (!any || std::isnan(v) || (role == constant_role::upper ? v > needed : v < needed)) {
      needed = v;
      detail = d;
    }
    any = true;
  }

  void emit(std::vector<CheckResult>& out, std::size_t points) const {
    if (!any) return;
    CheckResult r{check_id, scenario, constant, role, needed, std::nan(""), false, detail};
    r.detail["points"] = points;
    out.push_back(std::move(r));
  }
};

inline const char* pair_names[] = {"trivial", "variance_log", "geometric"};

}  // namespace detail

// Evaluates every check of the suite under `p`. `needed` does not depend on
// the constant a row binds; margins and pass flags are filled by score().
inline std::vector<CheckResult> evaluate_checks(const SuiteConfig& cfg, const ConstantProfile& p, SimCache& cache) {
  cfg.validate();
  std::vector<CheckResult> out;
  const double ln2 = std::numbers::ln2;
  const double tau = p.tau_mgf;

  // Admissibility of the pair constructions.
  for (const auto& s : cfg.specs) {
    const double sx = s.spec.sd();
    const auto lm = log_central_moments(s.spec, cfg.k_max);
    for (double alpha : cfg.alphas) {
      const double K = cache.orlicz(s, alpha);
      const std::string sc = s.label + "/" + detail::fmt(alpha);
      auto add_mult = [&](const std::string& id, const std::string& constant, const std::vector<double>& logm,
                          double s0, double L0, double a, int sp, int lp) {
        const double m = min_admissible_multiplier(logm, s0, L0, a, sp, lp, cfg.k_max);
        // sigma <= L must hold without the lift as well.
        const double floor = lp > sp ? std::pow(s0 / L0, 1.0 / (lp - sp)) : 0.0;
        CheckResult r{id, sc, constant, constant_role::upper, std::max(m, floor), std::nan(""), false, {}};
        r.detail = {{"moment_multiplier", detail::finite_or_null(m)}, {"order_floor", floor}};
        out.push_back(std::move(r));
      };
      add_mult("admissible_trivial", "C_pair", lm, K, K, alpha, 0, 1);
      add_mult("admissible_geometric", "C_pair", lm, std::sqrt(sx * K), K, alpha, 0, 1);
      {
        const auto rep = verify_admissible_log(lm, pair_variance_log(sx, K, alpha, p.c("C_pairfix")), cfg.k_max);
        CheckResult r{"admissible_variance_log", sc, "", constant_role::none, std::nan(""),
                      std::exp(rep.min_log_margin), rep.pass, {{"worst_k", rep.worst_k}}};
        out.push_back(std::move(r));
      }
      if (alpha >= 2.0) {
        const auto lsq = log_squared_central_moments(s.spec, cfg.k_max);
        if (K > sx) {
          add_mult("admissible_squared_variance_log", "C_sq", lsq, sx * K * std::sqrt(std::log(K / sx)),
                   K * K * std::log(2.0 * K / sx), alpha / 2.0, 1, 1);
          add_mult("admissible_squared_geometric", "C_sq", lsq, std::sqrt(sx * K) * K, K * K, alpha / 2.0, 1, 1);
        }
      }
    }
    // Sharpness: the geometric pair with L / 10 must violate the moment condition.
    const double amax = *std::max_element(cfg.alphas.begin(), cfg.alphas.end());
    const double K = cache.orlicz(s, amax);
    SigmaLPair probe{std::sqrt(sx * K), p.c("C_pair") * K / 10.0, amax, pair_kind::geometric};
    const auto rep = verify_admissible_log(lm, probe, cfg.k_max);
    out.push_back({"sharpness_geometric", s.label + "/" + detail::fmt(amax), "", constant_role::none, std::nan(""),
                   std::exp(-rep.min_log_margin), !rep.pass, {{"worst_k", rep.worst_k}}});
  }

  // Tails against simulation.
  for (const auto& s : cfg.specs) {
    const double sx = s.spec.sd();
    for (std::size_t n : cfg.tail_n) {
      const auto& S = cache.tail_sample(s, n, cfg.tail_replicates);
      const double lo = 0.1 * std::sqrt(static_cast<double>(n)) * sx;
      const double hi = S[S.size() - cfg.tail_min_count];
      const auto grid = log_grid(lo, std::max(lo, hi), cfg.tail_points);
      const auto emp = tail_from_sorted(S, grid, cfg.tail_confidence);
      const std::vector<double> a(n, 1.0);
      for (double alpha : cfg.alphas) {
        const double K = cache.orlicz(s, alpha);
        const std::string sc = s.label + "/" + detail::fmt(alpha) + "/" + std::to_string(n);
        std::vector<std::pair<std::string, Expr>> curves;
        curves.push_back({"tail_orlicz", orlicz_tail_exponent(a, std::vector<double>(n, K), alpha)});
        const auto pairs = canonical_pairs(sx, K, alpha, p);
        for (int j = 0; j < 3; ++j)
          curves.push_back({std::string("tail_sigma_l_") + detail::pair_names[j],
                            sigma_l_tail_exponent(a, std::vector<SigmaLPair>(n, pairs[j]))});
        std::vector<detail::Binding> b;
        for (const auto& [id, e] : curves)
          b.push_back({id, sc, id == "tail_orlicz" ? (alpha >= 2.0 ? "C_tail_max" : "C_tail_min") : "C_tail_sigl",
                       constant_role::tail});
        b.push_back({"tail_best", sc, "C_tail_sigl", constant_role::tail});
        std::size_t used = 0;
        for (std::size_t i = 0; i < grid.size(); ++i) {
          if (emp.count[i] < cfg.tail_min_count) continue;
          ++used;
          const double t = grid[i], budget = ln2 - std::log(emp.upper[i]);
          double best_e = 0.0;
          std::string best_label;
          for (std::size_t c = 0; c < curves.size(); ++c) {
            const auto v = curves[c].second.eval(t);
            const double e = std::exp(v.log_value);
            const nlohmann::json d = {{"t", t}, {"estimate", emp.estimate[i]}, {"upper", emp.upper[i]},
                                      {"exponent", e},  {"branch", v.label}};
            b[c].add(budget / e, d);
            if (c > 0 && e > best_e) {
              best_e = e;
              best_label = curves[c].first.substr(13) + "/" + v.label;
            }
          }
          b.back().add(budget / best_e, {{"t", t}, {"estimate", emp.estimate[i]}, {"upper", emp.upper[i]},
                                         {"exponent", best_e}, {"branch", best_label}});
        }
        for (const auto& x : b) x.emit(out, used);
      }
    }
  }

  // MGF bounds against exact or quadrature log-MGFs.
  for (const auto& s : cfg.specs) {
    const double sx = s.spec.sd();
    for (double alpha : cfg.mgf_alphas) {
      const double K = cache.orlicz(s, alpha), beta = conjugate(alpha).beta.value;
      const std::string sc = s.label + "/" + detail::fmt(alpha);
      detail::Binding uq{"mgf_upper", sc, "C_mgf_quad", constant_role::upper};
      detail::Binding ub{"mgf_upper", sc, "C_mgf_beta", constant_role::upper};
      detail::Binding rq{"mgf_upper_refined", sc, "C_mgf_quad", constant_role::upper};
      detail::Binding rb{"mgf_upper_refined", sc, "C_mgf_beta", constant_role::upper};
      const double fl = std::floor(beta) + 1.0;
      for (int j = 1; j <= cfg.mgf_points; ++j) {
        const double lambda = cfg.mgf_lambda_scale * j / cfg.mgf_points / K, x = lambda * K;
        const double lm = s.spec.log_mgf(lambda);
        const nlohmann::json d = {{"lambda", lambda}, {"log_mgf", lm}};
        if (alpha >= 2.0) {
          uq.add(lm / std::min(x * x, std::pow(x, beta)), d);
        } else {
          if (x <= 1.0) uq.add(lm / (beta * x * x), d);
          else ub.add(std::pow(lm / (beta * std::pow(x, beta)), 1.0 / beta), d);
          if (x <= tau) rq.add(lm * (1.0 - tau) / (x * x), d);
          else rb.add(std::pow(lm * std::pow(tau, fl) * (1.0 - tau) / std::pow(x, beta), 1.0 / beta), d);
        }
      }
      const auto np = static_cast<std::size_t>(cfg.mgf_points);
      uq.emit(out, np), ub.emit(out, np), rq.emit(out, np), rb.emit(out, np);

      const auto pairs = canonical_pairs(sx, K, alpha, p);
      for (int k = 0; k < 3; ++k) {
        const auto& pr = pairs[k];
        const std::string psc = sc + "/" + detail::pair_names[k];
        detail::Binding sm{"mgf_sigma_l_small", psc, "C_mgf_quad", constant_role::upper};
        detail::Binding qb{"mgf_sigma_l_quad_beta", psc, "C_mgf_quad", constant_role::upper};
        detail::Binding bb{"mgf_sigma_l_beta", psc, "C_mgf_beta", constant_role::upper};
        for (int j = 1; j <= cfg.mgf_points; ++j) {
          const double l1 = static_cast<double>(j) / cfg.mgf_points / pr.L;
          const double lm1 = s.spec.log_mgf(l1);
          sm.add(lm1 / (l1 * l1 * pr.sigma * pr.sigma), {{"lambda", l1}, {"log_mgf", lm1}});
          const double l2 = (1.0 + (cfg.mgf_lambda_scale - 1.0) * j / cfg.mgf_points) / pr.L, y = l2 * pr.L;
          const double lm2 = s.spec.log_mgf(l2);
          const nlohmann::json d2 = {{"lambda", l2}, {"log_mgf", lm2}};
          if (alpha >= 2.0) qb.add(lm2 / std::min(std::pow(y, beta), y * y), d2);
          else bb.add(std::pow(lm2 * std::pow(tau, fl) * (1.0 - tau) / std::pow(y, beta), 1.0 / beta), d2);
        }
        sm.emit(out, np), qb.emit(out, np), bb.emit(out, np);
      }
    }
    // Lower bound on its valid range; no constant.
    for (double alpha : cfg.alphas) {
      const double K = cache.orlicz(s, alpha);
      const double lmax = mgf_lower_lambda_max(sx, K, alpha);
      double worst = inf, at = 0.0;
      for (int j = 1; j <= cfg.mgf_points; ++j) {
        const double lambda = lmax * j / cfg.mgf_points;
        const double r = s.spec.log_mgf(lambda) / (lambda * lambda * sx * sx / 8.0);
        if (r < worst) worst = r, at = lambda;
      }
      out.push_back({"mgf_lower", s.label + "/" + detail::fmt(alpha), "", constant_role::none, std::nan(""), worst,
                     worst >= 1.0, {{"lambda", at}, {"lambda_max", lmax}}});
    }
  }

  // Moments and norms of sums: exact laws for finite supports, n = 1 otherwise.
  for (const auto& s : cfg.specs) {
    const double sx = s.spec.sd();
    const bool discrete = s.spec.support().has_value();
    std::vector<std::size_t> ns = cfg.moment_n;
    for (std::size_t n : cfg.norm_n)
      if (std::find(ns.begin(), ns.end(), n) == ns.end()) ns.push_back(n);
    for (std::size_t n : ns) {
      if (!discrete && n != 1) continue;
      const bool do_moments = std::find(cfg.moment_n.begin(), cfg.moment_n.end(), n) != cfg.moment_n.end();
      const bool do_norms = std::find(cfg.norm_n.begin(), cfg.norm_n.end(), n) != cfg.norm_n.end();
      const std::vector<double> a(n, 1.0);
      std::optional<atom_list> law;
      if (discrete) law = sum_law(s.spec, a);
      for (double alpha : cfg.alphas) {
        const double K = cache.orlicz(s, alpha);
        const std::vector<double> Kv(n, K);
        const auto pairs = canonical_pairs(sx, K, alpha, p);
        const std::string sc = s.label + "/" + detail::fmt(alpha) + "/" + std::to_string(n);
        if (do_moments) {
          detail::Binding mo{"moment_orlicz", sc, "C_moment", constant_role::upper};
          std::vector<detail::Binding> ms;
          for (int k = 0; k < 3; ++k)
            ms.push_back({std::string("moment_sigma_l_") + detail::pair_names[k], sc, "C_moment", constant_role::upper});
          for (int q : cfg.moment_p) {
            const double truth = law ? absolute_moment(*law, q) : s.spec.central_moment(q);
            const double lt = std::log(truth);
            const nlohmann::json d = {{"p", q}, {"moment", truth}};
            mo.add(std::exp((lt - moment_bound(q, a, Kv, alpha, 1.0).log_value) / q), d);
            for (int k = 0; k < 3; ++k)
              ms[k].add(std::exp((lt - moment_bound_sigma_l(q, a, std::vector<SigmaLPair>(n, pairs[k]), 1.0).log_value) /
                                 q),
                        d);
          }
          mo.emit(out, cfg.moment_p.size());
          for (const auto& x : ms) x.emit(out, cfg.moment_p.size());
        }
        if (do_norms) {
          auto norm_at = [&](double a_) { return law ? orlicz_norm_discrete(*law, a_).value : cache.orlicz(s, a_); };
          const double na = norm_at(alpha);
          const double n2 = alpha >= 2.0 ? norm_at(2.0) : std::nan("");
          auto add = [&](const std::string& id, const SumNormBound& b) {
            out.push_back({id, sc, "C_norm", constant_role::upper, na / b.psi_alpha, std::nan(""), false,
                           {{"norm", na}, {"bound_at_unit_constant", b.psi_alpha}}});
            if (b.psi_2)
              out.push_back({id + "_psi2", sc, "C_norm", constant_role::upper, n2 / *b.psi_2, std::nan(""), false,
                             {{"norm", n2}, {"bound_at_unit_constant", *b.psi_2}}});
          };
          add("norm_orlicz", sum_norm_bound(a, Kv, alpha, 1.0));
          for (int k = 0; k < 3; ++k)
            add(std::string("norm_sigma_l_") + detail::pair_names[k],
                sum_norm_bound_sigma_l(a, std::vector<SigmaLPair>(n, pairs[k]), 1.0));
        }
      }
    }
    // Single-variable moment facts.
    for (double alpha : cfg.alphas) {
      const double K = cache.orlicz(s, alpha);
      const std::string sc = s.label + "/" + detail::fmt(alpha);
      const double m3 = s.spec.central_moment(3);
      out.push_back({"third_moment", sc, "C_third_moment", constant_role::upper,
                     m3 / third_moment_bound(sx, K, alpha, 1.0), std::nan(""), false, {{"moment", m3}}});
      detail::Binding mn{"moment_from_norm", sc, "C_moment_norm", constant_role::upper};
      for (int k = 1; k <= cfg.k_max; ++k) {
        const double mk = std::exp(s.spec.log_central_moment(k) / k);
        mn.add(mk / moment_from_norm(k, alpha, K, 1.0), {{"k", k}, {"moment_norm", mk}});
      }
      mn.emit(out, static_cast<std::size_t>(cfg.k_max));
    }
  }

  // Gaussian application checks.
  if (cfg.apps) {
    const auto g = DistSpec::gaussian(0.0, 1.0);
    const double K = std::sqrt(8.0 / 3.0), sx = 1.0;
    const auto& st = cache.apps(cfg.app_n, cfg.app_d, cfg.app_replicates);
    const auto& nd = cache.norm_deviation(cfg.app_vector_d, cfg.app_replicates);
    const auto triv = pair_trivial(K, 2.0, p);
    const auto sqg = pair_squared(sx, K, 2.0, squared_variant::geometric, p);
    const auto sqv = pair_squared(sx, K, 2.0, squared_variant::variance_log, p);
    const std::size_t n = cfg.app_n, d = cfg.app_d, vd = cfg.app_vector_d;
    const MatrixScenario ms{n, d, sqg, 1.0, 1.0};
    (void)g;
    for (double t : cfg.app_t) {
      const double prob = std::exp(-t);
      const auto kmax = binomial_max_accepted(cfg.app_replicates, prob, cfg.app_level);
      const std::string sc = "gaussian/t=" + detail::fmt(t);
      auto radius_row = [&](const std::string& id, const std::string& constant, const std::vector<double>& stat,
                            double shape, const std::string& scen) {
        const double r = radius_allowing(stat, kmax);
        out.push_back({id, scen, constant, constant_role::upper, r / shape, std::nan(""), false,
                       {{"required_radius", r}, {"radius_at_unit_constant", shape}, {"allowed_exceedances", kmax}}});
      };
      const std::string msc = sc + "/n=" + std::to_string(n) + "/d=" + std::to_string(d);
      radius_row("app_mean", "C_mean", st.mean_error, mean_error_bound(t, n, d, triv, 1.0), msc);
      radius_row("app_cov", "C_cov", st.cov_error, cov_error_bound(t, n, d, triv, 1.0), msc);
      double sub = inf;
      for (const auto& pr : canonical_pairs(sx, K, 2.0, p)) sub = std::min(sub, cov_error_bound(t, n, d, pr, 1.0));
      radius_row("app_cov_subgaussian", "C_cov", st.cov_error, sub, msc);
      const double dev = matrix_deviation_bound(t, ms, 1.0);
      radius_row("app_matrix_deviation", "C_matrix", st.gram_error, dev, msc);
      radius_row("app_smax", "C_matrix", st.smax_excess, static_cast<double>(n) * dev, msc);
      radius_row("app_smin", "C_matrix", st.smin_deficit, static_cast<double>(n) * dev, msc);

      const double r = radius_allowing(nd, kmax);
      const std::string vsc = sc + "/d=" + std::to_string(vd);
      auto vector_row = [&](const std::string& id, const VectorScenario& v) {
        const auto e = vector_exponent(v).eval(r);
        const double ex = std::exp(e.log_value);
        out.push_back({id, vsc, "C_vector", constant_role::tail, (t + ln2) / ex, std::nan(""), false,
                       {{"required_radius", r}, {"exponent", ex}, {"branch", e.label}, {"allowed_exceedances", kmax}}});
      };
      VectorScenario iso;
      iso.form = vector_form::isotropic, iso.alpha = 2.0, iso.d = vd, iso.K_iso = K, iso.sigma_x = sx;
      vector_row("app_vector_isotropic", iso);
      VectorScenario het;
      het.form = vector_form::heterogeneous, het.alpha = 2.0;
      het.K.assign(vd, K), het.sigma.assign(vd, sx);
      vector_row("app_vector_heterogeneous", het);
      VectorScenario sl;
      sl.form = vector_form::sigma_l, sl.d = vd, sl.sigma_x = sx;
      sl.square_pair = sqv;
      vector_row("app_vector_sigma_l_variance_log", sl);
      sl.square_pair = sqg;
      vector_row("app_vector_sigma_l_geometric", sl);
    }
  }
  return out;
}

// Fills margins and pass flags of constant checks, then appends the profile
// validity and tightness checks.
inline void score(std::vector<CheckResult>& checks, const SuiteConfig& cfg, const ConstantProfile& p) {
  std::map<std::string, double> min_margin;
  std::map<std::string, std::string> binding;
  for (auto& c : checks) {
    if (c.role == constant_role::none) continue;
    const double C = p.c(c.constant);
    if (std::isnan(c.needed)) c.margin = 0.0;
    else if (c.role == constant_role::upper) c.margin = c.needed <= 0.0 ? inf : C / c.needed;
    else c.margin = c.needed == inf ? inf : (c.needed <= 0.0 ? 0.0 : c.needed / C);
    c.pass = c.margin >= 1.0;
    c.detail["constant_value"] = C;
    auto it = min_margin.find(c.constant);
    if (it == min_margin.end() || c.margin < it->second) {
      min_margin[c.constant] = c.margin;
      binding[c.constant] = c.check_id + " " + c.scenario;
    }
  }
  {
    const double fix = p.c("C_pairfix");
    bool ok = fix >= 1.0 && p.tau_mgf > 0.0 && p.tau_mgf < 1.0;
    for (const auto& n : constant_names()) ok = ok && p.c(n) > 0.0 && std::isfinite(p.c(n));
    checks.push_back({"profile_valid", p.id, "C_pairfix", constant_role::none, std::nan(""), fix, ok,
                      {{"tau_mgf", p.tau_mgf}, {"requirement", "C_pairfix >= 1, tau_mgf in (0,1)"}}});
  }
  for (const auto& n : constant_names()) {
    if (n == "C_pairfix") continue;
    auto it = min_margin.find(n);
    CheckResult r{"tightness", n, n, constant_role::none, std::nan(""), 0.0, false, {}};
    if (it == min_margin.end()) {
      r.detail["note"] = "no check binds this constant";
    } else {
      r.margin = it->second;
      r.pass = it->second <= cfg.tightness_max;
      r.detail = {{"binding", binding[n]}, {"tightness_max", cfg.tightness_max}};
    }
    checks.push_back(std::move(r));
  }
}

// ---------------------------------------------------------------- reports

struct VerifyReport {
  std::string profile_id;
  std::uint64_t seed = 0;
  std::string suite_hash;
  std::vector<CheckResult> checks;

  std::size_t failures() const {
    return static_cast<std::size_t>(std::count_if(checks.begin(), checks.end(), [](const auto& c) { return !c.pass; }));
  }
  bool pass() const { return failures() == 0; }

  nlohmann::json to_json() const {
    nlohmann::json j;
    j["tool_version"] = tool_version;
    j["profile_id"] = profile_id;
    j["seed"] = seed;
    j["suite_hash"] = suite_hash;
    j["checks"] = nlohmann::json::array();
    std::vector<std::string> failed;
    for (const auto& c : checks) {
      j["checks"].push_back({{"check_id", c.check_id},
                             {"scenario", c.scenario},
                             {"constant", c.constant},
                             {"margin", detail::finite_or_null(c.margin)},
                             {"pass", c.pass},
                             {"detail", c.detail}});
      if (!c.pass) failed.push_back(c.check_id + " " + c.scenario);
    }
    j["summary"] = {{"checks", checks.size()}, {"failed", failed.size()}, {"failed_checks", failed}, {"pass", pass()}};
    return j;
  }
};

inline VerifyReport verify(const SuiteConfig& cfg, const ConstantProfile& p, SimCache& cache) {
  p.validate();
  VerifyReport r{p.id, cache.seed(), cfg.hash(), evaluate_checks(cfg, p, cache)};
  score(r.checks, cfg, p);
  return r;
}

inline VerifyReport verify(const SuiteConfig& cfg, const ConstantProfile& p, std::uint64_t seed,
                           unsigned threads = default_threads()) {
  SimCache cache(seed, threads);
  return verify(cfg, p, cache);
}

// ---------------------------------------------------------------- calibration

struct FittedConstant {
  std::string name;
  double value = 0.0;
  double needed = 0.0;
  std::string binding_check;
  std::string binding_scenario;
  double margin = 0.0;
};

struct CalibrationReport {
  ConstantProfile profile;
  std::vector<FittedConstant> fitted;
  std::string suite_hash;
  std::uint64_t seed = 0;
  VerifyReport verification;

  nlohmann::json to_json() const {
    nlohmann::json j;
    j["tool_version"] = tool_version;
    j["profile_id"] = profile.id;
    j["seed"] = seed;
    j["suite_hash"] = suite_hash;
    j["constants"] = nlohmann::json::object();
    for (const auto& f : fitted)
      j["constants"][f.name] = {{"value", f.value},
                                {"needed", f.needed},
                                {"binding_check", f.binding_check},
                                {"binding_scenario", f.binding_scenario},
                                {"safety_margin", f.margin}};
    j["verification"] = verification.to_json()["summary"];
    return j;
  }
};

namespace detail {

// Points of the 1% log grid 1.01^k.
inline double snap_up(double x) {
  const double k = std::ceil(std::log(x) / std::log(1.01) - 1e-9);
  return std::pow(1.01, k);
}
inline double snap_down(double x) {
  const double k = std::floor(std::log(x) / std::log(1.01) + 1e-9);
  return std::pow(1.01, k);
}

inline FittedConstant fit(const std::string& name, const std::vector<CheckResult>& checks, double margin) {
  FittedConstant f;
  f.name = name;
  f.margin = margin;
  const CheckResult* bind = nullptr;
  for (const auto& c : checks) {
    if (c.constant != name || c.role == constant_role::none) continue;
    if (!(c.needed >= 0.0) || (c.role == constant_role::upper && !std::isfinite(c.needed)) ||
        (c.role == constant_role::tail && c.needed <= 0.0))
      fail(error_kind::falsification, "no finite " + name + " is sound on " + c.check_id + " " + c.scenario);
    if (!bind || (c.role == constant_role::upper ? c.needed > bind->needed : c.needed < bind->needed)) bind = &c;
  }
  if (!bind) fail(error_kind::falsification, "no check in the suite binds " + name);
  f.needed = bind->needed;
  f.binding_check = bind->check_id;
  f.binding_scenario = bind->scenario;
  if (bind->role == constant_role::upper) f.value = snap_up(std::max(margin * f.needed, 1e-300));
  else f.value = snap_down(f.needed / margin);
  return f;
}

}  // namespace detail

// Fits every constant: pair multipliers first, since the pairs feed the other
// checks, then all remaining constants from one evaluation. C_pairfix stays 1.
inline CalibrationReport calibrate(const SuiteConfig& cfg, std::uint64_t seed, unsigned threads = default_threads()) {
  cfg.validate();
  SimCache cache(seed, threads);
  ConstantProfile p = shape_profile();
  p.kind = "calibrated";
  CalibrationReport rep;
  rep.seed = seed;
  rep.suite_hash = cfg.hash();

  auto stage = evaluate_checks(cfg, p, cache);
  for (const char* n : {"C_pair", "C_sq"}) {
    auto f = detail::fit(n, stage, cfg.margin);
    p.constants[n] = f.value;
    rep.fitted.push_back(f);
  }
  p.constants["C_pairfix"] = 1.0;
  rep.fitted.push_back({"C_pairfix", 1.0, 1.0, "profile_valid", "fixed", 1.0});

  stage = evaluate_checks(cfg, p, cache);
  for (const auto& n : constant_names()) {
    if (n == "C_pair" || n == "C_sq" || n == "C_pairfix") continue;
    auto f = detail::fit(n, stage, cfg.margin);
    p.constants[n] = f.value;
    rep.fitted.push_back(f);
  }
  std::sort(rep.fitted.begin(), rep.fitted.end(), [](const auto& a, const auto& b) { return a.name < b.name; });
  p.id = "calibrated-" + p.content_hash();
  p.provenance = {{"seed", seed}, {"suite_hash", rep.suite_hash}, {"tool_version", tool_version},
                  {"margin", cfg.margin}};
  for (const auto& f : rep.fitted)
    p.provenance["binding"][f.name] = f.binding_check + " " + f.binding_scenario;
  rep.profile = p;
  rep.verification = verify(cfg, p, cache);
  return rep;
}

// Profile with one constant multiplied by `factor`, for negative controls.
inline ConstantProfile scale_constant(ConstantProfile p, const std::string& name, double factor) {
  p.c(name);
  require(factor > 0.0, error_kind::input, "scale factor must be positive");
  p.constants[name] *= factor;
  p.id += "-scaled-" + name;
  return p;
}

}  // namespace subweibull
