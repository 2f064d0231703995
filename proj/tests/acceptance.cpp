// Copyright 2026 The subweibull Authors
// SPDX-License-Identifier: Apache-2.0
//
// Acceptance run: one PASS/FAIL line per criterion. Tolerances are pinned
// below. Usage: acceptance SUITE_JSON PROFILE_JSON SEED

#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "subweibull/subweibull.hpp"

namespace sw = subweibull;

namespace {

constexpr double orlicz_tol = 1e-6;
constexpr double orlicz_seconds = 1.0;
constexpr double phase_rel_tol = 1e-9;
constexpr double phase_seconds = 1.0;
constexpr double moment_seconds = 5.0;
constexpr double tail_seconds = 600.0;
constexpr double apps_seconds = 120.0;
constexpr double negative_factor = 0.01;

using clock_type = std::chrono::steady_clock;

double seconds_since(clock_type::time_point t0) {
  return std::chrono::duration<double>(clock_type::now() - t0).count();
}

std::string fmt(const char* f, ...) __attribute__((format(printf, 1, 2)));
std::string fmt(const char* f, ...) {
  char buf[512];
  va_list ap;
  va_start(ap, f);
  std::vsnprintf(buf, sizeof buf, f, ap);
  va_end(ap);
  return buf;
}

int failures = 0;
std::map<int, std::string> lines;  // printed in criterion order at the end

void report(int id, const std::string& name, bool pass, const std::string& detail) {
  if (!pass) ++failures;
  lines[id] = fmt("[%s] %2d %-24s %s", pass ? "PASS" : "FAIL", id, name.c_str(), detail.c_str());
  std::fprintf(stderr, "%s\n", lines[id].c_str());
}

// Runs one criterion; exceptions count as failures with their message.
void criterion(int id, const std::string& name, const std::function<std::pair<bool, std::string>()>& body) {
  try {
    const auto [pass, detail] = body();
    report(id, name, pass, detail);
  } catch (const std::exception& e) {
    report(id, name, false, std::string("exception: ") + e.what());
  }
}

bool starts_with(const std::string& s, const std::string& p) { return s.rfind(p, 0) == 0; }

// Alpha encoded as the second field of "label/alpha[/...]".
double scenario_alpha(const std::string& scenario) {
  const auto a = scenario.find('/');
  return std::stod(scenario.substr(a + 1));
}

std::vector<std::string> runs(const std::vector<std::string>& labels) {
  std::vector<std::string> out;
  for (const auto& l : labels)
    if (out.empty() || out.back() != l) out.push_back(l);
  return out;
}

std::string join(const std::vector<std::string>& v) {
  std::string s;
  for (const auto& x : v) s += (s.empty() ? "" : ">") + x;
  return s;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 4) {
    std::fprintf(stderr, "usage: acceptance SUITE_JSON PROFILE_JSON SEED\n");
    return 2;
  }
  const auto cfg = sw::load_suite(argv[1]);
  const auto prof = sw::load_profile(argv[2]);
  const std::uint64_t seed = std::strtoull(argv[3], nullptr, 10);
  const unsigned threads = sw::default_threads();
  const auto shape = sw::shape_profile();
  std::printf("profile %s, seed %llu, suite %s, %u thread(s)\n", prof.id.c_str(),
              static_cast<unsigned long long>(seed), cfg.hash().c_str(), threads);

  criterion(1, "orlicz_exactness", [] {
    struct Case {
      sw::DistSpec spec;
      double alpha, expect;
    };
    const std::vector<Case> cases = {{sw::DistSpec::gaussian(0, 1), 2.0, std::sqrt(8.0 / 3.0)},
                                     {sw::DistSpec::rademacher(), 2.0, 1.0 / std::sqrt(std::log(2.0))},
                                     {sw::DistSpec::exponential(1.0, false), 1.0, 2.0}};
    bool ok = true;
    std::string d;
    for (const auto& c : cases) {
      const auto t0 = clock_type::now();
      const double v = sw::orlicz_norm_exact(c.spec, c.alpha).value;
      const double sec = seconds_since(t0), err = std::abs(v - c.expect);
      ok = ok && err <= orlicz_tol && sec < orlicz_seconds;
      d += fmt("%s:%.2g ", c.spec.describe().c_str(), err);
    }
    return std::make_pair(ok, d + fmt("(tol %.0e)", orlicz_tol));
  });

  criterion(2, "phase_transition", [&] {
    const auto t0 = clock_type::now();
    const std::size_t n = 10;
    const double K = 1.0, tstar = static_cast<double>(n) * K;
    const auto grid = sw::log_grid(0.01 * tstar, 100.0 * tstar, 200);
    const std::vector<double> a(n, 1.0), Kv(n, K);
    bool ok = true;
    std::string d;
    for (double alpha : {2.5, 3.0, 4.0, 6.0}) {
      const auto orl = sw::orlicz_tail_curve(a, Kv, alpha, shape);
      const auto mf = sw::baseline_curve(sw::baseline_kind::min_form, {n, alpha, K, K}, shape.c("C_tail_min"));
      int below = 0, above = 0;
      bool dominated = true;
      for (double t : grid) {
        const double x = orl.at(t).raw, y = mf.at(t).raw;
        dominated = dominated && x <= y * (1 + 1e-12);
        if (x < y * (1 - 1e-12)) (t < tstar ? below : above)++;
      }
      ok = ok && dominated && below >= 1 && above >= 1;
      d += fmt("a=%g:%d/%d ", alpha, below, above);
    }
    const auto orl2 = sw::orlicz_tail_curve(a, Kv, 2.0, shape);
    const auto mf2 = sw::baseline_curve(sw::baseline_kind::min_form, {n, 2.0, K, K}, shape.c("C_tail_min"));
    double worst = 0.0;
    for (double t : grid) {
      const double x = orl2.at(t).raw, y = mf2.at(t).raw;
      worst = std::max(worst, std::abs(x - y) / std::max(x, y));
    }
    const double sec = seconds_since(t0);
    ok = ok && worst <= phase_rel_tol && sec < phase_seconds;
    return std::make_pair(ok, d + fmt("a=2 rel %.1e, %.2fs", worst, sec));
  });

  criterion(3, "crossover_location", [&] {
    bool ok = true;
    std::string d;
    for (auto [n, K] : std::vector<std::pair<std::size_t, double>>{{10, 1.0}, {10, 2.0}, {100, 0.5}}) {
      const double tstar = static_cast<double>(n) * K;
      for (double alpha : {1.5, 3.0}) {
        const auto tab = sw::compare_curves(sw::log_grid(0.01 * tstar, 100.0 * tstar, 50), {n, alpha, K, K},
                                            {"orlicz_tail", "min_form"}, shape);
        for (const char* c : {"orlicz_tail", "min_form"}) {
          const auto& bp = tab.breakpoints.at(c);
          const bool hit = bp.size() == 1 && bp[0] == tstar;
          bool row = false;
          for (const auto& r : tab.rows) row = row || (r.curve == c && r.breakpoint && r.t == tstar);
          ok = ok && hit && row;
        }
      }
      d += fmt("nK=%g ", tstar);
    }
    return std::make_pair(ok, d + "exact");
  });

  criterion(4, "moment_soundness", [&] {
    const auto t0 = clock_type::now();
    const std::size_t n = 10;
    // Brute-force oracle over all 2^10 sign patterns.
    auto brute = [&](int p) {
      double s = 0.0;
      for (unsigned m = 0; m < (1u << n); ++m) s += std::pow(2.0 * __builtin_popcount(m) - n, p);
      return s / (1u << n);
    };
    const auto law = sw::sum_law(sw::DistSpec::rademacher(), std::vector<double>(n, 1.0));
    const std::vector<double> a(n, 1.0), K(n, 1.0 / std::sqrt(std::log(2.0)));
    const double pinned[] = {10, 280, 12160, 686080};
    bool ok = true;
    double worst = sw::inf;
    std::string d;
    for (int i = 0; i < 4; ++i) {
      const int p = 2 * (i + 1);
      const double exact = sw::absolute_moment(law, p);
      ok = ok && std::abs(exact - brute(p)) <= 1e-12 * exact && std::abs(exact - pinned[i]) <= 1e-12 * exact;
      const double bound = sw::moment_bound(p, a, K, 2.0, prof).value();
      worst = std::min(worst, bound / exact);
      d += fmt("p%d=%g ", p, exact);
    }
    const double sec = seconds_since(t0);
    ok = ok && worst >= 1.0 && sec < moment_seconds;
    return std::make_pair(ok, d + fmt("min margin %.3g, %.2fs", worst, sec));
  });

  // Criteria 5 to 9 share one simulation cache.
  sw::SimCache cache(seed, threads);

  criterion(8, "vector_covariance", [&] {
    const auto t0 = clock_type::now();
    const std::size_t R = 2000, vd = 200, n = 2000, d = 10;
    const double t = 3.0, p = std::exp(-t);
    const double limit = p + 3.0 * std::sqrt(p * (1 - p) / static_cast<double>(R));
    const auto& nd = cache.norm_deviation(vd, R);
    const auto& st = cache.apps(n, d, R);
    sw::VectorScenario iso;
    iso.form = sw::vector_form::isotropic, iso.alpha = 2.0, iso.d = vd, iso.K_iso = std::sqrt(8.0 / 3.0);
    iso.sigma_x = 1.0;
    const double rv = sw::vector_radius(t, iso, prof.c("C_vector"));
    const double fv = sw::exceed_fraction(nd, rv);
    const double rc = sw::cov_error_bound_subgaussian(t, n, d, 1.0, std::sqrt(8.0 / 3.0), prof);
    const double fc = sw::exceed_fraction(st.cov_error, rc);
    const double sec = seconds_since(t0);
    const bool ok = fv <= limit && fc <= limit && sec < apps_seconds;
    return std::make_pair(ok, fmt("norm %.4f, cov %.4f <= %.4f, %.1fs", fv, fc, limit, sec));
  });

  const auto t_verify = clock_type::now();
  const auto rep = sw::verify(cfg, prof, cache);
  const double verify_sec = seconds_since(t_verify);

  criterion(5, "tail_soundness", [&] {
    std::size_t rows = 0, bad = 0;
    for (const auto& c : rep.checks)
      if (starts_with(c.check_id, "tail_")) {
        ++rows;
        bad += !c.pass;
      }
    const std::size_t expect_scen = cfg.specs.size() * cfg.alphas.size() * cfg.tail_n.size();
    const bool shape_ok = cfg.specs.size() == 5 && cfg.alphas.size() == 5 && cfg.tail_n.size() == 3 &&
                          cfg.tail_points == 25 && cfg.tail_replicates == 1000000;
    const bool ok = shape_ok && rows >= expect_scen && bad == 0 && verify_sec < tail_seconds;
    return std::make_pair(ok, fmt("%zu tail rows over %zu scenarios, %zu failed, suite %.0fs", rows, expect_scen, bad,
                                  verify_sec));
  });

  criterion(6, "admissibility", [&] {
    std::size_t rows = 0, bad = 0, probes = 0, probe_bad = 0;
    for (const auto& c : rep.checks) {
      if (c.check_id == "admissible_trivial" || c.check_id == "admissible_variance_log" ||
          c.check_id == "admissible_geometric") {
        ++rows;
        bad += !c.pass;
      } else if (c.check_id == "sharpness_geometric") {
        ++probes;
        probe_bad += !c.pass;
      }
    }
    const bool ok = rows == 3 * cfg.specs.size() * cfg.alphas.size() && bad == 0 && probes == cfg.specs.size() &&
                    probe_bad == 0 && cfg.k_max >= 20;
    return std::make_pair(ok, fmt("%zu pair rows, %zu failed; %zu sharpness probes, %zu admissible", rows, bad, probes,
                                  probe_bad));
  });

  criterion(7, "mgf_sandwich", [&] {
    const std::set<double> want = {1.5, 2.0, 3.0};
    std::set<double> seen;
    std::set<std::string> pairs;  // upper rows at alpha < 2 are split per constant
    std::size_t rows = 0, bad = 0;
    for (const auto& c : rep.checks) {
      if (c.check_id != "mgf_upper" && c.check_id != "mgf_lower") continue;
      const double a = scenario_alpha(c.scenario);
      if (!want.count(a)) continue;
      seen.insert(a);
      pairs.insert(c.check_id + " " + c.scenario);
      ++rows;
      bad += !c.pass;
    }
    const bool ok = seen == want && pairs.size() == 2 * want.size() * cfg.specs.size() && bad == 0 &&
                    cfg.mgf_points == 50;
    return std::make_pair(ok, fmt("%zu rows, %zu failed, %d lambda points", rows, bad, cfg.mgf_points));
  });

  criterion(9, "determinism", [&] {
    const auto again = sw::verify(cfg, prof, seed, threads);
    const bool same = again.to_json().dump() == rep.to_json().dump();
    std::size_t caught = 0;
    std::string missed;
    for (const auto& name : sw::constant_names()) {
      const auto r = sw::verify(cfg, sw::scale_constant(prof, name, negative_factor), cache);
      if (!r.pass())
        ++caught;
      else
        missed += " " + name;
    }
    const bool ok = same && rep.pass() && caught == sw::constant_names().size();
    return std::make_pair(ok, fmt("rerun %s, %zu/%zu scaled profiles rejected%s", same ? "identical" : "DIFFERS",
                                  caught, sw::constant_names().size(), missed.c_str()));
  });

  criterion(10, "specialization_identity", [&] {
    const std::size_t n = 10;
    const double K = 1.0;
    const auto grid = sw::log_grid(0.01 * n * K, 100.0 * n * K, 200);
    const std::vector<double> a(n, 1.0), Kv(n, K);
    bool ok = true;
    std::string d;
    for (double alpha : {1.0, 1.5, 2.0, 3.0}) {
      const auto orl = sw::orlicz_tail_curve(a, Kv, alpha, 1.0);
      const auto sl = sw::sigma_l_tail_curve(a, std::vector<sw::SigmaLPair>(n, sw::pair_trivial(K, alpha, 1.0)), 1.0);
      std::vector<std::string> lo, ls;
      for (double t : grid) {
        lo.push_back(orl.at(t).branch);
        ls.push_back(sl.at(t).branch);
      }
      const auto ro = runs(lo), rs = runs(ls);
      ok = ok && ro == rs;
      d += fmt("a=%g:%s ", alpha, join(ro).c_str());
      if (ro != rs) d += "vs " + join(rs) + " ";
    }
    if (!d.empty()) d.pop_back();
    return std::make_pair(ok, d);
  });

  for (const auto& [id, line] : lines) std::printf("%s\n", line.c_str());
  std::printf("%s: %d criterion(s) failed\n", failures ? "FAIL" : "PASS", failures);
  return failures ? 1 : 0;
}
