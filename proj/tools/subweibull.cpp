// Copyright 2026 The subweibull Authors
// SPDX-License-Identifier: Apache-2.0
//
// Command-line front end: bound evaluation, curve comparison, Orlicz norm
// estimation, tail simulation, verification and calibration.

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "subweibull/subweibull.hpp"

namespace sw = subweibull;

namespace {

enum exit_code { ok = 0, check_failed = 1, usage = 2, io = 3 };

[[noreturn]] void usage_error(const std::string& what) { sw::fail(sw::error_kind::input, what); }

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

// "lo:hi:points" as a log-spaced grid.
std::vector<double> parse_grid(const std::string& s) {
  std::vector<double> parts;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ':')) {
    try {
      parts.push_back(std::stod(tok));
    } catch (const std::exception&) {
      usage_error("bad --t-grid '" + s + "', expected lo:hi:points");
    }
  }
  if (parts.size() != 3 || !(parts[0] > 0.0) || !(parts[1] >= parts[0]) || parts[2] < 1.0)
    usage_error("bad --t-grid '" + s + "', expected lo:hi:points with 0 < lo <= hi");
  return sw::log_grid(parts[0], parts[1], static_cast<int>(parts[2]));
}

sw::ConstantProfile resolve_profile(const std::string& flag, bool required) {
  std::string path = flag;
  if (path.empty())
    if (const char* env = std::getenv("SUBWEIBULL_PROFILE")) path = env;
  if (path.empty()) {
    if (required) usage_error("no profile: pass --profile or set SUBWEIBULL_PROFILE");
    path = "shape";
  }
  return sw::load_profile(path);
}

// Writes to the named file, or stdout when the name is empty or "-".
class Sink {
 public:
  explicit Sink(const std::string& path) {
    if (!path.empty() && path != "-") {
      file_.open(path);
      if (!file_) sw::fail(sw::error_kind::io, "cannot write " + path);
    }
  }
  std::ostream& os() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }

 private:
  std::ofstream file_;
};

void csv_header(std::ostream& os, const std::string& profile_id, const std::string& seed) {
  os << "# tool_version=" << sw::tool_version << "\n# profile_id=" << profile_id << "\n# seed=" << seed << "\n";
}

// ---------------------------------------------------------------- bound

struct BoundArgs {
  std::string bound = "orlicz_tail";
  std::optional<double> alpha, norm, sigma, L, sigma_x;
  std::size_t n = 1;
  std::vector<double> weights;
  std::vector<double> t;
  std::string t_grid;
  std::string format = "csv";
  std::string output;
  std::string profile;
};

int cmd_bound(const BoundArgs& a) {
  if (!a.alpha) usage_error("--alpha is required");
  if (a.t.empty() == a.t_grid.empty()) usage_error("pass exactly one of --t and --t-grid");
  const auto prof = resolve_profile(a.profile, false);
  const std::vector<double> ts = a.t.empty() ? parse_grid(a.t_grid) : a.t;
  const std::vector<double> w = a.weights.empty() ? std::vector<double>(a.n, 1.0) : a.weights;
  auto forbid = [&](bool given, const char* flag) {
    if (given) usage_error(std::string(flag) + " does not apply to --bound " + a.bound);
  };
  auto need = [&](const std::optional<double>& v, const char* flag) {
    if (!v) usage_error(std::string(flag) + " is required for --bound " + a.bound);
    return *v;
  };

  std::function<sw::BoundValue(double)> eval;
  if (a.bound == "orlicz_tail") {
    forbid(a.sigma || a.L || a.sigma_x, "--sigma/--L/--sigma-x");
    const auto curve = sw::orlicz_tail_curve(w, std::vector<double>(w.size(), need(a.norm, "--norm")), *a.alpha, prof);
    eval = [curve](double t) { return curve.at(t); };
  } else if (a.bound == "sigma_l_tail") {
    forbid(a.norm || a.sigma_x, "--norm/--sigma-x");
    const auto pr = sw::make_pair(need(a.sigma, "--sigma"), need(a.L, "--L"), *a.alpha);
    const auto curve = sw::sigma_l_tail_curve(w, std::vector<sw::SigmaLPair>(w.size(), pr), prof.c("C_tail_sigl"), prof.id);
    eval = [curve](double t) { return curve.at(t); };
  } else if (a.bound == "best_tail") {
    forbid(a.sigma || a.L, "--sigma/--L");
    const auto cands = std::vector<std::vector<sw::SigmaLPair>>(
        w.size(), sw::canonical_pairs(need(a.sigma_x, "--sigma-x"), need(a.norm, "--norm"), *a.alpha, prof));
    eval = [w, cands, prof](double t) { return sw::tail_best(t, w, cands, prof); };
  } else if (a.bound == "min_form" || a.bound == "koltchinskii" || a.bound == "ledoux_low_alpha") {
    forbid(a.sigma || a.L, "--sigma/--L");
    forbid(!a.weights.empty(), "--weights");
    const auto kind = sw::parse_baseline(a.bound);
    sw::IidScenario s{a.n, *a.alpha, a.sigma_x.value_or(need(a.norm, "--norm")), need(a.norm, "--norm")};
    if (kind != sw::baseline_kind::min_form) s.sigma_x = need(a.sigma_x, "--sigma-x");
    else forbid(a.sigma_x.has_value(), "--sigma-x");
    const auto curve = sw::baseline_curve(kind, s, prof.c("C_tail_min"), prof.id);
    eval = [curve](double t) { return curve.at(t); };
  } else {
    usage_error("unknown --bound " + a.bound);
  }

  Sink sink(a.output);
  auto& os = sink.os();
  if (a.format == "csv") {
    csv_header(os, prof.id, "none");
    os << "t,bound_label,branch_label,raw_bound,reported_bound,neg_log_half_bound\n";
    for (double t : ts) {
      const auto v = eval(t);
      os << num(t) << ',' << a.bound << ',' << v.branch << ',' << num(v.raw) << ',' << num(v.reported()) << ','
         << num(v.exponent) << '\n';
    }
  } else if (a.format == "json") {
    nlohmann::json j = {{"tool_version", sw::tool_version}, {"profile_id", prof.id}, {"seed", nullptr},
                        {"bound", a.bound}, {"rows", nlohmann::json::array()}};
    for (double t : ts) {
      const auto v = eval(t);
      j["rows"].push_back({{"t", t}, {"branch_label", v.branch}, {"raw_bound", v.raw},
                           {"reported_bound", v.reported()}, {"neg_log_half_bound", v.exponent}});
    }
    os << j.dump(2) << "\n";
  } else {
    usage_error("--format must be csv or json");
  }
  return ok;
}

// ---------------------------------------------------------------- compare

// Log-log plot of -log(bound / 2) against t, one polyline per curve, with
// markers at breakpoint rows.
void write_svg(std::ostream& os, const sw::CompareTable& tab, const std::string& title) {
  const double W = 720, H = 480, ml = 70, mr = 170, mt = 40, mb = 50;
  double xlo = sw::inf, xhi = -sw::inf, ylo = sw::inf, yhi = -sw::inf;
  for (const auto& r : tab.rows) {
    if (!(r.t > 0.0) || !(r.neg_log_half > 0.0)) continue;
    xlo = std::min(xlo, std::log10(r.t)), xhi = std::max(xhi, std::log10(r.t));
    ylo = std::min(ylo, std::log10(r.neg_log_half)), yhi = std::max(yhi, std::log10(r.neg_log_half));
  }
  if (!(xhi > xlo)) xhi = xlo + 1;
  if (!(yhi > ylo)) yhi = ylo + 1;
  auto X = [&](double t) { return ml + (std::log10(t) - xlo) / (xhi - xlo) * (W - ml - mr); };
  auto Y = [&](double v) { return H - mb - (std::log10(v) - ylo) / (yhi - ylo) * (H - mt - mb); };
  static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#e377c2", "#17becf"};
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\">\n"
     << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
     << "<text x=\"" << ml << "\" y=\"24\" font-family=\"sans-serif\" font-size=\"14\">" << title << "</text>\n"
     << "<rect x=\"" << ml << "\" y=\"" << mt << "\" width=\"" << W - ml - mr << "\" height=\"" << H - mt - mb
     << "\" fill=\"none\" stroke=\"black\"/>\n";
  for (int d = static_cast<int>(std::ceil(xlo)); d <= static_cast<int>(std::floor(xhi)); ++d)
    os << "<text x=\"" << X(std::pow(10.0, d)) << "\" y=\"" << H - mb + 18
       << "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"middle\">1e" << d << "</text>\n";
  for (int d = static_cast<int>(std::ceil(ylo)); d <= static_cast<int>(std::floor(yhi)); ++d)
    os << "<text x=\"" << ml - 6 << "\" y=\"" << Y(std::pow(10.0, d)) + 4
       << "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"end\">1e" << d << "</text>\n";
  os << "<text x=\"" << (W - mr + ml) / 2 << "\" y=\"" << H - 10
     << "\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"middle\">t</text>\n"
     << "<text x=\"16\" y=\"" << (H - mb + mt) / 2 << "\" font-family=\"sans-serif\" font-size=\"12\" "
     << "transform=\"rotate(-90 16," << (H - mb + mt) / 2 << ")\" text-anchor=\"middle\">-log(bound/2)</text>\n";
  std::vector<std::string> names;
  for (const auto& r : tab.rows)
    if (std::find(names.begin(), names.end(), r.curve) == names.end()) names.push_back(r.curve);
  for (std::size_t c = 0; c < names.size(); ++c) {
    const char* col = colors[c % 8];
    os << "<polyline fill=\"none\" stroke=\"" << col << "\" stroke-width=\"1.5\" points=\"";
    for (const auto& r : tab.rows)
      if (r.curve == names[c] && r.t > 0.0 && r.neg_log_half > 0.0) os << X(r.t) << ',' << Y(r.neg_log_half) << ' ';
    os << "\"/>\n";
    for (const auto& r : tab.rows)
      if (r.curve == names[c] && r.breakpoint && r.t > 0.0 && r.neg_log_half > 0.0)
        os << "<circle cx=\"" << X(r.t) << "\" cy=\"" << Y(r.neg_log_half) << "\" r=\"4\" fill=\"" << col << "\"/>\n";
    os << "<text x=\"" << W - mr + 10 << "\" y=\"" << mt + 16 * (c + 1) << "\" font-family=\"sans-serif\" "
       << "font-size=\"11\" fill=\"" << col << "\">" << names[c] << "</text>\n";
  }
  os << "</svg>\n";
}

struct CompareArgs {
  std::optional<double> alpha, norm, sigma_x;
  std::size_t n = 1;
  std::string curves;
  std::string t_grid;
  std::string output;
  std::string svg;
  std::string profile;
};

int cmd_compare(const CompareArgs& a) {
  if (!a.alpha) usage_error("--alpha is required");
  if (!a.norm) usage_error("--norm is required");
  const auto prof = resolve_profile(a.profile, false);
  std::vector<std::string> curves;
  if (a.curves.empty()) {
    curves = {"orlicz_tail", "min_form"};
    if (a.sigma_x) {
      curves.insert(curves.end(), {"koltchinskii", "sigma_l_trivial", "sigma_l_variance_log", "sigma_l_geometric",
                                   "best_tail"});
      if (*a.alpha <= 2.0) curves.push_back("ledoux_low_alpha");
    }
  } else {
    std::stringstream ss(a.curves);
    std::string tok;
    while (std::getline(ss, tok, ','))
      if (!tok.empty()) curves.push_back(tok);
  }
  for (const auto& c : curves) {
    const auto& names = sw::curve_names();
    if (std::find(names.begin(), names.end(), c) == names.end()) usage_error("unknown curve " + c);
    if (!a.sigma_x && c != "orlicz_tail" && c != "min_form") usage_error("curve " + c + " needs --sigma-x");
  }
  const double nk = static_cast<double>(a.n) * *a.norm;
  const auto grid = a.t_grid.empty() ? sw::log_grid(0.01 * nk, 10.0 * nk, 200) : parse_grid(a.t_grid);
  const sw::IidScenario s{a.n, *a.alpha, a.sigma_x.value_or(*a.norm), *a.norm};
  const auto tab = sw::compare_curves(grid, s, curves, prof);
  {
    Sink sink(a.output);
    csv_header(sink.os(), prof.id, "none");
    sw::write_compare_csv(sink.os(), tab);
  }
  if (!a.svg.empty()) {
    std::ofstream out(a.svg);
    if (!out) sw::fail(sw::error_kind::io, "cannot write " + a.svg);
    char title[160];
    std::snprintf(title, sizeof title, "alpha=%g n=%zu K=%g profile=%s", *a.alpha, a.n, *a.norm, prof.id.c_str());
    write_svg(out, tab, title);
  }
  return ok;
}

// ---------------------------------------------------------------- orlicz

std::vector<double> read_values(const std::string& path) {
  std::ifstream in(path);
  if (!in) sw::fail(sw::error_kind::io, "cannot read " + path);
  std::vector<double> v;
  std::string line;
  while (std::getline(in, line)) {
    const auto b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos) continue;
    const auto e = line.find_last_not_of(" \t\r");
    const std::string tok = line.substr(b, e - b + 1);
    try {
      std::size_t used = 0;
      v.push_back(std::stod(tok, &used));
      if (used != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      sw::fail(sw::error_kind::io, "malformed value '" + tok + "' in " + path);
    }
  }
  if (v.empty()) sw::fail(sw::error_kind::io, path + " contains no values");
  return v;
}

int cmd_orlicz(const std::string& input, const std::string& dist, std::optional<double> alpha,
               const std::string& profile, const std::string& output) {
  if (!alpha) usage_error("--alpha is required");
  if (input.empty() == dist.empty()) usage_error("pass exactly one of --input and --dist");
  const auto prof = resolve_profile(profile, false);
  sw::OrliczNorm nrm;
  double sx = 0.0;
  nlohmann::json j = {{"tool_version", sw::tool_version}, {"profile_id", prof.id}, {"seed", nullptr}};
  if (!input.empty()) {
    const auto v = read_values(input);
    nrm = sw::orlicz_norm_empirical(v, *alpha);
    double m = 0.0;
    for (double x : v) m += x;
    m /= static_cast<double>(v.size());
    for (double x : v) sx += (x - m) * (x - m);
    sx = std::sqrt(sx / static_cast<double>(v.size()));
    j["source"] = input;
  } else {
    const auto spec = sw::parse_dist(dist);
    nrm = sw::orlicz_norm_exact(spec, *alpha);
    sx = spec.sd();
    j["source"] = spec.describe();
  }
  j["alpha"] = *alpha;
  j["norm"] = nrm.value;
  j["method"] = sw::to_string(nrm.method);
  j["tolerance"] = nrm.tolerance;
  j["batch_size"] = nrm.batch_size;
  j["sigma_x"] = sx;
  j["pairs"] = nlohmann::json::array();
  if (nrm.value > 0.0 && sx > 0.0 && sx <= std::sqrt(2.0) * nrm.value) {
    for (const auto& p : sw::canonical_pairs(sx, nrm.value, *alpha, prof))
      j["pairs"].push_back({{"kind", sw::to_string(p.provenance)}, {"sigma", p.sigma}, {"L", p.L}, {"alpha", p.alpha}});
  } else {
    j["pairs_note"] = "canonical pairs need 0 < sigma_x <= sqrt(2) * norm";
  }
  Sink sink(output);
  sink.os() << j.dump(2) << "\n";
  return ok;
}

// ---------------------------------------------------------------- simulate

int cmd_simulate(const std::string& dist, std::size_t n, const std::vector<double>& t, const std::string& t_grid,
                 std::uint64_t replicates, std::optional<std::uint64_t> seed, unsigned threads,
                 const std::string& output) {
  if (!seed) usage_error("--seed is required");
  if (dist.empty()) usage_error("--dist is required");
  if (t.empty() == t_grid.empty()) usage_error("pass exactly one of --t and --t-grid");
  const auto spec = sw::parse_dist(dist);
  const auto e = sw::empirical_tail(spec, std::vector<double>(n, 1.0), t.empty() ? parse_grid(t_grid) : t,
                                    replicates, *seed, threads);
  Sink sink(output);
  auto& os = sink.os();
  csv_header(os, "none", std::to_string(*seed));
  os << "# scenario=" << e.scenario << "\nt,estimate,upper_999,count,replicates\n";
  for (std::size_t i = 0; i < e.t_grid.size(); ++i)
    os << num(e.t_grid[i]) << ',' << num(e.estimate[i]) << ',' << num(e.upper[i]) << ',' << e.count[i] << ','
       << e.replicates << '\n';
  return ok;
}

// ---------------------------------------------------------------- verify / calibrate

int cmd_verify(const std::string& suite, const std::string& profile, std::optional<std::uint64_t> seed,
               unsigned threads, const std::string& output, const std::vector<std::string>& scales) {
  if (!seed) usage_error("--seed is required");
  if (suite.empty()) usage_error("--suite is required");
  auto prof = resolve_profile(profile, true);
  for (const auto& s : scales) {
    const auto eq = s.find('=');
    if (eq == std::string::npos) usage_error("--scale expects NAME=FACTOR");
    double f = 0.0;
    try {
      f = std::stod(s.substr(eq + 1));
    } catch (const std::exception&) {
      usage_error("--scale expects NAME=FACTOR");
    }
    prof = sw::scale_constant(prof, s.substr(0, eq), f);
  }
  const auto cfg = sw::load_suite(suite);
  const auto rep = sw::verify(cfg, prof, *seed, threads);
  {
    Sink sink(output);
    sink.os() << rep.to_json().dump(2) << "\n";
  }
  for (const auto& c : rep.checks)
    if (!c.pass) std::cerr << "FAIL " << c.check_id << " " << c.scenario << "\n";
  std::cerr << rep.checks.size() - rep.failures() << "/" << rep.checks.size() << " checks passed\n";
  return rep.pass() ? ok : check_failed;
}

int cmd_calibrate(const std::string& suite, std::optional<std::uint64_t> seed, unsigned threads,
                  const std::string& output, const std::string& report) {
  if (!seed) usage_error("--seed is required");
  if (suite.empty()) usage_error("--suite is required");
  if (output.empty()) usage_error("--output is required");
  const auto cfg = sw::load_suite(suite);
  const auto rep = sw::calibrate(cfg, *seed, threads);
  sw::save_profile(rep.profile, output);
  if (!report.empty()) {
    Sink sink(report);
    sink.os() << rep.to_json().dump(2) << "\n";
  }
  for (const auto& f : rep.fitted)
    std::cerr << f.name << " = " << num(f.value) << "  (binding: " << f.binding_check << " " << f.binding_scenario
              << ")\n";
  std::cerr << "profile " << rep.profile.id << "; verification " << (rep.verification.pass() ? "passed" : "FAILED")
            << "\n";
  return rep.verification.pass() ? ok : check_failed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Tail, moment and norm bounds for sums of sub-Weibull variables"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(sw::tool_version));

  BoundArgs ba;
  auto* bound = app.add_subcommand("bound", "Evaluate one tail bound on a t grid");
  bound->add_option("--bound", ba.bound,
                    "orlicz_tail | sigma_l_tail | best_tail | min_form | koltchinskii | ledoux_low_alpha");
  bound->add_option("--alpha", ba.alpha, "Exponent alpha >= 1");
  bound->add_option("--n", ba.n, "Number of unit-weight terms");
  bound->add_option("--weights", ba.weights, "Explicit weights a_i (overrides --n)")->delimiter(',');
  bound->add_option("--norm", ba.norm, "psi_alpha norm K of each term");
  bound->add_option("--sigma", ba.sigma, "Pair sigma (sigma_l_tail)");
  bound->add_option("--L", ba.L, "Pair L (sigma_l_tail)");
  bound->add_option("--sigma-x", ba.sigma_x, "Standard deviation of each term");
  bound->add_option("--t", ba.t, "Deviation(s)")->delimiter(',');
  bound->add_option("--t-grid", ba.t_grid, "Log grid lo:hi:points");
  bound->add_option("--format", ba.format, "csv | json");
  bound->add_option("--output,-o", ba.output, "Output file (default stdout)");
  bound->add_option("--profile", ba.profile, "Profile JSON path or 'shape'");

  CompareArgs ca;
  auto* compare = app.add_subcommand("compare", "Compare tail curves for an i.i.d. scenario");
  compare->add_option("--alpha", ca.alpha, "Exponent alpha >= 1");
  compare->add_option("--n", ca.n, "Number of terms");
  compare->add_option("--norm", ca.norm, "psi_alpha norm K");
  compare->add_option("--sigma-x", ca.sigma_x, "Standard deviation of each term");
  compare->add_option("--curves", ca.curves, "Comma-separated curve names");
  compare->add_option("--t-grid", ca.t_grid, "Log grid lo:hi:points (default 0.01nK:10nK:200)");
  compare->add_option("--output,-o", ca.output, "CSV file (default stdout)");
  compare->add_option("--svg", ca.svg, "Optional SVG plot");
  compare->add_option("--profile", ca.profile, "Profile JSON path or 'shape'");

  std::string o_input, o_dist, o_profile, o_output;
  std::optional<double> o_alpha;
  auto* orl = app.add_subcommand("orlicz", "psi_alpha norm of a data file or a distribution");
  orl->add_option("--input", o_input, "Newline-delimited decimals");
  orl->add_option("--dist", o_dist, "Distribution label, e.g. gaussian(0,1)");
  orl->add_option("--alpha", o_alpha, "Exponent alpha >= 1");
  orl->add_option("--profile", o_profile, "Profile for the canonical pairs");
  orl->add_option("--output,-o", o_output, "Output file (default stdout)");

  std::string s_dist, s_output, s_grid;
  std::size_t s_n = 1;
  std::vector<double> s_t;
  std::uint64_t s_reps = 100000;
  std::optional<std::uint64_t> s_seed;
  unsigned threads = sw::default_threads();
  auto* sim = app.add_subcommand("simulate", "Monte Carlo tail of a unit-weight sum");
  sim->add_option("--dist", s_dist, "Distribution label");
  sim->add_option("--n", s_n, "Number of terms");
  sim->add_option("--t", s_t, "Deviation(s)")->delimiter(',');
  sim->add_option("--t-grid", s_grid, "Log grid lo:hi:points");
  sim->add_option("--replicates", s_reps, "Replicates (>= 10000)");
  sim->add_option("--seed", s_seed, "RNG seed");
  sim->add_option("--threads", threads, "Worker threads");
  sim->add_option("--output,-o", s_output, "CSV file (default stdout)");

  std::string v_suite, v_profile, v_output;
  std::optional<std::uint64_t> v_seed;
  std::vector<std::string> v_scale;
  auto* ver = app.add_subcommand("verify", "Run the falsification suite against a profile");
  ver->add_option("--suite", v_suite, "Suite config JSON");
  ver->add_option("--profile", v_profile, "Profile JSON (or SUBWEIBULL_PROFILE)");
  ver->add_option("--seed", v_seed, "RNG seed");
  ver->add_option("--threads", threads, "Worker threads");
  ver->add_option("--output,-o", v_output, "Report JSON (default stdout)");
  ver->add_option("--scale", v_scale, "NAME=FACTOR: scale one constant (negative control)");

  std::string c_suite, c_output, c_report;
  std::optional<std::uint64_t> c_seed;
  auto* cal = app.add_subcommand("calibrate", "Fit every constant on the suite");
  cal->add_option("--suite", c_suite, "Suite config JSON");
  cal->add_option("--seed", c_seed, "RNG seed");
  cal->add_option("--threads", threads, "Worker threads");
  cal->add_option("--output,-o", c_output, "Profile JSON to write");
  cal->add_option("--report", c_report, "Calibration report JSON");

  std::string u_output;
  auto* suite = app.add_subcommand("suite", "Write the default suite config");
  suite->add_option("--output,-o", u_output, "Suite JSON (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? ok : usage;
  }

  CLI::App* active = app.get_subcommands().front();
  try {
    if (*bound) return cmd_bound(ba);
    if (*compare) return cmd_compare(ca);
    if (*orl) return cmd_orlicz(o_input, o_dist, o_alpha, o_profile, o_output);
    if (*sim) return cmd_simulate(s_dist, s_n, s_t, s_grid, s_reps, s_seed, threads, s_output);
    if (*ver) return cmd_verify(v_suite, v_profile, v_seed, threads, v_output, v_scale);
    if (*cal) return cmd_calibrate(c_suite, c_seed, threads, c_output, c_report);
    if (*suite) {
      Sink sink(u_output);
      sink.os() << sw::default_suite().to_json().dump(2) << "\n";
      return ok;
    }
  } catch (const sw::error& e) {
    std::cerr << e.what() << "\n";
    switch (e.kind()) {
      case sw::error_kind::io: return io;
      case sw::error_kind::falsification:
      case sw::error_kind::numeric: return check_failed;
      default:
        std::cerr << active->help();
        return usage;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return check_failed;
  }
  return usage;
}
