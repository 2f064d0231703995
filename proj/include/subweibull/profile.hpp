// Copyright 2026 The subweibull Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <nlohmann/json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "subweibull/error.hpp"
#include "subweibull/rng.hpp"
#include "subweibull/version.hpp"

namespace subweibull {

// Names of every universal constant a bound may consume.
inline const std::vector<std::string>& constant_names() {
  static const std::vector<std::string> names = {
      "C_mgf_quad", "C_mgf_beta", "C_tail_max", "C_tail_min", "C_tail_sigl", "C_moment",
      "C_norm",     "C_pairfix",  "C_third_moment", "C_moment_norm", "C_pair", "C_sq",
      "C_vector",   "C_matrix",   "C_mean",   "C_cov"};
  return names;
}

// Concrete values for the symbolic constants. The shape profile sets every
// constant to 1; calibrated profiles are fitted by the harness and stored as JSON.
struct ConstantProfile {
  std::string id = "shape-v1";
  std::string kind = "shape";
  int version = 1;
  double tau_mgf = 0.5;
  std::map<std::string, double> constants;
  nlohmann::json provenance = nlohmann::json::object();

  double c(const std::string& name) const {
    auto it = constants.find(name);
    if (it == constants.end()) fail(error_kind::input, "profile has no constant " + name);
    return it->second;
  }

  void validate() const {
    for (const auto& n : constant_names()) {
      const double v = c(n);
      require(v > 0.0 && std::isfinite(v), error_kind::input, "constant " + n + " must be positive");
    }
    require(tau_mgf > 0.0 && tau_mgf < 1.0, error_kind::input, "tau_mgf must lie in (0,1)");
  }

  nlohmann::json to_json() const {
    nlohmann::json j;
    j["id"] = id;
    j["kind"] = kind;
    j["version"] = version;
    j["tau_mgf"] = tau_mgf;
    j["constants"] = constants;
    j["provenance"] = provenance;
    return j;
  }

  static ConstantProfile from_json(const nlohmann::json& j) {
    ConstantProfile p;
    try {
      p.id = j.at("id").get<std::string>();
      p.kind = j.at("kind").get<std::string>();
      p.version = j.value("version", 1);
      p.tau_mgf = j.at("tau_mgf").get<double>();
      p.constants = j.at("constants").get<std::map<std::string, double>>();
      p.provenance = j.value("provenance", nlohmann::json::object());
    } catch (const nlohmann::json::exception& e) {
      fail(error_kind::input, std::string("malformed profile: ") + e.what());
    }
    p.validate();
    return p;
  }

  // Content hash of the constants, used to derive calibrated profile ids.
  std::string content_hash() const {
    nlohmann::json j;
    j["tau_mgf"] = tau_mgf;
    j["constants"] = constants;
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a64(j.dump())));
    return buf;
  }
};

inline ConstantProfile shape_profile() {
  ConstantProfile p;
  for (const auto& n : constant_names()) p.constants[n] = 1.0;
  p.provenance = {{"note", "all constants set to 1"}};
  return p;
}

inline ConstantProfile load_profile(const std::string& path) {
  if (path == "shape") return shape_profile();
  std::ifstream in(path);
  if (!in) fail(error_kind::io, "cannot open profile " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    fail(error_kind::input, "profile " + path + " is not valid JSON: " + e.what());
  }
  return ConstantProfile::from_json(j);
}

inline void save_profile(const ConstantProfile& p, const std::string& path) {
  std::ofstream out(path);
  if (!out) fail(error_kind::io, "cannot write profile " + path);
  out << p.to_json().dump(2) << "\n";
}

}  // namespace subweibull
