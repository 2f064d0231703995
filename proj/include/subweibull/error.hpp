// Copyright 2026 The subweibull Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdio>
#include <stdexcept>
#include <string>

namespace subweibull {

enum class error_kind {
  parameter,
  domain,
  numeric,
  input,
  infeasible,
  capacity,
  falsification,
  unsupported,
  io,
};

inline const char* to_string(error_kind k) {
  switch (k) {
    case error_kind::parameter: return "parameter";
    case error_kind::domain: return "domain";
    case error_kind::numeric: return "numeric";
    case error_kind::input: return "input";
    case error_kind::infeasible: return "infeasible";
    case error_kind::capacity: return "capacity";
    case error_kind::falsification: return "falsification";
    case error_kind::unsupported: return "unsupported";
    case error_kind::io: return "io";
  }
  return "unknown";
}

class error : public std::runtime_error {
 public:
  error(error_kind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + " error: " + what), kind_(kind) {}

  error_kind kind() const noexcept { return kind_; }

 private:
  error_kind kind_;
};

// Numeric failure that records the tolerance actually reached.
class numeric_error : public error {
 public:
  numeric_error(const std::string& what, double achieved)
      : error(error_kind::numeric, what + " (achieved tolerance " + format(achieved) + ")"),
        achieved_(achieved) {}

  double achieved_tolerance() const noexcept { return achieved_; }

 private:
  static std::string format(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
  }
  double achieved_;
};

[[noreturn]] inline void fail(error_kind kind, const std::string& what) { throw error(kind, what); }

inline void require(bool cond, error_kind kind, const std::string& what) {
  if (!cond) fail(kind, what);
}

}  // namespace subweibull
