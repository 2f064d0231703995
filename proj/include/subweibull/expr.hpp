// Copyright 2026 The subweibull Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "subweibull/error.hpp"

namespace subweibull {

// Exponent of a regime-wise bound: nested max/min over labelled monomials
// c * t^p, evaluated in log space. Ties resolve to the earliest child.
class Expr {
 public:
  enum class op { term, max, min };

  struct value {
    double log_value;
    std::string label;
  };

  static Expr term(std::string label, double log_coef, double power) {
    Expr e;
    e.op_ = op::term;
    e.label_ = std::move(label);
    e.log_coef_ = log_coef;
    e.power_ = power;
    return e;
  }
  static Expr max(std::vector<Expr> kids) { return node(op::max, std::move(kids)); }
  static Expr min(std::vector<Expr> kids) { return node(op::min, std::move(kids)); }

  op kind() const { return op_; }
  double log_coef() const { return log_coef_; }
  double power() const { return power_; }
  const std::string& label() const { return label_; }
  const std::vector<Expr>& children() const { return kids_; }

  // log of the exponent at t > 0 together with the active leaf label.
  value eval(double t) const {
    require(t > 0.0, error_kind::domain, "exponent evaluated at t <= 0");
    return eval_log(std::log(t));
  }

  value eval_log(double log_t) const {
    if (op_ == op::term) return {log_coef_ + power_ * log_t, label_};
    value best = kids_.front().eval_log(log_t);
    for (std::size_t i = 1; i < kids_.size(); ++i) {
      value v = kids_[i].eval_log(log_t);
      if (op_ == op::max ? v.log_value > best.log_value : v.log_value < best.log_value) best = std::move(v);
    }
    return best;
  }

  void leaves(std::vector<const Expr*>& out) const {
    if (op_ == op::term) {
      out.push_back(this);
      return;
    }
    for (const auto& k : kids_) k.leaves(out);
  }

  // Values of t in (lo, hi) where the active label changes. Candidates are the
  // closed-form crossovers of every pair of monomials.
  std::vector<double> breakpoints(double lo = 0.0, double hi = std::numeric_limits<double>::infinity()) const {
    std::vector<const Expr*> ls;
    leaves(ls);
    std::vector<double> cand;
    for (std::size_t i = 0; i < ls.size(); ++i)
      for (std::size_t j = i + 1; j < ls.size(); ++j) {
        const double dp = ls[i]->power_ - ls[j]->power_;
        if (dp == 0.0 || !std::isfinite(ls[i]->log_coef_) || !std::isfinite(ls[j]->log_coef_)) continue;
        const double lt = (ls[j]->log_coef_ - ls[i]->log_coef_) / dp;
        const double t = std::exp(lt);
        if (t > lo && t < hi && std::isfinite(t)) cand.push_back(t);
      }
    std::sort(cand.begin(), cand.end());
    std::vector<double> out;
    for (double t : cand) {
      if (!out.empty() && std::abs(t - out.back()) <= 1e-12 * t) continue;
      const double lt = std::log(t);
      if (eval_log(lt - 1e-9).label != eval_log(lt + 1e-9).label) out.push_back(t);
    }
    return out;
  }

 private:
  static Expr node(op o, std::vector<Expr> kids) {
    require(!kids.empty(), error_kind::input, "empty max/min node");
    Expr e;
    e.op_ = o;
    e.kids_ = std::move(kids);
    return e;
  }

  op op_ = op::term;
  std::string label_;
  double log_coef_ = 0.0;
  double power_ = 0.0;
  std::vector<Expr> kids_;
};

}  // namespace subweibull
