#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <variant>

#include "opineq/hermitian.hpp"

namespace opineq {

enum class Status { Pass, Fail, NotApplicable };

inline const char* to_string(Status s) {
  switch (s) {
    case Status::Pass: return "pass";
    case Status::Fail: return "fail";
    case Status::NotApplicable: return "not_applicable";
  }
  return "";
}

using ParamValue = std::variant<std::int64_t, double, std::string>;
using Params = std::map<std::string, ParamValue>;

/// Outcome of one inequality verification. For norm checks the margin is
/// rhs - lhs; for Loewner checks it is lambda_min(rhs - lhs) and lhs/rhs are
/// only set when the operators are 1x1. holds <=> margin >= -allowance.
struct CheckResult {
  std::string checkId;
  Params params;
  std::optional<double> lhs;
  std::optional<double> rhs;
  double margin = 0.0;
  double allowance = 0.0;
  double scale = 0.0;
  std::optional<double> ratio;
  std::optional<bool> holds;
  Status status = Status::NotApplicable;
  std::optional<double> witness;
  std::string notes;
};

inline void set_verdict(CheckResult& r) {
  const bool ok = r.margin >= -r.allowance;
  r.holds = ok;
  r.status = ok ? Status::Pass : Status::Fail;
}

/// Verifies lhs <= rhs between real numbers.
inline CheckResult norm_check(std::string id, Params params, double lhs, double rhs, const TolerancePolicy& tol) {
  CheckResult r;
  r.checkId = std::move(id);
  r.params = std::move(params);
  r.lhs = lhs;
  r.rhs = rhs;
  r.margin = rhs - lhs;
  r.scale = std::max(std::abs(lhs), std::abs(rhs));
  r.allowance = tol.allowance(r.scale);
  if (rhs != 0.0) r.ratio = lhs / rhs;
  set_verdict(r);
  if (!std::isfinite(lhs) || !std::isfinite(rhs)) {
    r.holds = false;
    r.status = Status::Fail;
    r.notes = "non-finite side";
  }
  return r;
}

/// Verifies X <= Y in the Loewner order.
inline CheckResult loewner_check(std::string id, Params params, const HermitianMatrix& x, const HermitianMatrix& y,
                                 const TolerancePolicy& tol) {
  const LoewnerResult lr = loewner_compare(x, y, tol);
  CheckResult r;
  r.checkId = std::move(id);
  r.params = std::move(params);
  if (x.dim() == 1) {
    r.lhs = x(0, 0).real();
    r.rhs = y(0, 0).real();
  }
  r.margin = lr.margin;
  r.scale = lr.scale;
  r.allowance = lr.allowance;
  set_verdict(r);
  return r;
}

inline CheckResult not_applicable(std::string id, Params params, double witness, std::string notes) {
  CheckResult r;
  r.checkId = std::move(id);
  r.params = std::move(params);
  r.status = Status::NotApplicable;
  r.witness = witness;
  r.notes = std::move(notes);
  return r;
}

inline CheckResult not_applicable(std::string id, Params params, const Error& e) {
  return not_applicable(std::move(id), std::move(params), e.witness().value_or(NAN), e.what());
}

}  // namespace opineq
