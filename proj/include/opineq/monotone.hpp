#pragma once

// Fixed catalog of operator monotone functions on (0, inf).

#include <cmath>
#include <string>
#include <string_view>

#include "opineq/format.hpp"
#include "opineq/hermitian.hpp"

namespace opineq {

enum class MonotoneKind {
  Pow,        // t^r, 0 < r <= 1
  Moebius,    // t / (t + c), c > 0
  Log1p,      // log(1 + t)
  InvPow,     // t^{-r}, 0 < r <= 1        (decreasing)
  Resolvent,  // 1 / (t + c), c > 0        (decreasing)
};

struct MonotoneFunction {
  MonotoneKind kind = MonotoneKind::Pow;
  double param = 0.5;

  static MonotoneFunction pow(double r) { return make(MonotoneKind::Pow, r, r > 0.0 && r <= 1.0); }
  static MonotoneFunction moebius(double c) { return make(MonotoneKind::Moebius, c, c > 0.0); }
  static MonotoneFunction log1p() { return {MonotoneKind::Log1p, 0.0}; }
  static MonotoneFunction invpow(double r) { return make(MonotoneKind::InvPow, r, r > 0.0 && r <= 1.0); }
  static MonotoneFunction resolvent(double c) { return make(MonotoneKind::Resolvent, c, c > 0.0); }

  bool increasing() const {
    return kind == MonotoneKind::Pow || kind == MonotoneKind::Moebius || kind == MonotoneKind::Log1p;
  }

  double operator()(double t) const {
    switch (kind) {
      case MonotoneKind::Pow: return std::pow(t, param);
      case MonotoneKind::Moebius: return t / (t + param);
      case MonotoneKind::Log1p: return std::log1p(t);
      case MonotoneKind::InvPow: return std::pow(t, -param);
      case MonotoneKind::Resolvent: return 1.0 / (t + param);
    }
    return NAN;
  }

  /// f(A) for A with spectrum in (0, inf).
  HermitianMatrix apply(const HermitianMatrix& a) const {
    return apply_scalar_function(a, *this, Interval::positive());
  }

  std::string to_string() const {
    switch (kind) {
      case MonotoneKind::Pow: return "pow:" + format_double(param);
      case MonotoneKind::Moebius: return "moebius:" + format_double(param);
      case MonotoneKind::Log1p: return "log1p";
      case MonotoneKind::InvPow: return "invpow:" + format_double(param);
      case MonotoneKind::Resolvent: return "resolvent:" + format_double(param);
    }
    return {};
  }

  friend bool operator==(const MonotoneFunction&, const MonotoneFunction&) = default;

 private:
  static MonotoneFunction make(MonotoneKind k, double p, bool ok) {
    if (!ok) throw ConfigParse("parameter " + format_double(p) + " outside the catalog range");
    return {k, p};
  }
};

inline MonotoneFunction parse_monotone(std::string_view text) {
  if (text == "log1p") return MonotoneFunction::log1p();
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) throw ConfigParse("unknown function '" + std::string(text) + "'");
  const std::string_view name = text.substr(0, colon);
  const double p = parse_double(text.substr(colon + 1));
  if (name == "pow") return MonotoneFunction::pow(p);
  if (name == "moebius") return MonotoneFunction::moebius(p);
  if (name == "invpow") return MonotoneFunction::invpow(p);
  if (name == "resolvent") return MonotoneFunction::resolvent(p);
  throw ConfigParse("unknown function '" + std::string(text) + "'");
}

}  // namespace opineq
