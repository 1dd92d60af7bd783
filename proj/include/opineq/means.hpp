#pragma once

// Weighted Kubo-Ando operator means A s_v B = A^{1/2} f(A^{-1/2} B A^{-1/2}) A^{1/2}
// for the arithmetic, geometric, harmonic and power families.

#include <cmath>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "opineq/format.hpp"
#include "opineq/hermitian.hpp"

namespace opineq {

enum class MeanKind { Arithmetic, Geometric, Harmonic, Power };

struct MeanDescriptor {
  MeanKind kind = MeanKind::Geometric;
  double v = 0.5;
  double r = 0.0;  // exponent of the power family only

  static MeanDescriptor arithmetic(double v) { return {MeanKind::Arithmetic, v, 1.0}; }
  static MeanDescriptor geometric(double v) { return {MeanKind::Geometric, v, 0.0}; }
  static MeanDescriptor harmonic(double v) { return {MeanKind::Harmonic, v, -1.0}; }
  static MeanDescriptor power(double r, double v) {
    if (!(r >= -1.0 && r <= 1.0) || r == 0.0)
      throw DomainViolation("power mean exponent must lie in [-1,1] \\ {0}", r);
    return {MeanKind::Power, v, r};
  }

  MeanDescriptor with_weight(double w) const {
    MeanDescriptor m = *this;
    m.v = w;
    return m;
  }

  bool weight_in_unit_interval() const { return v >= 0.0 && v <= 1.0; }

  /// "arithmetic:v=0.3", "power:r=-0.5,v=0.25".
  std::string to_string() const {
    switch (kind) {
      case MeanKind::Arithmetic: return "arithmetic:v=" + format_double(v);
      case MeanKind::Geometric: return "geometric:v=" + format_double(v);
      case MeanKind::Harmonic: return "harmonic:v=" + format_double(v);
      case MeanKind::Power: return "power:r=" + format_double(r) + ",v=" + format_double(v);
    }
    return {};
  }

  /// Kind without the weight: "geometric", "power:r=0.5".
  std::string kind_string() const {
    switch (kind) {
      case MeanKind::Arithmetic: return "arithmetic";
      case MeanKind::Geometric: return "geometric";
      case MeanKind::Harmonic: return "harmonic";
      case MeanKind::Power: return "power:r=" + format_double(r);
    }
    return {};
  }

  friend bool operator==(const MeanDescriptor&, const MeanDescriptor&) = default;
};

/// Inverse of MeanDescriptor::to_string. The weight may be omitted
/// ("geometric", "power:r=0.5"), in which case it defaults to 1/2; suite
/// runs re-weight catalog means from their v grid anyway.
inline MeanDescriptor parse_mean(std::string_view text) {
  const auto colon = text.find(':');
  const std::string_view name = text.substr(0, colon);
  double v = 0.5;
  double r = 0.0;
  bool haveR = false;
  if (colon != std::string_view::npos) {
    std::string_view rest = text.substr(colon + 1);
    while (!rest.empty()) {
      const auto comma = rest.find(',');
      const std::string_view item = rest.substr(0, comma);
      const auto eq = item.find('=');
      if (eq == std::string_view::npos) throw ConfigParse("bad mean parameter '" + std::string(item) + "'");
      const std::string_view key = item.substr(0, eq);
      const double value = parse_double(item.substr(eq + 1));
      if (key == "v") {
        v = value;
      } else if (key == "r") {
        r = value;
        haveR = true;
      } else {
        throw ConfigParse("unknown mean parameter '" + std::string(key) + "'");
      }
      if (comma == std::string_view::npos) break;
      rest = rest.substr(comma + 1);
    }
  }
  if (name == "arithmetic" || name == "arith") return MeanDescriptor::arithmetic(v);
  if (name == "geometric" || name == "geo") return MeanDescriptor::geometric(v);
  if (name == "harmonic" || name == "harm") return MeanDescriptor::harmonic(v);
  if (name == "power") {
    if (!haveR) throw ConfigParse("power mean needs r=...");
    if (!(r >= -1.0 && r <= 1.0) || r == 0.0) throw ConfigParse("power mean exponent must lie in [-1,1] \\ {0}");
    return MeanDescriptor::power(r, v);
  }
  throw ConfigParse("unknown mean '" + std::string(text) + "'");
}

/// Representing function of the mean at t > 0.
inline double rep_value(const MeanDescriptor& mean, double t) {
  if (!(t > 0.0)) throw DomainViolation("representing function needs t > 0", t);
  const double v = mean.v;
  switch (mean.kind) {
    case MeanKind::Arithmetic: return (1.0 - v) + v * t;
    case MeanKind::Geometric: return std::pow(t, v);
    case MeanKind::Harmonic: {
      const double e = (1.0 - v) + v / t;
      if (!(e > 0.0)) {
        std::ostringstream os;
        os << "harmonic mean undefined: (1-v)+v/t = " << e << " at t=" << t << ", v=" << v;
        throw DomainViolation(os.str(), e);
      }
      return 1.0 / e;
    }
    case MeanKind::Power: {
      const double e = (1.0 - v) + v * std::pow(t, mean.r);
      if (!(e > 0.0)) {
        std::ostringstream os;
        os << "power mean undefined: (1-v)+v*t^r = " << e << " at t=" << t << ", v=" << v;
        throw DomainViolation(os.str(), e);
      }
      return std::pow(e, 1.0 / mean.r);
    }
  }
  return 0.0;
}

/// a s_v b for positive scalars.
inline double scalar_mean(double a, double b, const MeanDescriptor& mean) {
  if (!(a > 0.0)) throw DomainViolation("scalar mean needs a > 0", a);
  return a * rep_value(mean, b / a);
}

/// (1-v)A + vB for arbitrary Hermitian A, B.
inline HermitianMatrix arithmetic_combination(const HermitianMatrix& a, const HermitianMatrix& b, double v) {
  return (1.0 - v) * a + v * b;
}

inline HermitianMatrix evaluate_mean(const HermitianMatrix& a, const HermitianMatrix& b, const MeanDescriptor& mean,
                                     const TolerancePolicy& tol = {}) {
  if (mean.kind == MeanKind::Arithmetic) {
    require_positive_definite(eigh(a), tol, "A");
    require_positive_definite(eigh(b), tol, "B");
    return arithmetic_combination(a, b, mean.v);
  }
  return mean_conjugation(a, b, [&mean](double t) { return rep_value(mean, t); }, tol);
}

/// rep(1 + d) - 1 without cancellation for small d.
inline double rep_value_minus_one(const MeanDescriptor& mean, double d) {
  rep_value(mean, 1.0 + d);  // domain checks
  const double v = mean.v;
  switch (mean.kind) {
    case MeanKind::Arithmetic: return v * d;
    case MeanKind::Geometric: return std::expm1(v * std::log1p(d));
    case MeanKind::Harmonic: return v * d / (1.0 + (1.0 - v) * d);
    case MeanKind::Power: return std::expm1(std::log1p(v * std::expm1(mean.r * std::log1p(d))) / mean.r);
  }
  return 0.0;
}

/// (e^{pA} s e^{pB})^{1/p}. Near p = 0 the mean is I + O(p) and the 1/p-th
/// power magnifies any rounding in it by 1/p, so everything is carried as a
/// deviation from I:
///   C - I = e^{-pA/2} (expm1(pB) - expm1(pA)) e^{-pA/2}
///   X - I = e^{pA/2} (f(C) - I) e^{pA/2} + expm1(pA)
///   X^{1/p} = exp(log1p(X - I) / p)
inline HermitianMatrix exp_mean_root(const HermitianMatrix& a, const HermitianMatrix& b, const MeanDescriptor& mean,
                                     double p) {
  HermitianMatrix::check_same(a, b);
  if (!(p > 0.0)) throw DomainViolation("exponent p must be > 0", p);
  const SpectralDecomposition sa = eigh(a);
  const RVector pa = p * sa.eigenvalues;
  const CMatrix& u = sa.eigenvectors;
  const CMatrix half = u * (0.5 * pa).array().exp().matrix().asDiagonal() * u.adjoint();
  const CMatrix minusHalf = u * (-0.5 * pa).array().exp().matrix().asDiagonal() * u.adjoint();
  const HermitianMatrix em1a = sa.rebuild(pa.unaryExpr([](double x) { return std::expm1(x); }));
  const HermitianMatrix em1b = apply_scalar_function(b, [p](double x) { return std::expm1(p * x); });

  const HermitianMatrix cm1 = HermitianMatrix::symmetrized(minusHalf * (em1b - em1a).matrix() * minusHalf);
  const HermitianMatrix fm1 = apply_scalar_function(
      cm1, [&mean](double d) { return rep_value_minus_one(mean, d); }, Interval{-1.0, INFINITY, true, true});
  const HermitianMatrix xm1 = HermitianMatrix::symmetrized(half * fm1.matrix() * half) + em1a;
  return apply_scalar_function(
      xm1, [p](double d) { return std::exp(std::log1p(d) / p); }, Interval{-1.0, INFINITY, true, true});
}

/// tau* with A tau* B = (A^{-1} tau B^{-1})^{-1}.
inline MeanDescriptor adjoint_mean(const MeanDescriptor& mean) {
  switch (mean.kind) {
    case MeanKind::Arithmetic: return MeanDescriptor::harmonic(mean.v);
    case MeanKind::Harmonic: return MeanDescriptor::arithmetic(mean.v);
    case MeanKind::Geometric: return mean;
    case MeanKind::Power: return MeanDescriptor::power(-mean.r, mean.v);
  }
  return mean;
}

/// 41 log-spaced points on [1e-3, 1e3].
inline std::vector<double> default_betweenness_grid() {
  std::vector<double> grid;
  grid.reserve(41);
  for (int i = 0; i <= 40; ++i) grid.push_back(std::pow(10.0, -3.0 + 6.0 * i / 40.0));
  return grid;
}

/// True iff harmonic(t) <= rep(t) <= arithmetic(t) at every grid point
/// (relative slack 1e-12 for rounding in pow).
inline bool verify_betweenness(const MeanDescriptor& mean, const std::vector<double>& grid = default_betweenness_grid()) {
  if (grid.empty()) return false;
  try {
    const MeanDescriptor lower = MeanDescriptor::harmonic(mean.v);
    const MeanDescriptor upper = MeanDescriptor::arithmetic(mean.v);
    for (double t : grid) {
      if (!(t > 0.0)) return false;
      const double f = rep_value(mean, t);
      const double slack = 1e-12 * std::abs(f);
      if (rep_value(lower, t) > f + slack || f > rep_value(upper, t) + slack) return false;
    }
  } catch (const DomainViolation&) {
    return false;
  }
  return true;
}

}  // namespace opineq
