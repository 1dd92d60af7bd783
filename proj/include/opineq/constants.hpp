#pragma once

// Scalar constants of the Ando-Hiai and Golden-Thompson type inequalities:
// generalized Kantorovich constant, mean ratios, xi/psi, L(m,M), gamma_p,
// secant coefficients and the Mond-Pecaric constant K(m,M,f).

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>
#include <string>
#include <utility>

#include "opineq/errors.hpp"

namespace opineq {

using ScalarFunction = std::function<double(double)>;

/// 0 < m < M.
struct SandwichBounds {
  double m = 0.5;
  double M = 2.0;

  SandwichBounds() = default;
  SandwichBounds(double lo, double hi) : m(lo), M(hi) {
    if (!(lo > 0.0 && lo < hi && std::isfinite(hi)))
      throw DomainViolation("sandwich bounds need 0 < m < M", lo);
  }

  double ratio() const { return M / m; }
};

/// 0 < s <= t, for sA <= B <= tA.
struct RatioBounds {
  double s = 1.0;
  double t = 1.0;

  RatioBounds() = default;
  RatioBounds(double lo, double hi) : s(lo), t(hi) {
    if (!(lo > 0.0 && lo <= hi && std::isfinite(hi))) throw DomainViolation("ratio bounds need 0 < s <= t", lo);
  }
};

/// 0 < m2 <= m1 < M1 <= M2, for m2 I <= A <= m1 I < M1 I <= B <= M2 I.
struct FourPointBounds {
  double m2 = 0.5;
  double m1 = 1.0;
  double M1 = 2.0;
  double M2 = 4.0;

  FourPointBounds() = default;
  FourPointBounds(double a, double b, double c, double d) : m2(a), m1(b), M1(c), M2(d) {
    if (!(a > 0.0 && a <= b && b < c && c <= d && std::isfinite(d)))
      throw DomainViolation("four-point bounds need 0 < m2 <= m1 < M1 <= M2", a);
  }
};

struct SecantCoefficients {
  double a = 0.0;  // slope
  double b = 0.0;  // intercept
};

/// Generalized Kantorovich constant
///   K(h,v) = (h^v - h)/((v-1)(h-1)) * ((v-1)/v * (h^v-1)/(h^v-h))^v,
/// with the limit value 1 at v in {0, 1}.
inline double kantorovich_K(double h, double v) {
  if (!(h > 0.0) || h == 1.0 || !std::isfinite(h)) throw DomainViolation("K(h,v) needs h > 0, h != 1", h);
  if (v == 0.0 || v == 1.0) return 1.0;
  const double lh = std::log(h);
  // h^v - h = h (h^{v-1} - 1) and h^v - 1, both via expm1 to keep accuracy near v = 0, 1.
  const double hvMinusH = h * std::expm1((v - 1.0) * lh);
  const double hvMinusOne = std::expm1(v * lh);
  const double first = hvMinusH / ((v - 1.0) * (h - 1.0));
  const double base = (v - 1.0) / v * hvMinusOne / hvMinusH;
  if (!(base > 0.0) || !(first > 0.0)) {
    std::ostringstream os;
    os << "K(h,v) undefined at h=" << h << ", v=" << v;
    throw DomainViolation(os.str(), base);
  }
  return first * std::pow(base, v);
}

/// (m #_v M) / (m nabla_v M) = m (M/m)^v / ((1-v) m + v M).
inline double ratio_C(double m, double M, double v) {
  if (!(m > 0.0 && m < M)) throw DomainViolation("ratio_C needs 0 < m < M", m);
  const double den = (1.0 - v) * m + v * M;
  if (!(den > 0.0)) throw DomainViolation("ratio_C: m nabla_v M <= 0", den);
  return std::exp(std::log(m) + v * std::log(M / m) - std::log(den));
}

struct XiPsi {
  double xi = 1.0;
  double psi = 1.0;
};

/// xi = max{((1-v)+vs)/s^v, ((1-v)+vt)/t^v},
/// psi = max{s^v((1-v)+v/s), t^v((1-v)+v/t)}.
inline XiPsi xi_psi(const RatioBounds& rb, double v) {
  if (!(v >= 0.0 && v <= 1.0)) throw DomainViolation("xi_psi needs v in [0,1]", v);
  auto xiAt = [v](double x) { return ((1.0 - v) + v * x) / std::pow(x, v); };
  auto psiAt = [v](double x) { return std::pow(x, v) * ((1.0 - v) + v / x); };
  return {std::max(xiAt(rb.s), xiAt(rb.t)), std::max(psiAt(rb.s), psiAt(rb.t))};
}

/// L(m,M) = (m nabla_l M)(m #_u M) / ((m #_l M)(m !_u M)), l = min{v,1-v}, u = 1-l.
inline double L_constant(const SandwichBounds& sb, double v) {
  if (!(v >= 0.0 && v <= 1.0)) throw DomainViolation("L(m,M) needs v in [0,1]", v);
  const double lambda = std::min(v, 1.0 - v);
  const double mu = 1.0 - lambda;
  const double m = sb.m;
  const double M = sb.M;
  const double arith = (1.0 - lambda) * m + lambda * M;
  const double geoMu = m * std::pow(M / m, mu);
  const double geoLambda = m * std::pow(M / m, lambda);
  const double harmMu = 1.0 / ((1.0 - mu) / m + mu / M);
  return (arith * geoMu) / (geoLambda * harmMu);
}

/// L(e^{p lo}, e^{p hi}) for Hermitian spectra in [lo, hi]; lo may be <= 0.
inline double L_constant_exp(double lo, double hi, double p, double v) {
  if (!(p > 0.0)) throw DomainViolation("p must be positive", p);
  if (p * std::max(std::abs(lo), std::abs(hi)) > 700.0) throw OverflowGuard("p*|bound| exceeds 700", p);
  return L_constant(SandwichBounds(std::exp(p * lo), std::exp(p * hi)), v);
}

/// gamma_p = ratio_C(e^{p m2}, e^{p M2}, v), evaluated in log space:
/// log gamma = (v-1) p D - log(v - (v-1) e^{-p D}), D = M2 - m2.
inline double gamma_p(const FourPointBounds& fp, double p, double v) {
  if (!(p > 0.0)) throw DomainViolation("gamma_p needs p > 0", p);
  if (p * fp.M2 > 700.0) throw OverflowGuard("gamma_p requires p*M2 <= 700", p * fp.M2);
  const double d = fp.M2 - fp.m2;
  const double inner = v - (v - 1.0) * std::exp(-p * d);
  if (!(inner > 0.0)) throw DomainViolation("gamma_p: e^{p m2} nabla_v e^{p M2} <= 0", inner);
  return std::exp((v - 1.0) * p * d - std::log(inner));
}

inline SecantCoefficients secant_coeffs(const ScalarFunction& f, const SandwichBounds& sb) {
  const double fm = f(sb.m);
  const double fM = f(sb.M);
  if (!std::isfinite(fm) || !std::isfinite(fM)) throw DomainViolation("f not finite at interval ends", sb.m);
  return {(fM - fm) / (sb.M - sb.m), (sb.M * fm - sb.m * fM) / (sb.M - sb.m)};
}

/// max over [m,M] of (a_f t + b_f) / f(t): 1024-point grid, then
/// golden-section refinement of the best bracket down to width 1e-12.
inline double K_mond_pecaric(const ScalarFunction& f, const SandwichBounds& sb) {
  const SecantCoefficients sc = secant_coeffs(f, sb);
  auto ratio = [&](double t) { return (sc.a * t + sc.b) / f(t); };

  constexpr int kGrid = 1024;
  const double step = (sb.M - sb.m) / (kGrid - 1);
  double best = -INFINITY;
  int bestIdx = 0;
  for (int i = 0; i < kGrid; ++i) {
    const double t = (i == kGrid - 1) ? sb.M : sb.m + i * step;
    const double ft = f(t);
    if (!(ft > 0.0) || !std::isfinite(ft)) throw DomainViolation("K(m,M,f) needs f > 0 on [m,M]", ft);
    const double r = (sc.a * t + sc.b) / ft;
    if (r > best) {
      best = r;
      bestIdx = i;
    }
  }

  double lo = sb.m + std::max(bestIdx - 1, 0) * step;
  double hi = std::min(sb.m + (bestIdx + 1) * step, sb.M);
  const double invPhi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = hi - invPhi * (hi - lo);
  double x2 = lo + invPhi * (hi - lo);
  double f1 = ratio(x1);
  double f2 = ratio(x2);
  for (int it = 0; it < 200 && hi - lo > 1e-12 * std::max(1.0, std::abs(hi)); ++it) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + invPhi * (hi - lo);
      f2 = ratio(x2);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - invPhi * (hi - lo);
      f1 = ratio(x1);
    }
  }
  return std::max({best, f1, f2, ratio(0.5 * (lo + hi))});
}

}  // namespace opineq
