#pragma once

// One check per inequality. Each check evaluates both sides on concrete
// matrices and returns CheckResults with explicit margins; preconditions that
// fail on the data (a mean undefined on the spectrum, Ky Fan k > dim, ...)
// become NotApplicable with the offending scalar as witness.

#include <array>
#include <cmath>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "opineq/check_result.hpp"
#include "opineq/constants.hpp"
#include "opineq/maps.hpp"
#include "opineq/means.hpp"
#include "opineq/monotone.hpp"
#include "opineq/norms.hpp"

namespace opineq {

inline constexpr std::array<std::string_view, 16> kCheckIds = {
    "gt-trace", "gt-classic", "ah-classic", "lemma21", "cor22",   "thm23-ah", "thm23-gt", "ineq6",
    "lemma31",  "lemma32",    "cor33",      "thm34",   "cor35",   "limit36",  "polya-e",  "prop37"};

inline bool is_check_id(std::string_view id) {
  for (auto k : kCheckIds)
    if (k == id) return true;
  return false;
}

namespace detail {

template <class F>
CheckResult guarded(const char* id, const Params& params, F&& body) {
  try {
    return body();
  } catch (const DomainViolation& e) {
    return not_applicable(id, params, e);
  } catch (const KExceedsDim& e) {
    return not_applicable(id, params, e);
  }
}

/// Runs a multi-part check; a precondition failure in shared work marks every part NotApplicable.
template <class F>
std::vector<CheckResult> guarded_parts(const char* id, const Params& params, std::initializer_list<const char*> parts,
                                       F&& body) {
  try {
    return body();
  } catch (const Error& e) {
    if (e.code() != ErrorCode::DomainViolation && e.code() != ErrorCode::KExceedsDim) throw;
    std::vector<CheckResult> out;
    for (const char* part : parts) {
      Params p = params;
      p["part"] = std::string(part);
      out.push_back(not_applicable(id, std::move(p), e));
    }
    return out;
  }
}

inline Params with_part(Params p, const char* part) {
  p["part"] = std::string(part);
  return p;
}

inline std::int64_t dim_of(const HermitianMatrix& a) { return static_cast<std::int64_t>(a.dim()); }

/// Precondition: spectrum of `a` inside [lo, hi] up to 1e-10 relative slack.
inline void require_spectrum_in(const HermitianMatrix& a, double lo, double hi, const char* what) {
  const auto [mn, mx] = spectrum_bounds(a);
  const double slack = 1e-10 * std::max({1.0, std::abs(lo), std::abs(hi)});
  if (mn < lo - slack) throw DomainViolation(std::string(what) + " has eigenvalue below the stated bound", mn);
  if (mx > hi + slack) throw DomainViolation(std::string(what) + " has eigenvalue above the stated bound", mx);
}

/// Precondition: sA <= B <= tA up to 1e-10 relative slack.
inline void require_ratio(const HermitianMatrix& a, const HermitianMatrix& b, const RatioBounds& rb) {
  const TolerancePolicy tight{1e-10, 1e-10};
  const LoewnerResult lower = loewner_compare(rb.s * a, b, tight);
  if (!lower.holds) throw DomainViolation("sA <= B violated", lower.margin);
  const LoewnerResult upper = loewner_compare(b, rb.t * a, tight);
  if (!upper.holds) throw DomainViolation("B <= tA violated", upper.margin);
}

inline void require_weight_unit(double v) {
  if (!(v >= 0.0 && v <= 1.0)) throw DomainViolation("weight v must lie in [0,1]", v);
}

inline void require_weight_at_least_one(double v) {
  if (!(v >= 1.0)) throw DomainViolation("weight v must be >= 1", v);
}

inline void require_p_above(double p, double bound) {
  if (!(p > bound)) throw DomainViolation("exponent p out of range", p);
}

inline void require_increasing(const MonotoneFunction& f) {
  if (!f.increasing()) throw ConfigParse(f.to_string() + " is not an increasing catalog function");
}

inline void require_decreasing(const MonotoneFunction& f) {
  if (f.increasing()) throw ConfigParse(f.to_string() + " is not a decreasing catalog function");
}

inline void exp_guard(const HermitianMatrix& a, const HermitianMatrix& b, double p) {
  const double s = p * std::max(spectral_norm(a), spectral_norm(b));
  if (s > 100.0) throw OverflowGuard("p * ||.|| exceeds 100", s);
}

inline Params four_point_params(const FourPointBounds& fp) {
  return {{"m2", fp.m2}, {"m1", fp.m1}, {"M1", fp.M1}, {"M2", fp.M2}};
}

inline Params sandwich_params(const SandwichBounds& sb) { return {{"m", sb.m}, {"M", sb.M}}; }

inline Params ratio_params(const RatioBounds& rb) { return {{"s", rb.s}, {"t", rb.t}}; }

inline Params merge(Params a, const Params& b) {
  a.insert(b.begin(), b.end());
  return a;
}

}  // namespace detail

/// tr e^{A+B} <= tr(e^A e^B).
inline CheckResult check_gt_trace(const HermitianMatrix& a, const HermitianMatrix& b, const TolerancePolicy& tol = {}) {
  HermitianMatrix::check_same(a, b);
  const double size = spectral_norm(a) + spectral_norm(b);
  if (size > 100.0) throw OverflowGuard("||A|| + ||B|| exceeds 100", size);
  const double lhs = trace_of(expm(a + b));
  const double rhs = trace_of_product(expm(a), expm(b));
  return norm_check("gt-trace", {{"dim", detail::dim_of(a)}}, lhs, rhs, tol);
}

/// ||(e^{pA} #_v e^{pB})^{1/p}|| <= ||e^{A nabla_v B}||, v in [0,1], p > 0.
inline CheckResult check_gt_classic(const HermitianMatrix& a, const HermitianMatrix& b, double v, double p,
                                    const NormDescriptor& norm, const TolerancePolicy& tol = {}) {
  const Params params{{"dim", detail::dim_of(a)}, {"v", v}, {"p", p}, {"norm", norm.to_string()}};
  return detail::guarded("gt-classic", params, [&] {
    detail::require_weight_unit(v);
    detail::require_p_above(p, 0.0);
    detail::exp_guard(a, b, p);
    const double lhs = norm_value(exp_mean_root(a, b, MeanDescriptor::geometric(v), p), norm);
    const double rhs = norm_value(expm(arithmetic_combination(a, b, v)), norm);
    return norm_check("gt-classic", params, lhs, rhs, tol);
  });
}

/// Ando-Hiai ||A^p #_v B^p|| <= ||A #_v B||^p and the reverse
/// ||A #_v B||^p <= ||A^p #_v B^p|| / K(h^{2p}, v), h = M/m, p > 1.
inline std::vector<CheckResult> check_andohiai_classic(const HermitianMatrix& a, const HermitianMatrix& b,
                                                       const SandwichBounds& sb, double v, double p,
                                                       const NormDescriptor& norm, const TolerancePolicy& tol = {}) {
  const Params params = detail::merge(
      {{"dim", detail::dim_of(a)}, {"v", v}, {"p", p}, {"norm", norm.to_string()}}, detail::sandwich_params(sb));
  return detail::guarded_parts("ah-classic", params, {"eq8", "eq11"}, [&] {
    detail::require_weight_unit(v);
    detail::require_p_above(p, 1.0);
    detail::require_spectrum_in(a, sb.m, sb.M, "A");
    detail::require_spectrum_in(b, sb.m, sb.M, "B");
    const MeanDescriptor geo = MeanDescriptor::geometric(v);
    const double k = kantorovich_K(std::pow(sb.ratio(), 2.0 * p), v);
    const double base = norm_value(evaluate_mean(a, b, geo, tol), norm);
    const double powered = norm_value(evaluate_mean(powm(a, p), powm(b, p), geo, tol), norm);
    Params withK = params;
    withK["K"] = k;
    return std::vector<CheckResult>{
        norm_check("ah-classic", detail::with_part(withK, "eq8"), powered, std::pow(base, p), tol),
        norm_check("ah-classic", detail::with_part(withK, "eq11"), std::pow(base, p), powered / k, tol)};
  });
}

/// Ratio bounds between nabla_v, #_v and !_v for v outside [0,1] under
/// m2 I <= A <= m1 I < M1 I <= B <= M2 I. Four Loewner checks:
/// geo-lower, geo-upper, harm-lower, harm-upper.
inline std::vector<CheckResult> check_lemma21(const HermitianMatrix& a, const HermitianMatrix& b,
                                              const FourPointBounds& fp, double v, const TolerancePolicy& tol = {}) {
  const Params params = detail::merge({{"dim", detail::dim_of(a)}, {"v", v}}, detail::four_point_params(fp));
  auto preconditions = [&] {
    if (v >= 0.0 && v <= 1.0) throw DomainViolation("lemma21 needs v outside [0,1]", v);
    detail::require_spectrum_in(a, fp.m2, fp.m1, "A");
    detail::require_spectrum_in(b, fp.M1, fp.M2, "B");
  };

  std::vector<CheckResult> out = detail::guarded_parts("lemma21", params, {"geo-lower", "geo-upper"}, [&] {
    preconditions();
    const double c1 = ratio_C(fp.m1, fp.M1, v);
    const double c2 = ratio_C(fp.m2, fp.M2, v);
    const HermitianMatrix geo = evaluate_mean(a, b, MeanDescriptor::geometric(v), tol);
    const HermitianMatrix arith = arithmetic_combination(a, b, v);
    Params withC = params;
    withC["c1"] = c1;
    withC["c2"] = c2;
    return std::vector<CheckResult>{
        loewner_check("lemma21", detail::with_part(withC, "geo-lower"), c1 * arith, geo, tol),
        loewner_check("lemma21", detail::with_part(withC, "geo-upper"), geo, c2 * arith, tol)};
  });

  std::vector<CheckResult> harm = detail::guarded_parts("lemma21", params, {"harm-lower", "harm-upper"}, [&] {
    preconditions();
    // The harmonic representing function is worst at the largest ratio M2/m2.
    const double pre = (1.0 - v) + v * fp.m2 / fp.M2;
    if (!(pre > 0.0)) throw DomainViolation("m2 !_v M2 undefined: (1-v)+v*m2/M2 <= 0", pre);
    const MeanDescriptor h = MeanDescriptor::harmonic(v);
    const MeanDescriptor g = MeanDescriptor::geometric(v);
    const double d1 = scalar_mean(fp.m1, fp.M1, h) / scalar_mean(fp.m1, fp.M1, g);
    const double d2 = scalar_mean(fp.m2, fp.M2, h) / scalar_mean(fp.m2, fp.M2, g);
    const HermitianMatrix geo = evaluate_mean(a, b, g, tol);
    const HermitianMatrix har = evaluate_mean(a, b, h, tol);
    Params withD = params;
    withD["d1"] = d1;
    withD["d2"] = d2;
    return std::vector<CheckResult>{
        loewner_check("lemma21", detail::with_part(withD, "harm-lower"), d1 * geo, har, tol),
        loewner_check("lemma21", detail::with_part(withD, "harm-upper"), har, d2 * geo, tol)};
  });
  out.insert(out.end(), harm.begin(), harm.end());
  return out;
}

/// f(A #_v B) <= f(CA) #_v f(CB), C = (m2 #_v M2)/(m2 nabla_v M2), v >= 1.
inline CheckResult check_cor22(const HermitianMatrix& a, const HermitianMatrix& b, const FourPointBounds& fp,
                               double v, const MonotoneFunction& f, const TolerancePolicy& tol = {}) {
  detail::require_increasing(f);
  const Params params =
      detail::merge({{"dim", detail::dim_of(a)}, {"v", v}, {"f", f.to_string()}}, detail::four_point_params(fp));
  return detail::guarded("cor22", params, [&] {
    detail::require_weight_at_least_one(v);
    detail::require_spectrum_in(a, fp.m2, fp.m1, "A");
    detail::require_spectrum_in(b, fp.M1, fp.M2, "B");
    const MeanDescriptor geo = MeanDescriptor::geometric(v);
    const double c = ratio_C(fp.m2, fp.M2, v);
    const HermitianMatrix lhs = f.apply(evaluate_mean(a, b, geo, tol));
    const HermitianMatrix rhs = evaluate_mean(f.apply(c * a), f.apply(c * b), geo, tol);
    Params withC = params;
    withC["C"] = c;
    return loewner_check("cor22", std::move(withC), lhs, rhs, tol);
  });
}

/// ||A^p #_v B^p|| <= C_p ||A #_v B||^p, C_p = ratio_C(m2^p, M2^p, v), v >= 1, p > 1.
inline CheckResult check_thm23_ah(const HermitianMatrix& a, const HermitianMatrix& b, const FourPointBounds& fp,
                                  double v, double p, const NormDescriptor& norm, const TolerancePolicy& tol = {}) {
  const Params params = detail::merge(
      {{"dim", detail::dim_of(a)}, {"v", v}, {"p", p}, {"norm", norm.to_string()}}, detail::four_point_params(fp));
  return detail::guarded("thm23-ah", params, [&] {
    detail::require_weight_at_least_one(v);
    detail::require_p_above(p, 1.0);
    detail::require_spectrum_in(a, fp.m2, fp.m1, "A");
    detail::require_spectrum_in(b, fp.M1, fp.M2, "B");
    const MeanDescriptor geo = MeanDescriptor::geometric(v);
    const double cp = ratio_C(std::pow(fp.m2, p), std::pow(fp.M2, p), v);
    const double lhs = norm_value(evaluate_mean(powm(a, p), powm(b, p), geo, tol), norm);
    const double rhs = cp * std::pow(norm_value(evaluate_mean(a, b, geo, tol), norm), p);
    Params withC = params;
    withC["Cp"] = cp;
    return norm_check("thm23-ah", std::move(withC), lhs, rhs, tol);
  });
}

/// ||(e^{pA} #_v e^{pB})^{1/p}|| <= gamma_p^{1/p} ||e^{A nabla_v B}||, v >= 1, p > 0,
/// for Hermitian A, B with spectra in [m2, m1] and [M1, M2].
inline CheckResult check_thm23_gt(const HermitianMatrix& a, const HermitianMatrix& b, const FourPointBounds& fp,
                                  double v, double p, const NormDescriptor& norm, const TolerancePolicy& tol = {}) {
  const Params params = detail::merge(
      {{"dim", detail::dim_of(a)}, {"v", v}, {"p", p}, {"norm", norm.to_string()}}, detail::four_point_params(fp));
  return detail::guarded("thm23-gt", params, [&] {
    detail::require_weight_at_least_one(v);
    detail::require_p_above(p, 0.0);
    detail::require_spectrum_in(a, fp.m2, fp.m1, "A");
    detail::require_spectrum_in(b, fp.M1, fp.M2, "B");
    detail::exp_guard(a, b, p);
    const double gamma = gamma_p(fp, p, v);
    const double lhs = norm_value(exp_mean_root(a, b, MeanDescriptor::geometric(v), p), norm);
    const double rhs = std::pow(gamma, 1.0 / p) * norm_value(expm(arithmetic_combination(a, b, v)), norm);
    Params withG = params;
    withG["gamma"] = gamma;
    return norm_check("thm23-gt", std::move(withG), lhs, rhs, tol);
  });
}

/// (1/xi) A nabla_v B <= A #_v B <= psi A !_v B under sA <= B <= tA, v in [0,1].
inline std::vector<CheckResult> check_ineq6(const HermitianMatrix& a, const HermitianMatrix& b, const RatioBounds& rb,
                                            double v, const TolerancePolicy& tol = {}) {
  const Params params = detail::merge({{"dim", detail::dim_of(a)}, {"v", v}}, detail::ratio_params(rb));
  return detail::guarded_parts("ineq6", params, {"lower", "upper"}, [&] {
    detail::require_weight_unit(v);
    detail::require_ratio(a, b, rb);
    const XiPsi xp = xi_psi(rb, v);
    const HermitianMatrix geo = evaluate_mean(a, b, MeanDescriptor::geometric(v), tol);
    const HermitianMatrix arith = evaluate_mean(a, b, MeanDescriptor::arithmetic(v), tol);
    const HermitianMatrix har = evaluate_mean(a, b, MeanDescriptor::harmonic(v), tol);
    Params withXi = params;
    withXi["xi"] = xp.xi;
    withXi["psi"] = xp.psi;
    return std::vector<CheckResult>{
        loewner_check("ineq6", detail::with_part(withXi, "lower"), (1.0 / xp.xi) * arith, geo, tol),
        loewner_check("ineq6", detail::with_part(withXi, "upper"), geo, xp.psi * har, tol)};
  });
}

/// f(A !_v B) <= f(A) !_v f(B) for increasing f; reversed for decreasing f.
inline CheckResult check_lemma31(const HermitianMatrix& a, const HermitianMatrix& b, double v,
                                 const MonotoneFunction& f, const TolerancePolicy& tol = {}) {
  const Params params{{"dim", detail::dim_of(a)},
                      {"v", v},
                      {"f", f.to_string()},
                      {"direction", std::string(f.increasing() ? "increasing" : "decreasing")}};
  return detail::guarded("lemma31", params, [&] {
    detail::require_weight_unit(v);
    const MeanDescriptor h = MeanDescriptor::harmonic(v);
    const HermitianMatrix outer = f.apply(evaluate_mean(a, b, h, tol));
    const HermitianMatrix inner = evaluate_mean(f.apply(a), f.apply(b), h, tol);
    return f.increasing() ? loewner_check("lemma31", params, outer, inner, tol)
                          : loewner_check("lemma31", params, inner, outer, tol);
  });
}

/// Under sA <= B <= tA, k = xi*psi:
///   eq01:  f(A) s_v f(B) <= f(k (A t_v B))
///   eq001: f((1/k) A s_v B) <= f(A) t_v f(B)
/// both reversed when f is decreasing.
inline std::vector<CheckResult> check_lemma32(const HermitianMatrix& a, const HermitianMatrix& b,
                                              const RatioBounds& rb, double v, const MonotoneFunction& f,
                                              const MeanDescriptor& sigma, const MeanDescriptor& tau,
                                              const TolerancePolicy& tol = {}) {
  const MeanDescriptor s = sigma.with_weight(v);
  const MeanDescriptor t = tau.with_weight(v);
  const Params params = detail::merge({{"dim", detail::dim_of(a)},
                                       {"v", v},
                                       {"f", f.to_string()},
                                       {"sigma", s.kind_string()},
                                       {"tau", t.kind_string()},
                                       {"direction", std::string(f.increasing() ? "increasing" : "decreasing")}},
                                      detail::ratio_params(rb));
  return detail::guarded_parts("lemma32", params, {"eq01", "eq001"}, [&] {
    detail::require_weight_unit(v);
    detail::require_ratio(a, b, rb);
    const XiPsi xp = xi_psi(rb, v);
    const double k = xp.xi * xp.psi;
    const HermitianMatrix fa = f.apply(a);
    const HermitianMatrix fb = f.apply(b);
    const HermitianMatrix lhs01 = evaluate_mean(fa, fb, s, tol);
    const HermitianMatrix rhs01 = f.apply(k * evaluate_mean(a, b, t, tol));
    const HermitianMatrix lhs001 = f.apply((1.0 / k) * evaluate_mean(a, b, s, tol));
    const HermitianMatrix rhs001 = evaluate_mean(fa, fb, t, tol);
    Params withK = params;
    withK["xipsi"] = k;
    if (f.increasing())
      return std::vector<CheckResult>{loewner_check("lemma32", detail::with_part(withK, "eq01"), lhs01, rhs01, tol),
                                      loewner_check("lemma32", detail::with_part(withK, "eq001"), lhs001, rhs001, tol)};
    return std::vector<CheckResult>{loewner_check("lemma32", detail::with_part(withK, "eq01"), rhs01, lhs01, tol),
                                    loewner_check("lemma32", detail::with_part(withK, "eq001"), rhs001, lhs001, tol)};
  });
}

/// Under mI <= A, B <= MI, L = L(m, M), f increasing:
///   eq02:  f(A) s_v f(B) <= f(L (A t_v B))
///   eq002: f((1/L)(A s_v B)) <= f(A) t_v f(B)
inline std::vector<CheckResult> check_cor33(const HermitianMatrix& a, const HermitianMatrix& b,
                                            const SandwichBounds& sb, double v, const MonotoneFunction& f,
                                            const MeanDescriptor& sigma, const MeanDescriptor& tau,
                                            const TolerancePolicy& tol = {}) {
  detail::require_increasing(f);
  const MeanDescriptor s = sigma.with_weight(v);
  const MeanDescriptor t = tau.with_weight(v);
  const Params params = detail::merge({{"dim", detail::dim_of(a)},
                                       {"v", v},
                                       {"f", f.to_string()},
                                       {"sigma", s.kind_string()},
                                       {"tau", t.kind_string()}},
                                      detail::sandwich_params(sb));
  return detail::guarded_parts("cor33", params, {"eq02", "eq002"}, [&] {
    detail::require_weight_unit(v);
    detail::require_spectrum_in(a, sb.m, sb.M, "A");
    detail::require_spectrum_in(b, sb.m, sb.M, "B");
    const double l = L_constant(sb, v);
    const HermitianMatrix fa = f.apply(a);
    const HermitianMatrix fb = f.apply(b);
    Params withL = params;
    withL["L"] = l;
    return std::vector<CheckResult>{
        loewner_check("cor33", detail::with_part(withL, "eq02"), evaluate_mean(fa, fb, s, tol),
                      f.apply(l * evaluate_mean(a, b, t, tol)), tol),
        loewner_check("cor33", detail::with_part(withL, "eq002"), f.apply((1.0 / l) * evaluate_mean(a, b, s, tol)),
                      evaluate_mean(fa, fb, t, tol), tol)};
  });
}

/// Under mI <= A, B <= MI, L = L(m^p, M^p), p > 1:
///   eq10: ||A s_v B||^p <= L ||A^p t_v B^p||
///   eq12: ||A^p s_v B^p|| <= L ||A t_v B||^p
inline std::vector<CheckResult> check_thm34(const HermitianMatrix& a, const HermitianMatrix& b,
                                            const SandwichBounds& sb, double v, double p,
                                            const MeanDescriptor& sigma, const MeanDescriptor& tau,
                                            const NormDescriptor& norm, const TolerancePolicy& tol = {}) {
  const MeanDescriptor s = sigma.with_weight(v);
  const MeanDescriptor t = tau.with_weight(v);
  const Params params = detail::merge({{"dim", detail::dim_of(a)},
                                       {"v", v},
                                       {"p", p},
                                       {"norm", norm.to_string()},
                                       {"sigma", s.kind_string()},
                                       {"tau", t.kind_string()}},
                                      detail::sandwich_params(sb));
  return detail::guarded_parts("thm34", params, {"eq10", "eq12"}, [&] {
    detail::require_weight_unit(v);
    detail::require_p_above(p, 1.0);
    detail::require_spectrum_in(a, sb.m, sb.M, "A");
    detail::require_spectrum_in(b, sb.m, sb.M, "B");
    const double l = L_constant(SandwichBounds(std::pow(sb.m, p), std::pow(sb.M, p)), v);
    const HermitianMatrix ap = powm(a, p);
    const HermitianMatrix bp = powm(b, p);
    Params withL = params;
    withL["L"] = l;
    return std::vector<CheckResult>{
        norm_check("thm34", detail::with_part(withL, "eq10"), std::pow(norm_value(evaluate_mean(a, b, s, tol), norm), p),
                   l * norm_value(evaluate_mean(ap, bp, t, tol), norm), tol),
        norm_check("thm34", detail::with_part(withL, "eq12"), norm_value(evaluate_mean(ap, bp, s, tol), norm),
                   l * std::pow(norm_value(evaluate_mean(a, b, t, tol), norm), p), tol)};
  });
}

/// For Hermitian A, B with spectra in [lo, hi], L = L(e^{p lo}, e^{p hi}):
///   upper: ||(e^{pA} s_v e^{pB})^{1/p}|| <= L^{1/p} ||e^{A nabla_v B}||
///   lower: ||e^{A nabla_v B}|| <= L^{1/p} ||(e^{pA} s_v e^{pB})^{1/p}||
inline std::vector<CheckResult> check_cor35(const HermitianMatrix& a, const HermitianMatrix& b, double lo, double hi,
                                            double v, double p, const MeanDescriptor& sigma,
                                            const NormDescriptor& norm, const TolerancePolicy& tol = {}) {
  const MeanDescriptor s = sigma.with_weight(v);
  const Params params{{"dim", detail::dim_of(a)}, {"v", v},  {"p", p}, {"norm", norm.to_string()},
                      {"sigma", s.kind_string()}, {"lo", lo}, {"hi", hi}};
  return detail::guarded_parts("cor35", params, {"upper", "lower"}, [&] {
    detail::require_weight_unit(v);
    detail::require_p_above(p, 0.0);
    detail::require_spectrum_in(a, lo, hi, "A");
    detail::require_spectrum_in(b, lo, hi, "B");
    detail::exp_guard(a, b, p);
    const double lp = std::pow(L_constant_exp(lo, hi, p, v), 1.0 / p);
    const double mean = norm_value(exp_mean_root(a, b, s, p), norm);
    const double target = norm_value(expm(arithmetic_combination(a, b, v)), norm);
    Params withL = params;
    withL["L^(1/p)"] = lp;
    return std::vector<CheckResult>{norm_check("cor35", detail::with_part(withL, "upper"), mean, lp * target, tol),
                                    norm_check("cor35", detail::with_part(withL, "lower"), target, lp * mean, tol)};
  });
}

struct LimitSeries {
  double target = 0.0;          // ||e^{A nabla_v B}||
  std::vector<double> values;   // ||(e^{pA} s_v e^{pB})^{1/p}|| per p
  std::vector<double> errors;   // |values - target|
};

/// err(p) = | ||(e^{pA} s_v e^{pB})^{1/p}|| - ||e^{A nabla_v B}|| | for each p.
inline LimitSeries limit_errors(const HermitianMatrix& a, const HermitianMatrix& b, const MeanDescriptor& sigma,
                                const NormDescriptor& norm, const std::vector<double>& pList) {
  LimitSeries out;
  out.target = norm_value(expm(arithmetic_combination(a, b, sigma.v)), norm);
  for (double p : pList) {
    detail::exp_guard(a, b, p);
    const double val = norm_value(exp_mean_root(a, b, sigma, p), norm);
    out.values.push_back(val);
    out.errors.push_back(std::abs(val - out.target));
  }
  return out;
}

inline constexpr double kLimitJitter = 1e-12;
inline constexpr double kLimitRelThreshold = 0.01;
inline constexpr double kLimitMinP = 1e-4;

/// err(p) must be non-increasing along the descending pList and
/// err(min p) <= 0.01 ||e^{A nabla_v B}||. The verdict uses the usual
/// absTol + relTol * scale allowance: X^{1/p} magnifies roundoff by 1/p, so
/// where err is exactly zero (v in {0,1}) it sits near 1e-12 at p = 1e-3.
/// The raw increments are in the notes for stricter audits.
inline CheckResult check_limit(const HermitianMatrix& a, const HermitianMatrix& b, double v,
                               const MeanDescriptor& sigma, const NormDescriptor& norm,
                               const std::vector<double>& pList, const TolerancePolicy& tol = {}) {
  if (pList.empty()) throw ConfigParse("limit check needs a non-empty p list");
  for (std::size_t i = 0; i + 1 < pList.size(); ++i)
    if (!(pList[i] > pList[i + 1])) throw ConfigParse("limit check needs a strictly descending p list");
  if (pList.back() < kLimitMinP) throw OverflowGuard("p below 1e-4 loses all precision in X^{1/p}", pList.back());

  const MeanDescriptor s = sigma.with_weight(v);
  std::string plist;
  for (double p : pList) plist += (plist.empty() ? "" : ",") + format_double(p);
  const Params params{{"dim", detail::dim_of(a)},
                      {"v", v},
                      {"norm", norm.to_string()},
                      {"sigma", s.kind_string()},
                      {"pList", plist}};
  return detail::guarded("limit36", params, [&] {
    detail::require_weight_unit(v);
    const LimitSeries series = limit_errors(a, b, s, norm, pList);
    const std::vector<double>& errs = series.errors;
    const double target = series.target;
    const double last = errs.back();
    double margin = kLimitRelThreshold * target - last;
    for (std::size_t i = 0; i + 1 < errs.size(); ++i) margin = std::min(margin, errs[i] - errs[i + 1]);

    CheckResult r;
    r.checkId = "limit36";
    r.params = params;
    r.params["errFinal"] = last;
    r.lhs = series.values.back();
    r.rhs = target;
    r.margin = margin;
    r.scale = target;
    r.allowance = tol.allowance(target);
    std::string text;
    for (double e : errs) text += (text.empty() ? "" : ",") + format_double(e);
    r.notes = "err=[" + text + "]";
    set_verdict(r);
    return r;
  });
}

/// f(Phi(A s_v B)) <= xi psi (f(Phi(A)) t_v f(Phi(B))), with s = m/M, t = M/m.
inline CheckResult check_polya(const HermitianMatrix& a, const HermitianMatrix& b, const SandwichBounds& sb, double v,
                               const MonotoneFunction& f, const MeanDescriptor& sigma, const MeanDescriptor& tau,
                               const PositiveLinearMap& phi, const TolerancePolicy& tol = {}) {
  detail::require_increasing(f);
  const MeanDescriptor s = sigma.with_weight(v);
  const MeanDescriptor t = tau.with_weight(v);
  const Params params =
      detail::merge({{"dim", detail::dim_of(a)},
                     {"outDim", static_cast<std::int64_t>(phi.output_dim(a.dim()))},
                     {"v", v},
                     {"f", f.to_string()},
                     {"sigma", s.kind_string()},
                     {"tau", t.kind_string()},
                     {"map", phi.to_string()}},
                    detail::sandwich_params(sb));
  return detail::guarded("polya-e", params, [&] {
    detail::require_weight_unit(v);
    detail::require_spectrum_in(a, sb.m, sb.M, "A");
    detail::require_spectrum_in(b, sb.m, sb.M, "B");
    const XiPsi xp = xi_psi(RatioBounds(sb.m / sb.M, sb.M / sb.m), v);
    const double k = xp.xi * xp.psi;
    const HermitianMatrix lhs = f.apply(apply_map(phi, evaluate_mean(a, b, s, tol)));
    const HermitianMatrix rhs = k * evaluate_mean(f.apply(apply_map(phi, a)), f.apply(apply_map(phi, b)), t, tol);
    Params withK = params;
    withK["xipsi"] = k;
    return loewner_check("polya-e", std::move(withK), lhs, rhs, tol);
  });
}

/// Mond-Pecaric type bounds with K(m,M,f) = max_{[m,M]} (a_f t + b_f)/f(t):
///   eee: g(Phi(A)) t_v g(Phi(B)) <= K(m,M,g) g(Phi(A s_v B))            (g decreasing)
///   eq3: f(Phi(A s_v B)) <= K(m,M,1/f) (f(Phi(A)) t_v f(Phi(B)))         (f increasing)
inline std::vector<CheckResult> check_prop37(const HermitianMatrix& a, const HermitianMatrix& b,
                                             const SandwichBounds& sb, double v, const MonotoneFunction& fDec,
                                             const MonotoneFunction& fInc, const MeanDescriptor& sigma,
                                             const MeanDescriptor& tau, const PositiveLinearMap& phi,
                                             const TolerancePolicy& tol = {}) {
  detail::require_decreasing(fDec);
  detail::require_increasing(fInc);
  const MeanDescriptor s = sigma.with_weight(v);
  const MeanDescriptor t = tau.with_weight(v);
  const Params params =
      detail::merge({{"dim", detail::dim_of(a)},
                     {"outDim", static_cast<std::int64_t>(phi.output_dim(a.dim()))},
                     {"v", v},
                     {"fDec", fDec.to_string()},
                     {"fInc", fInc.to_string()},
                     {"sigma", s.kind_string()},
                     {"tau", t.kind_string()},
                     {"map", phi.to_string()}},
                    detail::sandwich_params(sb));
  return detail::guarded_parts("prop37", params, {"eee", "eq3"}, [&] {
    detail::require_weight_unit(v);
    detail::require_spectrum_in(a, sb.m, sb.M, "A");
    detail::require_spectrum_in(b, sb.m, sb.M, "B");
    const double kDec = K_mond_pecaric([&fDec](double x) { return fDec(x); }, sb);
    const double kInc = K_mond_pecaric([&fInc](double x) { return 1.0 / fInc(x); }, sb);
    const HermitianMatrix pa = apply_map(phi, a);
    const HermitianMatrix pb = apply_map(phi, b);
    const HermitianMatrix pm = apply_map(phi, evaluate_mean(a, b, s, tol));
    Params withK = params;
    withK["K_dec"] = kDec;
    withK["K_inc"] = kInc;
    return std::vector<CheckResult>{
        loewner_check("prop37", detail::with_part(withK, "eee"), evaluate_mean(fDec.apply(pa), fDec.apply(pb), t, tol),
                      kDec * fDec.apply(pm), tol),
        loewner_check("prop37", detail::with_part(withK, "eq3"), fInc.apply(pm),
                      kInc * evaluate_mean(fInc.apply(pa), fInc.apply(pb), t, tol), tol)};
  });
}

}  // namespace opineq
