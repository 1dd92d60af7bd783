#pragma once

// Unitarily invariant norms: Schatten-p and Ky Fan-k, evaluated from
// singular values.

#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <string>
#include <string_view>
#include <vector>

#include "opineq/format.hpp"
#include "opineq/hermitian.hpp"

namespace opineq {

enum class NormFamily { Schatten, KyFan };

struct NormDescriptor {
  NormFamily family = NormFamily::Schatten;
  double p = std::numeric_limits<double>::infinity();
  int k = 1;

  static NormDescriptor schatten(double p) {
    if (!(p >= 1.0)) throw ConfigParse("Schatten exponent must be >= 1 or inf");
    return {NormFamily::Schatten, p, 0};
  }
  static NormDescriptor operator_norm() { return schatten(std::numeric_limits<double>::infinity()); }
  static NormDescriptor kyfan(int k) {
    if (k < 1) throw ConfigParse("Ky Fan index must be >= 1");
    return {NormFamily::KyFan, 0.0, k};
  }

  bool is_operator_norm() const {
    return (family == NormFamily::Schatten && std::isinf(p)) || (family == NormFamily::KyFan && k == 1);
  }

  /// "schatten:2", "schatten:inf", "kyfan:3".
  std::string to_string() const {
    if (family == NormFamily::KyFan) return "kyfan:" + std::to_string(k);
    return "schatten:" + format_double(p);
  }

  friend bool operator==(const NormDescriptor&, const NormDescriptor&) = default;
};

inline NormDescriptor parse_norm(std::string_view text) {
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) throw ConfigParse("norm needs family:parameter, got '" + std::string(text) + "'");
  const std::string_view family = text.substr(0, colon);
  const std::string_view arg = text.substr(colon + 1);
  if (family == "schatten") return NormDescriptor::schatten(parse_double(arg));
  if (family == "kyfan") return NormDescriptor::kyfan(static_cast<int>(parse_integer(arg)));
  throw ConfigParse("unknown norm family '" + std::string(family) + "'");
}

/// |eigenvalues| in descending order.
inline std::vector<double> singular_values(const HermitianMatrix& a) {
  const RVector ev = eigenvalues(a);
  std::vector<double> s(static_cast<std::size_t>(ev.size()));
  for (Index i = 0; i < ev.size(); ++i) s[static_cast<std::size_t>(i)] = std::abs(ev(i));
  std::sort(s.begin(), s.end(), std::greater<>());
  return s;
}

/// Singular values of an arbitrary (square or rectangular) matrix, descending.
inline std::vector<double> singular_values(const CMatrix& a) {
  Eigen::JacobiSVD<CMatrix> svd(a);
  const RVector sv = svd.singularValues();
  std::vector<double> s(sv.data(), sv.data() + sv.size());
  std::sort(s.begin(), s.end(), std::greater<>());
  return s;
}

/// Norm of a matrix with the given singular values (descending).
inline double norm_from_singular_values(const std::vector<double>& s, const NormDescriptor& n) {
  if (n.family == NormFamily::KyFan) {
    if (static_cast<std::size_t>(n.k) > s.size())
      throw KExceedsDim("Ky Fan k=" + std::to_string(n.k) + " exceeds dim " + std::to_string(s.size()),
                        static_cast<double>(n.k));
    double sum = 0.0;
    for (int i = 0; i < n.k; ++i) sum += s[static_cast<std::size_t>(i)];
    return sum;
  }
  if (s.empty()) return 0.0;
  const double top = s.front();
  if (std::isinf(n.p) || top == 0.0) return top;
  // Scaled by the largest value so s^p cannot overflow.
  double acc = 0.0;
  for (double x : s) acc += std::pow(x / top, n.p);
  return top * std::pow(acc, 1.0 / n.p);
}

inline double norm_value(const HermitianMatrix& a, const NormDescriptor& n) {
  return norm_from_singular_values(singular_values(a), n);
}

inline double norm_value(const CMatrix& a, const NormDescriptor& n) {
  return norm_from_singular_values(singular_values(a), n);
}

inline double trace_of(const HermitianMatrix& a) { return a.matrix().trace().real(); }

/// Re tr(XY) for Hermitian X, Y. The imaginary residue must stay below
/// 1e-10 times ||X||_F ||Y||_F.
inline double trace_of_product(const HermitianMatrix& x, const HermitianMatrix& y) {
  HermitianMatrix::check_same(x, y);
  const Complex tr = (x.matrix() * y.matrix()).trace();
  const double scale = x.matrix().norm() * y.matrix().norm();
  if (std::abs(tr.imag()) > 1e-10 * std::max(scale, 1.0))
    throw ConvergenceFailure("imaginary residue of tr(XY) too large", tr.imag());
  return tr.real();
}

}  // namespace opineq
