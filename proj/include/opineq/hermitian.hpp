#pragma once

// Validated Hermitian matrices, spectral decomposition, functional calculus
// and Loewner-order comparison.

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "opineq/errors.hpp"

namespace opineq {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using RVector = Eigen::VectorXd;
using Index = Eigen::Index;

struct TolerancePolicy {
  double absTol = 1e-9;
  double relTol = 1e-9;

  void validate() const {
    if (!std::isfinite(absTol) || !std::isfinite(relTol) || absTol < 0.0 || relTol < 0.0)
      throw ConfigParse("tolerances must be finite and non-negative");
  }

  double allowance(double scale) const { return absTol + relTol * scale; }
};

class HermitianMatrix {
 public:
  /// Trusted construction: symmetrizes (M + M*)/2 without checking the
  /// asymmetry. Use validate_hermitian() for untrusted input.
  static HermitianMatrix symmetrized(const CMatrix& m) {
    if (m.rows() != m.cols()) throw NotSquare("matrix is " + shape(m));
    if (m.rows() < 1) throw NotSquare("matrix is empty");
    CMatrix h = 0.5 * (m + m.adjoint());
    for (Index i = 0; i < h.rows(); ++i) h(i, i) = Complex(h(i, i).real(), 0.0);
    return HermitianMatrix(std::move(h));
  }

  static HermitianMatrix identity(Index n) { return HermitianMatrix(CMatrix::Identity(n, n)); }

  static HermitianMatrix diagonal(const std::vector<double>& d) {
    if (d.empty()) throw NotSquare("matrix is empty");
    CMatrix m = CMatrix::Zero(static_cast<Index>(d.size()), static_cast<Index>(d.size()));
    for (std::size_t i = 0; i < d.size(); ++i) m(static_cast<Index>(i), static_cast<Index>(i)) = d[i];
    return HermitianMatrix(std::move(m));
  }

  static HermitianMatrix scalar(double a) { return diagonal({a}); }

  Index dim() const { return m_.rows(); }
  const CMatrix& matrix() const { return m_; }
  Complex operator()(Index i, Index j) const { return m_(i, j); }

  double max_abs_entry() const { return m_.cwiseAbs().maxCoeff(); }

  /// T* X T; Hermitian for any (possibly rectangular) T.
  HermitianMatrix congruence(const CMatrix& t) const {
    if (t.rows() != dim()) throw DimensionMismatch("congruence: " + shape(t) + " against dim " + std::to_string(dim()));
    return symmetrized(t.adjoint() * m_ * t);
  }

  friend HermitianMatrix operator+(const HermitianMatrix& a, const HermitianMatrix& b) {
    check_same(a, b);
    return HermitianMatrix(a.m_ + b.m_);
  }
  friend HermitianMatrix operator-(const HermitianMatrix& a, const HermitianMatrix& b) {
    check_same(a, b);
    return HermitianMatrix(a.m_ - b.m_);
  }
  friend HermitianMatrix operator*(double c, const HermitianMatrix& a) { return HermitianMatrix(c * a.m_); }
  friend HermitianMatrix operator*(const HermitianMatrix& a, double c) { return c * a; }
  HermitianMatrix operator-() const { return HermitianMatrix(-m_); }

  static void check_same(const HermitianMatrix& a, const HermitianMatrix& b) {
    if (a.dim() != b.dim())
      throw DimensionMismatch("dimensions " + std::to_string(a.dim()) + " and " + std::to_string(b.dim()));
  }

 private:
  explicit HermitianMatrix(CMatrix m) : m_(std::move(m)) {}

  static std::string shape(const CMatrix& m) { return std::to_string(m.rows()) + "x" + std::to_string(m.cols()); }

  CMatrix m_;
};

/// Accepts `raw` if max |raw - raw*| <= absTol + relTol * maxAbsEntry and
/// returns its Hermitian part.
inline HermitianMatrix validate_hermitian(const CMatrix& raw, const TolerancePolicy& tol = {}) {
  if (raw.rows() != raw.cols() || raw.rows() < 1)
    throw NotSquare("expected a non-empty square matrix, got " + std::to_string(raw.rows()) + "x" +
                    std::to_string(raw.cols()));
  if (!raw.allFinite()) throw NotHermitian("matrix has non-finite entries");
  const double asym = (raw - raw.adjoint()).cwiseAbs().maxCoeff();
  const double bound = tol.allowance(raw.cwiseAbs().maxCoeff());
  if (asym > bound) {
    std::ostringstream os;
    os << "asymmetry " << asym << " exceeds " << bound;
    throw NotHermitian(os.str(), asym);
  }
  return HermitianMatrix::symmetrized(raw);
}

struct SpectralDecomposition {
  RVector eigenvalues;   // ascending
  CMatrix eigenvectors;  // columns, unitary

  HermitianMatrix reconstruct() const { return rebuild(eigenvalues); }

  /// U diag(values) U*.
  HermitianMatrix rebuild(const RVector& values) const {
    return HermitianMatrix::symmetrized(eigenvectors * values.asDiagonal() * eigenvectors.adjoint());
  }

  double min() const { return eigenvalues(0); }
  double max() const { return eigenvalues(eigenvalues.size() - 1); }
};

inline SpectralDecomposition eigh(const HermitianMatrix& a) {
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(a.matrix(), Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success) throw ConvergenceFailure("self-adjoint eigensolver did not converge");
  return {solver.eigenvalues(), solver.eigenvectors()};
}

inline RVector eigenvalues(const HermitianMatrix& a) {
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(a.matrix(), Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw ConvergenceFailure("self-adjoint eigensolver did not converge");
  return solver.eigenvalues();
}

/// Real interval with open/closed ends, used to state where a scalar
/// function may be applied.
struct Interval {
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();
  bool loOpen = true;
  bool hiOpen = true;

  static Interval real_line() { return {}; }
  static Interval positive() { return {0.0, std::numeric_limits<double>::infinity(), true, true}; }
  static Interval nonnegative() { return {0.0, std::numeric_limits<double>::infinity(), false, true}; }

  bool contains(double x) const {
    if (std::isnan(x)) return false;
    const bool aboveLo = loOpen ? x > lo : x >= lo;
    const bool belowHi = hiOpen ? x < hi : x <= hi;
    return aboveLo && belowHi;
  }

  std::string to_string() const {
    std::ostringstream os;
    os << (loOpen ? '(' : '[') << lo << ", " << hi << (hiOpen ? ')' : ']');
    return os.str();
  }
};

template <class F>
HermitianMatrix apply_scalar_function(const SpectralDecomposition& sd, F&& f, const Interval& domain) {
  RVector values(sd.eigenvalues.size());
  for (Index i = 0; i < values.size(); ++i) {
    const double lambda = sd.eigenvalues(i);
    if (!domain.contains(lambda)) {
      std::ostringstream os;
      os << "eigenvalue " << lambda << " outside " << domain.to_string();
      throw DomainViolation(os.str(), lambda);
    }
    values(i) = f(lambda);
    if (!std::isfinite(values(i))) {
      std::ostringstream os;
      os << "function is not finite at eigenvalue " << lambda;
      throw DomainViolation(os.str(), lambda);
    }
  }
  return sd.rebuild(values);
}

/// U diag(f(lambda_i)) U*, rejecting any eigenvalue outside `domain`.
template <class F>
HermitianMatrix apply_scalar_function(const HermitianMatrix& a, F&& f, const Interval& domain = Interval::real_line()) {
  return apply_scalar_function(eigh(a), std::forward<F>(f), domain);
}

inline HermitianMatrix expm(const HermitianMatrix& a) {
  return apply_scalar_function(a, [](double x) { return std::exp(x); });
}

inline HermitianMatrix logm(const HermitianMatrix& a) {
  return apply_scalar_function(a, [](double x) { return std::log(x); }, Interval::positive());
}

/// A^r for positive definite A.
inline HermitianMatrix powm(const HermitianMatrix& a, double r) {
  return apply_scalar_function(a, [r](double x) { return std::pow(x, r); }, Interval::positive());
}

inline HermitianMatrix inverse(const HermitianMatrix& a) { return powm(a, -1.0); }

/// Throws NotPositiveDefinite unless lambda_min > absTol. No clipping.
inline void require_positive_definite(const SpectralDecomposition& sd, const TolerancePolicy& tol, const char* what) {
  if (!(sd.min() > tol.absTol)) {
    std::ostringstream os;
    os << what << " is not positive definite: lambda_min = " << sd.min();
    throw NotPositiveDefinite(os.str(), sd.min());
  }
}

/// A^{1/2} g(A^{-1/2} B A^{-1/2}) A^{1/2}. The square roots come from one
/// eigendecomposition of A, so the congruence stays Hermitian to rounding.
template <class G>
HermitianMatrix mean_conjugation(const HermitianMatrix& a, const HermitianMatrix& b, G&& g,
                                 const TolerancePolicy& tol = {}) {
  HermitianMatrix::check_same(a, b);
  const SpectralDecomposition sa = eigh(a);
  require_positive_definite(sa, tol, "A");
  require_positive_definite(eigh(b), tol, "B");

  const RVector roots = sa.eigenvalues.cwiseSqrt();
  const CMatrix sqrtA = sa.eigenvectors * roots.asDiagonal() * sa.eigenvectors.adjoint();
  const CMatrix invSqrtA = sa.eigenvectors * roots.cwiseInverse().asDiagonal() * sa.eigenvectors.adjoint();

  const HermitianMatrix w = HermitianMatrix::symmetrized(invSqrtA * b.matrix() * invSqrtA);
  const HermitianMatrix gw = apply_scalar_function(w, std::forward<G>(g), Interval::positive());
  return HermitianMatrix::symmetrized(sqrtA * gw.matrix() * sqrtA);
}

inline double spectral_norm(const HermitianMatrix& a) { return eigenvalues(a).cwiseAbs().maxCoeff(); }

struct LoewnerResult {
  bool holds = false;
  double margin = 0.0;     // lambda_min(Y - X)
  double allowance = 0.0;  // absTol + relTol * max(||X||, ||Y||)
  double scale = 0.0;
};

/// Tests X <= Y in the Loewner order.
inline LoewnerResult loewner_compare(const HermitianMatrix& x, const HermitianMatrix& y,
                                     const TolerancePolicy& tol = {}) {
  HermitianMatrix::check_same(x, y);
  LoewnerResult r;
  r.margin = eigenvalues(y - x)(0);
  r.scale = std::max(spectral_norm(x), spectral_norm(y));
  r.allowance = tol.allowance(r.scale);
  r.holds = r.margin >= -r.allowance;
  return r;
}

inline std::pair<double, double> spectrum_bounds(const HermitianMatrix& a) {
  const RVector ev = eigenvalues(a);
  return {ev(0), ev(ev.size() - 1)};
}

}  // namespace opineq
