#pragma once

// Seeded, order-independent random Hermitian matrices.
//
// Generator contract: a counter-based SplitMix64 stream. The stream key is
// mix64(master ^ mix64(trialIndex + GOLDEN)) and the i-th 64-bit output is
// mix64(key + i * GOLDEN), i = 1, 2, ... Every trial therefore owns a stream
// that depends only on (master, trialIndex). Gaussians use Box-Muller on two
// consecutive uniforms. Changing any of this changes every report.

#include <Eigen/QR>

#include <cmath>
#include <cstdint>
#include <numbers>
#include <utility>
#include <vector>

#include "opineq/constants.hpp"
#include "opineq/hermitian.hpp"

namespace opineq {

struct SamplerSeed {
  std::uint64_t master = 0;
  std::uint64_t trialIndex = 0;
};

class Rng {
 public:
  static constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

  static constexpr std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  explicit Rng(SamplerSeed seed) : key_(mix64(seed.master ^ mix64(seed.trialIndex + kGolden))) {}

  std::uint64_t next_u64() { return mix64(key_ + (++counter_) * kGolden); }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  double normal() {
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }

  /// Standard complex Gaussian, E|z|^2 = 1.
  Complex complex_normal() {
    const double re = normal();
    const double im = normal();
    return Complex(re, im) / std::numbers::sqrt2;
  }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

/// Haar-distributed unitary: QR of a complex Gaussian matrix with the phases
/// of diag(R) moved into Q.
inline CMatrix haar_unitary(Index n, Rng& rng) {
  CMatrix z(n, n);
  for (Index j = 0; j < n; ++j)
    for (Index i = 0; i < n; ++i) z(i, j) = rng.complex_normal();
  Eigen::HouseholderQR<CMatrix> qr(z);
  CMatrix q = qr.householderQ() * CMatrix::Identity(n, n);
  const CMatrix& r = qr.matrixQR();
  for (Index j = 0; j < n; ++j) {
    const double mag = std::abs(r(j, j));
    if (mag > 0.0) q.col(j) *= r(j, j) / mag;
  }
  return q;
}

inline CMatrix haar_unitary(Index n, SamplerSeed seed) {
  Rng rng(seed);
  return haar_unitary(n, rng);
}

/// U diag(lambda) U* with lambda_i uniform on [lo, hi]; with forceEndpoints
/// and n >= 2 the extreme eigenvalues are exactly lo and hi.
inline HermitianMatrix hermitian_with_spectrum(Index n, double lo, double hi, bool forceEndpoints, Rng& rng) {
  if (!(lo <= hi)) throw DomainViolation("spectrum interval needs lo <= hi", lo);
  RVector lambda(n);
  for (Index i = 0; i < n; ++i) lambda(i) = rng.uniform(lo, hi);
  if (forceEndpoints && n >= 2) {
    lambda(0) = lo;
    lambda(n - 1) = hi;
  }
  const CMatrix u = haar_unitary(n, rng);
  return HermitianMatrix::symmetrized(u * lambda.asDiagonal() * u.adjoint());
}

inline HermitianMatrix hermitian_with_spectrum(Index n, double lo, double hi, bool forceEndpoints, SamplerSeed seed) {
  Rng rng(seed);
  return hermitian_with_spectrum(n, lo, hi, forceEndpoints, rng);
}

/// A with spectrum in [m2, m1], B with spectrum in [M1, M2], independent frames.
inline std::pair<HermitianMatrix, HermitianMatrix> sandwich_pair(Index n, const FourPointBounds& fp, Rng& rng,
                                                                 bool forceEndpoints = false) {
  HermitianMatrix a = hermitian_with_spectrum(n, fp.m2, fp.m1, forceEndpoints, rng);
  HermitianMatrix b = hermitian_with_spectrum(n, fp.M1, fp.M2, forceEndpoints, rng);
  return {std::move(a), std::move(b)};
}

/// A and B independently with spectra in [lo, hi].
inline std::pair<HermitianMatrix, HermitianMatrix> bounded_pair(Index n, double lo, double hi, Rng& rng,
                                                                bool forceEndpoints = false) {
  HermitianMatrix a = hermitian_with_spectrum(n, lo, hi, forceEndpoints, rng);
  HermitianMatrix b = hermitian_with_spectrum(n, lo, hi, forceEndpoints, rng);
  return {std::move(a), std::move(b)};
}

/// A with spectrum in [lo, hi], B = A^{1/2} C A^{1/2} with spec(C) in [s, t],
/// so sA <= B <= tA by construction.
inline std::pair<HermitianMatrix, HermitianMatrix> ratio_pair(Index n, const RatioBounds& rb, double lo, double hi,
                                                              Rng& rng, bool forceEndpoints = false) {
  if (!(lo > 0.0 && lo <= hi)) throw DomainViolation("ratio_pair needs 0 < lo <= hi", lo);
  HermitianMatrix a = hermitian_with_spectrum(n, lo, hi, forceEndpoints, rng);
  const HermitianMatrix c = hermitian_with_spectrum(n, rb.s, rb.t, forceEndpoints, rng);
  const HermitianMatrix root = powm(a, 0.5);
  HermitianMatrix b = HermitianMatrix::symmetrized(root.matrix() * c.matrix() * root.matrix());
  return {std::move(a), std::move(b)};
}

}  // namespace opineq
