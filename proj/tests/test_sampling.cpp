#include <gtest/gtest.h>

#include <cmath>

#include "test_util.hpp"

using namespace opineq;
using testutil::frob_diff;

TEST(Rng, CounterStreamIsPureFunctionOfSeed) {
  Rng a({42, 7}), b({42, 7}), c({42, 8}), d({43, 7});
  for (int i = 0; i < 100; ++i) {
    const auto x = a.next_u64();
    EXPECT_EQ(x, b.next_u64());
    EXPECT_NE(x, c.next_u64());
    EXPECT_NE(x, d.next_u64());
  }
}

TEST(Rng, SplitMixFinalizerKnownValue) {
  // SplitMix64 output for state 0 after one golden-gamma step.
  EXPECT_EQ(Rng::mix64(0x9E3779B97F4A7C15ULL), 0xE220A8397B1DCDAFULL);
}

TEST(Rng, UniformAndNormalMoments) {
  Rng rng({1, 0});
  const int n = 200000;
  double su = 0, sn = 0, sn2 = 0, sc = 0;
  for (int i = 0; i < n; ++i) {
    const double u = rng.uniform();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    su += u;
    const double z = rng.normal();
    sn += z;
    sn2 += z * z;
    sc += std::norm(rng.complex_normal());
  }
  EXPECT_NEAR(su / n, 0.5, 0.005);
  EXPECT_NEAR(sn / n, 0.0, 0.01);
  EXPECT_NEAR(sn2 / n, 1.0, 0.02);
  EXPECT_NEAR(sc / n, 1.0, 0.02);
}

TEST(HaarUnitary, ScalarHasUnitModulus) {
  const CMatrix u = haar_unitary(1, SamplerSeed{5, 0});
  EXPECT_NEAR(std::abs(u(0, 0)), 1.0, 1e-15);
}

TEST(HaarUnitary, Deterministic) {
  EXPECT_EQ(haar_unitary(3, SamplerSeed{5, 1}), haar_unitary(3, SamplerSeed{5, 1}));
  EXPECT_NE(haar_unitary(3, SamplerSeed{5, 1}), haar_unitary(3, SamplerSeed{5, 2}));
}

TEST(HaarUnitary, Orthonormal) {
  for (Index n : {1, 2, 4, 8, 16}) {
    const CMatrix u = haar_unitary(n, SamplerSeed{6, static_cast<std::uint64_t>(n)});
    EXPECT_LE((u.adjoint() * u - CMatrix::Identity(n, n)).norm(), 1e-12 * static_cast<double>(n));
  }
}

TEST(HaarUnitary, PhasesLookUniform) {
  // For Haar U, E[U_00] = 0 and E|U_00|^2 = 1/n.
  const Index n = 3;
  Complex mean = 0;
  double second = 0;
  const int trials = 20000;
  for (int k = 0; k < trials; ++k) {
    const CMatrix u = haar_unitary(n, SamplerSeed{7, static_cast<std::uint64_t>(k)});
    mean += u(0, 0);
    second += std::norm(u(0, 0));
  }
  EXPECT_LT(std::abs(mean / double(trials)), 0.02);
  EXPECT_NEAR(second / trials, 1.0 / 3.0, 0.01);
}

TEST(HermitianWithSpectrum, Examples) {
  const HermitianMatrix one = hermitian_with_spectrum(1, 3.0, 3.0, false, SamplerSeed{8, 0});
  EXPECT_NEAR(one(0, 0).real(), 3.0, 1e-15);
  const RVector ev = eigenvalues(hermitian_with_spectrum(2, 1.0, 4.0, true, SamplerSeed{8, 1}));
  EXPECT_NEAR(ev(0), 1.0, 1e-14);
  EXPECT_NEAR(ev(1), 4.0, 1e-14);
  EXPECT_THROW(hermitian_with_spectrum(2, 2.0, 1.0, false, SamplerSeed{8, 2}), DomainViolation);
}

TEST(HermitianWithSpectrum, SpectrumInsideInterval) {
  for (std::uint64_t k = 0; k < 100; ++k) {
    const Index n = 1 + static_cast<Index>(k % 8);
    const HermitianMatrix a = hermitian_with_spectrum(n, -1.5, 2.5, k % 2 == 1, SamplerSeed{9, k});
    const auto [lo, hi] = spectrum_bounds(a);
    EXPECT_GE(lo, -1.5 - 1e-10);
    EXPECT_LE(hi, 2.5 + 1e-10);
    EXPECT_NO_THROW(validate_hermitian(a.matrix(), TolerancePolicy{1e-12, 1e-12}));
    if (k % 2 == 1 && n >= 2) {
      EXPECT_NEAR(lo, -1.5, 1e-12);
      EXPECT_NEAR(hi, 2.5, 1e-12);
    }
  }
}

TEST(SandwichPair, DegenerateIntervals) {
  Rng rng({10, 0});
  const auto [a, b] = sandwich_pair(2, FourPointBounds(1, 1, 2, 2), rng);
  EXPECT_LE(frob_diff(a, HermitianMatrix::identity(2)), 1e-14);
  EXPECT_LE(frob_diff(b, 2.0 * HermitianMatrix::identity(2)), 1e-14);
}

TEST(SandwichPair, ConstraintsHoldPostHoc) {
  const FourPointBounds fp(0.5, 1, 2, 4);
  for (std::uint64_t k = 0; k < 100; ++k) {
    Rng rng({10, 1 + k});
    const Index n = 1 + static_cast<Index>(k % 8);
    const auto [a, b] = sandwich_pair(n, fp, rng, k % 3 == 0);
    const auto id = HermitianMatrix::identity(n);
    const TolerancePolicy tight{1e-10, 0.0};
    EXPECT_TRUE(loewner_compare(a, fp.m1 * id, tight).holds);
    EXPECT_TRUE(loewner_compare(fp.m2 * id, a, tight).holds);
    EXPECT_TRUE(loewner_compare(fp.M1 * id, b, tight).holds);
    EXPECT_TRUE(loewner_compare(b, fp.M2 * id, tight).holds);
    EXPECT_GE(eigenvalues(b - a)(0), fp.M1 - fp.m1 - 1e-10);
  }
}

TEST(RatioPair, Examples) {
  Rng rng({11, 0});
  const auto [a, b] = ratio_pair(3, RatioBounds(1, 1), 0.5, 2.0, rng);
  EXPECT_LE(frob_diff(a, b), 1e-12);
  // n = 1: B = A C.
  Rng r1({11, 1});
  const auto [a1, b1] = ratio_pair(1, RatioBounds(3, 3), 2.0, 2.0, r1);
  EXPECT_NEAR(a1(0, 0).real(), 2.0, 1e-15);
  EXPECT_NEAR(b1(0, 0).real(), 6.0, 1e-14);
}

TEST(RatioPair, ConstraintsHoldPostHoc) {
  for (std::uint64_t k = 0; k < 100; ++k) {
    Rng rng({11, 2 + k});
    const Index n = 1 + static_cast<Index>(k % 8);
    const RatioBounds rb(0.25, 4);
    const auto [a, b] = ratio_pair(n, rb, 0.5, 2.0, rng, k % 2 == 0);
    EXPECT_GE(loewner_compare(rb.s * a, b).margin, -1e-10);
    EXPECT_GE(loewner_compare(b, rb.t * a).margin, -1e-10);
  }
}

TEST(Sampling, BitIdenticalAcrossCallOrder) {
  std::vector<HermitianMatrix> forward, backward;
  for (std::uint64_t k = 0; k < 10; ++k) forward.push_back(hermitian_with_spectrum(4, 0, 1, false, SamplerSeed{12, k}));
  for (std::uint64_t k = 10; k-- > 0;) backward.push_back(hermitian_with_spectrum(4, 0, 1, false, SamplerSeed{12, k}));
  for (std::size_t i = 0; i < 10; ++i) EXPECT_EQ(forward[i].matrix(), backward[9 - i].matrix());
}
