#include <gtest/gtest.h>

#include <algorithm>
#include <complex>

#include "awflow/polynomial.hpp"

using namespace awflow;

TEST(Polynomial, EvaluateAndDerivative) {
  const Polynomial p{1, -3, 0, 2};  // 2x^3 - 3x + 1
  EXPECT_DOUBLE_EQ(p(2.0), 11.0);
  EXPECT_DOUBLE_EQ(p.derivative()(2.0), 21.0);
  EXPECT_EQ(p.degree(), 3);
  const auto z = p(std::complex<double>(0, 1));
  EXPECT_DOUBLE_EQ(z.real(), 1.0);
  EXPECT_DOUBLE_EQ(z.imag(), -5.0);
}

TEST(Polynomial, DeflateExactRoot) {
  const Polynomial p{-6, 11, -6, 1};  // (x-1)(x-2)(x-3)
  const Polynomial q = p.deflate(1.0);
  EXPECT_EQ(q.degree(), 2);
  EXPECT_DOUBLE_EQ(q(2.0), 0.0);
  EXPECT_DOUBLE_EQ(q(3.0), 0.0);
}

TEST(Aberth, CubicWithKnownRoots) {
  const Polynomial p{-6, 11, -6, 1};
  auto roots = aberth_roots(p);
  ASSERT_EQ(roots.size(), 3u);
  std::sort(roots.begin(), roots.end(),
            [](auto a, auto b) { return a.real() < b.real(); });
  for (int i = 0; i < 3; ++i) {
    EXPECT_NEAR(roots[i].real(), i + 1.0, 1e-12);
    EXPECT_NEAR(roots[i].imag(), 0.0, 1e-12);
  }
}

TEST(Aberth, ComplexPair) {
  const Polynomial p{1, 0, 1};  // x^2 + 1
  const auto roots = aberth_roots(p);
  ASSERT_EQ(roots.size(), 2u);
  for (const auto& r : roots) {
    EXPECT_NEAR(std::abs(r.real()), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(r.imag()), 1.0, 1e-12);
  }
}

TEST(Aberth, WilkinsonLikeSpread) {
  Polynomial p{1};
  for (int k = 1; k <= 8; ++k) p = p * Polynomial{-static_cast<double>(k), 1};
  auto roots = aberth_roots(p);
  std::sort(roots.begin(), roots.end(),
            [](auto a, auto b) { return a.real() < b.real(); });
  for (int k = 0; k < 8; ++k) EXPECT_NEAR(roots[k].real(), k + 1.0, 1e-8);
}

TEST(Newton, PolishesToMachinePrecision) {
  const Polynomial p{-2, 0, 1};
  EXPECT_NEAR(newton_polish(p, 1.4), std::sqrt(2.0), 1e-15);
}
