#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "bisteklov/harmonics.hpp"

using namespace bisteklov;

TEST(Harmonics, Multiplicities) {
  EXPECT_EQ(multiplicity(0, 5), 1);
  EXPECT_EQ(multiplicity(1, 3), 3);
  EXPECT_EQ(multiplicity(2, 3), 5);
  EXPECT_EQ(multiplicity(3, 3), 7);
  EXPECT_EQ(multiplicity(2, 4), 9);
  for (int l = 1; l <= 20; ++l) EXPECT_EQ(multiplicity(l, 2), 2);
}

// Degree-l harmonic polynomials in N variables: dim P_l - dim P_{l-2}.
TEST(Harmonics, MultiplicityMatchesPolynomialCount) {
  auto dim_poly = [](int l, int n) { return l < 0 ? 0.0 : binomial(l + n - 1, n - 1); };
  for (int n = 2; n <= 6; ++n)
    for (int l = 0; l <= 8; ++l) EXPECT_EQ(multiplicity(l, n), static_cast<int>(dim_poly(l, n) - dim_poly(l - 2, n)));
}

TEST(Harmonics, CircleHarmonicValues) {
  EXPECT_DOUBLE_EQ(circle_harmonic(0, 0, 1.234), 1.0 / std::sqrt(2.0 * std::numbers::pi));
  EXPECT_DOUBLE_EQ(circle_harmonic(2, 0, 0.0), 1.0 / std::sqrt(std::numbers::pi));
  EXPECT_NEAR(circle_harmonic(3, 1, std::numbers::pi / 6.0), 1.0 / std::sqrt(std::numbers::pi), 1e-15);
  EXPECT_THROW(circle_harmonic(0, 1, 0.0), Error);
}

TEST(Harmonics, OrthonormalityAndZeroMean) {
  const int n = 512;
  auto integrate = [&](auto f) {
    double s = 0.0;
    for (int j = 0; j < n; ++j) s += f(2.0 * std::numbers::pi * j / n);
    return s * 2.0 * std::numbers::pi / n;
  };
  for (int l = 0; l <= 6; ++l)
    for (int i = 0; i < multiplicity(l, 2); ++i) {
      if (l >= 1) EXPECT_NEAR(integrate([&](double t) { return circle_harmonic(l, i, t); }), 0.0, 1e-12);
      for (int l2 = 0; l2 <= 6; ++l2)
        for (int i2 = 0; i2 < multiplicity(l2, 2); ++i2) {
          const double v = integrate([&](double t) { return circle_harmonic(l, i, t) * circle_harmonic(l2, i2, t); });
          EXPECT_NEAR(v, (l == l2 && i == i2) ? 1.0 : 0.0, 1e-10);
        }
    }
}

TEST(Harmonics, DerivativesMatchFiniteDifferences) {
  for (int l = 1; l <= 4; ++l)
    for (int i = 0; i < 2; ++i)
      for (double t : {0.1, 1.3, 4.0}) {
        const double h = 1e-5;
        for (int d = 1; d <= 3; ++d) {
          const double fd = (circle_harmonic_derivative(l, i, t + h, d - 1) - circle_harmonic_derivative(l, i, t - h, d - 1)) / (2 * h);
          EXPECT_NEAR(circle_harmonic_derivative(l, i, t, d), fd, 1e-7 * std::pow(l, d));
        }
      }
}

TEST(Harmonics, SphereSampling) {
  const auto a = sphere_sample(2, 4, 0);
  ASSERT_EQ(a.size(), 4u);
  for (const auto& p : a) EXPECT_NEAR(std::hypot(p[0], p[1]), 1.0, 1e-14);

  const auto b = sphere_sample(3, 1000, 7);
  for (int c = 0; c < 3; ++c) {
    double m = 0.0;
    for (const auto& p : b) m += p[c];
    EXPECT_LE(std::abs(m / 1000.0), 0.1);
  }
  for (const auto& p : b) EXPECT_NEAR(std::sqrt(p[0] * p[0] + p[1] * p[1] + p[2] * p[2]), 1.0, 1e-14);
  EXPECT_EQ(sphere_sample(3, 50, 9), sphere_sample(3, 50, 9));
  EXPECT_NE(sphere_sample(3, 50, 9), sphere_sample(3, 50, 10));
}
