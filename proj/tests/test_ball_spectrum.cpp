#include <cmath>

#include <gtest/gtest.h>

#include "bisteklov/ball_spectrum.hpp"
#include "bisteklov/radial_solver.hpp"

using namespace bisteklov;

namespace {
double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

// lambda_(l) from an alternative closed form evaluated in mpmath at 40 digits.
struct Ref {
  int dim;
  double tau;
  int l;
  double lambda;
};
const Ref kRefs[] = {
    {2, 1.0, 2, 9.2192790168650087},  {2, 1.0, 3, 33.928990643586134},  {3, 1.0, 2, 11.217222299370496},
    {2, 0.5, 2, 8.2098162000676294},  {2, 5.0, 2, 17.284383343849479},  {3, 2.5, 4, 102.3306180035251},
    {4, 10.0, 6, 413.53450010572056},
};
}  // namespace

TEST(BallSpectrum, ClosedFormMatchesReferences) {
  for (const auto& r : kRefs) EXPECT_LE(rel(closed_form_eigenvalue({r.dim, r.tau}, r.l), r.lambda), 1e-12) << r.dim << " " << r.tau << " " << r.l;
}

TEST(BallSpectrum, LowOrders) {
  for (double tau : {0.3, 1.0, 7.0}) {
    EXPECT_EQ(closed_form_eigenvalue({2, tau}, 0), 0.0);
    EXPECT_EQ(closed_form_eigenvalue({3, tau}, 1), tau);
    EXPECT_NEAR(closed_form_formula({2, tau}, 0), 0.0, 1e-12);
  }
  // The general formula reproduces the shortcut at l=1 through heavy cancellation.
  for (int n = 2; n <= 5; ++n)
    for (double tau : {0.1, 1.0, 10.0}) EXPECT_LE(rel(closed_form_formula({n, tau}, 1), tau), 1e-12) << n << " " << tau;
  // Radius alpha: alpha^{-3} lambda(alpha^2 tau) gives tau/alpha for the translations.
  for (double alpha : {0.5, 2.0}) EXPECT_DOUBLE_EQ(std::pow(alpha, -3) * closed_form_eigenvalue({2, alpha * alpha * 3.0}, 1), 3.0 / alpha);
}

TEST(BallSpectrum, Tau0Values) {
  EXPECT_EQ(tau0_eigenvalue(2, 0), 0.0);
  EXPECT_EQ(tau0_eigenvalue(2, 1), 0.0);
  EXPECT_DOUBLE_EQ(tau0_eigenvalue(2, 2), 36.0 / 5.0);
  EXPECT_DOUBLE_EQ(tau0_eigenvalue(3, 2), 2.0 * (3 + 12 + 8) / 5.0);
  EXPECT_DOUBLE_EQ(tau0_eigenvalue(2, 3), 6.0 * (2 + 12 + 22) / 7.0);
}

TEST(BallSpectrum, SmallTauLimit) {
  for (int n : {2, 3, 5})
    for (int l = 2; l <= 5; ++l) {
      const double t0 = tau0_eigenvalue(n, l);
      const double a = closed_form_eigenvalue({n, 1e-3}, l), b = closed_form_eigenvalue({n, 1e-4}, l);
      EXPECT_LT(std::abs(b - t0), std::abs(a - t0));
      EXPECT_LE(rel(b, t0), 1e-3);
    }
}

TEST(BallSpectrum, OrderingAndSecondEigenvalue) {
  for (int n : {2, 3, 4})
    for (double tau : {0.1, 1.0, 4.0, 25.0}) {
      for (int l = 2; l < 8; ++l) EXPECT_LT(closed_form_eigenvalue({n, tau}, l), closed_form_eigenvalue({n, tau}, l + 1));
      EXPECT_GE(closed_form_eigenvalue({n, tau}, 2), 2.0 * tau);
      const auto v = expand_spectrum(enumerate_spectrum({n, tau}, n + 2));
      EXPECT_EQ(v[0], 0.0);
      for (int j = 1; j <= n; ++j) EXPECT_EQ(v[j], tau);
    }
}

TEST(BallSpectrum, Monotone) {
  for (int l = 2; l <= 5; ++l) {
    double prev = tau0_eigenvalue(2, l);
    for (double tau : {0.1, 0.5, 1.0, 3.0, 10.0, 40.0}) {
      const double v = closed_form_eigenvalue({2, tau}, l);
      EXPECT_GT(v, prev);
      prev = v;
    }
  }
}

TEST(BallSpectrum, SumRule) {
  for (int n : {2, 3, 6})
    for (double tau : {0.2, 1.0, 9.0}) EXPECT_LE(rel(reciprocal_sum_rule({n, tau}), n / tau), 1e-12);
}

TEST(BallSpectrum, Enumeration) {
  const auto e = enumerate_spectrum({3, 1.0}, 6);
  ASSERT_EQ(e.size(), 3u);
  EXPECT_EQ(e[0].l, 0);
  EXPECT_EQ(e[1].l, 1);
  EXPECT_EQ(e[1].multiplicity, 3);
  EXPECT_EQ(e[2].l, 2);
  EXPECT_EQ(e[2].used, 2);
  EXPECT_EQ(expand_spectrum(e).size(), 6u);
}

TEST(BallSpectrum, ModeProfile) {
  EXPECT_LE(rel(mode_coefficient_ratio({2, 1.0}, 2), -2.0 / 0.38507458437678294), 1e-12);
  EXPECT_DOUBLE_EQ(mode_coefficient_ratio({2, 0.0}, 2), -2.0 / 12.0);
  for (const auto& r : kRefs) {
    const auto m = mode_profile({r.dim, r.tau}, r.l);
    const auto v = m.eval(1.0);
    EXPECT_NEAR(v[0], 1.0, 1e-14);
    EXPECT_NEAR(v[2], 0.0, 1e-10 * std::abs(v[3]));
    EXPECT_LE(rel(boundary_rows(v, r.l, r.dim, r.tau)[1], r.lambda), 1e-10);
  }
  // tau = 0: 6r^2 - r^4 up to the boundary normalization.
  EXPECT_NEAR(radial_profile({2, 0.0}, 2, 0.5, 0), (6 * 0.25 - 0.0625) / 5.0, 1e-15);
  EXPECT_NEAR(radial_profile({2, 0.0}, 2, 1.0, 2), 0.0, 1e-15);
  EXPECT_THROW(radial_profile({2, 1.0}, 2, 1.5, 0), Error);
}

TEST(BallSpectrum, Volumes) {
  EXPECT_NEAR(sphere_area(2), 2.0 * std::numbers::pi, 1e-14);
  EXPECT_NEAR(sphere_area(3), 4.0 * std::numbers::pi, 1e-14);
  EXPECT_NEAR(ball_volume(3), 4.0 * std::numbers::pi / 3.0, 1e-14);
  for (int n = 2; n < 8; ++n) EXPECT_NEAR(sphere_area(n), n * ball_volume(n), 1e-13);
}

TEST(BallSpectrum, InvalidInput) {
  EXPECT_THROW(closed_form_eigenvalue({1, 1.0}, 2), Error);
  EXPECT_THROW(closed_form_eigenvalue({2, -1.0}, 2), Error);
  EXPECT_THROW(closed_form_eigenvalue({2, 0.0}, 2), Error);
  EXPECT_THROW(enumerate_spectrum({2, 1.0}, 0), Error);
}
