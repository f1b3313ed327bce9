#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "bisteklov/specfun.hpp"

using namespace bisteklov;

namespace {

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

struct Ref {
  BesselKind kind;
  double nu, z, value, derivative;
};

// mpmath at 40 digits: besseli/besselk/besselj/bessely and their numeric derivative.
const Ref kRefs[] = {
    {BesselKind::I, 0.0, 0.1, 1.0025015629340956, 0.050062526047092695},
    {BesselKind::I, 2.0, 0.0001, 1.2500000010416668e-9, 2.5000000041666668e-5},
    {BesselKind::I, 0.5, 1.0, 0.93767488824548765, 0.76236277047022362},
    {BesselKind::I, 3.5, 20.0, 31837663.351655531, 31540791.342068088},
    {BesselKind::I, 10.0, 50.0, 1.071597159477637e+20, 1.0824737793663005e+20},
    {BesselKind::I, 60.0, 100.0, 2.4691003858200679e+34, 2.8703700258388851e+34},
    {BesselKind::K, 0.0, 0.1, 2.4270690247020166, -9.8538447808706056},
    {BesselKind::K, 1.0, 1.0, 0.60190723019723457, -1.0229316684379429},
    {BesselKind::K, 2.5, 10.0, 2.3931325864627889e-5, -2.577565736923267e-5},
    {BesselKind::K, 30.0, 40.0, 3.6670011340654641e-14, -4.6132007985732293e-14},
    {BesselKind::J, 0.0, 1e-08, 0.99999999999999997, -5.0e-9},
    {BesselKind::J, 1.0, 2.5, 0.49709410246427404, -0.24722141745390761},
    {BesselKind::J, 7.5, 30.0, 0.13142029812318965, 0.063638328218712673},
    {BesselKind::J, 40.0, 150.0, -0.053178029743433989, 0.038448228939631738},
    {BesselKind::J, 5.0, 499.0, 0.034155634327493472, -0.010485845600944189},
    {BesselKind::Y, 0.0, 0.5, -0.44451873350670656, 1.4714723926702431},
    {BesselKind::Y, 1.0, 3.0, 0.32467442479179998, 0.26862520174885706},
    {BesselKind::Y, 12.0, 60.0, -0.069093286931009178, -0.075643896354153638},
    {BesselKind::Y, 3.0, 499.0, -0.0099030683479065413, -0.034307731006203918},
    {BesselKind::Y, 20.0, 10.0, -1597.483848269626, 2737.8031508360932},
};

// Independent power-series oracle for I_nu.
double i_series_oracle(double nu, double z) {
  double s = 0.0;
  for (int k = 0; k < 60; ++k) s += std::pow(z / 2.0, nu + 2 * k) / (std::tgamma(k + 1.0) * std::tgamma(nu + k + 1.0));
  return s;
}

}  // namespace

TEST(Specfun, MatchesHighPrecisionReferences) {
  for (const auto& r : kRefs) {
    const auto p = bessel_pair(r.kind, r.nu, r.z);
    const double scale = std::max(std::abs(r.value), std::abs(r.derivative));
    EXPECT_LE(std::abs(p.value - r.value), 1e-12 * scale) << to_string(r.kind) << " nu=" << r.nu << " z=" << r.z;
    EXPECT_LE(std::abs(p.derivative - r.derivative), 1e-12 * scale) << to_string(r.kind) << " nu=" << r.nu << " z=" << r.z;
  }
}

TEST(Specfun, SmallArgumentLeadingTerm) {
  EXPECT_LE(rel(bessel_eval(BesselKind::I, 2.0, 1e-4), 1.25e-9), 1e-6);
}

TEST(Specfun, HalfIntegerClosedFormAndSeriesOracle) {
  const double v = bessel_eval(BesselKind::I, 0.5, 1.0);
  EXPECT_LE(rel(v, std::sqrt(2.0 / std::numbers::pi) * std::sinh(1.0)), 1e-14);
  EXPECT_LE(rel(v, i_series_oracle(0.5, 1.0)), 1e-14);
  for (double nu : {0.0, 1.5, 4.0, 9.5})
    for (double z : {0.01, 0.7, 3.0, 8.0}) EXPECT_LE(rel(bessel_eval(BesselKind::I, nu, z), i_series_oracle(nu, z)), 1e-13);
}

TEST(Specfun, J0NearZero) { EXPECT_NEAR(bessel_eval(BesselKind::J, 0.0, 1e-8), 1.0, 1e-15); }

TEST(Specfun, TemmeGammaCoefficientsAgreeWithTgamma) {
  for (double mu : {-0.5, -0.2, 0.1, 0.3, 0.5}) {
    const auto g = detail::temme_gammas(mu);
    const double a = 1.0 / std::tgamma(1.0 - mu), b = 1.0 / std::tgamma(1.0 + mu);
    EXPECT_NEAR(g.gampl, b, 1e-14);
    EXPECT_NEAR(g.gammi, a, 1e-14);
    EXPECT_NEAR(g.gam2, 0.5 * (a + b), 1e-14);
    EXPECT_NEAR(g.gam1, (a - b) / (2.0 * mu), 1e-13);
  }
}

TEST(Specfun, Wronskian) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> nu_d(0.0, 10.0), z_d(0.1, 50.0);
  for (int i = 0; i < 200; ++i) {
    const double nu = nu_d(rng), z = z_d(rng);
    const auto j = bessel_pair(BesselKind::J, nu, z), y = bessel_pair(BesselKind::Y, nu, z);
    EXPECT_LE(rel(j.value * y.derivative - j.derivative * y.value, 2.0 / (std::numbers::pi * z)), 1e-10)
        << "nu=" << nu << " z=" << z;
    const auto ii = bessel_pair(BesselKind::I, nu, z, true), k = bessel_pair(BesselKind::K, nu, z, true);
    // Scaled factors cancel in I K' - I' K = -1/z.
    EXPECT_LE(rel(ii.value * k.derivative - ii.derivative * k.value, -1.0 / z), 1e-10) << "nu=" << nu << " z=" << z;
  }
}

TEST(Specfun, ScaledUnscaledConsistency) {
  for (double nu : {0.0, 1.0, 2.5, 12.0})
    for (double z : {0.5, 5.0, 40.0, 300.0}) {
      EXPECT_LE(rel(bessel_eval(BesselKind::I, nu, z), bessel_eval(BesselKind::I, nu, z, true) * std::exp(z)), 1e-13);
      EXPECT_LE(rel(bessel_eval(BesselKind::K, nu, z), bessel_eval(BesselKind::K, nu, z, true) * std::exp(-z)), 1e-13);
    }
  EXPECT_LE(rel(bessel_eval(BesselKind::I, 1.0, 300.0, true), 0.023004122040268951), 1e-12);
  EXPECT_LE(rel(bessel_eval(BesselKind::K, 1.0, 300.0, true), 0.072450481667258409), 1e-12);
  EXPECT_LE(rel(bessel_eval(BesselKind::I, 0.0, 700.0, true), 0.015081295651531358), 1e-12);
}

TEST(Specfun, ErrorSignals) {
  auto code = [](auto&& f) {
    try {
      f();
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::NoConvergence;  // sentinel: nothing thrown
  };
  EXPECT_EQ(code([] { bessel_eval(BesselKind::I, 1.0, 800.0); }), ErrorCode::Overflow);
  EXPECT_NO_THROW(bessel_eval(BesselKind::I, 1.0, 800.0, true));
  EXPECT_EQ(code([] { bessel_eval(BesselKind::K, 1.0, 0.0); }), ErrorCode::Pole);
  EXPECT_EQ(code([] { bessel_eval(BesselKind::J, 1.0, NAN); }), ErrorCode::InvalidArgument);
  EXPECT_EQ(code([] { bessel_eval(BesselKind::I, -1.0, 1.0); }), ErrorCode::InvalidArgument);
  EXPECT_EQ(code([] { ultraspherical_derivatives(BesselKind::K, 1, 2, 0.0); }), ErrorCode::Pole);
  EXPECT_EQ(code([] { ultraspherical_derivatives(BesselKind::Y, 0, 3, 0.0); }), ErrorCode::Pole);
}

TEST(Specfun, UltrasphericalReferences) {
  struct R {
    int l, n;
    double z;
    std::array<double, 4> w;
  };
  // mpmath: d^k/dz^k of z^{1-N/2} I_{N/2-1+l}(z).
  const R refs[] = {
      {0, 2, 1.0, {1.2660658777520083, 0.56515910399248503, 0.70090677375952331, 0.42941143422544675}},
      {2, 3, 1.0, {0.057098909203048247, 0.12222859873833506, 0.15523516694466762, 0.10440014431910132}},
      {3, 2, 0.5, {0.0026451119689902859, 0.016035477363796539, 0.065798188125047499, 0.14496207213096192}},
      {3, 2, 2.0, {0.21273995923985266, 0.36983850883895922, 0.50648561311004152, 0.56252706609166804}},
      {3, 2, 10.0, {1758.3807166108532, 1754.0047527427476, 1741.2345058315553, 1723.6309245348714}},
      {1, 3, 0.05, {0.013301400829230232, 0.26616102109295187, 0.0079812204953402341, 0.15971941463494242}},
      {5, 4, 7.0, {1.7994160995370464, 2.0413676704306469, 2.209841454736088, 2.310166444543632}},
  };
  for (const auto& r : refs) {
    const auto w = ultraspherical_derivatives(BesselKind::I, r.l, r.n, r.z);
    for (int d = 0; d < 4; ++d) EXPECT_LE(rel(w[d], r.w[d]), 1e-12) << "l=" << r.l << " N=" << r.n << " z=" << r.z << " d=" << d;
  }
  // Wrapper is the identity for N=2, l=0.
  EXPECT_DOUBLE_EQ(ultraspherical_eval({BesselKind::I, 0, 2, 0}, 1.0), bessel_eval(BesselKind::I, 0.0, 1.0));
}

TEST(Specfun, FirstDerivativeRecurrenceExample) {
  const double d1 = ultraspherical_eval({BesselKind::I, 2, 3, 1}, 1.0);
  const double i2 = ultraspherical_eval({BesselKind::I, 2, 3, 0}, 1.0);
  const double i3 = ultraspherical_eval({BesselKind::I, 3, 3, 0}, 1.0);
  EXPECT_LE(rel(d1, 2.0 * i2 + i3), 1e-12);
}

TEST(Specfun, Positivity) {
  for (double z : {0.5, 2.0, 10.0}) {
    const auto w = ultraspherical_derivatives(BesselKind::I, 3, 2, z);
    for (double x : w) EXPECT_GT(x, 0.0);
  }
}

// i_l' = l/z i_l + i_{l+1}, i_l'' = l(l-1)/z² i_l + (2l+1)/z i_{l+1} + i_{l+2},
// i_l''' = l(l-1)(l-2)/z³ i_l + 3l²/z² i_{l+1} + 3(l+1)/z i_{l+2} + i_{l+3}.
TEST(Specfun, RecurrencesOnRandomSamples) {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> l_d(0, 10), n_d(2, 4);
  std::uniform_real_distribution<double> t_d(0.1, 25.0);
  for (int i = 0; i < 300; ++i) {
    const int l = l_d(rng), n = n_d(rng);
    const double z = std::sqrt(t_d(rng));
    const auto w = ultraspherical_derivatives(BesselKind::I, l, n, z);
    const double a = ultraspherical_derivatives(BesselKind::I, l + 1, n, z)[0];
    const double b = ultraspherical_derivatives(BesselKind::I, l + 2, n, z)[0];
    const double c = ultraspherical_derivatives(BesselKind::I, l + 3, n, z)[0];
    EXPECT_LE(rel(w[1], l / z * w[0] + a), 1e-10);
    EXPECT_LE(rel(w[2], l * (l - 1.0) / (z * z) * w[0] + (2.0 * l + 1.0) / z * a + b), 1e-10);
    EXPECT_LE(rel(w[3], l * (l - 1.0) * (l - 2.0) / (z * z * z) * w[0] + 3.0 * l * l / (z * z) * a + 3.0 * (l + 1.0) / z * b + c),
              1e-10);
  }
}

TEST(Specfun, MonotoneDomination) {
  for (int n : {2, 3, 4})
    for (double z : {0.01, 0.3, 1.0, 4.0, 20.0, 80.0})
      for (int l = 0; l < 10; ++l)
        EXPECT_GE(ultraspherical_derivatives(BesselKind::I, l, n, z)[0], ultraspherical_derivatives(BesselKind::I, l + 1, n, z)[0]);
}

// Each wrapper kind solves w'' + (N-1)/z w' - (k/z² ± 1) w = 0.
TEST(Specfun, WrappersSolveTheirOde) {
  for (auto kind : {BesselKind::I, BesselKind::K, BesselKind::J, BesselKind::Y})
    for (int n : {2, 3, 5})
      for (int l : {0, 1, 4})
        for (double z : {0.3, 2.5, 9.0}) {
          const auto w = ultraspherical_derivatives(kind, l, n, z);
          const double k = l * (l + n - 2.0), s = is_modified(kind) ? 1.0 : -1.0;
          const double res = w[2] + (n - 1.0) / z * w[1] - (k / (z * z) + s) * w[0];
          const double scale = std::abs(w[2]) + std::abs((n - 1.0) / z * w[1]) + std::abs((k / (z * z) + s) * w[0]);
          EXPECT_LE(std::abs(res), 1e-12 * scale) << to_string(kind) << " l=" << l << " N=" << n << " z=" << z;
          // Third derivative against a central difference of the second.
          const double h = 1e-4 * z;
          const double fd = (ultraspherical_derivatives(kind, l, n, z + h)[2] - ultraspherical_derivatives(kind, l, n, z - h)[2]) / (2 * h);
          EXPECT_LE(std::abs(fd - w[3]), 1e-6 * (std::abs(w[3]) + std::abs(w[2]) + std::abs(w[0]))) << to_string(kind);
        }
}
