#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <numbers>
#include <vector>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "bisteklov/ball_spectrum.hpp"
#include "bisteklov/errors.hpp"
#include "bisteklov/harmonics.hpp"

namespace bisteklov {

enum class Smoothness { Smooth, PiecewiseC2 };

struct RadialProfile {
  std::function<std::array<double, 3>(double)> eval;  // R, R', R''
  double a = 0.0;
  double b = 1.0;
  std::vector<double> breakpoints;  // interior points where R'' may jump
  Smoothness smoothness = Smoothness::Smooth;

  void validate() const {
    detail::require(static_cast<bool>(eval), "RadialProfile: missing evaluator");
    detail::require(std::isfinite(a) && std::isfinite(b) && a >= 0.0 && b > a, "RadialProfile: need 0 <= a < b");
    for (double p : breakpoints) detail::require(p > a && p < b, "RadialProfile: breakpoint outside (a,b)");
  }

  // Copy restricted to another interval, keeping breakpoints that fall inside.
  RadialProfile on(double lo, double hi) const {
    RadialProfile p = *this;
    p.a = lo;
    p.b = hi;
    p.breakpoints.clear();
    for (double x : breakpoints)
      if (x > lo && x < hi) p.breakpoints.push_back(x);
    return p;
  }
};

inline RadialProfile power_profile(double p, double scale = 1.0) {
  RadialProfile rp;
  rp.eval = [p, scale](double r) -> std::array<double, 3> {
    return {scale * ModeProfile::power_derivative(static_cast<int>(p), r, 0),
            scale * ModeProfile::power_derivative(static_cast<int>(p), r, 1),
            scale * ModeProfile::power_derivative(static_cast<int>(p), r, 2)};
  };
  return rp;
}

inline RadialProfile mode_radial_profile(const ModeProfile& mode) {
  RadialProfile rp;
  rp.eval = [mode](double r) -> std::array<double, 3> {
    const auto v = mode.eval(r);
    return {v[0], v[1], v[2]};
  };
  return rp;
}

inline RadialProfile bessel_profile(int l, int dim, double tau) {
  detail::require(tau > 0.0, "bessel_profile: tau must be > 0");
  RadialProfile rp;
  const double s = std::sqrt(tau);
  rp.eval = [=](double r) -> std::array<double, 3> {
    const auto w = ultraspherical_derivatives(BesselKind::I, l, dim, s * r);
    return {w[0], s * w[1], tau * w[2]};
  };
  return rp;
}

// 6r^2 - r^4 on [0,1], 8r - 3 beyond.
inline RadialProfile annulus_trial_profile(double a, double b) {
  RadialProfile rp;
  rp.a = a;
  rp.b = b;
  rp.smoothness = Smoothness::PiecewiseC2;
  if (a < 1.0 && b > 1.0) rp.breakpoints = {1.0};
  rp.eval = [](double r) -> std::array<double, 3> {
    if (r <= 1.0) return {6.0 * r * r - r * r * r * r, 12.0 * r - 4.0 * r * r * r, 12.0 - 12.0 * r * r};
    return {8.0 * r - 3.0, 8.0, 0.0};
  };
  return rp;
}

struct QuotientReport {
  double numerator = 0.0;
  double denominator = 0.0;
  double quotient = 0.0;
  double error_estimate = 0.0;
  double measure_normalized = 0.0;  // quotient rescaled to a domain of the unit ball's measure
};

namespace detail {

// Integrand of the reduced numerator. The angular part
//   2k(rR' - 3R/2)^2/r^4 + k(k-N-1/2)R^2/r^4 + (N-1)R'^2/r^2
// is regrouped with q = R' - R/r as
//   (2k+N-1)q^2/r^2 + 2(N-1-k)qR/r^3 + (k-1)(k-N+1)R^2/r^4,
// which is the same polynomial but keeps the l=1 case (k=N-1) free of 1/r^2 cancellation.
// At k=0 only (N-1)R'^2/r^2 survives and is used directly.
inline double reduced_integrand(const std::array<double, 3>& v, double r, double k, int dim, double tau) {
  const double R = v[0], R1 = v[1], R2 = v[2];
  const double n1 = dim - 1.0;
  const double q = R1 - R / r;
  const double x = R / r;  // so R/r^2 = x/r
  const double ang = k == 0.0 ? n1 * R1 * R1 / (r * r)
                               : ((2.0 * k + n1) * q * q + 2.0 * (n1 - k) * q * x + (k - 1.0) * (k - n1) * x * x) / (r * r);
  const double rest = R2 * R2 + tau * (k * x * x + R1 * R1);
  return (ang + rest) * std::pow(r, dim - 1);
}

inline std::vector<double> segment_points(const RadialProfile& p) {
  std::vector<double> pts{p.a};
  if (p.a == 0.0) {
    const double h = p.b;
    for (double f : {1e-6, 1e-4, 1e-2, 0.1}) pts.push_back(f * h);
  }
  for (double x : p.breakpoints) pts.push_back(x);
  pts.push_back(p.b);
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

template <class F>
double adaptive_gk(F& f, double a, double b, double abs_tol, int depth, double& err) {
  double e = 0.0;
  const double v = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, a, b, 0, 0.0, &e);
  if (e <= abs_tol || depth == 0) {
    err += e;
    return v;
  }
  const double m = 0.5 * (a + b);
  return adaptive_gk(f, a, m, 0.5 * abs_tol, depth - 1, err) + adaptive_gk(f, m, b, 0.5 * abs_tol, depth - 1, err);
}

}  // namespace detail

// The order-l radial numerator with k = l(l+N-2); the k argument allows evaluating the
// same profile at a different angular order.
inline double reduced_radial_numerator_k(const RadialProfile& profile, double k, int dim, double tau,
                                         double* error = nullptr) {
  profile.validate();
  detail::require(dim >= 2 && tau >= 0.0 && k >= 0.0, "reduced_radial_numerator: bad parameters");
  auto f = [&](double r) { return detail::reduced_integrand(profile.eval(r), r, k, dim, tau); };
  if (profile.a == 0.0) {
    // r f(r) must vanish at the origin for the 1/r^4 terms to be integrable.
    double scale = 0.0;
    for (double s : {0.25, 0.5, 0.75, 1.0}) scale = std::max(scale, std::abs(s * profile.b * f(s * profile.b)));
    const double g4 = std::abs(1e-4 * f(1e-4 * profile.b)), g6 = std::abs(1e-6 * f(1e-6 * profile.b)),
                 g8 = std::abs(1e-8 * f(1e-8 * profile.b));
    if (g8 > 1e-6 * std::max(scale, 1e-300) && g8 > 0.5 * g6 && g6 > 0.5 * g4)
      throw Error(ErrorCode::Divergence, "reduced_radial_numerator: integrand not integrable at r=0");
  }
  const auto pts = detail::segment_points(profile);
  // Tolerance is absolute against the integrand's L1 size: a relative test on the tiny
  // segments near r=0 sits below roundoff and never terminates early.
  double l1 = 0.0;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    double e = 0.0, m = 0.0;
    boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, pts[i], pts[i + 1], 0, 0.0, &e, &m);
    l1 += m;
  }
  const double abs_tol = 1e-14 * l1;
  double total = 0.0, err = 0.0;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) total += detail::adaptive_gk(f, pts[i], pts[i + 1], abs_tol, 20, err);
  if (error) *error = err;
  if (!(err <= 1e-9 * std::max(std::abs(total), 1e-300)))
    throw Error(ErrorCode::RefineNeeded, "reduced_radial_numerator: quadrature error above 1e-9");
  return total;
}

inline double reduced_radial_numerator(const RadialProfile& profile, int l, int dim, double tau,
                                       double* error = nullptr) {
  detail::require(l >= 0, "reduced_radial_numerator: l must be >= 0");
  return reduced_radial_numerator_k(profile, angular_eigenvalue(l, dim), dim, tau, error);
}

struct RadialDomain {
  double a = 0.0;  // 0 for a ball
  double b = 1.0;
};

struct BoundaryDensity {
  double inner = 1.0;
  double outer = 1.0;
};

inline QuotientReport rayleigh_quotient(const RadialProfile& profile, int l, int dim, double tau, RadialDomain dom,
                                        BoundaryDensity rho = {}) {
  detail::require(dom.a >= 0.0 && dom.b > dom.a, "rayleigh_quotient: bad domain");
  detail::require(rho.inner > 0.0 && rho.outer > 0.0, "rayleigh_quotient: densities must be positive");
  const RadialProfile p = profile.on(dom.a, dom.b);
  QuotientReport rep;
  rep.numerator = reduced_radial_numerator(p, l, dim, tau, &rep.error_estimate);
  const double Rb = p.eval(dom.b)[0];
  rep.denominator = rho.outer * Rb * Rb * std::pow(dom.b, dim - 1);
  if (dom.a > 0.0) {
    const double Ra = p.eval(dom.a)[0];
    rep.denominator += rho.inner * Ra * Ra * std::pow(dom.a, dim - 1);
  }
  if (!(rep.denominator > 0.0))
    throw Error(ErrorCode::InvalidTrialFunction, "rayleigh_quotient: trial function vanishes on the boundary");
  rep.quotient = rep.numerator / rep.denominator;
  // lambda(s*Omega) = s^{-3} lambda(Omega) at tau = 0; rescale to measure |B|.
  rep.measure_normalized = rep.quotient * std::pow(std::pow(dom.b, dim) - std::pow(dom.a, dim), 3.0 / dim);
  return rep;
}

inline QuotientReport annulus_trial_quotient(double a, double b, int dim) {
  detail::require(dim == 2 || dim == 3, "annulus_trial_quotient: N must be 2 or 3");
  detail::require(a >= 0.0 && a < 1.0 && b >= 1.0 && b > a,
                  "annulus_trial_quotient: the breakpoint r=1 must lie in [a,b]");
  return rayleigh_quotient(annulus_trial_profile(a, b), 2, dim, 0.0, {a, b});
}

struct PolarGrid {
  int radial_panels = 16;
  int angular_nodes = 64;
};

namespace detail {

// |D^2 u|^2 + tau |grad u|^2 for u = R(r) cos(l theta)/sqrt(pi), from Cartesian entries.
inline double cartesian_density(const std::array<double, 3>& v, double r, double theta, int l, double tau) {
  const double T = circle_harmonic_derivative(l, 0, theta, 0), T1 = circle_harmonic_derivative(l, 0, theta, 1),
               T2 = circle_harmonic_derivative(l, 0, theta, 2);
  const double ur = v[1] * T, ut = v[0] * T1, urr = v[2] * T, urt = v[1] * T1, utt = v[0] * T2;
  const double c = std::cos(theta), s = std::sin(theta);
  const double ux = c * ur - s / r * ut;
  const double uy = s * ur + c / r * ut;
  const double uxx = c * c * urr - 2.0 * s * c / r * urt + s * s / (r * r) * utt + s * s / r * ur + 2.0 * s * c / (r * r) * ut;
  const double uyy = s * s * urr + 2.0 * s * c / r * urt + c * c / (r * r) * utt + c * c / r * ur - 2.0 * s * c / (r * r) * ut;
  const double uxy = s * c * urr + (c * c - s * s) / r * urt - s * c / (r * r) * utt - s * c / r * ur -
                     (c * c - s * s) / (r * r) * ut;
  return uxx * uxx + 2.0 * uxy * uxy + uyy * uyy + tau * (ux * ux + uy * uy);
}

inline double cartesian_numerator(const RadialProfile& p, int l, double tau, PolarGrid g) {
  boost::math::quadrature::gauss<double, 20> gl;
  std::vector<double> cuts{p.a};
  for (double x : p.breakpoints) cuts.push_back(x);
  cuts.push_back(p.b);
  double total = 0.0;
  for (std::size_t s = 0; s + 1 < cuts.size(); ++s) {
    const double lo = cuts[s], hi = cuts[s + 1];
    for (int i = 0; i < g.radial_panels; ++i) {
      const double a = lo + (hi - lo) * i / g.radial_panels, b = lo + (hi - lo) * (i + 1) / g.radial_panels;
      total += gl.integrate(
          [&](double r) {
            const auto v = p.eval(r);
            double ring = 0.0;
            for (int j = 0; j < g.angular_nodes; ++j)
              ring += cartesian_density(v, r, 2.0 * std::numbers::pi * j / g.angular_nodes, l, tau);
            return ring * 2.0 * std::numbers::pi / g.angular_nodes * r;
          },
          a, b);
    }
  }
  return total;
}

}  // namespace detail

// Independent N=2 numerator: Cartesian Hessian on a polar tensor grid, checked against
// a grid with twice the radial panels.
inline double cartesian_oracle_2d(const RadialProfile& profile, int l, double tau, PolarGrid grid = {}) {
  profile.validate();
  detail::require(l >= 0 && tau >= 0.0, "cartesian_oracle_2d: bad parameters");
  detail::require(grid.radial_panels >= 1 && grid.angular_nodes >= 2 * l + 8, "cartesian_oracle_2d: grid too small");
  const double coarse = detail::cartesian_numerator(profile, l, tau, grid);
  PolarGrid fine = grid;
  fine.radial_panels *= 2;
  const double v = detail::cartesian_numerator(profile, l, tau, fine);
  if (std::abs(v - coarse) > 1e-6 * std::max(std::abs(v), 1e-300))
    throw Error(ErrorCode::RefineNeeded, "cartesian_oracle_2d: grid too coarse");
  return v;
}

}  // namespace bisteklov
