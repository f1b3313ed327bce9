#pragma once

// Shape derivatives of eigenvalue multiplets on the unit disk (N = 2) under normal
// perturbations of the boundary.

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "bisteklov/ball_spectrum.hpp"
#include "bisteklov/errors.hpp"
#include "bisteklov/harmonics.hpp"
#include "bisteklov/radial_solver.hpp"
#include "bisteklov/roots.hpp"

namespace bisteklov {

enum class Problem { Steklov, Neumann };

inline std::string to_string(Problem p) { return p == Problem::Steklov ? "steklov" : "neumann"; }

// g = μ·ν as a function of the polar angle.
struct NormalSpeed {
  std::function<double(double)> g;

  double operator()(double theta) const { return g(theta); }

  static NormalSpeed constant(double c) {
    return {[c](double) { return c; }};
  }
  static NormalSpeed cosine(int m, double amp = 1.0) {
    return {[m, amp](double t) { return amp * std::cos(m * t); }};
  }
  static NormalSpeed sine(int m, double amp = 1.0) {
    return {[m, amp](double t) { return amp * std::sin(m * t); }};
  }
  NormalSpeed operator+(const NormalSpeed& o) const {
    return {[a = g, b = o.g](double t) { return a(t) + b(t); }};
  }
};

struct MultipletSpec {
  Problem problem = Problem::Steklov;
  int l = 0;
  int dim = 2;
  double tau = 1.0;
  std::vector<int> indices;  // circle harmonic indices (0: cos, 1: sin)
  int s = 1;
  double lambda = 0.0;
  // R(1), R'(1), R''(1) of the radial profile after normalization.
  std::array<double, 3> jet{};

  int size() const { return static_cast<int>(indices.size()); }

  void validate() const {
    detail::require(dim == 2, "MultipletSpec: only N = 2 is supported");
    detail::require(l >= 0, "MultipletSpec: l must be >= 0");
    detail::require(size() == multiplicity(l, dim), "MultipletSpec: |F| must equal the multiplicity of l");
    detail::require(s >= 1 && s <= size(), "MultipletSpec: s must lie in [1, |F|]");
    for (int i : indices) detail::require(i >= 0 && i < multiplicity(l, dim), "MultipletSpec: bad harmonic index");
  }
};

inline std::vector<int> full_index_set(int l, int dim) {
  std::vector<int> v(multiplicity(l, dim));
  for (int i = 0; i < static_cast<int>(v.size()); ++i) v[i] = i;
  return v;
}

// Steklov multiplet: boundary-unit radial profile, circle harmonics orthonormal on ∂B, so
// the modes are L²(∂B)-orthonormal.
inline MultipletSpec steklov_multiplet(int l, double tau, int s = 1) {
  const ProblemParams params{2, tau};
  MultipletSpec m;
  m.problem = Problem::Steklov;
  m.l = l;
  m.tau = tau;
  m.indices = full_index_set(l, 2);
  m.s = s;
  m.lambda = ball_eigenvalue(params, l);
  const auto prof = mode_profile(params, l);
  const auto v = prof.eval(1.0);
  m.jet = {v[0], v[1], v[2]};
  m.validate();
  return m;
}

namespace detail {

// First Neumann root of order l for uniform unit density, searched in a growing window.
inline DispersionRoot first_neumann_root(int l, int dim, double tau, int root_index) {
  const auto rho = LayeredDensity::uniform(dim, 1.0);
  for (double top = 64.0; top <= 1e7; top *= 4.0) {
    const auto res = solve_neumann_eigenvalues(l, dim, tau, rho, {0.0, top}, root_index + 2, {400, 1e-14});
    std::vector<DispersionRoot> pos;
    for (const auto& r : res.roots)
      if (r.lambda > 1e-10) pos.push_back(r);
    if (static_cast<int>(pos.size()) > root_index) return pos[root_index];
  }
  throw Error(ErrorCode::NoRoot, "neumann_multiplet: no root found below 1e7");
}

// Root of the uniform-density Neumann determinant closest to `guess`.
inline double neumann_root_near(int l, int dim, double tau, double guess) {
  const auto rho = LayeredDensity::uniform(dim, 1.0);
  auto det = [&](double lam) { return neumann_determinant(l, dim, tau, lam, rho); };
  for (double w = 1e-3; w < 0.5; w *= 2.0) {
    const double lo = guess * (1.0 - w), hi = guess * (1.0 + w);
    const double flo = det(lo), fhi = det(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if ((flo < 0.0) != (fhi < 0.0)) return brent_root(det, {lo, hi, flo, fhi}, 1e-15, 1e-300);
  }
  throw Error(ErrorCode::NoRoot, "neumann_root_near: lost the root");
}

}  // namespace detail

// Neumann multiplet for uniform unit density; modes L²(B)-orthonormal.
inline MultipletSpec neumann_multiplet(int l, double tau, int s = 1, int root_index = 0) {
  detail::require(std::isfinite(tau) && tau >= 0.0, "neumann_multiplet: tau must be >= 0");
  const auto root = detail::first_neumann_root(l, 2, tau, root_index);
  MultipletSpec m;
  m.problem = Problem::Neumann;
  m.l = l;
  m.tau = tau;
  m.indices = full_index_set(l, 2);
  m.s = s;
  m.lambda = root.lambda;
  const double nrm = std::sqrt(root.mode.l2_norm2());
  if (!(nrm > 0.0)) throw Error(ErrorCode::DegenerateMode, "neumann_multiplet: zero mode");
  const auto v = root.mode.eval(1.0);
  m.jet = {v[0] / nrm, v[1] / nrm, v[2] / nrm};
  m.validate();
  return m;
}

struct SurfaceFields {
  double v2 = 0.0;      // Σ v²
  double dv2 = 0.0;     // Σ ∂(v²)/∂ν
  double grad2 = 0.0;   // Σ |∇v|²
  double hess2 = 0.0;   // Σ |D²v|²
};

// Multiplet sums on the unit circle at angle theta.
inline SurfaceFields surface_fields(const MultipletSpec& m, double theta) {
  const double R = m.jet[0], R1 = m.jet[1], R2 = m.jet[2];
  if (m.problem == Problem::Steklov && !(std::abs(R) > 0.0))
    throw Error(ErrorCode::DegenerateMode, "surface_fields: zero boundary trace");
  SurfaceFields f;
  for (int idx : m.indices) {
    const double Y = circle_harmonic_derivative(m.l, idx, theta, 0);
    const double Yt = circle_harmonic_derivative(m.l, idx, theta, 1);
    const double Ytt = circle_harmonic_derivative(m.l, idx, theta, 2);
    f.v2 += R * R * Y * Y;
    f.dv2 += 2.0 * R * R1 * Y * Y;
    f.grad2 += R1 * R1 * Y * Y + R * R * Yt * Yt;
    // Polar Hessian at r = 1: v_rr, ∂_r(v_θ/r), v_θθ + v_r.
    const double hrr = R2 * Y, hrt = (R1 - R) * Yt, htt = R * Ytt + R1 * Y;
    f.hess2 += hrr * hrr + 2.0 * hrt * hrt + htt * htt;
  }
  return f;
}

// Summed integrand of the boundary formula; K is the curvature of ∂B (sum of principal
// curvatures, 1 on the unit circle). The Neumann integrand has no curvature term.
inline double hadamard_integrand(const MultipletSpec& m, double theta, double K = 1.0) {
  const auto f = surface_fields(m, theta);
  const double lam = m.lambda;
  if (m.problem == Problem::Steklov) return lam * K * f.v2 + lam * f.dv2 - m.tau * f.grad2 - f.hess2;
  return lam * f.v2 - m.tau * f.grad2 - f.hess2;
}

namespace detail {

inline double trapezoid_circle(const std::function<double(double)>& f, int n, double* abs_sum = nullptr) {
  double s = 0.0, a = 0.0;
  for (int j = 0; j < n; ++j) {
    const double v = f(2.0 * std::numbers::pi * j / n);
    s += v;
    a += std::abs(v);
  }
  const double h = 2.0 * std::numbers::pi / n;
  if (abs_sum) *abs_sum = a * h;
  return s * h;
}

}  // namespace detail

constexpr int kHadamardNodes = 2048;

// d Λ_{F,s} along the normal speed g.
inline double hadamard_derivative(const MultipletSpec& m, const NormalSpeed& speed, double K = 1.0) {
  m.validate();
  detail::require(static_cast<bool>(speed.g), "hadamard_derivative: empty speed");
  auto f = [&](double t) { return hadamard_integrand(m, t, K) * speed(t); };
  double scale = 0.0;
  const double fine = detail::trapezoid_circle(f, kHadamardNodes, &scale);
  const double coarse = detail::trapezoid_circle(f, kHadamardNodes / 2);
  if (!std::isfinite(fine)) throw Error(ErrorCode::Divergence, "hadamard_derivative: nonfinite integrand");
  if (std::abs(fine - coarse) > 1e-10 * std::max(scale, 1e-300))
    throw Error(ErrorCode::RefineNeeded, "hadamard_derivative: trapezoid rule not converged at 2048 nodes");
  const double pre = std::pow(m.lambda, m.s - 1) * binomial(m.size() - 1, m.s - 1);
  return -pre * fine;
}

// λ(τ, αB) from the scaling law: α⁻³λ(α²τ) for Steklov, α⁻⁴λ(α²τ) for Neumann.
inline double dilated_eigenvalue(const MultipletSpec& m, double alpha) {
  const double t = alpha * alpha * m.tau;
  if (m.problem == Problem::Steklov) return std::pow(alpha, -3) * ball_eigenvalue({m.dim, t}, m.l);
  return std::pow(alpha, -4) * detail::neumann_root_near(m.l, m.dim, t, m.lambda);
}

// Central difference in α of Λ_{F,s}(αB) = C(|F|, s) λ(τ, αB)^s at α = 1.
inline double scaling_oracle(const MultipletSpec& m, double h = 1e-4) {
  m.validate();
  detail::require(h >= 1e-6 && h <= 1e-2, "scaling_oracle: h must lie in [1e-6, 1e-2]");
  const double c = binomial(m.size(), m.s);
  auto Lam = [&](double a) { return c * std::pow(dilated_eigenvalue(m, a), m.s); };
  return (Lam(1.0 + h) - Lam(1.0 - h)) / (2.0 * h);
}

struct CriticalityReport {
  double mean = 0.0;
  double max_deviation = 0.0;  // relative to the mean (or to the field scale when the mean vanishes)
};

// Constancy of the summed integrand over `samples` boundary points.
inline CriticalityReport criticality_check(const MultipletSpec& m, int samples = 1000, double K = 1.0) {
  m.validate();
  detail::require(samples >= 2, "criticality_check: need at least 2 samples");
  std::vector<double> vals(samples);
  double scale = 0.0;
  for (int j = 0; j < samples; ++j) {
    // Offset keeps samples off the symmetry axes of the harmonics.
    const double t = 2.0 * std::numbers::pi * (j + 0.3183) / samples;
    vals[j] = hadamard_integrand(m, t, K);
    const auto f = surface_fields(m, t);
    scale = std::max({scale, std::abs(m.lambda * f.v2), std::abs(m.lambda * f.dv2), std::abs(m.tau * f.grad2),
                      std::abs(f.hess2)});
  }
  CriticalityReport r;
  for (double v : vals) r.mean += v;
  r.mean /= samples;
  const double ref = std::abs(r.mean) > 1e-12 * scale ? std::abs(r.mean) : scale;
  for (double v : vals) r.max_deviation = std::max(r.max_deviation, std::abs(v - r.mean) / std::max(ref, 1e-300));
  return r;
}

}  // namespace bisteklov
