#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <vector>

#include "bisteklov/errors.hpp"
#include "bisteklov/harmonics.hpp"
#include "bisteklov/specfun.hpp"

namespace bisteklov {

struct ProblemParams {
  int dim = 2;
  double tau = 1.0;

  void validate() const {
    detail::require(dim >= 2, "ProblemParams: N must be >= 2");
    detail::require(std::isfinite(tau) && tau >= 0.0, "ProblemParams: tau must be finite and >= 0");
  }
};

enum class Normalization { BoundaryUnit, Raw };

// R(r) = A r^l + B i_l(sqrt(tau) r) for tau > 0, R(r) = A r^l + B r^{l+2} for tau = 0.
struct ModeProfile {
  int l = 0;
  int dim = 2;
  double tau = 0.0;
  double A = 1.0;
  double B = 0.0;
  Normalization normalization = Normalization::BoundaryUnit;

  // R, R', R'', R''' at r >= 0.
  std::array<double, 4> eval(double r) const {
    detail::require(std::isfinite(r) && r >= 0.0, "ModeProfile: r must be >= 0");
    std::array<double, 4> out{};
    for (int d = 0; d < 4; ++d) out[d] = A * power_derivative(l, r, d);
    if (B == 0.0) return out;
    if (tau == 0.0) {
      for (int d = 0; d < 4; ++d) out[d] += B * power_derivative(l + 2, r, d);
      return out;
    }
    const double s = std::sqrt(tau);
    const auto w = ultraspherical_derivatives(BesselKind::I, l, dim, s * r);
    double f = 1.0;
    for (int d = 0; d < 4; ++d) {
      out[d] += B * f * w[d];
      f *= s;
    }
    return out;
  }

  static double power_derivative(int p, double r, int d) {
    if (d > p) return 0.0;
    double ff = 1.0;
    for (int j = 0; j < d; ++j) ff *= (p - j);
    return p - d == 0 ? ff : ff * std::pow(r, p - d);
  }
};

// Eigenvalue formula for general l, without the exact shortcuts at l = 0, 1.
inline double closed_form_formula(const ProblemParams& params, int l) {
  params.validate();
  detail::require(params.tau > 0.0, "closed_form_eigenvalue: tau must be > 0");
  detail::require(l >= 0, "closed_form_eigenvalue: l must be >= 0");
  const int n = params.dim;
  const double tau = params.tau, s = std::sqrt(tau);
  const auto w = ultraspherical_derivatives(BesselKind::I, l, n, s);
  const double L = l;
  const double den = (1.0 - L) * L * w[0] + tau * w[2];
  const double den_scale = std::abs((1.0 - L) * L * w[0]) + std::abs(tau * w[2]);
  if (!(std::abs(den) > 1e-13 * den_scale))
    throw Error(ErrorCode::DegenerateFormula, "closed_form_eigenvalue: vanishing denominator");
  const double bracket = 3.0 * (L - 1.0) * L * (L + n - 2.0) * w[0] -
                         (L - 1.0) * s * (n - 1.0 + 2.0 * n * L + 2.0 * (L - 2.0) * L + tau) * w[1] +
                         tau * ((L - 1.0) * (L + 2.0 * n - 3.0) + tau) * w[2] +
                         (L - 1.0) * tau * s * w[3];
  return L * bracket / den;
}

inline double closed_form_eigenvalue(const ProblemParams& params, int l) {
  params.validate();
  detail::require(params.tau > 0.0, "closed_form_eigenvalue: tau must be > 0");
  detail::require(l >= 0, "closed_form_eigenvalue: l must be >= 0");
  if (l == 0) return 0.0;
  if (l == 1) return params.tau;
  return closed_form_formula(params, l);
}

// l(l-1)(N + 2Nl + (l-1)(2+3l)) / (1+2l), exact integer numerator.
inline double tau0_eigenvalue(int dim, int l) {
  detail::require(dim >= 2 && l >= 0, "tau0_eigenvalue: need N>=2, l>=0");
  const std::int64_t L = l, N = dim;
  const std::int64_t num = L * (L - 1) * (N + 2 * N * L + (L - 1) * (2 + 3 * L));
  return static_cast<double>(num) / static_cast<double>(1 + 2 * L);
}

inline double mode_coefficient_ratio(const ProblemParams& params, int l) {
  params.validate();
  detail::require(l >= 0, "mode_coefficient_ratio: l must be >= 0");
  if (l <= 1) return 0.0;
  if (params.tau == 0.0) return -static_cast<double>(l) * (l - 1) / ((l + 2.0) * (l + 1.0));
  const double i2 = ultraspherical_derivatives(BesselKind::I, l, params.dim, std::sqrt(params.tau))[2];
  return static_cast<double>(l) * (1 - l) / (params.tau * i2);
}

inline ModeProfile mode_profile(const ProblemParams& params, int l) {
  params.validate();
  ModeProfile p;
  p.l = l;
  p.dim = params.dim;
  p.tau = params.tau;
  p.A = 1.0;
  p.B = mode_coefficient_ratio(params, l);
  const double r1 = p.eval(1.0)[0];
  if (!(std::abs(r1) > 0.0)) throw Error(ErrorCode::DegenerateMode, "mode_profile: R(1) = 0");
  p.A /= r1;
  p.B /= r1;
  return p;
}

inline double radial_profile(const ProblemParams& params, int l, double r, int d) {
  detail::require(std::isfinite(r) && r >= 0.0 && r <= 1.0, "radial_profile: r must lie in [0,1]");
  detail::require(d >= 0 && d <= 3, "radial_profile: d must be in 0..3");
  return mode_profile(params, l).eval(r)[d];
}

inline double ball_eigenvalue(const ProblemParams& params, int l) {
  return params.tau == 0.0 ? tau0_eigenvalue(params.dim, l) : closed_form_eigenvalue(params, l);
}

struct SpectrumEntry {
  int l = 0;
  double lambda = 0.0;
  int multiplicity = 1;
  int used = 1;  // copies counted toward the requested total (the last entry may be partial)
  ModeProfile profile;
};

// First `count` eigenvalues with multiplicity, grouped by harmonic order.
inline std::vector<SpectrumEntry> enumerate_spectrum(const ProblemParams& params, int count) {
  params.validate();
  detail::require(count >= 1, "enumerate_spectrum: count must be >= 1");
  std::vector<SpectrumEntry> all;
  int total = 0;
  // lambda_(l) increases for l >= 2, so once the count is reached no later order can
  // undercut the entries already collected.
  for (int l = 0; total < count; ++l) {
    SpectrumEntry e;
    e.l = l;
    e.lambda = ball_eigenvalue(params, l);
    e.multiplicity = multiplicity(l, params.dim);
    e.profile = mode_profile(params, l);
    total += e.multiplicity;
    all.push_back(e);
  }
  std::stable_sort(all.begin(), all.end(),
                   [](const SpectrumEntry& a, const SpectrumEntry& b) { return a.lambda < b.lambda; });
  int left = count;
  std::vector<SpectrumEntry> out;
  for (auto& e : all) {
    if (left <= 0) break;
    e.used = std::min(left, e.multiplicity);
    left -= e.used;
    out.push_back(e);
  }
  return out;
}

// Eigenvalues repeated by multiplicity, truncated to the requested count.
inline std::vector<double> expand_spectrum(const std::vector<SpectrumEntry>& entries) {
  std::vector<double> v;
  for (const auto& e : entries) v.insert(v.end(), e.used, e.lambda);
  return v;
}

// sum_{j=2}^{N+1} 1/lambda_j(B).
inline double reciprocal_sum_rule(const ProblemParams& params) {
  detail::require(params.tau > 0.0, "reciprocal_sum_rule: tau must be > 0");
  const auto v = expand_spectrum(enumerate_spectrum(params, params.dim + 1));
  double s = 0.0;
  for (int j = 1; j <= params.dim; ++j) s += 1.0 / v[j];
  return s;
}

// |S^{N-1}| and |B^N|.
inline double sphere_area(int dim) {
  return 2.0 * std::pow(std::numbers::pi, 0.5 * dim) / std::tgamma(0.5 * dim);
}
inline double ball_volume(int dim) {
  return std::pow(std::numbers::pi, 0.5 * dim) / std::tgamma(0.5 * dim + 1.0);
}

}  // namespace bisteklov
