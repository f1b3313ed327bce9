#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

#include <boost/math/special_functions/erf.hpp>

#include "bisteklov/errors.hpp"

namespace bisteklov {

struct HarmonicLabel {
  int l = 0;
  int dim = 2;
  int index = 0;
};

inline double binomial(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0.0;
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return std::round(r);
}

// Dimension of the order-l spherical harmonics on S^{N-1}.
inline int multiplicity(int l, int dim) {
  detail::require(l >= 0 && dim >= 2, "multiplicity: need l>=0, N>=2");
  if (l == 0) return 1;
  if (l == 1) return dim;
  return static_cast<int>(binomial(l + dim - 1, dim - 1) - binomial(l + dim - 3, dim - 1));
}

// Angular eigenvalue k = l(l+N-2).
inline double angular_eigenvalue(int l, int dim) { return static_cast<double>(l) * (l + dim - 2); }

// d-th theta-derivative of the L^2(circle)-normalized harmonic; index 0 = cos, 1 = sin.
inline double circle_harmonic_derivative(int l, int index, double theta, int d) {
  detail::require(l >= 0 && d >= 0, "circle_harmonic: need l>=0, d>=0");
  detail::require(index == 0 || (l >= 1 && index == 1), "circle_harmonic: index out of range");
  if (l == 0) return d == 0 ? 1.0 / std::sqrt(2.0 * std::numbers::pi) : 0.0;
  const double c = 1.0 / std::sqrt(std::numbers::pi);
  const double a = l * theta;
  // d/dθ cos = -l sin, d/dθ sin = l cos: shift the phase by d quarter turns.
  const double phase = a + 0.5 * std::numbers::pi * d;
  const double amp = c * std::pow(static_cast<double>(l), d);
  return index == 0 ? amp * std::cos(phase) : amp * std::sin(phase);
}

inline double circle_harmonic(int l, int index, double theta) {
  return circle_harmonic_derivative(l, index, theta, 0);
}

// Seeded low-discrepancy points on S^{N-1}: an R_d Kronecker sequence pushed through
// the Gaussian quantile and normalized.
inline std::vector<std::vector<double>> sphere_sample(int dim, int count, std::uint64_t seed) {
  detail::require(dim >= 2 && count >= 1, "sphere_sample: need N>=2, count>=1");
  double phi = 2.0;
  for (int i = 0; i < 64; ++i) phi = std::pow(1.0 + phi, 1.0 / (dim + 1));
  std::vector<double> alpha(dim), offset(dim);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (int j = 0; j < dim; ++j) {
    alpha[j] = std::fmod(std::pow(1.0 / phi, j + 1), 1.0);
    offset[j] = unif(rng);
  }
  std::vector<std::vector<double>> pts;
  pts.reserve(count);
  for (int i = 0; i < count; ++i) {
    std::vector<double> x(dim);
    double n2 = 0.0;
    for (int j = 0; j < dim; ++j) {
      double u = std::fmod(offset[j] + (i + 1) * alpha[j], 1.0);
      u = std::clamp(u, 1e-15, 1.0 - 1e-15);
      x[j] = std::numbers::sqrt2 * boost::math::erf_inv(2.0 * u - 1.0);
      n2 += x[j] * x[j];
    }
    if (n2 == 0.0) {
      x[0] = 1.0;
      n2 = 1.0;
    }
    const double inv = 1.0 / std::sqrt(n2);
    for (double& v : x) v *= inv;
    pts.push_back(std::move(x));
  }
  return pts;
}

}  // namespace bisteklov
