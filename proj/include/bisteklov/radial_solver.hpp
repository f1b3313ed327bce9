#pragma once

// Interface-matching eigensolver for radial densities on the unit ball, and the 2x2
// determinant form of the ball Steklov problem.

#include <algorithm>
#include <array>
#include <cmath>
#include <future>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <boost/math/quadrature/gauss.hpp>

#include "bisteklov/ball_spectrum.hpp"
#include "bisteklov/errors.hpp"
#include "bisteklov/roots.hpp"
#include "bisteklov/specfun.hpp"

namespace bisteklov {

struct LayeredDensity {
  int dim = 2;
  std::vector<double> interfaces;  // 0 < r_1 < ... < r_{K-1} < 1
  std::vector<double> values;      // innermost first

  std::size_t layers() const { return values.size(); }
  double inner(std::size_t k) const { return k == 0 ? 0.0 : interfaces[k - 1]; }
  double outer(std::size_t k) const { return k + 1 == layers() ? 1.0 : interfaces[k]; }

  void validate() const {
    detail::require(dim >= 2, "LayeredDensity: N must be >= 2");
    detail::require(!values.empty() && interfaces.size() + 1 == values.size(),
                    "LayeredDensity: need K values and K-1 interfaces");
    for (double v : values) detail::require(std::isfinite(v) && v > 0.0, "LayeredDensity: values must be positive");
    double prev = 0.0;
    for (double r : interfaces) {
      detail::require(r > prev && r < 1.0, "LayeredDensity: interfaces must increase inside (0,1)");
      prev = r;
    }
  }

  double mass() const {
    const double vb = ball_volume(dim);
    double m = 0.0;
    for (std::size_t k = 0; k < layers(); ++k)
      m += values[k] * vb * (std::pow(outer(k), dim) - std::pow(inner(k), dim));
    return m;
  }

  double operator()(double r) const {
    for (std::size_t k = 0; k + 1 < layers(); ++k)
      if (r < interfaces[k]) return values[k];
    return values.back();
  }

  LayeredDensity scaled(double c) const {
    LayeredDensity d = *this;
    for (double& v : d.values) v *= c;
    return d;
  }

  static LayeredDensity uniform(int dim, double value = 1.0) {
    LayeredDensity d;
    d.dim = dim;
    d.values = {value};
    d.validate();
    return d;
  }
};

// Density eps on r < 1-eps and the remainder of the mass M spread over the shell.
inline LayeredDensity make_rho_eps(double eps, double mass, int dim) {
  detail::require(std::isfinite(eps) && eps > 0.0 && eps < 1.0, "make_rho_eps: eps must lie in (0,1)");
  detail::require(std::isfinite(mass) && mass > 0.0, "make_rho_eps: M must be positive");
  detail::require(dim >= 2, "make_rho_eps: N must be >= 2");
  const double vb = ball_volume(dim);
  const double inner_vol = vb * std::pow(1.0 - eps, dim);
  const double shell_vol = vb - inner_vol;
  const double outer = (mass - eps * inner_vol) / shell_vol;
  detail::require(outer > 0.0, "make_rho_eps: outer density is not positive (eps too large for M)");
  LayeredDensity d;
  d.dim = dim;
  d.interfaces = {1.0 - eps};
  d.values = {eps, outer};
  d.validate();
  return d;
}

enum class BasisTag {
  RegularModified,
  SingularModified,
  RegularOscillatory,
  SingularOscillatory,
  RegularPower,
  SingularPower,
};

inline const char* to_string(BasisTag t) {
  switch (t) {
    case BasisTag::RegularModified: return "regular-modified";
    case BasisTag::SingularModified: return "singular-modified";
    case BasisTag::RegularOscillatory: return "regular-oscillatory";
    case BasisTag::SingularOscillatory: return "singular-oscillatory";
    case BasisTag::RegularPower: return "regular-power";
    case BasisTag::SingularPower: return "singular-power";
  }
  return "?";
}

struct BasisMember {
  BasisTag tag = BasisTag::RegularPower;
  int l = 0;
  int dim = 2;
  double kappa = 0.0;     // Bessel members: argument kappa*r
  double exponent = 0.0;  // power members: r^exponent (log r)^log_power
  int log_power = 0;
  double anchor = 0.0;    // modified members carry e^{-kappa*anchor} (I) or e^{kappa*anchor} (K)

  bool regular() const {
    return tag == BasisTag::RegularModified || tag == BasisTag::RegularOscillatory || tag == BasisTag::RegularPower;
  }

  // R, R', R'', R''' at r.
  std::array<double, 4> eval(double r) const {
    switch (tag) {
      case BasisTag::RegularPower:
      case BasisTag::SingularPower: return eval_power(r);
      default: break;
    }
    const BesselKind kind = tag == BasisTag::RegularModified    ? BesselKind::I
                            : tag == BasisTag::SingularModified ? BesselKind::K
                            : tag == BasisTag::RegularOscillatory ? BesselKind::J
                                                                  : BesselKind::Y;
    const double z = kappa * r;
    std::array<double, 4> w;
    if (kind == BesselKind::I) {
      w = ultraspherical_derivatives(kind, l, dim, z, true);
      const double e = std::exp(kappa * (r - anchor));
      for (double& v : w) v *= e;
    } else if (kind == BesselKind::K) {
      w = ultraspherical_derivatives(kind, l, dim, z, true);
      const double e = std::exp(-kappa * (r - anchor));
      for (double& v : w) v *= e;
    } else {
      w = ultraspherical_derivatives(kind, l, dim, z, false);
    }
    double f = 1.0;
    for (double& v : w) {
      v *= f;
      f *= kappa;
    }
    return w;
  }

 private:
  std::array<double, 4> eval_power(double r) const {
    const double p = exponent;
    std::array<double, 4> out{};
    const bool integer_p = p == std::floor(p) && p >= 0.0;
    for (int d = 0; d < 4; ++d) {
      // (p)_d and its p-derivative.
      double ff = 1.0, dff = 0.0;
      for (int j = 0; j < d; ++j) {
        dff = dff * (p - j) + ff;
        ff *= (p - j);
      }
      double rp;
      if (integer_p && log_power == 0) {
        if (ff == 0.0) {
          out[d] = 0.0;
          continue;
        }
        rp = (p - d == 0.0) ? 1.0 : std::pow(r, p - d);
      } else {
        rp = std::pow(r, p - d);
      }
      out[d] = log_power == 0 ? ff * rp : rp * (ff * std::log(r) + dff);
    }
    return out;
  }
};

struct LayerBasis {
  std::array<BasisMember, 4> members;  // two regular members first
  double mu_plus = 0.0;
  double mu_minus = 0.0;
};

namespace detail {
inline BasisMember power_member(BasisTag tag, int l, int dim, double p, int logp = 0) {
  BasisMember m;
  m.tag = tag;
  m.l = l;
  m.dim = dim;
  m.exponent = p;
  m.log_power = logp;
  return m;
}
inline BasisMember bessel_member(BasisTag tag, int l, int dim, double kappa) {
  BasisMember m;
  m.tag = tag;
  m.l = l;
  m.dim = dim;
  m.kappa = kappa;
  return m;
}
}  // namespace detail

// Four solutions of the order-l reduction of (Delta^2 - tau Delta - lambda rho) u = 0.
inline LayerBasis layer_basis(int l, int dim, double tau, double lambda, double rho) {
  detail::require(l >= 0 && dim >= 2, "layer_basis: need l>=0, N>=2");
  detail::require(std::isfinite(tau) && tau >= 0.0, "layer_basis: tau must be >= 0");
  const double lr = lambda * rho;
  detail::require(std::isfinite(lr) && lr >= 0.0, "layer_basis: lambda*rho must be >= 0");
  using detail::bessel_member;
  using detail::power_member;
  LayerBasis b;
  const double L = l, N = dim;
  if (lr > 0.0) {
    b.mu_plus = 0.5 * (tau + std::sqrt(tau * tau + 4.0 * lr));
    b.mu_minus = -lr / b.mu_plus;
    const double kp = std::sqrt(b.mu_plus), km = std::sqrt(-b.mu_minus);
    b.members = {bessel_member(BasisTag::RegularModified, l, dim, kp),
                 bessel_member(BasisTag::RegularOscillatory, l, dim, km),
                 bessel_member(BasisTag::SingularModified, l, dim, kp),
                 bessel_member(BasisTag::SingularOscillatory, l, dim, km)};
    return b;
  }
  b.mu_plus = tau;
  b.mu_minus = 0.0;
  const BasisMember harmonic_sing = (dim == 2 && l == 0)
                                        ? power_member(BasisTag::SingularPower, l, dim, 0.0, 1)
                                        : power_member(BasisTag::SingularPower, l, dim, 2.0 - N - L);
  if (tau > 0.0) {
    const double k = std::sqrt(tau);
    b.members = {power_member(BasisTag::RegularPower, l, dim, L),
                 bessel_member(BasisTag::RegularModified, l, dim, k), harmonic_sing,
                 bessel_member(BasisTag::SingularModified, l, dim, k)};
    return b;
  }
  // tau = 0: Euler exponents l, l+2, 2-N-l, 4-N-l with logs where they collide.
  BasisMember s1 = harmonic_sing, s2;
  if (dim == 2 && l == 0) s2 = power_member(BasisTag::SingularPower, l, dim, 2.0, 1);
  else if (dim == 2 && l == 1) s2 = power_member(BasisTag::SingularPower, l, dim, 1.0, 1);
  else if (dim == 4 && l == 0) s2 = power_member(BasisTag::SingularPower, l, dim, 0.0, 1);
  else s2 = power_member(BasisTag::SingularPower, l, dim, 4.0 - N - L);
  b.members = {power_member(BasisTag::RegularPower, l, dim, L),
               power_member(BasisTag::RegularPower, l, dim, L + 2.0), s1, s2};
  return b;
}

// The two boundary operators at r = 1 applied to (R, R', R'', R''').
inline std::array<double, 2> boundary_rows(const std::array<double, 4>& v, int l, int dim, double tau) {
  const double k = angular_eigenvalue(l, dim);
  const double n1 = dim - 1.0;
  return {v[2], -v[3] - n1 * v[2] + (tau + 2.0 * k + n1) * v[1] - 3.0 * k * v[0]};
}

struct DispersionSystem {
  Eigen::MatrixXd matrix;                 // columns scaled to unit max-norm
  std::vector<BasisMember> columns;       // members (with anchors) behind each column
  std::vector<std::size_t> column_layer;  // layer index of each column
  std::vector<double> column_scale;       // matrix column = raw column / scale
};

inline DispersionSystem neumann_dispersion_system(int l, int dim, double tau, double lambda,
                                                  const LayeredDensity& rho) {
  rho.validate();
  detail::require(rho.dim == dim, "neumann_dispersion_matrix: density dimension mismatch");
  detail::require(std::isfinite(lambda) && lambda >= 0.0, "neumann_dispersion_matrix: lambda must be >= 0");
  const std::size_t K = rho.layers();
  DispersionSystem sys;
  for (std::size_t k = 0; k < K; ++k) {
    const auto basis = layer_basis(l, dim, tau, lambda, rho.values[k]);
    const std::size_t count = k == 0 ? 2 : 4;
    for (std::size_t j = 0; j < count; ++j) {
      BasisMember m = basis.members[j];
      if (m.tag == BasisTag::RegularModified) m.anchor = rho.outer(k);
      if (m.tag == BasisTag::SingularModified) m.anchor = rho.inner(k);
      sys.columns.push_back(m);
      sys.column_layer.push_back(k);
    }
  }
  const std::size_t n = sys.columns.size();
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(n, n);
  for (std::size_t c = 0; c < n; ++c) {
    const std::size_t k = sys.column_layer[c];
    const auto& m = sys.columns[c];
    if (k > 0) {  // continuity at inner interface of layer k (this layer enters with minus sign)
      const auto v = m.eval(rho.inner(k));
      for (int d = 0; d < 4; ++d) A(4 * (k - 1) + d, c) = -v[d];
    }
    if (k + 1 < K) {
      const auto v = m.eval(rho.outer(k));
      for (int d = 0; d < 4; ++d) A(4 * k + d, c) = v[d];
    } else {
      const auto bc = boundary_rows(m.eval(1.0), l, dim, tau);
      A(n - 2, c) = bc[0];
      A(n - 1, c) = bc[1];
    }
  }
  sys.column_scale.assign(n, 1.0);
  for (std::size_t c = 0; c < n; ++c) {
    const double s = A.col(c).cwiseAbs().maxCoeff();
    if (!std::isfinite(s)) throw Error(ErrorCode::Overflow, "neumann_dispersion_matrix: nonfinite entry");
    if (s > 0.0) {
      A.col(c) /= s;
      sys.column_scale[c] = s;
    }
  }
  sys.matrix = std::move(A);
  return sys;
}

inline Eigen::MatrixXd neumann_dispersion_matrix(int l, int dim, double tau, double lambda, const LayeredDensity& rho) {
  return neumann_dispersion_system(l, dim, tau, lambda, rho).matrix;
}

inline double neumann_determinant(int l, int dim, double tau, double lambda, const LayeredDensity& rho) {
  const auto sys = neumann_dispersion_system(l, dim, tau, lambda, rho);
  return sys.matrix.rows() == 0 ? 0.0 : sys.matrix.partialPivLu().determinant();
}

// Assembled radial mode: piecewise combination of layer members.
struct RadialMode {
  int l = 0;
  int dim = 2;
  double tau = 0.0;
  double lambda = 0.0;
  LayeredDensity density;
  std::vector<BasisMember> members;
  std::vector<std::size_t> member_layer;
  std::vector<double> coefficients;

  std::size_t layer_of(double r) const {
    for (std::size_t k = 0; k + 1 < density.layers(); ++k)
      if (r < density.interfaces[k]) return k;
    return density.layers() - 1;
  }

  std::array<double, 4> eval_in_layer(std::size_t k, double r) const {
    std::array<double, 4> out{};
    for (std::size_t c = 0; c < members.size(); ++c) {
      if (member_layer[c] != k || coefficients[c] == 0.0) continue;
      const auto v = members[c].eval(r);
      for (int d = 0; d < 4; ++d) out[d] += coefficients[c] * v[d];
    }
    return out;
  }

  std::array<double, 4> eval(double r) const { return eval_in_layer(layer_of(r), r); }

  // Largest violation of interface continuity and boundary rows, relative to the largest
  // individual term entering those conditions.
  double residual() const {
    double worst = 0.0;
    auto rel = [](double value, double scale) { return scale > 0.0 ? std::abs(value) / scale : std::abs(value); };
    for (std::size_t k = 0; k + 1 < density.layers(); ++k) {
      const double r = density.interfaces[k];
      const auto a = eval_in_layer(k, r), b = eval_in_layer(k + 1, r);
      for (int d = 0; d < 4; ++d) worst = std::max(worst, rel(a[d] - b[d], std::max(std::abs(a[d]), std::abs(b[d]))));
    }
    const auto v = eval(1.0);
    const double k = angular_eigenvalue(l, dim), n1 = dim - 1.0;
    const auto bc = boundary_rows(v, l, dim, tau);
    const double scale2 = std::max({std::abs(v[3]), std::abs(n1 * v[2]), std::abs((tau + 2.0 * k + n1) * v[1]),
                                    std::abs(3.0 * k * v[0])});
    worst = std::max(worst, rel(bc[1], scale2));
    const double scale1 = std::max({std::abs(v[0]), std::abs(v[1]), std::abs(v[2])});
    worst = std::max(worst, rel(bc[0], scale1));
    return worst;
  }

  // Integral of R^2 r^{N-1} over [0,1] (per unit harmonic).
  double l2_norm2() const {
    boost::math::quadrature::gauss<double, 30> g;
    double total = 0.0;
    for (std::size_t k = 0; k < density.layers(); ++k) {
      const double a = density.inner(k), b = density.outer(k);
      const int pieces = 4;
      for (int p = 0; p < pieces; ++p) {
        const double lo = a + (b - a) * p / pieces, hi = a + (b - a) * (p + 1) / pieces;
        total += g.integrate(
            [&](double r) {
              const double R = eval_in_layer(k, r)[0];
              return R * R * std::pow(r, dim - 1);
            },
            lo, hi);
      }
    }
    return total;
  }
};

struct DispersionRoot {
  double lambda = 0.0;
  Bracket bracket{};
  bool exact_zero = false;
  bool multiplicity_suspect = false;
  RadialMode mode;
};

struct DispersionResult {
  int l = 0;
  std::vector<DispersionRoot> roots;
};

namespace detail {

inline RadialMode null_mode(int l, int dim, double tau, double lambda, const LayeredDensity& rho) {
  const auto sys = neumann_dispersion_system(l, dim, tau, lambda, rho);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(sys.matrix, Eigen::ComputeFullV);
  const Eigen::VectorXd v = svd.matrixV().col(sys.matrix.cols() - 1);
  RadialMode m;
  m.l = l;
  m.dim = dim;
  m.tau = tau;
  m.lambda = lambda;
  m.density = rho;
  m.members = sys.columns;
  m.member_layer = sys.column_layer;
  m.coefficients.resize(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) m.coefficients[i] = v(i) / sys.column_scale[i];
  double r1 = m.eval(1.0)[0];
  double peak = std::abs(r1);
  for (int i = 1; i <= 64; ++i) peak = std::max(peak, std::abs(m.eval(i / 64.0)[0]));
  const double s = (std::abs(r1) > 1e-8 * peak) ? r1 : peak;
  if (s != 0.0)
    for (double& c : m.coefficients) c /= s;
  return m;
}

template <class Det>
std::vector<DispersionRoot> scan_roots(Det&& det, double lo, double hi, int grid_points, std::size_t max_roots,
                                       double rel_tol) {
  std::vector<double> xs(grid_points + 1), fs(grid_points + 1);
  for (int i = 0; i <= grid_points; ++i) {
    xs[i] = lo + (hi - lo) * i / grid_points;
    fs[i] = det(xs[i]);
  }
  std::vector<DispersionRoot> roots;
  for (int i = 0; i <= grid_points && roots.size() < max_roots; ++i) {
    DispersionRoot r;
    if (fs[i] == 0.0) {
      if (i > 0 && fs[i - 1] == 0.0) continue;
      r.lambda = xs[i];
      r.bracket = {xs[i], xs[i], 0.0, 0.0};
      r.exact_zero = true;
    } else if (i < grid_points && fs[i + 1] != 0.0 && ((fs[i] < 0.0) != (fs[i + 1] < 0.0))) {
      r.bracket = {xs[i], xs[i + 1], fs[i], fs[i + 1]};
      r.lambda = brent_root(det, r.bracket, rel_tol, 1e-300);
      // A flat crossing relative to the neighbouring magnitudes hints at a double root.
      const double slope = std::abs(fs[i + 1] - fs[i]);
      const double local = std::max({std::abs(fs[std::max(i - 1, 0)]), std::abs(fs[std::min(i + 2, grid_points)])});
      r.multiplicity_suspect = slope < 1e-6 * std::max(local, 1e-300);
    } else {
      continue;
    }
    roots.push_back(r);
  }
  return roots;
}

}  // namespace detail

struct SolveOptions {
  int grid_points = 200;
  double rel_tol = 1e-12;
};

inline DispersionResult solve_neumann_eigenvalues(int l, int dim, double tau, const LayeredDensity& rho,
                                                  std::pair<double, double> window, std::size_t max_roots,
                                                  SolveOptions opt = {}) {
  detail::require(window.first >= 0.0 && window.second > window.first, "solve_neumann_eigenvalues: bad window");
  detail::require(opt.grid_points >= 1, "solve_neumann_eigenvalues: grid_points must be >= 1");
  auto det = [&](double lam) { return neumann_determinant(l, dim, tau, lam, rho); };
  DispersionResult res;
  res.l = l;
  double lo = window.first;
  if (lo == 0.0) {
    // lambda = 0 uses the degenerate power/log basis whose determinant sign is unrelated
    // to the lambda -> 0+ limit; test it on its own and scan from just above it.
    if (det(0.0) == 0.0) {
      DispersionRoot r;
      r.exact_zero = true;
      r.bracket = {0.0, 0.0, 0.0, 0.0};
      res.roots.push_back(r);
    }
    lo = 1e-9 * window.second;
  }
  if (res.roots.size() < max_roots) {
    auto more = detail::scan_roots(det, lo, window.second, opt.grid_points, max_roots - res.roots.size(), opt.rel_tol);
    res.roots.insert(res.roots.end(), more.begin(), more.end());
  }
  for (auto& r : res.roots) r.mode = detail::null_mode(l, dim, tau, r.lambda, rho);
  return res;
}

// 2x2 Steklov determinant on the unit ball, basis {r^l, i_l(sqrt(tau) r)}, unit surface density.
inline double steklov_determinant(int l, int dim, double tau, double lambda) {
  detail::require(tau > 0.0, "steklov_determinant: tau must be > 0");
  detail::require(l >= 0 && dim >= 2, "steklov_determinant: need l>=0, N>=2");
  const auto basis = layer_basis(l, dim, tau, 0.0, 1.0);
  Eigen::Matrix2d A;
  for (int c = 0; c < 2; ++c) {
    BasisMember m = basis.members[c];
    if (m.tag == BasisTag::RegularModified) m.anchor = 1.0;
    const auto v = m.eval(1.0);
    const auto bc = boundary_rows(v, l, dim, tau);
    A(0, c) = bc[0];
    A(1, c) = bc[1] - lambda * v[0];
    const double s = A.col(c).cwiseAbs().maxCoeff();
    if (s > 0.0) A.col(c) /= s;
  }
  return A.determinant();
}

inline double steklov_determinant_root(int l, int dim, double tau, std::pair<double, double> window,
                                       int grid_points = 200) {
  detail::require(window.first >= 0.0 && window.second > window.first, "steklov_determinant_root: bad window");
  auto det = [&](double lam) { return steklov_determinant(l, dim, tau, lam); };
  const auto roots = detail::scan_roots(det, window.first, window.second, grid_points, 1, 1e-15);
  if (roots.empty()) throw Error(ErrorCode::NoRoot, "steklov_determinant_root: no sign change in window");
  return roots.front().lambda;
}

struct ConcentrationRow {
  double eps = 0.0;
  double lambda = 0.0;
  double target = 0.0;
  double rel_error = 0.0;
};

struct ConcentrationOptions {
  double window_factor = 4.0;  // scan [0, window_factor*target]
  int steps_per_target = 50;   // grid step target/steps_per_target
};

inline std::vector<ConcentrationRow> concentration_experiment(int l, int dim, double tau, double mass,
                                                              const std::vector<double>& eps_list,
                                                              ConcentrationOptions opt = {}) {
  detail::require(l >= 1, "concentration_experiment: l must be >= 1 (l=0 has target 0)");
  detail::require(tau > 0.0, "concentration_experiment: tau must be > 0");
  detail::require(!eps_list.empty(), "concentration_experiment: empty eps list");
  for (std::size_t i = 1; i < eps_list.size(); ++i)
    detail::require(eps_list[i] < eps_list[i - 1], "concentration_experiment: eps list must decrease");
  const double target = closed_form_eigenvalue({dim, tau}, l) * sphere_area(dim) / mass;
  const double hi = opt.window_factor * target;
  const int grid = static_cast<int>(std::ceil(opt.window_factor * opt.steps_per_target));
  const double lo = hi / grid;  // skip lambda = 0

  std::vector<LayeredDensity> dens;
  for (double e : eps_list) dens.push_back(make_rho_eps(e, mass, dim));
  std::vector<std::future<std::vector<double>>> jobs;
  for (const auto& d : dens) {
    jobs.push_back(std::async(std::launch::async, [=]() {
      auto det = [&](double lam) { return neumann_determinant(l, dim, tau, lam, d); };
      std::vector<double> out;
      for (const auto& r : detail::scan_roots(det, lo, hi, grid - 1, 1000, 1e-12)) out.push_back(r.lambda);
      return out;
    }));
  }
  std::vector<ConcentrationRow> rows;
  std::optional<double> prev;
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    const auto roots = jobs[i].get();
    if (roots.empty()) throw Error(ErrorCode::BranchLoss, "concentration_experiment: no root in window");
    const double ref = prev ? *prev : target;
    const double best = *std::min_element(roots.begin(), roots.end(), [&](double a, double b) {
      return std::abs(a - ref) < std::abs(b - ref);
    });
    if (prev && std::abs(best - *prev) > 0.5 * *prev)
      throw Error(ErrorCode::BranchLoss, "concentration_experiment: tracked root jumped by more than 50%");
    prev = best;
    rows.push_back({eps_list[i], best, target, std::abs(best - target) / target});
  }
  return rows;
}

}  // namespace bisteklov
