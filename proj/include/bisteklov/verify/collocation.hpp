#pragma once

// Test-only oracle: multi-domain Chebyshev collocation of the order-l radial Neumann
// problem with a piecewise-constant density. Shares no code path with the
// Bessel-basis dispersion solver beyond the density container.

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "bisteklov/errors.hpp"
#include "bisteklov/radial_solver.hpp"

namespace bisteklov::verify {

// Chebyshev-Lobatto points x_j = cos(pi j/n) and the differentiation matrix.
inline Eigen::MatrixXd cheb_diff(int n, Eigen::VectorXd& x) {
  x.resize(n + 1);
  for (int j = 0; j <= n; ++j) x(j) = std::cos(std::numbers::pi * j / n);
  Eigen::MatrixXd D = Eigen::MatrixXd::Zero(n + 1, n + 1);
  auto c = [n](int j) { return ((j == 0 || j == n) ? 2.0 : 1.0) * ((j % 2) ? -1.0 : 1.0); };
  for (int i = 0; i <= n; ++i) {
    double row = 0.0;
    for (int j = 0; j <= n; ++j) {
      if (i == j) continue;
      D(i, j) = c(i) / c(j) / (x(i) - x(j));
      row += D(i, j);
    }
    D(i, i) = -row;
  }
  return D;
}

struct CollocationOptions {
  int inner_degree = 41;  // odd
  int layer_degree = 24;
};

// Real eigenvalues of the discretized problem, ascending. Unknowns are u and
// v = Delta_l u on every domain, so only second derivatives are collocated:
//   r^2 u'' + (N-1) r u' - k u - r^2 v = 0,
//   r^2 v'' + (N-1) r v' - k v - tau r^2 v = lambda rho r^2 u.
// Continuity of (u, u', v, v') is continuity of R through R'''. At r=1:
// R'' = v - (N-1)u' + k u = 0 and tau u' + k(u' - u) - v' = 0.
inline std::vector<double> collocation_neumann_spectrum(int l, int dim, double tau, const LayeredDensity& rho,
                                                        CollocationOptions opt = {}) {
  rho.validate();
  detail::require(opt.inner_degree % 2 == 1, "collocation: inner degree must be odd");
  const double k = static_cast<double>(l) * (l + dim - 2), N = dim;
  const std::size_t K = rho.layers();

  struct Domain {
    int n;
    Eigen::VectorXd r;
    Eigen::MatrixXd D1, D2;
    std::size_t u, v;  // offsets of the two fields
  };
  std::vector<Domain> doms(K);
  std::size_t total = 0;
  for (std::size_t d = 0; d < K; ++d) {
    Domain& dm = doms[d];
    dm.n = d == 0 ? opt.inner_degree : opt.layer_degree;
    Eigen::VectorXd x;
    const Eigen::MatrixXd D = cheb_diff(dm.n, x);
    double scale;
    if (d == 0) {
      const double r1 = rho.outer(0);
      dm.r = r1 * x;
      scale = 1.0 / r1;
    } else {
      const double a = rho.inner(d), b = rho.outer(d);
      dm.r = (0.5 * (a + b)) * Eigen::VectorXd::Ones(dm.n + 1) + 0.5 * (b - a) * x;
      scale = 2.0 / (b - a);
    }
    dm.D1 = scale * D;
    dm.D2 = dm.D1 * dm.D1;
    dm.u = total;
    dm.v = total + dm.n + 1;
    total += 2 * (dm.n + 1);
  }

  std::vector<Eigen::RowVectorXd> crow, arow, brow;
  auto zero = [&]() { return Eigen::RowVectorXd::Zero(total); };
  auto ode_rows = [&](const Domain& dm, int j, double density) {
    const double r = dm.r(j), r2 = r * r;
    const int m = dm.n + 1;
    Eigen::RowVectorXd e = Eigen::RowVectorXd::Zero(m);
    e(j) = 1.0;
    const Eigen::RowVectorXd lap = r2 * dm.D2.row(j) + (N - 1.0) * r * dm.D1.row(j) - k * e;
    Eigen::RowVectorXd c = zero();
    c.segment(dm.u, m) = lap;
    c.segment(dm.v, m) = -r2 * e;
    crow.push_back(c);
    Eigen::RowVectorXd a = zero(), b = zero();
    a.segment(dm.v, m) = lap - tau * r2 * e;
    b(dm.u + j) = density * r2;
    arow.push_back(a);
    brow.push_back(b);
  };

  {
    const Domain& dm = doms[0];
    const int n0 = dm.n;
    const double parity = (l % 2) ? -1.0 : 1.0;
    for (std::size_t off : {dm.u, dm.v}) {
      for (int j = (n0 + 1) / 2; j <= n0; ++j) {
        Eigen::RowVectorXd c = zero();
        c(off + j) = 1.0;
        c(off + (n0 - j)) -= parity;
        crow.push_back(c);
      }
    }
    for (int j = 1; j <= (n0 - 1) / 2; ++j) ode_rows(dm, j, rho.values[0]);
  }
  for (std::size_t d = 1; d < K; ++d)
    for (int j = 1; j <= doms[d].n - 1; ++j) ode_rows(doms[d], j, rho.values[d]);
  for (std::size_t d = 1; d < K; ++d) {
    const Domain &lo = doms[d - 1], &hi = doms[d];
    const int ml = lo.n + 1, mh = hi.n + 1;
    for (int field = 0; field < 2; ++field) {
      const std::size_t ol = field ? lo.v : lo.u, oh = field ? hi.v : hi.u;
      Eigen::RowVectorXd c = zero();
      c(ol) = 1.0;
      c(oh + hi.n) = -1.0;
      crow.push_back(c);
      c = zero();
      c.segment(ol, ml) = lo.D1.row(0);
      c.segment(oh, mh) -= hi.D1.row(hi.n);
      crow.push_back(c);
    }
  }
  {
    const Domain& dm = doms.back();
    const int m = dm.n + 1;
    Eigen::RowVectorXd c = zero();
    c(dm.v) = 1.0;
    c.segment(dm.u, m) -= (N - 1.0) * dm.D1.row(0);
    c(dm.u) += k;
    crow.push_back(c);
    c = zero();
    c.segment(dm.u, m) = (tau + k) * dm.D1.row(0);
    c(dm.u) -= k;
    c.segment(dm.v, m) -= dm.D1.row(0);
    crow.push_back(c);
  }

  const Eigen::Index nc = static_cast<Eigen::Index>(crow.size()), no = static_cast<Eigen::Index>(arow.size());
  detail::require(nc + no == static_cast<Eigen::Index>(total), "collocation: row count mismatch");
  Eigen::MatrixXd C(nc, total), A(no, total), B(no, total);
  for (Eigen::Index i = 0; i < nc; ++i) C.row(i) = crow[i];
  for (Eigen::Index i = 0; i < no; ++i) {
    A.row(i) = arow[i];
    B.row(i) = brow[i];
  }
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(C.transpose());
  const Eigen::MatrixXd Q = qr.householderQ() * Eigen::MatrixXd::Identity(total, total);
  const Eigen::MatrixXd Z = Q.rightCols(total - nc);
  const Eigen::MatrixXd AZ = A * Z, BZ = B * Z;
  // Shift-invert about sigma = -1: mu = 1/(lambda + 1) makes the low modes dominant and
  // keeps the stiff collocation modes near zero.
  const Eigen::MatrixXd M = (AZ + BZ).partialPivLu().solve(BZ);
  Eigen::EigenSolver<Eigen::MatrixXd> es(M, false);
  std::vector<double> out;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    const std::complex<double> mu = es.eigenvalues()(i);
    if (std::abs(mu) < 1e-12) continue;
    const std::complex<double> ev = 1.0 / mu - 1.0;
    if (std::isfinite(ev.real()) && std::abs(ev.imag()) <= 1e-8 * std::max(1.0, std::abs(ev.real())))
      out.push_back(ev.real());
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline double collocation_neumann_eigenvalue(int l, int dim, double tau, const LayeredDensity& rho, double near,
                                             CollocationOptions opt = {}) {
  const auto ev = collocation_neumann_spectrum(l, dim, tau, rho, opt);
  detail::require(!ev.empty(), "collocation: no real eigenvalue", ErrorCode::NoRoot);
  return *std::min_element(ev.begin(), ev.end(),
                           [&](double a, double b) { return std::abs(a - near) < std::abs(b - near); });
}

}  // namespace bisteklov::verify
