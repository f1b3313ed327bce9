#pragma once

// Acceptance criteria 1-10 plus a quick invariant sweep. Every tolerance and runtime
// limit is pinned here; the acceptance binary and `selftest` both run this code.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "bisteklov/ball_spectrum.hpp"
#include "bisteklov/geometry_iso.hpp"
#include "bisteklov/hadamard.hpp"
#include "bisteklov/harmonics.hpp"
#include "bisteklov/radial_solver.hpp"
#include "bisteklov/rayleigh.hpp"
#include "bisteklov/specfun.hpp"
#include "bisteklov/verify/collocation.hpp"
#include "bisteklov/verify/corpus.hpp"

namespace bisteklov::verify {

struct CheckResult {
  int id = 0;
  std::string name;
  bool passed = false;
  double seconds = 0.0;
  double time_limit = 0.0;
  std::string detail;
};

namespace tol {
inline constexpr double fundamental_tone = 1e-10;
inline constexpr double tau0_exact = 4.0 * 2.220446049250313e-16;
inline constexpr double tau0_quotient = 1e-8;
inline constexpr double determinant = 1e-9;
inline constexpr double concentration_final = 0.05;
inline constexpr double collocation = 1e-6;
inline constexpr double dual_path = 1e-6;
inline constexpr double optimality = 1e-8;
inline constexpr double hadamard_oracle = 1e-6;
inline constexpr double hadamard_l1 = 1e-12;
inline constexpr double criticality_steklov = 1e-8;
inline constexpr double criticality_neumann = 1e-6;
inline constexpr double disk_ub = 5e-3;
inline constexpr double c22_ref = 0.15533, c22_tol = 5e-6;
inline constexpr double delta2_ref = 0.077665, delta2_tol = 5e-7;
inline constexpr double sum_rule = 1e-12;
inline constexpr double annulus_ceiling = 7.2;
}  // namespace tol

namespace detail {

inline std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

template <class Body>
CheckResult timed(int id, std::string name, double limit, Body&& body) {
  CheckResult r;
  r.id = id;
  r.name = std::move(name);
  r.time_limit = limit;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    r.passed = body(r.detail);
  } catch (const std::exception& e) {
    r.passed = false;
    r.detail += std::string(" exception: ") + e.what();
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (r.seconds >= limit) {
    r.passed = false;
    r.detail += fmt(" runtime %.3gs over limit", r.seconds);
  }
  return r;
}

inline double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

}  // namespace detail

inline CheckResult criterion_fundamental_tone() {
  return detail::timed(1, "fundamental tone lambda_(1) = tau", 1.0, [](std::string& d) {
    double worst = 0.0;
    for (double tau : {0.1, 1.0, 10.0})
      for (int n = 2; n <= 5; ++n) {
        worst = std::max(worst, detail::rel(closed_form_formula({n, tau}, 1), tau));
        worst = std::max(worst, detail::rel(steklov_determinant_root(1, n, tau, {1e-12, 1e3}), tau));
      }
    d = detail::fmt("max rel err %.3g", worst);
    return worst <= tol::fundamental_tone;
  });
}

inline CheckResult criterion_second_order_bound() {
  return detail::timed(2, "lambda_(2) >= 2 tau on 50 samples", 1.0, [](std::string& d) {
    std::mt19937_64 rng(20240611);
    std::uniform_int_distribution<int> dims(2, 6);
    std::uniform_real_distribution<double> expo(-2.0, 2.0);
    double worst = INFINITY;
    for (int i = 0; i < 50; ++i) {
      const int n = dims(rng);
      const double tau = std::pow(10.0, expo(rng));
      worst = std::min(worst, ball_eigenvalue({n, tau}, 2) / (2.0 * tau));
    }
    d = detail::fmt("min lambda_(2)/(2 tau) = %.6g", worst);
    return worst >= 1.0;
  });
}

inline CheckResult criterion_tau0() {
  return detail::timed(3, "tau = 0: lambda_{N+2} = 2(N+8/5) and quotient of 6r^2-r^4", 1.0, [](std::string& d) {
    double worst_exact = 0.0, worst_q = 0.0;
    for (int n = 2; n <= 5; ++n) {
      const auto v = expand_spectrum(enumerate_spectrum({n, 0.0}, n + 2));
      worst_exact = std::max(worst_exact, detail::rel(v[n + 1], 2.0 * (n + 8.0 / 5.0)));
    }
    for (int n = 2; n <= 3; ++n) {
      const auto q = rayleigh_quotient(quartic_mode_profile(), 2, n, 0.0, {0.0, 1.0});
      worst_q = std::max(worst_q, detail::rel(q.quotient, 2.0 * (n + 8.0 / 5.0)));
    }
    d = detail::fmt("spectrum rel err %.3g", worst_exact) + detail::fmt(", quotient rel err %.3g", worst_q);
    return worst_exact <= tol::tau0_exact && worst_q <= tol::tau0_quotient;
  });
}

inline CheckResult criterion_determinant() {
  return detail::timed(4, "Steklov determinant roots = closed form (l<=6)", 10.0, [](std::string& d) {
    double worst = 0.0;
    bool l0 = true;
    for (int n : {2, 3})
      for (double tau : {0.5, 1.0, 5.0}) {
        l0 = l0 && steklov_determinant(0, n, tau, 0.0) == 0.0;
        for (int l = 1; l <= 6; ++l) {
          const double root = steklov_determinant_root(l, n, tau, {1e-9, 1e5}, 2000);
          worst = std::max(worst, detail::rel(root, closed_form_eigenvalue({n, tau}, l)));
        }
      }
    d = detail::fmt("max rel err %.3g", worst) + (l0 ? ", l=0 root at 0" : ", l=0 determinant nonzero at 0");
    return worst <= tol::determinant && l0;
  });
}

inline CheckResult criterion_concentration() {
  return detail::timed(5, "mass concentration sweep + collocation cross-check", 60.0, [](std::string& d) {
    const std::vector<double> eps{0.08, 0.04, 0.02, 0.01};
    const double mass = sphere_area(2);
    bool ok = true;
    for (int l : {1, 2}) {
      const auto rows = concentration_experiment(l, 2, 1.0, mass, eps);
      bool mono = true;
      for (std::size_t i = 1; i < rows.size(); ++i) mono = mono && rows[i].rel_error < rows[i - 1].rel_error;
      const double final_err = rows.back().rel_error;
      const auto rho = make_rho_eps(0.04, mass, 2);
      const double colloc = collocation_neumann_eigenvalue(l, 2, 1.0, rho, rows[1].lambda);
      const double agree = detail::rel(rows[1].lambda, colloc);
      d += detail::fmt("l=%.0f:", l) + (mono ? " monotone" : " NOT monotone") +
           detail::fmt(", final err %.4g", final_err) + detail::fmt(", collocation diff %.3g; ", agree);
      ok = ok && mono && final_err <= tol::concentration_final && agree <= tol::collocation;
    }
    return ok;
  });
}

inline CheckResult criterion_rayleigh() {
  return detail::timed(6, "Rayleigh dual path + eigenfunction optimality", 30.0, [](std::string& d) {
    double worst_dual = 0.0, worst_opt = 0.0;
    for (const auto& c : profile_corpus()) {
      const double a = reduced_radial_numerator(c.profile, c.l, 2, c.tau);
      const double b = cartesian_oracle_2d(c.profile, c.l, c.tau);
      worst_dual = std::max(worst_dual, detail::rel(a, b));
    }
    for (int l = 1; l <= 5; ++l) {
      const ProblemParams p{2, 1.0};
      const auto q = rayleigh_quotient(mode_radial_profile(mode_profile(p, l)), l, 2, 1.0, {0.0, 1.0});
      worst_opt = std::max(worst_opt, detail::rel(q.quotient, closed_form_eigenvalue(p, l)));
    }
    d = detail::fmt("dual-path max rel %.3g", worst_dual) + detail::fmt(", optimality max rel %.3g", worst_opt);
    return worst_dual <= tol::dual_path && worst_opt <= tol::optimality;
  });
}

inline CheckResult criterion_hadamard() {
  return detail::timed(7, "Hadamard vs dilation oracle + ball criticality", 30.0, [](std::string& d) {
    double worst = 0.0, worst_l1 = 0.0, crit_s = 0.0;
    for (double tau : {0.5, 1.0, 5.0})
      for (int l : {1, 2, 3})
        for (int s : {1, 2}) {
          const auto m = steklov_multiplet(l, tau, s);
          const double h = hadamard_derivative(m, NormalSpeed::constant(1.0));
          worst = std::max(worst, detail::rel(h, scaling_oracle(m, 1e-4)));
          if (l == 1 && s == 1) worst_l1 = std::max(worst_l1, detail::rel(h, -2.0 * tau));
        }
    for (int l : {1, 2, 3})
      for (double tau : {0.5, 1.0, 2.0}) crit_s = std::max(crit_s, criticality_check(steklov_multiplet(l, tau)).max_deviation);
    const double crit_n = criticality_check(neumann_multiplet(2, 1.0)).max_deviation;
    d = detail::fmt("oracle max rel %.3g", worst) + detail::fmt(", l=1 vs -2tau %.3g", worst_l1) +
        detail::fmt(", criticality steklov %.3g", crit_s) + detail::fmt(", neumann %.3g", crit_n);
    return worst <= tol::hadamard_oracle && worst_l1 <= tol::hadamard_l1 && crit_s <= tol::criticality_steklov &&
           crit_n <= tol::criticality_neumann;
  });
}

inline CheckResult criterion_isoperimetric() {
  return detail::timed(8, "quantitative isoperimetric chain on polygon corpus", 60.0, [](std::string& d) {
    const auto corpus = polygon_corpus();
    int moment_fail = 0, ub_fail = 0;
    double disk_err = INFINITY;
    const double tau = 1.0;
    for (const auto& p : corpus) {
      const auto r = isoperimetric_report(p.poly, tau);
      moment_fail += !r.moment_inequality;
      ub_fail += !r.ub_below_ball;
      if (p.name == "regular-128") disk_err = detail::rel(r.upper_bound, r.lambda2_ball);
    }
    const auto k = stability_constants(2, 2.0);
    const bool consts = std::abs(k.c - tol::c22_ref) <= tol::c22_tol && std::abs(k.delta - tol::delta2_ref) <= tol::delta2_tol;
    d = detail::fmt("%.0f polygons", static_cast<double>(corpus.size())) +
        detail::fmt(", moment failures %.0f", moment_fail) + detail::fmt(", UB failures %.0f", ub_fail) +
        detail::fmt(", 128-gon UB rel gap %.3g", disk_err) + detail::fmt(", c22 %.6g", k.c) +
        detail::fmt(", delta2 %.7g", k.delta);
    return corpus.size() >= 20 && moment_fail == 0 && ub_fail == 0 && disk_err <= tol::disk_ub && consts;
  });
}

inline CheckResult criterion_sum_rule() {
  return detail::timed(9, "sum rule sum 1/lambda_l = N/tau", 1.0, [](std::string& d) {
    double worst = 0.0;
    for (int n : {2, 3, 4})
      for (double tau : {0.5, 1.0, 3.0}) {
        worst = std::max(worst, detail::rel(reciprocal_sum_rule({n, tau}), n / tau));
        // Same sum with the l=1 value taken from the general formula.
        worst = std::max(worst, detail::rel(n / closed_form_formula({n, tau}, 1), n / tau));
      }
    d = detail::fmt("max rel err %.3g", worst);
    return worst <= tol::sum_rule;
  });
}

inline CheckResult criterion_annulus() {
  return detail::timed(10, "annulus trial quotients stay below 7.2 (supporting evidence)", 10.0, [](std::string& d) {
    double top = 0.0;
    for (int i = 1; i <= 18; ++i) {
      const double a = 0.05 * i, b = std::sqrt(1.0 + a * a);
      top = std::max(top, annulus_trial_quotient(a, b, 2).measure_normalized);
    }
    const double ball = annulus_trial_quotient(0.0, 1.0, 2).quotient;
    d = detail::fmt("max normalized quotient over a in [0.05,0.9]: %.10g", top) + detail::fmt(", ball %.12g", ball);
    return top < tol::annulus_ceiling && std::abs(ball - tol::annulus_ceiling) <= 1e-12 * tol::annulus_ceiling;
  });
}

inline std::vector<std::function<CheckResult()>> acceptance_checks() {
  return {criterion_fundamental_tone, criterion_second_order_bound, criterion_tau0,       criterion_determinant,
          criterion_concentration,    criterion_rayleigh,           criterion_hadamard,   criterion_isoperimetric,
          criterion_sum_rule,         criterion_annulus};
}

// Module invariants not already covered by the criteria (fast subset of the unit tests).
inline std::vector<std::function<CheckResult()>> invariant_checks() {
  std::vector<std::function<CheckResult()>> v;
  v.push_back([] {
    return detail::timed(101, "specfun: Wronskian J Y' - J' Y = 2/(pi z)", 5.0, [](std::string& d) {
      double worst = 0.0;
      for (double nu : {0.0, 0.5, 1.0, 3.0, 7.5, 10.0})
        for (double z : {0.1, 1.0, 5.0, 20.0, 50.0}) {
          const auto j = bessel_pair(BesselKind::J, nu, z), y = bessel_pair(BesselKind::Y, nu, z);
          worst = std::max(worst, detail::rel(j.value * y.derivative - j.derivative * y.value, 2.0 / (std::numbers::pi * z)));
        }
      d = detail::fmt("max rel %.3g", worst);
      return worst <= 1e-10;
    });
  });
  v.push_back([] {
    return detail::timed(102, "specfun: i_l recurrences and positivity", 5.0, [](std::string& d) {
      double worst = 0.0;
      bool positive = true;
      for (int n : {2, 3, 4})
        for (int l = 0; l <= 10; ++l)
          for (double z : {0.3, 1.0, 3.0, 5.0}) {
            const auto w = ultraspherical_derivatives(BesselKind::I, l, n, z);
            const double a = ultraspherical_derivatives(BesselKind::I, l + 1, n, z)[0];
            const double b = ultraspherical_derivatives(BesselKind::I, l + 2, n, z)[0];
            const double c = ultraspherical_derivatives(BesselKind::I, l + 3, n, z)[0];
            const double d1 = l / z * w[0] + a;
            const double d2 = l * (l - 1.0) / (z * z) * w[0] + (2.0 * l + 1.0) / z * a + b;
            const double d3 = l * (l - 1.0) * (l - 2.0) / (z * z * z) * w[0] + 3.0 * l * l / (z * z) * a +
                              3.0 * (l + 1.0) / z * b + c;
            worst = std::max({worst, detail::rel(w[1], d1), detail::rel(w[2], d2), detail::rel(w[3], d3)});
            for (double x : w) positive = positive && (l == 0 ? x >= 0.0 : x > 0.0);
          }
      d = detail::fmt("max rel %.3g", worst) + (positive ? ", all positive" : ", sign violation");
      return worst <= 1e-10 && positive;
    });
  });
  v.push_back([] {
    return detail::timed(103, "harmonics: circle orthonormality", 5.0, [](std::string& d) {
      double worst = 0.0;
      const int n = 256;
      for (int l = 0; l <= 6; ++l)
        for (int i = 0; i < multiplicity(l, 2); ++i)
          for (int l2 = 0; l2 <= 6; ++l2)
            for (int i2 = 0; i2 < multiplicity(l2, 2); ++i2) {
              double s = 0.0;
              for (int j = 0; j < n; ++j) {
                const double t = 2.0 * std::numbers::pi * j / n;
                s += circle_harmonic(l, i, t) * circle_harmonic(l2, i2, t);
              }
              s *= 2.0 * std::numbers::pi / n;
              worst = std::max(worst, std::abs(s - ((l == l2 && i == i2) ? 1.0 : 0.0)));
            }
      d = detail::fmt("max abs err %.3g", worst);
      return worst <= 1e-10;
    });
  });
  v.push_back([] {
    return detail::timed(104, "ball spectrum: strict monotonicity 2<=l<=10", 5.0, [](std::string& d) {
      bool ok = true;
      for (int n : {2, 3, 4})
        for (double tau : {0.1, 1.0, 10.0})
          for (int l = 2; l < 10; ++l) ok = ok && ball_eigenvalue({n, tau}, l + 1) > ball_eigenvalue({n, tau}, l);
      d = ok ? "increasing" : "not increasing";
      return ok;
    });
  });
  v.push_back([] {
    return detail::timed(105, "radial solver: mode residuals and mass linearity", 20.0, [](std::string& d) {
      const auto rho = make_rho_eps(0.05, sphere_area(2), 2);
      const auto res = solve_neumann_eigenvalues(2, 2, 1.0, rho, {0.0, 60.0}, 3);
      double resid = 0.0;
      for (const auto& r : res.roots) resid = std::max(resid, r.mode.residual());
      const auto res2 = solve_neumann_eigenvalues(2, 2, 1.0, rho.scaled(2.0), {0.0, 30.0}, 3);
      double lin = res.roots.size() == res2.roots.size() ? 0.0 : 1.0;
      for (std::size_t i = 0; i < std::min(res.roots.size(), res2.roots.size()); ++i)
        lin = std::max(lin, detail::rel(2.0 * res2.roots[i].lambda, res.roots[i].lambda));
      d = detail::fmt("%.0f roots", static_cast<double>(res.roots.size())) + detail::fmt(", residual %.3g", resid) +
          detail::fmt(", mass doubling %.3g", lin);
      return !res.roots.empty() && resid <= 1e-7 && lin <= 1e-8;
    });
  });
  v.push_back([] {
    return detail::timed(106, "rayleigh: k-monotonicity for k >= N+1/2", 10.0, [](std::string& d) {
      bool ok = true;
      for (const auto& c : profile_corpus()) {
        if (c.l < 2) continue;  // R ~ r makes the k R²/r⁴ term non-integrable for k > N-1
        double prev = -INFINITY;
        for (int k = 3; k <= 12; ++k) {
          const double v = reduced_radial_numerator_k(c.profile, k, 2, c.tau);
          ok = ok && v >= prev;
          prev = v;
        }
      }
      d = ok ? "nondecreasing" : "decrease found";
      return ok;
    });
  });
  v.push_back([] {
    return detail::timed(107, "geometry: asymmetry invariance and UB scaling", 10.0, [](std::string& d) {
      const PlanarPolygon L({{0, 0}, {2, 0}, {2, 1}, {1, 1}, {1, 2}, {0, 2}});
      const double a0 = fraenkel_asymmetry(L).asymmetry;
      const double a1 = fraenkel_asymmetry(L.rotated(0.7).translated({3.0, -1.5})).asymmetry;
      // UB(αΩ, τ) = α⁻³ UB(Ω, α²τ)
      const double alpha = 1.7, tau = 0.8;
      const double lhs = isoperimetric_report(L.scaled(alpha), tau).upper_bound;
      const double rhs = std::pow(alpha, -3) * isoperimetric_report(L, alpha * alpha * tau).upper_bound;
      d = detail::fmt("asymmetry change %.3g", std::abs(a0 - a1)) + detail::fmt(", scaling rel %.3g", detail::rel(lhs, rhs));
      return std::abs(a0 - a1) <= 1e-6 && detail::rel(lhs, rhs) <= 1e-12;
    });
  });
  v.push_back([] {
    return detail::timed(108, "hadamard: linearity and volume-preserving speeds", 10.0, [](std::string& d) {
      double lin = 0.0, vp = 0.0;
      for (int l : {1, 2, 3}) {
        const auto m = steklov_multiplet(l, 1.0);
        const double whole = hadamard_derivative(m, NormalSpeed::constant(1.0) + NormalSpeed::cosine(1));
        const double parts = hadamard_derivative(m, NormalSpeed::constant(1.0)) + hadamard_derivative(m, NormalSpeed::cosine(1));
        lin = std::max(lin, detail::rel(whole, parts));
        for (const auto& g : {NormalSpeed::cosine(1), NormalSpeed::cosine(2), NormalSpeed::sine(3)})
          vp = std::max(vp, std::abs(hadamard_derivative(m, g)) / m.lambda);
      }
      d = detail::fmt("linearity %.3g", lin) + detail::fmt(", volume-preserving |d|/lambda %.3g", vp);
      return lin <= 1e-12 && vp <= 1e-9;
    });
  });
  return v;
}

inline std::vector<CheckResult> run_checks(const std::vector<std::function<CheckResult()>>& checks) {
  std::vector<CheckResult> out;
  for (const auto& c : checks) out.push_back(c());
  return out;
}

inline std::string format_line(const CheckResult& r) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "[%s] %d ", r.passed ? "PASS" : "FAIL", r.id);
  char tail[64];
  std::snprintf(tail, sizeof tail, " (%.3fs / %.0fs)", r.seconds, r.time_limit);
  return std::string(buf) + r.name + ": " + r.detail + tail;
}

}  // namespace bisteklov::verify
