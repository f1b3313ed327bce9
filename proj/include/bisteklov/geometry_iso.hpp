#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include <boost/math/quadrature/gauss.hpp>

#include "bisteklov/errors.hpp"

namespace bisteklov {

struct Point {
  double x = 0.0;
  double y = 0.0;
};

inline Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
inline Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
inline Point operator*(double s, Point a) { return {s * a.x, s * a.y}; }
inline double dot(Point a, Point b) { return a.x * b.x + a.y * b.y; }
inline double cross(Point a, Point b) { return a.x * b.y - a.y * b.x; }
inline double norm(Point a) { return std::hypot(a.x, a.y); }

namespace detail {

inline int orient(Point a, Point b, Point c) {
  const double v = cross(b - a, c - a);
  const double scale = norm(b - a) * norm(c - a);
  if (std::abs(v) <= 1e-14 * scale) return 0;
  return v > 0 ? 1 : -1;
}

inline bool on_segment(Point a, Point b, Point p) {
  return std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) && std::min(a.y, b.y) <= p.y &&
         p.y <= std::max(a.y, b.y);
}

inline bool segments_intersect(Point a, Point b, Point c, Point d) {
  const int o1 = orient(a, b, c), o2 = orient(a, b, d), o3 = orient(c, d, a), o4 = orient(c, d, b);
  if (o1 != o2 && o3 != o4) return true;
  if (o1 == 0 && on_segment(a, b, c)) return true;
  if (o2 == 0 && on_segment(a, b, d)) return true;
  if (o3 == 0 && on_segment(c, d, a)) return true;
  if (o4 == 0 && on_segment(c, d, b)) return true;
  return false;
}

inline double signed_area(const std::vector<Point>& v) {
  double s = 0.0;
  for (std::size_t i = 0, n = v.size(); i < n; ++i) s += cross(v[i], v[(i + 1) % n]);
  return 0.5 * s;
}

}  // namespace detail

// Simple polygon, stored counterclockwise.
class PlanarPolygon {
 public:
  PlanarPolygon() = default;
  explicit PlanarPolygon(std::vector<Point> vertices) : v_(std::move(vertices)) {
    validate();
    if (detail::signed_area(v_) < 0.0) std::reverse(v_.begin(), v_.end());
  }

  const std::vector<Point>& vertices() const { return v_; }
  std::size_t size() const { return v_.size(); }
  Point vertex(std::size_t i) const { return v_[i % v_.size()]; }

  double area() const { return detail::signed_area(v_); }
  double perimeter() const {
    double p = 0.0;
    for (std::size_t i = 0; i < v_.size(); ++i) p += norm(vertex(i + 1) - vertex(i));
    return p;
  }

  PlanarPolygon translated(Point d) const {
    std::vector<Point> w;
    for (const auto& p : v_) w.push_back(p + d);
    return PlanarPolygon(std::move(w));
  }
  PlanarPolygon rotated(double angle, Point about = {}) const {
    const double c = std::cos(angle), s = std::sin(angle);
    std::vector<Point> w;
    for (const auto& p : v_) {
      const Point q = p - about;
      w.push_back(about + Point{c * q.x - s * q.y, s * q.x + c * q.y});
    }
    return PlanarPolygon(std::move(w));
  }
  PlanarPolygon scaled(double alpha) const {
    detail::require(alpha > 0.0 && std::isfinite(alpha), "PlanarPolygon: scale must be > 0");
    std::vector<Point> w;
    for (const auto& p : v_) w.push_back(alpha * p);
    return PlanarPolygon(std::move(w));
  }

  std::array<Point, 2> bounding_box() const {
    Point lo = v_[0], hi = v_[0];
    for (const auto& p : v_) {
      lo = {std::min(lo.x, p.x), std::min(lo.y, p.y)};
      hi = {std::max(hi.x, p.x), std::max(hi.y, p.y)};
    }
    return {lo, hi};
  }

 private:
  void validate() const {
    const std::size_t n = v_.size();
    if (n < 3) throw Error(ErrorCode::InvalidPolygon, "polygon: need at least 3 vertices");
    for (const auto& p : v_)
      if (!std::isfinite(p.x) || !std::isfinite(p.y))
        throw Error(ErrorCode::InvalidPolygon, "polygon: nonfinite vertex");
    for (std::size_t i = 0; i < n; ++i)
      if (norm(v_[(i + 1) % n] - v_[i]) == 0.0)
        throw Error(ErrorCode::InvalidPolygon, "polygon: repeated vertex");
    for (std::size_t i = 0; i < n; ++i) {
      const Point a = v_[i], b = v_[(i + 1) % n];
      for (std::size_t j = i + 1; j < n; ++j) {
        const Point c = v_[j], d = v_[(j + 1) % n];
        const bool next = j == i + 1, wrap = i == 0 && j == n - 1;
        if (next || wrap) {
          // Adjacent edges share one vertex; they may only overlap if folded back.
          const Point shared = next ? b : a;
          const Point p = next ? a : b, q = next ? d : c;
          if (detail::orient(p, shared, q) == 0 && dot(p - shared, q - shared) > 0.0)
            throw Error(ErrorCode::InvalidPolygon, "polygon: self-intersection");
          continue;
        }
        if (detail::segments_intersect(a, b, c, d))
          throw Error(ErrorCode::InvalidPolygon, "polygon: self-intersection");
      }
    }
    if (!(std::abs(detail::signed_area(v_)) > 0.0))
      throw Error(ErrorCode::InvalidPolygon, "polygon: zero area");
  }

  std::vector<Point> v_;
};

struct PolygonMeasures {
  double area = 0.0;
  double perimeter = 0.0;
  Point boundary_centroid;
};

inline PolygonMeasures polygon_measures(const PlanarPolygon& poly) {
  PolygonMeasures m;
  m.area = poly.area();
  Point acc;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const Point a = poly.vertex(i), b = poly.vertex(i + 1);
    const double len = norm(b - a);
    m.perimeter += len;
    acc = acc + (0.5 * len) * (a + b);
  }
  m.boundary_centroid = (1.0 / m.perimeter) * acc;
  return m;
}

// Integral of |x - center|^p over the boundary.
inline double boundary_moment(const PlanarPolygon& poly, double p, Point center) {
  detail::require(std::isfinite(p) && p > 1.0, "boundary_moment: p must be > 1");
  double total = 0.0;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const Point a = poly.vertex(i) - center, d = poly.vertex(i + 1) - poly.vertex(i);
    const double len = norm(d);
    if (p == 2.0) {
      total += len * (dot(a, a) + dot(a, d) + dot(d, d) / 3.0);
      continue;
    }
    // |a + t d|^p is smooth except where the segment passes through the center; split there.
    const double dd = dot(d, d);
    const double tc = std::clamp(-dot(a, d) / dd, 0.0, 1.0);
    auto f = [&](double t) { return std::pow(norm(a + t * d), p); };
    double s = 0.0;
    for (auto [lo, hi] : {std::pair{0.0, tc}, std::pair{tc, 1.0}})
      if (hi > lo) s += boost::math::quadrature::gauss<double, 30>::integrate(f, lo, hi);
    total += len * s;
  }
  return total;
}

namespace detail {

// Signed area of triangle(0, a, b) intersected with the disk |x| < r. Returns false on a
// near-tangency so the caller can perturb the radius.
inline bool edge_disk_area(Point a, Point b, double r, double& out) {
  const Point d = b - a;
  const double A = dot(d, d), Bh = dot(a, d), C = dot(a, a) - r * r;
  const double disc = Bh * Bh - A * C;
  std::vector<Point> pts{a};
  if (std::abs(disc) <= 1e-12 * A * r * r) {
    const double t = -Bh / A;
    if (t > 0.0 && t < 1.0) return false;
  } else if (disc > 0.0) {
    const double sq = std::sqrt(disc);
    // Stable quadratic roots.
    const double q = -(Bh + std::copysign(sq, Bh));
    double t1 = q / A, t2 = q != 0.0 ? C / q : t1;
    if (t1 > t2) std::swap(t1, t2);
    for (double t : {t1, t2})
      if (t > 0.0 && t < 1.0) pts.push_back(a + t * d);
  }
  pts.push_back(b);
  out = 0.0;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    const Point p = pts[i], q = pts[i + 1];
    const Point m = 0.5 * (p + q);
    if (dot(m, m) <= r * r)
      out += 0.5 * cross(p, q);
    else
      out += 0.5 * r * r * std::atan2(cross(p, q), dot(p, q));
  }
  return true;
}

}  // namespace detail

// Exact |poly ∩ disk(center, radius)|. Near-tangent edges trigger a deterministic radius
// nudge of 1e-12 (relative).
inline double disk_polygon_intersection_area(const PlanarPolygon& poly, Point center, double radius) {
  detail::require(std::isfinite(radius) && radius > 0.0, "disk_polygon_intersection_area: radius must be > 0");
  double r = radius;
  for (int attempt = 0; attempt < 8; ++attempt) {
    double total = 0.0;
    bool ok = true;
    for (std::size_t i = 0; i < poly.size() && ok; ++i) {
      double e = 0.0;
      ok = detail::edge_disk_area(poly.vertex(i) - center, poly.vertex(i + 1) - center, r, e);
      total += e;
    }
    if (ok) return std::max(0.0, total);
    r *= 1.0 + 1e-12;
  }
  throw Error(ErrorCode::NoConvergence, "disk_polygon_intersection_area: persistent tangency");
}

// |poly Δ disk(center, radius)|.
inline double symmetric_difference_area(const PlanarPolygon& poly, Point center, double radius) {
  const double disk = std::numbers::pi * radius * radius;
  return poly.area() + disk - 2.0 * disk_polygon_intersection_area(poly, center, radius);
}

struct NelderMeadResult {
  Point x;
  double f = 0.0;
  int iterations = 0;
};

// Minimal 2-D Nelder-Mead; stops when the simplex diameter drops below xtol.
template <class F>
NelderMeadResult nelder_mead_2d(F&& f, Point start, double step, double xtol, int max_iter = 2000) {
  std::array<Point, 3> s{start, start + Point{step, 0.0}, start + Point{0.0, step}};
  std::array<double, 3> v{f(s[0]), f(s[1]), f(s[2])};
  int it = 0;
  for (; it < max_iter; ++it) {
    std::array<int, 3> o{0, 1, 2};
    std::sort(o.begin(), o.end(), [&](int a, int b) { return v[a] < v[b]; });
    const Point best = s[o[0]], mid = s[o[1]], worst = s[o[2]];
    const double fb = v[o[0]], fm = v[o[1]], fw = v[o[2]];
    const double diam = std::max({norm(mid - best), norm(worst - best), norm(worst - mid)});
    if (diam < xtol) break;
    const Point c = 0.5 * (best + mid);
    const Point xr = c + (c - worst);
    const double fr = f(xr);
    auto set_worst = [&](Point p, double fp) {
      s[o[2]] = p;
      v[o[2]] = fp;
    };
    if (fr < fb) {
      const Point xe = c + 2.0 * (c - worst);
      const double fe = f(xe);
      fe < fr ? set_worst(xe, fe) : set_worst(xr, fr);
    } else if (fr < fm) {
      set_worst(xr, fr);
    } else {
      const bool outside = fr < fw;
      const Point xc = outside ? c + 0.5 * (xr - c) : c + 0.5 * (worst - c);
      const double fc = f(xc);
      if (fc < std::min(fr, fw)) {
        set_worst(xc, fc);
      } else {
        for (int k : {o[1], o[2]}) {
          s[k] = best + 0.5 * (s[k] - best);
          v[k] = f(s[k]);
        }
      }
    }
  }
  const auto k = std::min_element(v.begin(), v.end()) - v.begin();
  return {s[k], v[k], it};
}

struct AsymmetryResult {
  double asymmetry = 0.0;
  Point center;
};

// Fraenkel asymmetry: min over centers of |Ω Δ B(c)|/|Ω| with |B| = |Ω|.
inline AsymmetryResult fraenkel_asymmetry(const PlanarPolygon& poly) {
  const double area = poly.area();
  const double R = std::sqrt(area / std::numbers::pi);
  auto f = [&](Point c) { return symmetric_difference_area(poly, c, R) / area; };
  const auto box = poly.bounding_box();
  constexpr int G = 33;
  std::vector<std::pair<double, Point>> grid;
  for (int i = 0; i < G; ++i)
    for (int j = 0; j < G; ++j) {
      const Point c{box[0].x + (box[1].x - box[0].x) * i / (G - 1.0), box[0].y + (box[1].y - box[0].y) * j / (G - 1.0)};
      grid.push_back({f(c), c});
    }
  std::partial_sort(grid.begin(), grid.begin() + 3, grid.end(),
                    [](const auto& a, const auto& b) { return a.first < b.first; });
  const double cell = std::max(box[1].x - box[0].x, box[1].y - box[0].y) / (G - 1.0);
  AsymmetryResult best{grid[0].first, grid[0].second};
  for (int k = 0; k < 3; ++k) {
    const auto nm = nelder_mead_2d(f, grid[k].second, cell, 1e-6 * std::max(R, 1e-300));
    if (nm.f < best.asymmetry) best = {nm.f, nm.x};
  }
  best.asymmetry = std::clamp(best.asymmetry, 0.0, 2.0);
  return best;
}

struct StabilityConstants {
  double c = 0.0;      // c_{N,p}
  double delta = 0.0;  // δ_N
};

inline StabilityConstants stability_constants(int dim, double p) {
  detail::require(dim >= 2, "stability_constants: N must be >= 2");
  detail::require(std::isfinite(p) && p > 1.0, "stability_constants: p must be > 1");
  const double N = dim, root = std::pow(2.0, 1.0 / N);
  // t^{p-1} is increasing on [1, 2^{1/N}] for p > 1.
  const double tmin = std::min(1.0, std::pow(root, p - 1.0));
  StabilityConstants out;
  out.c = (N + p - 1.0) * (p - 1.0) / 4.0 * ((root - 1.0) / N) * tmin;
  out.delta = (N + 1.0) / (8.0 * N) * (root - 1.0);
  return out;
}

struct IsoReport {
  double tau = 0.0;
  double area = 0.0;
  double perimeter = 0.0;
  Point boundary_centroid;
  double moment2 = 0.0;           // about the boundary centroid
  double asymmetry = 0.0;         // Fraenkel A(Ω)
  Point asymmetry_center;
  double sym_diff_centered = 0.0;  // |Ω Δ Ω*| / |Ω|, Ω* centered at the boundary centroid
  double c_constant = 0.0;
  double delta = 0.0;
  double moment_lhs = 0.0;
  double moment_rhs = 0.0;
  double upper_bound = 0.0;        // N τ |Ω| / moment2
  double ball_radius = 0.0;        // R*
  double lambda2_ball = 0.0;       // τ / R*
  double quantitative_bound = 0.0;  // λ₂(Ω*)(1 − δ A²)
  bool moment_inequality = false;
  bool ub_below_ball = false;
  bool quantitative_holds = false;

  double quantitative_slack() const { return quantitative_bound - upper_bound; }
};

inline IsoReport isoperimetric_report(const PlanarPolygon& poly, double tau) {
  detail::require(std::isfinite(tau) && tau > 0.0, "isoperimetric_report: tau must be > 0");
  constexpr int N = 2;
  IsoReport r;
  r.tau = tau;
  const auto m = polygon_measures(poly);
  r.area = m.area;
  r.perimeter = m.perimeter;
  r.boundary_centroid = m.boundary_centroid;
  r.moment2 = boundary_moment(poly, 2.0, m.boundary_centroid);
  const auto asym = fraenkel_asymmetry(poly);
  r.asymmetry = asym.asymmetry;
  r.asymmetry_center = asym.center;
  const auto k = stability_constants(N, 2.0);
  r.c_constant = k.c;
  r.delta = k.delta;
  r.ball_radius = std::sqrt(m.area / std::numbers::pi);
  r.sym_diff_centered = symmetric_difference_area(poly, m.boundary_centroid, r.ball_radius) / m.area;
  r.moment_lhs = r.moment2;
  r.moment_rhs = 2.0 * std::numbers::pi * std::pow(r.ball_radius, 3) *
                 (1.0 + k.c * r.sym_diff_centered * r.sym_diff_centered);
  r.upper_bound = N * tau * m.area / r.moment2;
  r.lambda2_ball = tau / r.ball_radius;
  r.quantitative_bound = r.lambda2_ball * (1.0 - k.delta * r.asymmetry * r.asymmetry);
  // Relative slack of 1e-12 absorbs rounding for the disk-like members.
  r.moment_inequality = r.moment_lhs >= r.moment_rhs * (1.0 - 1e-12);
  r.ub_below_ball = r.upper_bound <= r.lambda2_ball * (1.0 + 1e-12);
  r.quantitative_holds = r.upper_bound <= r.quantitative_bound * (1.0 + 1e-12);
  return r;
}

// Standard shapes.
inline PlanarPolygon regular_polygon(int n, double circumradius = 1.0, Point center = {}, double phase = 0.0) {
  detail::require(n >= 3, "regular_polygon: n must be >= 3");
  std::vector<Point> v;
  for (int i = 0; i < n; ++i) {
    const double t = phase + 2.0 * std::numbers::pi * i / n;
    v.push_back(center + Point{circumradius * std::cos(t), circumradius * std::sin(t)});
  }
  return PlanarPolygon(std::move(v));
}

inline PlanarPolygon rectangle(double w, double h, Point lower_left = {}) {
  const Point o = lower_left;
  return PlanarPolygon({o, o + Point{w, 0.0}, o + Point{w, h}, o + Point{0.0, h}});
}

// r(θ) = 1 + amp cos(mode θ), sampled at n angles.
inline PlanarPolygon perturbed_disk(double amp, int mode, int n = 256) {
  detail::require(std::abs(amp) < 1.0, "perturbed_disk: |amp| must be < 1");
  std::vector<Point> v;
  for (int i = 0; i < n; ++i) {
    const double t = 2.0 * std::numbers::pi * i / n, r = 1.0 + amp * std::cos(mode * t);
    v.push_back({r * std::cos(t), r * std::sin(t)});
  }
  return PlanarPolygon(std::move(v));
}

}  // namespace bisteklov
