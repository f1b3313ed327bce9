#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "bisteklov/geometry_iso.hpp"
#include "bisteklov/verify/corpus.hpp"

using namespace bisteklov;

namespace {
constexpr double pi = std::numbers::pi;

// Area of a disk of radius R centered at the origin that lies in |x| <= d, |y| <= d, for d < R < d*sqrt(2).
double centered_square_overlap(double R, double d) {
  const double cap = R * R * std::acos(d / R) - d * std::sqrt(R * R - d * d);
  return pi * R * R - 4.0 * cap;
}
}  // namespace

TEST(Geometry, BasicMeasures) {
  const auto sq = rectangle(1.0, 1.0, {-0.5, -0.5});
  const auto m = polygon_measures(sq);
  EXPECT_DOUBLE_EQ(m.area, 1.0);
  EXPECT_DOUBLE_EQ(m.perimeter, 4.0);
  EXPECT_NEAR(m.boundary_centroid.x, 0.0, 1e-15);
  EXPECT_NEAR(boundary_moment(sq, 2.0, {0.0, 0.0}), 4.0 / 3.0, 1e-14);
  // p = 3 goes through quadrature: 4 edges of 2 * int_0^{1/2} (1/4 + t^2)^{3/2} dt.
  const double half_edge = 0.5 * 1.75 * std::sqrt(0.5) / 8.0 + 3.0 * 0.0625 / 8.0 * std::asinh(1.0);
  const double ref3 = 8.0 * half_edge;
  EXPECT_NEAR(boundary_moment(sq, 3.0, {0.0, 0.0}), ref3, 1e-12);
}

TEST(Geometry, OrientationNormalized) {
  const PlanarPolygon cw({{0, 0}, {0, 1}, {1, 1}, {1, 0}});
  EXPECT_GT(cw.area(), 0.0);
  EXPECT_GT(detail::signed_area(cw.vertices()), 0.0);
}

TEST(Geometry, RejectsInvalidPolygons) {
  auto code = [](std::vector<Point> v) {
    try {
      PlanarPolygon p(std::move(v));
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::NoConvergence;
  };
  EXPECT_EQ(code({{0, 0}, {1, 1}, {1, 0}, {0, 1}}), ErrorCode::InvalidPolygon);  // bowtie
  EXPECT_EQ(code({{0, 0}, {1, 0}}), ErrorCode::InvalidPolygon);
  EXPECT_EQ(code({{0, 0}, {1, 0}, {1, 0}, {0, 1}}), ErrorCode::InvalidPolygon);
  EXPECT_EQ(code({{0, 0}, {1, 0}, {2, 0}}), ErrorCode::InvalidPolygon);
  EXPECT_EQ(code({{0, 0}, {1, 0}, {NAN, 1}}), ErrorCode::InvalidPolygon);
  EXPECT_EQ(code({{0, 0}, {2, 0}, {1, 0}, {1, 1}}), ErrorCode::InvalidPolygon);  // edge folds back
}

TEST(Geometry, DiskIntersectionExamples) {
  const auto big = rectangle(4.0, 4.0, {-2.0, -2.0});
  EXPECT_NEAR(disk_polygon_intersection_area(big, {0, 0}, 1.0), pi, 1e-13);
  const auto half = rectangle(4.0, 2.0, {-2.0, 0.0});
  EXPECT_NEAR(disk_polygon_intersection_area(half, {0, 0}, 1.0), pi / 2.0, 1e-13);
  // Disk exactly tangent to all four sides of the unit square.
  const auto sq = rectangle(1.0, 1.0, {-0.5, -0.5});
  EXPECT_NEAR(disk_polygon_intersection_area(sq, {0, 0}, 0.5), pi / 4.0, 1e-10);
  EXPECT_NEAR(disk_polygon_intersection_area(sq, {5, 5}, 1.0), 0.0, 1e-15);
  const double R = 1.0 / std::sqrt(pi);
  EXPECT_NEAR(disk_polygon_intersection_area(sq, {0, 0}, R), centered_square_overlap(R, 0.5), 1e-13);
}

TEST(Geometry, DiskIntersectionMonteCarlo) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const PlanarPolygon tri({{u(rng), u(rng)}, {u(rng), u(rng)}, {u(rng), u(rng)}});
  const Point c{0.1, -0.2};
  const double r = 0.7;
  constexpr int G = 4096;
  const double h = 2.0 / G;
  const auto& v = tri.vertices();
  long hits = 0;
  for (int i = 0; i < G; ++i)
    for (int j = 0; j < G; ++j) {
      const Point p{-1.0 + (i + 0.5) * h, -1.0 + (j + 0.5) * h};
      if (norm(p - c) > r) continue;
      bool in = true;
      for (int k = 0; k < 3; ++k)
        if (cross(v[(k + 1) % 3] - v[k], p - v[k]) < 0.0) in = false;
      hits += in;
    }
  EXPECT_NEAR(disk_polygon_intersection_area(tri, c, r), hits * h * h, 2e-4);
}

TEST(Geometry, IntersectionMonotoneInRadius) {
  const auto L = verify::polygon_corpus();
  for (const auto& np : L) {
    double prev = 0.0;
    for (double r = 0.1; r < 3.0; r += 0.1) {
      const double a = disk_polygon_intersection_area(np.poly, polygon_measures(np.poly).boundary_centroid, r);
      EXPECT_GE(a, prev - 1e-13) << np.name;
      prev = a;
    }
    EXPECT_NEAR(prev, np.poly.area(), 1e-12) << np.name;
  }
}

TEST(Geometry, SquareAsymmetry) {
  const auto sq = rectangle(1.0, 1.0, {-0.5, -0.5});
  const auto a = fraenkel_asymmetry(sq);
  const double ref = 2.0 * (1.0 - centered_square_overlap(1.0 / std::sqrt(pi), 0.5));
  EXPECT_NEAR(a.asymmetry, ref, 1e-9);
  EXPECT_NEAR(a.asymmetry, 0.1810919376, 1e-9);
  EXPECT_NEAR(a.center.x, 0.0, 1e-5);
  EXPECT_NEAR(a.center.y, 0.0, 1e-5);
  EXPECT_NEAR(fraenkel_asymmetry(sq.rotated(0.7, {3, 1}).translated({-2, 5})).asymmetry, ref, 1e-9);
  EXPECT_NEAR(fraenkel_asymmetry(sq.scaled(3.0)).asymmetry, ref, 1e-9);
}

TEST(Geometry, OptimizerBeatsDenseGrid) {
  for (const auto& np : verify::polygon_corpus()) {
    if (np.name != "L-shape" && np.name != "chevron" && np.name != "right-triangle") continue;
    const auto a = fraenkel_asymmetry(np.poly);
    const double R = std::sqrt(np.poly.area() / pi);
    const auto box = np.poly.bounding_box();
    double best = 2.0;
    constexpr int G = 121;
    for (int i = 0; i < G; ++i)
      for (int j = 0; j < G; ++j) {
        const Point c{box[0].x + (box[1].x - box[0].x) * i / (G - 1.0), box[0].y + (box[1].y - box[0].y) * j / (G - 1.0)};
        best = std::min(best, symmetric_difference_area(np.poly, c, R) / np.poly.area());
      }
    EXPECT_LE(a.asymmetry, best + 1e-4) << np.name;
    EXPECT_GE(a.asymmetry, 0.0);
  }
}

TEST(Geometry, StabilityConstants) {
  const auto k = stability_constants(2, 2.0);
  EXPECT_NEAR(k.c, 0.1553300859, 1e-10);
  EXPECT_NEAR(k.delta, 0.07766504294, 1e-11);
  for (int n = 2; n <= 10; ++n) {
    const auto s = stability_constants(n, 2.0);
    const double root = std::pow(2.0, 1.0 / n);
    EXPECT_NEAR(s.c, (n + 1.0) / 4.0 * (root - 1.0) / n, 1e-15);
    EXPECT_NEAR(s.delta, (n + 1.0) / (8.0 * n) * (root - 1.0), 1e-15);
    EXPECT_GT(s.delta, 0.0);
  }
  EXPECT_THROW(stability_constants(1, 2.0), Error);
  EXPECT_THROW(stability_constants(2, 1.0), Error);
}

TEST(Geometry, ReportOnCorpus) {
  for (const auto& np : verify::polygon_corpus()) {
    const auto r = isoperimetric_report(np.poly, 1.0);
    EXPECT_NEAR(r.area, pi, 1e-12) << np.name;
    EXPECT_NEAR(r.ball_radius, 1.0, 1e-12);
    EXPECT_TRUE(r.moment_inequality) << np.name;
    EXPECT_TRUE(r.ub_below_ball) << np.name;
    EXPECT_TRUE(r.quantitative_holds) << np.name;
  }
}

TEST(Geometry, ReportApproachesDisk) {
  const auto r = isoperimetric_report(verify::with_area_pi(regular_polygon(128)), 2.0);
  EXPECT_LT(r.asymmetry, 5e-4);
  EXPECT_LT(std::abs(r.upper_bound - r.lambda2_ball) / r.lambda2_ball, 5e-3);
}

TEST(Geometry, ReportInvariances) {
  const auto base = verify::polygon_corpus()[20].poly;
  const auto r0 = isoperimetric_report(base, 1.5);
  const auto r1 = isoperimetric_report(base.rotated(1.1, {0.3, 0.2}).translated({4.0, -1.0}), 1.5);
  EXPECT_NEAR(r1.upper_bound, r0.upper_bound, 1e-12 * r0.upper_bound);
  EXPECT_NEAR(r1.asymmetry, r0.asymmetry, 1e-8);
  EXPECT_NEAR(r1.sym_diff_centered, r0.sym_diff_centered, 1e-10);
  const auto r2 = isoperimetric_report(base.scaled(2.0), 1.5);
  EXPECT_NEAR(r2.upper_bound, r0.upper_bound / 2.0, 1e-12 * r0.upper_bound);
  EXPECT_NEAR(r2.lambda2_ball, r0.lambda2_ball / 2.0, 1e-12 * r0.lambda2_ball);
  EXPECT_NEAR(r2.asymmetry, r0.asymmetry, 1e-8);
  const auto r3 = isoperimetric_report(base, 3.0);
  EXPECT_NEAR(r3.upper_bound, 2.0 * r0.upper_bound, 1e-12 * r0.upper_bound);
}
