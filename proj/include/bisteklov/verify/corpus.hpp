#pragma once

// Fixed test corpora shared by the acceptance binary, unit tests and `selftest`.

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "bisteklov/ball_spectrum.hpp"
#include "bisteklov/geometry_iso.hpp"
#include "bisteklov/rayleigh.hpp"

namespace bisteklov::verify {

struct NamedPolygon {
  std::string name;
  PlanarPolygon poly;
};

// Rescaled to area π so that Ω* is the unit disk.
inline PlanarPolygon with_area_pi(const PlanarPolygon& p) {
  return p.scaled(std::sqrt(std::numbers::pi / p.area()));
}

inline std::vector<NamedPolygon> polygon_corpus() {
  std::vector<NamedPolygon> out;
  for (int n : {3, 4, 5, 6, 7, 8, 10, 12, 16, 24, 32, 64, 128})
    out.push_back({"regular-" + std::to_string(n), regular_polygon(n)});
  for (double ar : {1.5, 2.0, 3.0, 5.0})
    out.push_back({"rectangle-" + std::to_string(ar).substr(0, 3), rectangle(ar, 1.0)});
  struct Bump {
    double amp;
    int mode;
  };
  for (Bump b : {Bump{0.05, 4}, Bump{0.1, 2}, Bump{0.1, 3}, Bump{0.2, 5}, Bump{0.3, 3}})
    out.push_back({"perturbed-disk-" + std::to_string(b.mode) + "-" + std::to_string(b.amp).substr(0, 4),
                   perturbed_disk(b.amp, b.mode)});
  out.push_back({"L-shape", PlanarPolygon({{0, 0}, {2, 0}, {2, 1}, {1, 1}, {1, 2}, {0, 2}})});
  out.push_back({"right-triangle", PlanarPolygon({{0, 0}, {1, 0}, {0, 1}})});
  out.push_back({"trapezoid", PlanarPolygon({{0, 0}, {3, 0}, {2, 1}, {1, 1}})});
  out.push_back({"chevron", PlanarPolygon({{0, 0}, {2, 1}, {4, 0}, {2, 3}})});
  for (auto& p : out) p.poly = with_area_pi(p.poly);
  return out;
}

struct ProfileCase {
  std::string name;
  RadialProfile profile;
  int l = 0;
  double tau = 0.0;
};

inline RadialProfile quartic_mode_profile() {
  RadialProfile p;
  p.eval = [](double r) -> std::array<double, 3> {
    return {6.0 * r * r - r * r * r * r, 12.0 * r - 4.0 * r * r * r, 12.0 - 12.0 * r * r};
  };
  return p;
}

// N = 2 profiles on [0,1] for the dual-path check.
inline std::vector<ProfileCase> profile_corpus() {
  return {
      {"r, l=1, tau=1", power_profile(1), 1, 1.0},
      {"r^2, l=2, tau=0", power_profile(2), 2, 0.0},
      {"r^3, l=3, tau=1", power_profile(3), 3, 1.0},
      {"r^4, l=2, tau=0.5", power_profile(4), 2, 0.5},
      {"6r^2-r^4, l=2, tau=0", quartic_mode_profile(), 2, 0.0},
      {"6r^2-r^4, l=2, tau=2", quartic_mode_profile(), 2, 2.0},
      {"i_0, l=0, tau=1", bessel_profile(0, 2, 1.0), 0, 1.0},
      {"i_1, l=1, tau=3", bessel_profile(1, 2, 3.0), 1, 3.0},
      {"i_2, l=2, tau=1", bessel_profile(2, 2, 1.0), 2, 1.0},
      {"i_3, l=3, tau=5", bessel_profile(3, 2, 5.0), 3, 5.0},
      {"R_2 mode, tau=1", mode_radial_profile(mode_profile({2, 1.0}, 2)), 2, 1.0},
      {"R_4 mode, tau=2", mode_radial_profile(mode_profile({2, 2.0}, 4)), 4, 2.0},
  };
}

}  // namespace bisteklov::verify
