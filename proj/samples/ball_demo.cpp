// Prints the first few ball eigenvalues, checks one against the Rayleigh quotient of its
// mode and runs the isoperimetric chain on a square.
#include <cstdio>

#include "bisteklov/bisteklov.hpp"

int main() {
  using namespace bisteklov;
  const ProblemParams p{2, 1.0};
  for (const auto& e : enumerate_spectrum(p, 8))
    std::printf("l=%d  lambda=%.15g  multiplicity=%d\n", e.l, e.lambda, e.multiplicity);

  const auto q = rayleigh_quotient(mode_radial_profile(mode_profile(p, 2)), 2, 2, p.tau, {0.0, 1.0});
  std::printf("Rayleigh quotient of the l=2 mode: %.15g\n", q.quotient);

  const auto r = isoperimetric_report(rectangle(1.0, 1.0), 1.0);
  std::printf("square: UB=%.6f  lambda2(ball)=%.6f  A=%.6f  holds=%s\n", r.upper_bound, r.lambda2_ball, r.asymmetry,
              r.quantitative_holds ? "yes" : "no");
}
