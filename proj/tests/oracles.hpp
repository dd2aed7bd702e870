// Test-only independent oracles: plain scalar bisection of the reduced
// characteristic equations, kept separate from the library's solver path.
// The frozen constants below were produced by these oracles at 200 bisection
// steps; each test re-derives them at runtime and checks the transcription.
#pragma once

#include <cmath>
#include <functional>

namespace testoracle {

inline double bisect(const std::function<double(double)>& f, double lo, double hi,
                     int steps = 200) {
  double flo = f(lo);
  for (int i = 0; i < steps; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if ((flo < 0.0) == (fm < 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

// One mass m at the midpoint of a unit cable (rho = T = l = 1) reduces the
// characteristic equation to cot(lambda/2) = m*lambda/2.
inline double midpoint_mass_root(double mass, double lo, double hi) {
  return bisect(
      [mass](double x) { return std::cos(x / 2) / std::sin(x / 2) - mass * x / 2; }, lo, hi);
}

// Same reduction for the moving-load unit case (v = a = 1, normalized factor
// doubles the effective mass): cot(lambda/2) = lambda.
inline double moving_midpoint_root(double lo, double hi) {
  return bisect([](double x) { return std::cos(x / 2) / std::sin(x / 2) - x; }, lo, hi);
}

// Frozen oracle outputs (unit midpoint-mass family).
inline constexpr double kMidpointUnitLambda1 = 1.7206671780387595;   // cot(x/2) = x/2
inline constexpr double kMidpointUnitLambda3 = 6.8512369189634565;   // next odd branch
inline constexpr double kMovingUnitLambda1 = 1.306542374188806;      // cot(x/2) = x
inline constexpr double kMidpointMass10Lambda1 = 0.62210569640059554;  // cot(x/2) = 5x

}  // namespace testoracle
