#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>
#include <numeric>

#include "cabledyn/fd_oracle.hpp"
#include "cabledyn/rng.hpp"
#include "oracles.hpp"

using namespace cabledyn;

namespace {

constexpr double kPi = std::numbers::pi;

ProblemInstance instance(CableSpec cable, std::vector<LoadSpec> loads = {}) {
  ProblemDescription desc;
  desc.cable = cable;
  desc.loads = std::move(loads);
  return ProblemInstance::validate(desc);
}

}  // namespace

TEST_CASE("discretization layout") {
  SUBCASE("bare cable second differences") {
    const DiscretizedProblem p = discretize(instance({1.0, 1.0, 4.0}), 10);
    CHECK(p.h == doctest::Approx(0.4));
    for (double d : p.stiffness_diag) CHECK(d == doctest::Approx(2.0 / 0.4));
    for (double e : p.stiffness_off) CHECK(e == doctest::Approx(-1.0 / 0.4));
    CHECK(p.stiffness_diag.size() == 9);
    CHECK(p.stiffness_off.size() == 8);
    CHECK(p.mass_diag.size() == 11);
  }
  SUBCASE("load exactly on a node") {
    // l = 4, M = 16 gives h = 0.25 binary-exact, node 8 at position 2.
    const DiscretizedProblem p = discretize(instance({1.0, 1.0, 4.0}, {{1.0, 2.0}}), 16);
    CHECK(p.mass_diag[8] == doctest::Approx(1.0 + 0.25).epsilon(1e-15));
    CHECK(p.mass_diag[7] == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(p.mass_off[7] == 0.0);
    CHECK(p.mass_off[8] == 0.0);
  }
  SUBCASE("load midway between nodes splits its row mass evenly") {
    const DiscretizedProblem p = discretize(instance({1.0, 1.0, 4.0}, {{1.0, 2.125}}), 16);
    // Consistent rank-one coupling: diagonal (1-w)^2, w^2 and off w(1-w),
    // so each neighbouring row carries half of the point mass in total.
    CHECK(p.mass_diag[8] == doctest::Approx(0.25 + 0.25).epsilon(1e-12));
    CHECK(p.mass_diag[9] == doctest::Approx(0.25 + 0.25).epsilon(1e-12));
    CHECK(p.mass_off[8] == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(p.mass_diag[8] - 0.25 + p.mass_off[8] == doctest::Approx(0.5).epsilon(1e-12));
  }
}

TEST_CASE("mass lumping conserves the total mass") {
  SplitMix64 rng(31);
  for (int trial = 0; trial < 30; ++trial) {
    const double l = rng.uniform(0.5, 3.0);
    const double rho = rng.uniform(0.5, 2.0);
    std::vector<LoadSpec> loads;
    const int n = rng.uniform_int(0, 4);
    double total = 0.0;
    for (int i = 0; i < n; ++i) {
      const double frac = 0.06 + 0.88 * (i + 0.5 + 0.4 * rng.uniform01()) / n;
      loads.push_back({rng.log_uniform(0.01, 100.0), frac * l});
      total += loads.back().mass;
    }
    const DiscretizedProblem p = discretize(instance({rho, 1.3, l}, loads), 500);
    const double sum = std::accumulate(p.mass_diag.begin(), p.mass_diag.end(), 0.0) +
                       2.0 * std::accumulate(p.mass_off.begin(), p.mass_off.end(), 0.0);
    CHECK(sum == doctest::Approx(rho * l + total).epsilon(1e-12));
    for (double m : p.mass_diag) CHECK(m > 0.0);
    for (double m : p.mass_off) CHECK(m >= 0.0);
  }
}

TEST_CASE("grid must separate adjacent loads and meet the minimum size") {
  CHECK_THROWS_AS(discretize(instance({1, 1, 1}), 9), ValidationError);
  CHECK_THROWS_AS(discretize(instance({1, 1, 1}, {{1.0, 0.500}, {1.0, 0.505}}), 100),
                  ValidationError);
  CHECK_NOTHROW(discretize(instance({1, 1, 1}, {{1.0, 0.500}, {1.0, 0.505}}), 1000));
  ProblemDescription moving;
  moving.cable = {1, 1, 1};
  moving.motion.mode = MotionMode::LoadsMoving;
  CHECK_THROWS_AS(discretize(ProblemInstance::validate(moving), 100), ValidationError);
}

TEST_CASE("tridiagonal Sturm bisection on a known matrix") {
  // tridiag(-1, 2, -1) of order n has eigenvalues 2 - 2*cos(k*pi/(n+1)).
  const int n = 50;
  std::vector<double> d(n, 2.0), e(n - 1, -1.0);
  const std::vector<double> eigs = tridiagonal_smallest_eigenvalues(d, e, 5);
  for (int k = 1; k <= 5; ++k)
    CHECK(eigs[k - 1] == doctest::Approx(2.0 - 2.0 * std::cos(k * kPi / (n + 1))).epsilon(1e-12));
  CHECK_THROWS_AS(tridiagonal_smallest_eigenvalues(d, e, 0), ValidationError);
  CHECK_THROWS_AS(tridiagonal_smallest_eigenvalues(d, {}, 1), ValidationError);
}

TEST_CASE("bare-cable spectrum converges to k*pi/l") {
  // The discrete eigenvalues are exactly (2/h)sin(k*pi*h/(2l)), so the
  // deviation from k is k^3 h^2/24 + O(h^4).
  const ProblemInstance inst = instance({1.0, 1.0, kPi});
  const double h = kPi / 1000;
  const RootList fd = fd_spectrum(inst, 1000, 3);
  REQUIRE(fd.roots.size() == 3);
  for (int k = 1; k <= 3; ++k) {
    const double discretization = k * k * k * h * h / 24.0;
    CHECK(std::abs(fd.roots[k - 1] - k) < 1.05 * discretization + 1e-10);
    CHECK(fd.roots[k - 1] == doctest::Approx((2.0 / h) * std::sin(k * h / 2.0)).epsilon(1e-10));
  }
  for (std::size_t i = 0; i + 1 < fd.roots.size(); ++i) {
    CHECK(fd.roots[i] > 0.0);
    CHECK(fd.roots[i] < fd.roots[i + 1]);
  }
}

TEST_CASE("midpoint-mass first eigenvalue matches the scalar oracle") {
  const ProblemInstance inst = instance({1.0, 1.0, 1.0}, {{1.0, 0.5}});
  const RootList fd = fd_spectrum(inst, 2000, 1);
  CHECK(std::abs(fd.roots[0] - testoracle::kMidpointUnitLambda1) <
        5e-4 * testoracle::kMidpointUnitLambda1);
}

TEST_CASE("second-order convergence") {
  SUBCASE("bare cable against the exact eigenvalue") {
    const ProblemInstance inst = instance({1.0, 1.0, kPi});
    const double e1 = std::abs(fd_spectrum(inst, 100, 3).roots[2] - 3.0);
    const double e2 = std::abs(fd_spectrum(inst, 200, 3).roots[2] - 3.0);
    const double e3 = std::abs(fd_spectrum(inst, 400, 3).roots[2] - 3.0);
    CHECK(std::log2(e1 / e2) == doctest::Approx(2.0).epsilon(0.15));
    CHECK(std::log2(e2 / e3) == doctest::Approx(2.0).epsilon(0.15));
  }
  SUBCASE("on-node load against the transfer oracle root") {
    const double reference = testoracle::kMidpointUnitLambda1;
    const ProblemInstance inst = instance({1.0, 1.0, 1.0}, {{1.0, 0.5}});
    // Even grid sizes put the load exactly on a node: clean second order.
    const double e1 = std::abs(fd_spectrum(inst, 250, 1).roots[0] - reference);
    const double e2 = std::abs(fd_spectrum(inst, 500, 1).roots[0] - reference);
    const double e3 = std::abs(fd_spectrum(inst, 1000, 1).roots[0] - reference);
    CHECK(std::log2(e1 / e2) == doctest::Approx(2.0).epsilon(0.15));
    CHECK(std::log2(e2 / e3) == doctest::Approx(2.0).epsilon(0.15));
  }
  SUBCASE("off-node load still converges, one order slower") {
    // Splitting the mass across the cell leaves an O(h) cross term against
    // the slope jump of the eigenfunction, so expect first order here.
    const double reference = testoracle::kMidpointUnitLambda1;
    const ProblemInstance inst = instance({1.0, 1.0, 1.0}, {{1.0, 0.5}});
    const double e1 = std::abs(fd_spectrum(inst, 251, 1).roots[0] - reference);
    const double e2 = std::abs(fd_spectrum(inst, 501, 1).roots[0] - reference);
    const double e3 = std::abs(fd_spectrum(inst, 1001, 1).roots[0] - reference);
    CHECK(e2 < e1);
    CHECK(e3 < e2);
    CHECK(std::log2(e1 / e3) == doctest::Approx(2.0).epsilon(0.2));  // order ~1 per doubling
  }
}

TEST_CASE("adding a point mass never raises an fd eigenvalue") {
  SplitMix64 rng(77);
  for (int trial = 0; trial < 10; ++trial) {
    const double l = rng.uniform(0.5, 2.0);
    const CableSpec cable{rng.uniform(0.5, 2.0), rng.uniform(0.5, 2.0), l};
    std::vector<LoadSpec> loads = {{rng.log_uniform(0.1, 10.0), rng.uniform(0.1, 0.9) * l}};
    const RootList base = fd_spectrum(instance(cable, loads), 800, 5);
    loads.push_back({rng.log_uniform(0.1, 10.0), rng.uniform(0.91, 0.99) * l});
    const RootList more = fd_spectrum(instance(cable, loads), 800, 5);
    for (int k = 0; k < 5; ++k)
      CHECK(more.roots[k] <= base.roots[k] + 1e-10);
  }
}
