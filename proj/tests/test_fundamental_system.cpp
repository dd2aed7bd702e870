#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>

#include "cabledyn/characteristic.hpp"
#include "cabledyn/fundamental_system.hpp"
#include "oracles.hpp"

using namespace cabledyn;

namespace {

constexpr double kPi = std::numbers::pi;

ProblemInstance instance(double length, std::vector<LoadSpec> loads) {
  ProblemDescription desc;
  desc.cable = {1.0, 1.0, length};
  desc.loads = std::move(loads);
  return ProblemInstance::validate(desc);
}

double max_entry_error(const Matrix& got, const TransferMatrix& want) {
  return std::max({std::abs(got(0, 0) - want.a11), std::abs(got(0, 1) - want.a12),
                   std::abs(got(1, 0) - want.a21), std::abs(got(1, 1) - want.a22)});
}

}  // namespace

TEST_CASE("determinant helper") {
  Matrix m(3, 3);
  m(0, 0) = 2;  m(0, 1) = 1;  m(0, 2) = 0;
  m(1, 0) = 1;  m(1, 1) = 3;  m(1, 2) = 1;
  m(2, 0) = 0;  m(2, 1) = 1;  m(2, 2) = 4;  // det = 2*(12-1) - 1*4 = 18
  CHECK(determinant(m) == doctest::Approx(18.0).epsilon(1e-14));
  Matrix singular(2, 2);
  singular(0, 0) = 1; singular(0, 1) = 2;
  singular(1, 0) = 2; singular(1, 1) = 4;
  CHECK(determinant(singular) == 0.0);
}

TEST_CASE("fundamental matrix of the shear system is exact") {
  // lambda = 0 makes every scheme stage linear, so one step is already exact.
  const FirstOrderSystem sys = make_cable_system(instance(3.0, {}));
  const Matrix phi = integrate_fundamental(sys, 0, 0.0, 1);
  CHECK(phi(0, 0) == 1.0);
  CHECK(phi(0, 1) == 3.0);
  CHECK(phi(1, 0) == 0.0);
  CHECK(phi(1, 1) == 1.0);
}

TEST_CASE("fundamental matrix matches the closed-form rotation") {
  const FirstOrderSystem sys = make_cable_system(instance(1.0, {}));
  const Matrix phi = integrate_fundamental(sys, 0, kPi, 1000);
  CHECK(max_entry_error(phi, interval_transfer(kPi, 1.0)) < 1e-8);
}

TEST_CASE("scheme order: halving the step cuts the error ~16x") {
  const FirstOrderSystem sys = make_cable_system(instance(1.0, {}));
  const TransferMatrix exact = interval_transfer(kPi, 1.0);
  const double e8 = max_entry_error(integrate_fundamental(sys, 0, kPi, 8), exact);
  const double e16 = max_entry_error(integrate_fundamental(sys, 0, kPi, 16), exact);
  const double e32 = max_entry_error(integrate_fundamental(sys, 0, kPi, 32), exact);
  CHECK(std::log2(e8 / e16) == doctest::Approx(4.0).epsilon(0.08));
  CHECK(std::log2(e16 / e32) == doctest::Approx(4.0).epsilon(0.08));
}

TEST_CASE("Wronskian of the cable system stays 1") {
  // Traceless coefficients keep the continuous Wronskian constant; the
  // discrete determinant drifts by ~(lambda*h)^6/72 per step, far below
  // 1e-10 at the default resolution for the lambda range of interest.
  const FirstOrderSystem sys = make_cable_system(instance(1.0, {}));
  for (double lambda : {0.0, 1.0, 5.0, 10.0}) {
    const Matrix phi = integrate_fundamental(sys, 0, lambda, 1000);
    const double det = phi(0, 0) * phi(1, 1) - phi(0, 1) * phi(1, 0);
    CHECK(det == doctest::Approx(1.0).epsilon(1e-10));
  }
  const Matrix phi = integrate_fundamental(sys, 0, 20.0, 2000);
  CHECK(phi(0, 0) * phi(1, 1) - phi(0, 1) * phi(1, 0) == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("boundary determinant vanishes at known eigenvalues") {
  SUBCASE("bare cable") {
    const FirstOrderSystem sys = make_cable_system(instance(kPi, {}));
    CHECK(std::abs(determinant_D(sys, 1.0, 1000).value) < 1e-8);
    // Halfway between eigenvalues D keeps the sign of sin(lambda*l)/lambda.
    CHECK(determinant_D(sys, 1.5, 200).value < 0.0);
    CHECK(determinant_D(sys, 2.5, 200).value > 0.0);
  }
  SUBCASE("midpoint mass") {
    const FirstOrderSystem sys = make_cable_system(instance(1.0, {{1.0, 0.5}}));
    CHECK(std::abs(determinant_D(sys, testoracle::kMidpointUnitLambda1, 2000).value) < 1e-6);
  }
}

TEST_CASE("boundary determinant tracks the transfer characteristic") {
  const ProblemInstance inst = instance(1.0, {{1.0, 1.0 / 3.0}, {1.0, 2.0 / 3.0}});
  const FirstOrderSystem sys = make_cable_system(inst);
  for (int j = 0; j < 40; ++j) {
    const double lambda = 0.29 + j * 0.5;
    const double d = determinant_D(sys, lambda, 2000).value;
    const double f = characteristic_static(lambda, inst);
    CHECK(std::abs(d - f) <= 1e-6 * std::max({std::abs(d), std::abs(f), 1e-3}));
  }
}

TEST_CASE("interval splitting does not change the determinant") {
  // Continuous coefficients, identity interfaces: a breakpoint in the middle
  // must be invisible up to integration error.
  FirstOrderSystem whole = make_cable_system(instance(1.0, {}));
  FirstOrderSystem split = whole;
  split.breakpoints = {0.0, 0.37, 1.0};
  split.interface_map = nullptr;
  for (double lambda : {0.7, 2.3, 9.1}) {
    const double a = determinant_D(whole, lambda, 1000).value;
    const double b = determinant_D(split, lambda, 1000).value;
    CHECK(a == doctest::Approx(b).epsilon(1e-9));
  }
}

TEST_CASE("general eigenvalue search reproduces the cable spectra") {
  SUBCASE("bare cable l = pi") {
    const FirstOrderSystem sys = make_cable_system(instance(kPi, {}));
    RootSearchConfig cfg;
    cfg.count = 3;
    cfg.length = kPi;
    cfg.lambda_max = 3.5;
    const RootList roots = eigenvalues_general(sys, cfg, 400);
    REQUIRE(roots.roots.size() == 3);
    for (int k = 1; k <= 3; ++k)
      CHECK(roots.roots[k - 1] == doctest::Approx(k).epsilon(1e-6));
  }
  SUBCASE("midpoint mass") {
    const FirstOrderSystem sys = make_cable_system(instance(1.0, {{1.0, 0.5}}));
    RootSearchConfig cfg;
    cfg.count = 2;
    cfg.length = 1.0;
    cfg.lambda_max = 2.5 * kPi;
    const RootList roots = eigenvalues_general(sys, cfg, 400);
    REQUIRE(roots.roots.size() == 2);
    CHECK(roots.roots[0] == doctest::Approx(testoracle::kMidpointUnitLambda1).epsilon(1e-6));
    CHECK(roots.roots[1] == doctest::Approx(2.0 * kPi).epsilon(1e-6));
  }
}

TEST_CASE("four-dimensional system: two independent wave blocks") {
  // Block-diagonal coefficients for two decoupled strings with wave numbers
  // lambda and sqrt(2)*lambda exercise the m = 2 seeding, propagation and
  // determinant paths; the spectrum is the (collision-free) union of the
  // families k*pi and k*pi/sqrt(2).
  const double root2 = std::sqrt(2.0);
  FirstOrderSystem sys;
  sys.dimension = 4;
  sys.breakpoints = {0.0, 0.4, 1.0};  // interior breakpoint, identity interface
  sys.coefficients = [](int, double, double lambda, Matrix& a) {
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) a(i, j) = 0.0;
    a(0, 1) = 1.0;
    a(1, 0) = -lambda * lambda;
    a(2, 3) = 1.0;
    a(3, 2) = -2.0 * lambda * lambda;
  };
  sys.left_zero_indices = {0, 2};
  sys.right_zero_indices = {0, 2};

  // D(lambda) factors into sin(lambda)/lambda * sin(sqrt(2) lambda)/(sqrt(2) lambda).
  for (double lambda : {0.7, 1.9, 4.4}) {
    const double expect =
        std::sin(lambda) / lambda * std::sin(root2 * lambda) / (root2 * lambda);
    CHECK(determinant_D(sys, lambda, 400).value == doctest::Approx(expect).epsilon(1e-8));
  }

  RootSearchConfig cfg;
  cfg.count = 4;
  cfg.length = 1.0;
  cfg.lambda_max = 7.0;
  const RootList roots = eigenvalues_general(sys, cfg, 400);
  REQUIRE(roots.roots.size() == 4);
  const double expected[] = {kPi / root2, kPi, 2.0 * kPi / root2, 2.0 * kPi};
  for (int i = 0; i < 4; ++i)
    CHECK(roots.roots[i] == doctest::Approx(expected[i]).epsilon(1e-6));
}

TEST_CASE("general search matches the transfer spectrum on a two-mass instance") {
  ProblemDescription desc;
  desc.cable = {1.0, 1.0, 1.0};
  desc.loads = {{0.8, 0.31}, {1.7, 0.65}};
  const ProblemInstance inst = ProblemInstance::validate(desc);

  RootSearchConfig cfg;
  cfg.count = 4;
  cfg.length = 1.0;
  cfg.lambda_max = 4.5 * kPi;
  cfg.oversample = 64;
  const RootList general = eigenvalues_general(make_cable_system(inst), cfg, 400);
  const RootList transfer =
      find_eigenvalues([&](double lam) { return characteristic_static(lam, inst); }, cfg);
  REQUIRE(general.roots.size() == 4);
  REQUIRE(transfer.roots.size() == 4);
  for (int k = 0; k < 4; ++k)
    CHECK(general.roots[k] == doctest::Approx(transfer.roots[k]).epsilon(1e-6));
}

TEST_CASE("system structural validation") {
  FirstOrderSystem sys = make_cable_system(instance(1.0, {}));
  sys.dimension = 3;
  CHECK_THROWS_AS(sys.check(), ValidationError);
  sys = make_cable_system(instance(1.0, {}));
  sys.left_zero_indices = {0, 1};
  CHECK_THROWS_AS(sys.check(), ValidationError);
  sys = make_cable_system(instance(1.0, {}));
  sys.breakpoints = {0.0, 0.0, 1.0};
  CHECK_THROWS_AS(sys.check(), ValidationError);
  CHECK_THROWS_AS(integrate_fundamental(make_cable_system(instance(1.0, {})), 0, 1.0, 0),
                  ValidationError);
}
