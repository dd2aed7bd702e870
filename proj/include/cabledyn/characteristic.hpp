#pragma once

#include <span>

#include "cabledyn/model.hpp"

namespace cabledyn {

// The separated boundary problem on each continuity interval reduces to the
// normal first-order system T' = S, S' = -lambda^2 T in the state (X, X').
// Its normal fundamental pair on an interval of length b is
// S(b) = cos(lambda*b), T(b) = sin(lambda*b)/lambda, with the lambda -> 0
// limit (1, b). Eigenvalues are the zeros of the characteristic function
// obtained by propagating the left boundary state (0, 1) to the right end.

/// Values (S, T) of the normal fundamental pair at interval length b.
struct FundamentalPair {
  double s_value = 1.0;  // cos(lambda*b), dimensionless
  double t_value = 0.0;  // sin(lambda*b)/lambda, length units
};

/// Evaluate the pair; continuous in lambda, exact limit (1, b) at lambda = 0.
FundamentalPair normal_fundamental_pair(double lambda, double b);

/// 2x2 real map acting on the state (X, X').
struct TransferMatrix {
  double a11 = 1.0, a12 = 0.0;
  double a21 = 0.0, a22 = 1.0;

  static TransferMatrix identity() { return {}; }

  /// Composition: (*this) after rhs.
  TransferMatrix operator*(const TransferMatrix& rhs) const {
    return {a11 * rhs.a11 + a12 * rhs.a21, a11 * rhs.a12 + a12 * rhs.a22,
            a21 * rhs.a11 + a22 * rhs.a21, a21 * rhs.a12 + a22 * rhs.a22};
  }

  void apply(double& x, double& xp) const {
    const double nx = a11 * x + a12 * xp;
    const double nxp = a21 * x + a22 * xp;
    x = nx;
    xp = nxp;
  }

  double det() const { return a11 * a22 - a12 * a21; }
};

/// Propagator across a continuity interval of length b; determinant 1.
TransferMatrix interval_transfer(double lambda, double b);

/// Interface map across a point mass: displacement continuous, slope jumps by
/// the inertial reaction -coupling*m*lambda^2/rho * X. coupling is 1 for
/// static loads; moving loads scale it by the speed factor.
TransferMatrix load_interface(double lambda, double mass, double rho, double coupling);

/// State-propagation characteristic value: first component of the state at
/// the right end, starting from (0, 1) at the left end, through alternating
/// interval and interface maps. intervals.size() == loads.size() + 1.
double characteristic_transfer(double lambda, std::span<const double> intervals,
                               std::span<const LoadSpec> loads, double rho, double coupling);

/// Characteristic function of a validated static instance via the full
/// transfer-matrix product. Zero exactly at the eigenvalues; no pole at
/// lambda = 0 (value there is the cable length).
double characteristic_static(double lambda, const ProblemInstance& instance);

/// Same function via the scalar two-component recurrence
///   psi1' = psi1*S + psi2*T
///   psi2' = (-psi1*(rho*lambda^2*T + m*lambda^2*S) + psi2*(rho*S - m*lambda^2*T)) / rho
/// seeded with (0, 1) from the left boundary condition. Agrees with
/// characteristic_static to 1e-12 relative.
double characteristic_recurrence(double lambda, const ProblemInstance& instance);

/// Closed form for two masses with intervals b1, b2, b3:
///   sin(lambda*l)/lambda
///   - (m1/rho) sin(lambda*b1) sin(lambda*(b2+b3))
///   - (m2/rho) sin(lambda*(b1+b2)) sin(lambda*b3)
///   + (m1*m2*lambda/rho^2) sin(lambda*b1) sin(lambda*b2) sin(lambda*b3)
double closed_form_two_mass(double lambda, double m1, double m2, double b1, double b2,
                            double b3, double rho);

/// Inertia coupling factor for loads-moving instances at speed v.
double moving_coupling_factor(const MotionSpec& motion, double wave_speed);

/// Frozen-time characteristic for a loads-moving instance: positions shifted
/// to l_i + v*t and the interface scaled by the coupling factor.
/// Throws ValidationError if a load is outside (0, length) at time t.
double characteristic_moving_loads(double lambda, const ProblemInstance& instance, double t);

}  // namespace cabledyn
