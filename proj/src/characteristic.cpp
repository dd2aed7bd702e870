#include "cabledyn/characteristic.hpp"

#include <cmath>

namespace cabledyn {

FundamentalPair normal_fundamental_pair(double lambda, double b) {
  const double x = lambda * b;
  double t;
  if (std::abs(x) < 1e-8) {
    // Removable singularity: sin(x)/lambda = b*(1 - x^2/6 + O(x^4)).
    t = b * (1.0 - x * x / 6.0);
  } else {
    t = std::sin(x) / lambda;
  }
  return {std::cos(x), t};
}

TransferMatrix interval_transfer(double lambda, double b) {
  const FundamentalPair p = normal_fundamental_pair(lambda, b);
  return {p.s_value, p.t_value, -lambda * lambda * p.t_value, p.s_value};
}

TransferMatrix load_interface(double lambda, double mass, double rho, double coupling) {
  return {1.0, 0.0, -coupling * mass * lambda * lambda / rho, 1.0};
}

double characteristic_transfer(double lambda, std::span<const double> intervals,
                               std::span<const LoadSpec> loads, double rho, double coupling) {
  TransferMatrix total = interval_transfer(lambda, intervals[0]);
  for (std::size_t i = 0; i < loads.size(); ++i) {
    total = load_interface(lambda, loads[i].mass, rho, coupling) * total;
    total = interval_transfer(lambda, intervals[i + 1]) * total;
  }
  // State (0, 1) on the left, so X(l) is the (1,2) entry of the product.
  return total.a12;
}

double characteristic_static(double lambda, const ProblemInstance& instance) {
  return characteristic_transfer(lambda, instance.intervals(), instance.loads(),
                                 instance.cable().density, 1.0);
}

double characteristic_recurrence(double lambda, const ProblemInstance& instance) {
  const std::vector<double>& b = instance.intervals();
  const std::vector<LoadSpec>& loads = instance.loads();
  const double rho = instance.cable().density;
  const double lam2 = lambda * lambda;

  double psi1 = 0.0, psi2 = 1.0;  // X(0) = 0 leaves the slope component free
  for (std::size_t i = 0; i < loads.size(); ++i) {
    const FundamentalPair p = normal_fundamental_pair(lambda, b[i]);
    const double m = loads[i].mass;
    const double next1 = psi1 * p.s_value + psi2 * p.t_value;
    const double next2 = (-psi1 * (rho * lam2 * p.t_value + m * lam2 * p.s_value) +
                          psi2 * (rho * p.s_value - m * lam2 * p.t_value)) /
                         rho;
    psi1 = next1;
    psi2 = next2;
  }
  const FundamentalPair last = normal_fundamental_pair(lambda, b.back());
  return psi1 * last.s_value + psi2 * last.t_value;
}

double closed_form_two_mass(double lambda, double m1, double m2, double b1, double b2,
                            double b3, double rho) {
  const double l = b1 + b2 + b3;
  const FundamentalPair whole = normal_fundamental_pair(lambda, l);
  return whole.t_value -
         (m1 / rho) * std::sin(lambda * b1) * std::sin(lambda * (b2 + b3)) -
         (m2 / rho) * std::sin(lambda * (b1 + b2)) * std::sin(lambda * b3) +
         (m1 * m2 * lambda / (rho * rho)) * std::sin(lambda * b1) * std::sin(lambda * b2) *
             std::sin(lambda * b3);
}

double moving_coupling_factor(const MotionSpec& motion, double wave_speed) {
  const double v = motion.speed;
  if (motion.factor_mode == FactorMode::Normalized)
    return 1.0 + (v * v) / (wave_speed * wave_speed);
  return wave_speed * wave_speed + v * v;
}

double characteristic_moving_loads(double lambda, const ProblemInstance& instance, double t) {
  const std::vector<double> shifted = positions_at(instance, t);
  const std::vector<double> intervals = interval_lengths(instance.cable().length, shifted);
  const double coupling = moving_coupling_factor(instance.motion(), instance.wave_speed());
  return characteristic_transfer(lambda, intervals, instance.loads(),
                                 instance.cable().density, coupling);
}

}  // namespace cabledyn
