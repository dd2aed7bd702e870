#include "cabledyn/fundamental_system.hpp"

#include <algorithm>
#include <cmath>

#include "cabledyn/characteristic.hpp"

namespace cabledyn {

double determinant(Matrix a) {
  const int n = a.rows();
  double det = 1.0;
  for (int col = 0; col < n; ++col) {
    int pivot = col;
    for (int r = col + 1; r < n; ++r)
      if (std::abs(a(r, col)) > std::abs(a(pivot, col))) pivot = r;
    if (a(pivot, col) == 0.0) return 0.0;
    if (pivot != col) {
      for (int j = col; j < n; ++j) std::swap(a(pivot, j), a(col, j));
      det = -det;
    }
    det *= a(col, col);
    for (int r = col + 1; r < n; ++r) {
      const double factor = a(r, col) / a(col, col);
      if (factor == 0.0) continue;
      for (int j = col; j < n; ++j) a(r, j) -= factor * a(col, j);
    }
  }
  return det;
}

void FirstOrderSystem::check() const {
  if (dimension < 2 || dimension % 2 != 0)
    throw ValidationError("system.dimension must be even and >= 2");
  if (breakpoints.size() < 2) throw ValidationError("system needs at least one interval");
  for (std::size_t i = 1; i < breakpoints.size(); ++i)
    if (!(breakpoints[i] > breakpoints[i - 1]))
      throw ValidationError("system.breakpoints must be strictly increasing");
  if (!coefficients) throw ValidationError("system.coefficients must be set");
  const int m = dimension / 2;
  auto in_range = [this](int idx) { return idx >= 0 && idx < dimension; };
  if (static_cast<int>(left_zero_indices.size()) != m ||
      static_cast<int>(right_zero_indices.size()) != m)
    throw ValidationError("system must carry exactly m = N/2 boundary indices per side");
  for (int idx : left_zero_indices)
    if (!in_range(idx)) throw ValidationError("system.left_zero_indices out of range");
  for (int idx : right_zero_indices)
    if (!in_range(idx)) throw ValidationError("system.right_zero_indices out of range");
}

namespace {

// One classical fourth-order step for the matrix equation phi' = a(y) phi.
void rk4_step(const FirstOrderSystem& sys, int interval, double lambda, double y, double h,
              Matrix& phi, Matrix& a, Matrix& k1, Matrix& k2, Matrix& k3, Matrix& k4,
              Matrix& work) {
  const int n = sys.dimension;
  auto axpy = [n](const Matrix& base, double scale, const Matrix& add, Matrix& out) {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) out(i, j) = base(i, j) + scale * add(i, j);
  };

  sys.coefficients(interval, y, lambda, a);
  k1 = a * phi;
  sys.coefficients(interval, y + 0.5 * h, lambda, a);
  axpy(phi, 0.5 * h, k1, work);
  k2 = a * work;
  axpy(phi, 0.5 * h, k2, work);
  k3 = a * work;
  sys.coefficients(interval, y + h, lambda, a);
  axpy(phi, h, k3, work);
  k4 = a * work;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      phi(i, j) += h / 6.0 * (k1(i, j) + 2.0 * k2(i, j) + 2.0 * k3(i, j) + k4(i, j));
}

}  // namespace

Matrix integrate_fundamental(const FirstOrderSystem& system, int interval_index, double lambda,
                             int steps) {
  system.check();
  if (steps < 1) throw ValidationError("integrate_fundamental: steps must be >= 1");
  if (interval_index < 0 || interval_index >= system.interval_count())
    throw ValidationError("integrate_fundamental: interval index out of range");

  const int n = system.dimension;
  const double y0 = system.breakpoints[interval_index];
  const double y1 = system.breakpoints[interval_index + 1];
  const double h = (y1 - y0) / steps;

  Matrix phi = Matrix::identity(n);
  Matrix a(n, n), k1(n, n), k2(n, n), k3(n, n), k4(n, n), work(n, n);
  for (int s = 0; s < steps; ++s)
    rk4_step(system, interval_index, lambda, y0 + s * h, h, phi, a, k1, k2, k3, k4, work);
  return phi;
}

DeterminantValue determinant_D(const FirstOrderSystem& system, double lambda,
                               int steps_per_interval) {
  system.check();
  const int n = system.dimension;
  const int m = n / 2;

  // Seed the m admissible solution columns: unit vectors on the complement of
  // the left zero-condition index set.
  std::vector<bool> constrained(n, false);
  for (int idx : system.left_zero_indices) constrained[idx] = true;
  Matrix cols(n, m);
  int col = 0;
  for (int i = 0; i < n; ++i)
    if (!constrained[i]) cols(i, col++) = 1.0;

  const int intervals = system.interval_count();
  for (int i = 0; i < intervals; ++i) {
    cols = integrate_fundamental(system, i, lambda, steps_per_interval) * cols;
    if (i + 1 < intervals && system.interface_map)
      cols = system.interface_map(i + 1, lambda) * cols;
  }

  Matrix dmat(m, m);
  for (int r = 0; r < m; ++r)
    for (int j = 0; j < m; ++j) dmat(r, j) = cols(system.right_zero_indices[r], j);
  return {determinant(dmat), lambda};
}

RootList eigenvalues_general(const FirstOrderSystem& system, const RootSearchConfig& config,
                             int steps_per_interval) {
  return find_eigenvalues(
      [&](double lambda) { return determinant_D(system, lambda, steps_per_interval).value; },
      config);
}

FirstOrderSystem make_cable_system(const ProblemInstance& instance) {
  FirstOrderSystem sys;
  sys.dimension = 2;
  sys.breakpoints.push_back(0.0);
  for (const LoadSpec& load : instance.loads()) sys.breakpoints.push_back(load.position);
  sys.breakpoints.push_back(instance.cable().length);

  sys.coefficients = [](int, double, double lambda, Matrix& a) {
    a(0, 0) = 0.0;
    a(0, 1) = 1.0;
    a(1, 0) = -lambda * lambda;
    a(1, 1) = 0.0;
  };

  const std::vector<LoadSpec> loads = instance.loads();
  const double rho = instance.cable().density;
  sys.interface_map = [loads, rho](int breakpoint, double lambda) {
    const TransferMatrix t = load_interface(lambda, loads[breakpoint - 1].mass, rho, 1.0);
    Matrix m(2, 2);
    m(0, 0) = t.a11;
    m(0, 1) = t.a12;
    m(1, 0) = t.a21;
    m(1, 1) = t.a22;
    return m;
  };

  sys.left_zero_indices = {0};
  sys.right_zero_indices = {0};
  return sys;
}

}  // namespace cabledyn
