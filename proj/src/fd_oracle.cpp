#include "cabledyn/fd_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace cabledyn {

DiscretizedProblem discretize(const ProblemInstance& instance, int grid_intervals) {
  if (instance.motion().mode != MotionMode::Static)
    throw ValidationError("discretize: only static instances are supported");
  const int m = grid_intervals;
  if (m < 10) throw ValidationError("discretize: need at least 10 grid intervals");

  const double l = instance.cable().length;
  const double tension = instance.cable().tension;
  const double rho = instance.cable().density;
  const double h = l / m;

  // Adjacent loads must be separated by at least two grid nodes, otherwise
  // their couplings overlap and the comparison is meaningless.
  const std::vector<LoadSpec>& loads = instance.loads();
  for (std::size_t i = 1; i < loads.size(); ++i) {
    const double gap = loads[i].position - loads[i - 1].position;
    int nodes_between = 0;
    for (int j = static_cast<int>(loads[i - 1].position / h);
         j <= static_cast<int>(loads[i].position / h) + 1; ++j)
      if (j * h > loads[i - 1].position && j * h < loads[i].position) ++nodes_between;
    if (nodes_between < 2)
      throw ValidationError("discretize: grid too coarse to separate loads at positions " +
                            std::to_string(loads[i - 1].position) + " and " +
                            std::to_string(loads[i].position) + " (gap " + std::to_string(gap) +
                            ")");
  }

  DiscretizedProblem out;
  out.grid_intervals = m;
  out.h = h;
  out.stiffness_diag.assign(m - 1, 2.0 * tension / h);
  out.stiffness_off.assign(m - 2, -tension / h);
  out.mass_diag.assign(m + 1, rho * h);
  out.mass_diag.front() = 0.5 * rho * h;
  out.mass_diag.back() = 0.5 * rho * h;
  out.mass_off.assign(m, 0.0);

  for (const LoadSpec& load : loads) {
    int j = static_cast<int>(load.position / h);
    j = std::clamp(j, 0, m - 1);
    const double w = load.position / h - j;
    out.mass_diag[j] += load.mass * (1.0 - w) * (1.0 - w);
    out.mass_diag[j + 1] += load.mass * w * w;
    out.mass_off[j] += load.mass * w * (1.0 - w);
  }
  return out;
}

namespace {

// Negative-pivot count of the LDL^T factorization of the shifted tridiagonal
// matrix K - x M: the number of pencil eigenvalues strictly below x.
int count_below(const std::vector<double>& k_diag, const std::vector<double>& k_off,
                const std::vector<double>& m_diag, const std::vector<double>& m_off, double x) {
  const std::size_t n = k_diag.size();
  int count = 0;
  double q = k_diag[0] - x * m_diag[0];
  for (std::size_t i = 0;;) {
    if (q < 0.0) ++count;
    if (++i >= n) break;
    double denom = q;
    if (denom == 0.0) denom = 1e-300;
    const double off = k_off[i - 1] - x * m_off[i - 1];
    q = k_diag[i] - x * m_diag[i] - off * off / denom;
  }
  return count;
}

}  // namespace

std::vector<double> pencil_smallest_eigenvalues(const std::vector<double>& k_diag,
                                                const std::vector<double>& k_off,
                                                const std::vector<double>& m_diag,
                                                const std::vector<double>& m_off, int k,
                                                double upper_bound, long* iterations) {
  const std::size_t n = k_diag.size();
  if (n == 0 || k_off.size() + 1 != n || m_diag.size() != n || m_off.size() + 1 != n)
    throw ValidationError("pencil eigenvalues: inconsistent matrix bands");
  if (k < 1 || static_cast<std::size_t>(k) > n)
    throw ValidationError("pencil eigenvalues: k out of range");
  if (!(upper_bound > 0.0)) throw ValidationError("pencil eigenvalues: bad upper bound");

  const double hi0 = upper_bound * (1.0 + 1e-10);
  const double lo0 = -1e-12 * hi0;

  std::vector<double> eigs(k);
  for (int idx = 1; idx <= k; ++idx) {
    double a = lo0, b = hi0;
    for (int it = 0; it < 220; ++it) {
      const double mid = 0.5 * (a + b);
      if (b - a <= 1e-13 * std::max({std::abs(a), std::abs(b), 1e-30})) break;
      if (count_below(k_diag, k_off, m_diag, m_off, mid) >= idx)
        b = mid;
      else
        a = mid;
      if (iterations) ++*iterations;
    }
    eigs[idx - 1] = 0.5 * (a + b);
  }
  return eigs;
}

std::vector<double> tridiagonal_smallest_eigenvalues(const std::vector<double>& diag,
                                                     const std::vector<double>& off, int k,
                                                     long* iterations) {
  const std::size_t n = diag.size();
  if (n == 0 || off.size() + 1 != n)
    throw ValidationError("tridiagonal eigenvalues: inconsistent matrix bands");
  // Gershgorin enclosure gives the bisection ceiling.
  double hi = diag[0];
  for (std::size_t i = 0; i < n; ++i) {
    const double left = i > 0 ? std::abs(off[i - 1]) : 0.0;
    const double right = i + 1 < n ? std::abs(off[i]) : 0.0;
    hi = std::max(hi, diag[i] + left + right);
  }
  const std::vector<double> unit_diag(n, 1.0);
  const std::vector<double> zero_off(n - 1, 0.0);
  return pencil_smallest_eigenvalues(diag, off, unit_diag, zero_off, k, std::max(hi, 1e-30),
                                     iterations);
}

RootList fd_spectrum(const ProblemInstance& instance, int grid_intervals, int k) {
  const DiscretizedProblem p = discretize(instance, grid_intervals);
  const int interior = p.grid_intervals - 1;
  if (k < 1 || k > interior) throw ValidationError("fd_spectrum: k out of range for this grid");

  // Interior bands of the pencil: node i of the reduced system is global
  // node i+1; the gap between interior neighbours i, i+1 is global gap i+1.
  std::vector<double> md(interior), mo(interior - 1);
  for (int i = 0; i < interior; ++i) md[i] = p.mass_diag[i + 1];
  for (int i = 0; i + 1 < interior; ++i) mo[i] = p.mass_off[i + 1];

  // lambda_max(K) <= 4T/h by Gershgorin and lambda_min(M) >= rho*h from the
  // lumped string part, so every pencil eigenvalue sits below 4T/(rho h^2).
  const double upper = 4.0 * instance.cable().tension /
                       (instance.cable().density * p.h * p.h);

  RootList out;
  const std::vector<double> omega2 = pencil_smallest_eigenvalues(
      p.stiffness_diag, p.stiffness_off, md, mo, k, upper, &out.brackets_scanned);
  const double a = instance.wave_speed();
  out.roots.reserve(omega2.size());
  for (double w2 : omega2) out.roots.push_back(std::sqrt(std::max(w2, 0.0)) / a);
  return out;
}

}  // namespace cabledyn
