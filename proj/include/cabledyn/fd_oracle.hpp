#pragma once

#include <vector>

#include "cabledyn/model.hpp"
#include "cabledyn/rootfind.hpp"

namespace cabledyn {

/// Second-difference discretization of the loaded-cable eigenproblem
/// K u = omega^2 M u on M+1 grid points with fixed ends. The stiffness acts
/// on the M-1 interior nodes (2T/h diagonal, -T/h off-diagonal). The string
/// mass is lumped (rho*h per interior node, rho*h/2 at the ends); each point
/// mass enters as the consistent rank-one coupling m*phi*phi^T of its cell's
/// two linear shape functions, exact when the load sits on a node. Splitting
/// a point mass onto two decoupled diagonal entries would add a spurious
/// internal mode at omega ~ sqrt(T/(h m w(1-w))), which lands inside the
/// low spectrum for heavy loads; the rank-one form carries no mass in the
/// relative-motion direction, so that artifact sits in the acoustic band.
struct DiscretizedProblem {
  int grid_intervals = 0;  // M
  double h = 0.0;
  std::vector<double> stiffness_diag;  // interior nodes, size M-1
  std::vector<double> stiffness_off;   // size M-2
  std::vector<double> mass_diag;       // all nodes, size M+1
  std::vector<double> mass_off;        // node gaps, size M (point-mass coupling)
};

/// Discretize a validated static instance on M grid intervals.
/// Throws ValidationError if M < 10 or the grid cannot separate adjacent
/// loads (fewer than 2 nodes strictly between consecutive load positions).
DiscretizedProblem discretize(const ProblemInstance& instance, int grid_intervals);

/// K smallest eigenvalues x of the symmetric tridiagonal pencil
/// (K - x M) u = 0 with M positive definite, by bisection on the Sturm count
/// (negative pivots of the LDL^T factorization of K - x M).
/// `iterations`, when given, accumulates the bisection iteration count.
std::vector<double> pencil_smallest_eigenvalues(const std::vector<double>& k_diag,
                                                const std::vector<double>& k_off,
                                                const std::vector<double>& m_diag,
                                                const std::vector<double>& m_off, int k,
                                                double upper_bound, long* iterations = nullptr);

/// Convenience wrapper: K smallest eigenvalues of a plain symmetric
/// tridiagonal matrix (identity mass).
std::vector<double> tridiagonal_smallest_eigenvalues(const std::vector<double>& diag,
                                                     const std::vector<double>& off, int k,
                                                     long* iterations = nullptr);

/// First K eigenvalues lambda = omega/a of the discretized instance.
RootList fd_spectrum(const ProblemInstance& instance, int grid_intervals, int k);

}  // namespace cabledyn
