#pragma once

#include <cassert>
#include <functional>
#include <vector>

#include "cabledyn/model.hpp"
#include "cabledyn/rootfind.hpp"

namespace cabledyn {

/// Small dense row-major real matrix.
class Matrix {
 public:
  Matrix() = default;
  Matrix(int rows, int cols) : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows) * cols, 0.0) {}

  static Matrix identity(int n) {
    Matrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  double& operator()(int i, int j) { return data_[static_cast<std::size_t>(i) * cols_ + j]; }
  double operator()(int i, int j) const { return data_[static_cast<std::size_t>(i) * cols_ + j]; }

  Matrix operator*(const Matrix& rhs) const {
    assert(cols_ == rhs.rows_);
    Matrix out(rows_, rhs.cols_);
    for (int i = 0; i < rows_; ++i)
      for (int k = 0; k < cols_; ++k) {
        const double aik = (*this)(i, k);
        if (aik == 0.0) continue;
        for (int j = 0; j < rhs.cols_; ++j) out(i, j) += aik * rhs(k, j);
      }
    return out;
  }

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<double> data_;
};

/// Determinant by Gaussian elimination with partial pivoting (a is consumed).
double determinant(Matrix a);

/// First-order linear system z' = a(y, lambda) z on [y_0, y_n] with piecewise
/// coefficients, linear interface maps at interior breakpoints, and split
/// zero boundary conditions: z_r(y_0) = 0 on left_zero_indices and
/// z_s(y_n) = 0 on right_zero_indices (dimension N = 2m, m conditions each).
struct FirstOrderSystem {
  int dimension = 2;
  std::vector<double> breakpoints;  // y_0 < y_1 < ... < y_n

  /// Fills the N x N coefficient matrix a_kj(y, lambda) on the given interval.
  std::function<void(int interval, double y, double lambda, Matrix& a)> coefficients;

  /// Linear map sending the state on interval i-1 to interval i across the
  /// interior breakpoint y_i (i = 1..n-1). Null means identity everywhere.
  std::function<Matrix(int breakpoint, double lambda)> interface_map;

  std::vector<int> left_zero_indices;
  std::vector<int> right_zero_indices;

  int interval_count() const { return static_cast<int>(breakpoints.size()) - 1; }

  /// Structural invariants; throws ValidationError.
  void check() const;
};

/// Fundamental solution matrix of the system on one interval: columns are the
/// N solutions seeded with the identity at the interval's left end, advanced
/// to the right end by the classical fixed-step fourth-order scheme.
Matrix integrate_fundamental(const FirstOrderSystem& system, int interval_index, double lambda,
                             int steps);

struct DeterminantValue {
  double value = 0.0;
  double lambda = 0.0;
};

/// Boundary determinant D(lambda): the m solution columns admitted by the
/// left boundary conditions are propagated through alternating fundamental
/// matrices and interface maps; D is the m x m determinant of their
/// components on right_zero_indices at y_n. Zeros of D are eigenvalues.
DeterminantValue determinant_D(const FirstOrderSystem& system, double lambda,
                               int steps_per_interval);

/// Root search on lambda -> determinant_D(system, lambda).
RootList eigenvalues_general(const FirstOrderSystem& system, const RootSearchConfig& config,
                             int steps_per_interval);

/// The cable instance as a first-order system: state (X, X'), coefficient
/// matrix [[0, 1], [-lambda^2, 0]] on every interval, point-mass interface
/// maps at the load stations, and X = 0 at both ends.
FirstOrderSystem make_cable_system(const ProblemInstance& instance);

}  // namespace cabledyn
