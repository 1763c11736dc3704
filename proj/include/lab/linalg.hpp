#pragma once
// Dense symmetric linear algebra: full eigendecompositions, generalized
// symmetric eigenproblems, and eigenvalue-sign counting (inertia) through
// symmetric triangular factorization, including a banded variant for large
// lattice Hamiltonians.

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "lab/common.hpp"

namespace lab {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Eigenvalue sign counts of a symmetric matrix (Sylvester invariant).
struct Inertia {
  std::int64_t n_minus = 0;
  std::int64_t n_zero = 0;
  std::int64_t n_plus = 0;
};

/// The metric matrix of a generalized eigenproblem failed to be positive
/// definite; carries an (approximate) null direction for diagnostics.
class DegenerateMetric : public std::runtime_error {
 public:
  DegenerateMetric(const std::string& what, Vector null_direction)
      : std::runtime_error(what), null_direction(std::move(null_direction)) {}
  Vector null_direction;
};

/// Checks exact symmetry and finiteness; throws InvalidArgument otherwise.
void require_symmetric(const Matrix& a, const char* who);

/// Full eigendecomposition of a symmetric matrix. Eigenvalues ascending.
struct EigenSym {
  Vector values;
  Matrix vectors;  // columns are orthonormal eigenvectors
};
EigenSym eigen_sym(const Matrix& a, bool with_vectors = true);

/// Eigenvalues (ascending) of the symmetric pencil A v = lambda B v with B
/// positive definite. Throws DegenerateMetric when B is not PD.
struct EigenGen {
  Vector values;
  Matrix vectors;  // B-orthonormal eigenvectors
};
EigenGen eigen_gen(const Matrix& a, const Matrix& b, bool with_vectors = true);

/// Generalized eigenvalues of (A, B) restricted to the column span of P:
/// the pencil (P^T A P, P^T B P).
EigenGen eigen_gen_restricted(const Matrix& a, const Matrix& b, const Matrix& p,
                              bool with_vectors = true);

/// Orthonormal basis of the orthogonal complement of the all-ones vector in
/// R^n, as an n x (n-1) matrix.
Matrix complement_of_ones(int n);

/// Inertia of A - shift*I via symmetric block-pivoted (Bunch-Kaufman style)
/// LDL^T factorization. Eigenvalues within zero_tol of the shift are counted
/// as zero. Falls back to eigen_sym on breakdown; never aborts.
/// zero_tol < 0 selects the default 1e-9 * ||A - shift I||_inf.
Inertia inertia(const Matrix& a, double shift = 0.0, double zero_tol = -1.0);

/// Symmetric band matrix, lower storage: column j holds entries
/// A(j..j+bw, j) contiguously. Used for lattice Hamiltonians whose
/// lexicographic layout has bandwidth (2R+1)^(d-1).
class BandedSymMatrix {
 public:
  BandedSymMatrix(std::int64_t n, std::int64_t bandwidth);

  std::int64_t order() const { return n_; }
  std::int64_t bandwidth() const { return bw_; }

  double& at(std::int64_t row, std::int64_t col);  // row >= col, row-col <= bw
  double at(std::int64_t row, std::int64_t col) const;

  double* col_ptr(std::int64_t col) { return data_.data() + col * (bw_ + 1); }
  const double* col_ptr(std::int64_t col) const { return data_.data() + col * (bw_ + 1); }

  /// Max absolute entry (for tolerance scaling).
  double max_abs() const;

  /// Dense copy (small matrices only; for cross-validation in tests).
  Matrix to_dense() const;

 private:
  std::int64_t n_;
  std::int64_t bw_;
  std::vector<double> data_;
};

/// Inertia of (banded A) - shift*I by unpivoted banded LDL^T. The band layout
/// makes the elimination a sequence of contiguous axpy updates. On a tiny
/// pivot the factorization is retried with a deterministic jitter on the
/// shift (counts are unaffected when the spectrum stays zero_tol away from
/// the shift, which callers arrange); as a last resort small problems fall
/// back to the dense eigensolver.
Inertia inertia_banded(const BandedSymMatrix& a, double shift = 0.0, double zero_tol = -1.0);

/// Eigenvalue counting helpers.
std::int64_t count_greater(const std::vector<double>& values, double s);

}  // namespace lab
