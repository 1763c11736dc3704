#pragma once
// Truncated Schrodinger operators H = -Delta - alpha V on the lattice box
// |x|_inf <= R with zero-extension (Dirichlet) truncation: the diagonal is
// 2d at every site and the quadratic form is the sum of |u(y) - u(x)|^2 over
// every edge with at least one endpoint in the box, u extended by zero.
// Negative-eigenvalue counts come from factorization inertia on the banded
// layout; counts on the infinite lattice are certified by a radius ladder
// (counts are non-decreasing in R, so a stable window pins the value).

#include <complex>
#include <cstdint>
#include <utility>
#include <vector>

#include "lab/lattice.hpp"
#include "lab/linalg.hpp"

namespace lab {

/// Dense H = L_R - alpha * diag(V) in the Box::index_of layout. Throws
/// SupportOverflow (naming the offending point) when supp V sticks out of
/// the box and MemoryBudgetExceeded for boxes too large to densify.
Matrix assemble_hamiltonian(const Potential& v, double alpha, int radius);

/// Dense truncated Laplacian L_R alone.
Matrix assemble_laplacian(int dim, int radius);

/// Banded lower-storage assembly of H (bandwidth (2R+1)^(d-1)).
BandedSymMatrix assemble_hamiltonian_banded(const Potential& v, double alpha, int radius);

/// V evaluated at every box site, in box layout.
Vector potential_on_box(const Potential& v, const Box& box);

/// Dirichlet form Q0[u] = sum_{edges meeting the box} |u(y) - u(x)|^2 with u
/// extended by zero outside; equals u^T L_R u exactly.
double q0_form(const Box& box, const std::vector<double>& u);
double q0_form(const Box& box, const std::vector<std::complex<double>>& u);

/// sum_x V(x) |u(x)|^2 in box layout.
double potential_form(const Box& box, const Potential& v, const std::vector<double>& u);
double potential_form(const Box& box, const Potential& v,
                      const std::vector<std::complex<double>>& u);

/// Number of negative eigenvalues of the truncated H at the given radius,
/// via banded LDL^T inertia at shift 0.
std::int64_t count_negative(const Potential& v, double alpha, int radius);

/// Radius ladder for infinite-lattice counts: evaluate count_negative on
/// R = r_start, r_start + r_step, ... until `window` consecutive counts
/// agree (or r_max is hit). The ladder never starts below the support
/// radius of V.
struct StabilizeOptions {
  int r_start = 4;
  int r_step = 4;
  int window = 3;
  int r_max = 20;
};

struct StabilizedCount {
  std::int64_t count = 0;  // count at the final radius
  int radius = 0;          // final radius evaluated
  bool stabilized = false;
  std::vector<std::pair<int, std::int64_t>> history;  // (R, count)
};

StabilizedCount stabilized_count(const Potential& v, double alpha,
                                 const StabilizeOptions& opts = {});

/// Exact direct solver for the truncated Laplacian L_R. L_R is the Kronecker
/// sum of 1-D Dirichlet tridiagonal blocks tridiag(-1, 2, -1), so the
/// per-axis discrete sine transform
///   S(k, x) = sqrt(2/(n1+1)) sin(pi (k+1)(x+1) / (n1+1)),  n1 = 2R+1,
/// (symmetric and orthogonal) diagonalizes it with eigenvalues
/// sum_j (2 - 2 cos(pi (k_j+1)/(n1+1))). A solve costs d * n * n1
/// multiply-adds and is exact to rounding.
class BoxSolver {
 public:
  BoxSolver(int dim, int radius);

  const Box& box() const { return box_; }

  /// u := L_R^{-1} u  (box layout).
  void solve_inplace(std::vector<double>& u) const;
  Vector solve(const Vector& f) const;

  /// (L_R^{-1})_{rows, x}: the inverse column of a unit source at x,
  /// gathered at the requested row points.
  Vector inverse_column(const Point& x, const std::vector<Point>& rows) const;

  /// Smallest eigenvalue of L_R.
  double min_eigenvalue() const;

 private:
  void apply_sine_all_axes(std::vector<double>& u) const;

  int dim_;
  Box box_;
  std::int64_t n1_;
  std::vector<double> s_;           // n1 x n1 sine matrix
  std::vector<double> eigsum_inv_;  // 1 / (omega_{k_1} + ... + omega_{k_d})
};

}  // namespace lab
