#pragma once
// Lattice Green function h0(x) of (-Laplacian)^{-1} on Z^d, d >= 3:
//   h0(x) = (2 pi)^{-d} \int_{T^d} e^{i x.z} / omega(z) dz,
//   omega(z) = sum_j (2 - 2 cos z_j),
// computed by midpoint tensor quadrature with Richardson extrapolation, plus
// a machine-precision on-axis evaluator for d = 3 based on the reduction of
// the inner double integral to a complete elliptic integral.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "lab/common.hpp"
#include "lab/lattice.hpp"

namespace lab {

/// Midpoint-rule tensor quadrature on the shifted grid
/// z_k = 2 pi (k + 1/2) / m - pi (never hits the integrable singularity at
/// z = 0). Returns the real part; the imaginary part cancels exactly by the
/// k <-> m-1-k grid symmetry. Throws TheoryDomainError for d <= 2 where the
/// integral diverges.
double green_value(int dim, const Point& x, int m, bool parallel = true);

/// Naive serial reference for green_value (same grid, plain loop order).
double green_value_serial(int dim, const Point& x, int m);

/// |imaginary part| of the quadrature sum (self-check; expected <= 1e-12).
double green_imag_magnitude(int dim, const Point& x, int m);

/// Richardson extrapolation over m -> 2m. The quadrature error is dominated
/// by the periodic images ~ m^{-(d-2)}, so
///   extrap = I(2m) + (I(2m) - I(m)) / (2^{d-2} - 1),
/// and the reported error bar is the extrapolation delta |I(2m) - I(m)|.
struct GreenEstimate {
  double value = 0.0;
  double error_bar = 0.0;
};
GreenEstimate green_value_extrap(int dim, const Point& x, int m, bool parallel = true);

/// sqrt(h0(0)) for dimension d (the H^1 norm of the reproducing kernel).
double mu(int dim, int m = 0);  // m = 0 selects the per-dimension default

/// Default quadrature resolution per dimension (128 for d=3, smaller above).
int default_grid(int dim);

/// Residual of the discrete harmonicity identity at x:
///   (-Laplacian h0)(x) - [x == 0] ,
/// evaluated with all stencil values at matched resolution (where the
/// midpoint sums telescope exactly), Richardson-extrapolated.
double harmonicity_residual(int dim, const Point& x, int m);

/// Cached Green values keyed by the canonical symmetry representative
/// (sorted absolute coordinates): h0 is invariant under coordinate
/// permutations and sign flips.
class GreenTable {
 public:
  GreenTable(int dim, int m);

  int dim() const { return dim_; }
  int grid() const { return m_; }

  /// Extrapolated h0(x); cached. Enforces 0 < h0(x) <= mu^2 + tolerance.
  double value(const Point& x);

  /// h0(0).
  double mu_squared();

  std::size_t cache_size() const { return cache_.size(); }

  /// CSV rows "x1,...,xd,value,m" for every cached canonical point.
  std::string to_csv() const;

 private:
  int dim_;
  int m_;
  std::map<Point, double> cache_;
};

/// Decay diagnostics: rows (r, h0(r e1), h0(r e1) * r^{d-2}).
struct DecayRow {
  std::int64_t r;
  double value;
  double rescaled;
};
std::vector<DecayRow> decay_report(int dim, const std::vector<std::int64_t>& radii, int m);

/// Machine-precision evaluator of h0(a, 0, 0) on Z^3 for arbitrary a >= 0.
/// The two inner torus integrals reduce to a complete elliptic integral K;
/// writing the integrand as A(z) ln(omega_1(z)) + B(z) with A, B analytic and
/// using the exact Fourier series of ln(4 sin^2(z/2)) turns the outer
/// integral into a rapidly convergent cosine-coefficient convolution.
class AxisGreen {
 public:
  explicit AxisGreen(int kmax = 600, int grid = 8192);

  double value(std::int64_t a) const;

  /// Process-wide lazily constructed instance.
  static const AxisGreen& instance();

 private:
  int kmax_;
  std::vector<double> ak_;  // cosine coefficients of A
  std::vector<double> bk_;  // cosine coefficients of B
};

}  // namespace lab
