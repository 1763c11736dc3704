#pragma once
// Sparse-set machinery: geometrically sparse lattice sets, Gram-matrix
// diagnostics of the normalized Green vectors h_y / mu (near-orthonormality
// certified by delta = ||G - I|| < 1), spectra of sparse potentials against
// their value sequences, and the gamma-trend experiment for the eigenvalue
// asymptotics lambda_j / (mu^2 p_j) -> 1.

#include <cstdint>
#include <string>
#include <vector>

#include "lab/green.hpp"
#include "lab/lattice.hpp"
#include "lab/linalg.hpp"

namespace lab {

enum class SparsePattern { kRay, kDiagonal };

struct SparseSet {
  int dim = 0;
  double gamma = 0.0;
  SparsePattern pattern = SparsePattern::kRay;
  std::vector<Point> points;
  std::vector<double> r;             // dist(y, Y \ {y}); +inf for a singleton
  std::vector<std::int64_t> bracket; // [y] = #{x in Y : |x| <= |y|} (self included)
  double a_sum = 0.0;                // sum r^{-(d-2)}
  double a_sup = 0.0;                // max [y] * r^{-(d-2)}
  double a_target = 0.0;             // 0 = no target supplied
  double a_margin = 0.0;             // a_target - a_sum (when a target is set)
  bool target_met = true;
  int adjustments = 0;               // rounding-collision bumps applied
};

/// n points at radii ~ gamma^j (j = 1..n, rounded to the lattice) along the
/// first axis or the main diagonal. Rounding collisions are resolved by
/// bumping the radius to the next free value; the bump count is recorded.
SparseSet generate_sparse_set(int dim, int n, double gamma, SparsePattern pattern,
                              double a_target = 0.0);

/// Recomputes the per-point quantities and A-functionals for explicit points
/// (all distinct).
SparseSet sparse_set_from_points(int dim, std::vector<Point> pts);

struct GramDiagnostics {
  Matrix g;                  // G_{xy} = h0(x-y) / mu^2, unit diagonal
  double delta_schur = 0.0;  // max off-diagonal absolute row sum
  double delta_spec = 0.0;   // ||G - I||_2
  double error_bar = 0.0;    // propagated quadrature error on the deltas
  double mu2 = 0.0;          // the h0(0) used for normalization
  std::string source;        // "axis-exact" (d=3 collinear sets) | "quadrature"
};

/// Gram matrix of the normalized Green vectors on the set. Axis-collinear
/// d=3 sets use the machine-precision on-axis evaluator (geometric sets grow
/// far beyond any quadrature grid); everything else uses extrapolated
/// quadrature with propagated error bars.
GramDiagnostics gram_diagnostics(const SparseSet& y, GreenTable& green);

struct SparseSpectrumRow {
  int j = 0;             // 1-based rank
  double p = 0.0;        // assigned value V(y_j) = p_j (non-increasing)
  double core = 0.0;     // j-th eigenvalue of D^{1/2} G D^{1/2} (sorted desc)
  double lambda = 0.0;   // mu^2 * core: the Birman-Schwinger eigenvalue
  double ratio_raw = 0.0;         // lambda / p
  double ratio_normalized = 0.0;  // lambda / (mu^2 p) = core / p
  bool sandwich_ok = false;       // (1-delta) p <= core <= (1+delta) p
};

struct SparseSpectrumReport {
  GramDiagnostics diag;
  std::vector<SparseSpectrumRow> rows;
  double max_deviation = 0.0;  // max_j |core_j / p_j - 1|
  bool all_sandwich_ok = true;
};

/// Eigenvalues of the sparse potential V(y_j) = values_j against the value
/// sequence, with the sorted-order Weyl sandwich
///   (1-delta) p_j <= eig_j(D^{1/2} G D^{1/2}) <= (1+delta) p_j
/// ((1-d)I <= G <= (1+d)I congruence-transported by D^{1/2}; a tiny relative
/// slack absorbs eigensolver rounding only).
SparseSpectrumReport sparse_spectrum_vs_values(const SparseSet& y,
                                               const std::vector<double>& values,
                                               GreenTable& green);

struct ValueLaw {
  enum class Kind { kPower, kLog };
  Kind kind = Kind::kPower;
  double q = 1.0;  // exponent for the power law; ignored for the log law
};

/// p_j for j = 1..n: j^{-q} or (1 + log j)^{-1} (both moderately varying).
std::vector<double> law_values(const ValueLaw& law, int n);

struct TrendRow {
  int n = 0;
  double gamma = 0.0;
  std::string law;
  double max_deviation = 0.0;
  double delta_spec = 0.0;
};

/// The gamma-trend experiment: for each (n, gamma, law) on ray sets, the
/// worst deviation of lambda_j / (mu^2 p_j) from 1. Sparser sets (larger
/// gamma) must show smaller deviation.
std::vector<TrendRow> thm68_experiment(int dim, const std::vector<int>& ns,
                                       const std::vector<double>& gammas,
                                       const std::vector<ValueLaw>& laws, GreenTable& green);

}  // namespace lab
