#pragma once
// Discrete Hardy machinery: multilinear interpolation cell forms, the
// weight-transfer inequality, and box lower bounds for the best Hardy
// constant H(W) = sup b_W[u] / Q0[u].
//
// On the unit cell with 2^d corners, the Dirichlet energy of the multilinear
// interpolant is the tensor-product stiffness form
//   D_cell = sum_j M x ... x K_j x ... x M,
// built from the 1-D element matrices K = [[1,-1],[-1,1]] and
// M = [[1/3,1/6],[1/6,1/3]], while Q_cell = sum_j I x ... x K_j x ... x I is
// the edge-difference form of the cell graph. Both vanish exactly on the
// constants and are equivalent on the complement; summing over cells (each
// lattice edge lies in 2^{d-1} cells) converts the cell equivalence into the
// global sandwich c_glob * Q0[u] <= D[Iu] <= Q0[u].

#include <cstdint>
#include <string>
#include <vector>

#include "lab/lattice.hpp"
#include "lab/linalg.hpp"

namespace lab {

struct CellForms {
  int dim = 0;
  Matrix q_cell;     // 2^d x 2^d edge-difference form of the cell graph
  Matrix d_cell;     // multilinear Dirichlet (stiffness) form
  Matrix mass_cell;  // tensor mass form M x ... x M (integral of |Iu|^2)
  double pencil_lower = 0.0;  // smallest generalized eigenvalue of (D, Q)
  double pencil_upper = 0.0;  // largest, both on the complement of constants
  double global_lower = 0.0;  // pencil_lower * 2^{d-1} (edge multiplicity)
  double global_upper = 0.0;  // pencil_upper * 2^{d-1}
  Vector pencil_lower_vector;  // attaining generalized eigenvectors (2^d)
  Vector pencil_upper_vector;
};

/// Assembles the cell forms for 1 <= d <= 6 and computes the equivalence
/// constants as the extreme generalized eigenvalues of D_cell vs Q_cell on
/// the complement of constants.
CellForms cell_forms(int dim);

/// Dirichlet integral of the piecewise-multilinear interpolant of u (box
/// layout, extended by zero). Requires u to vanish on the boundary layer of
/// the box so that the zero extension is seamless; throws InvalidArgument
/// otherwise.
double interpolate_dirichlet(const Box& box, const std::vector<double>& u);

/// Exact integral of (JW)(xi) |Iu(xi)|^2: the cell of lower corner x carries
/// the constant value W(x), and the integral of |Iu|^2 over one cell is the
/// tensor mass form of the corner values.
double interpolate_weighted_mass(const Box& box, const Potential& w,
                                 const std::vector<double>& u);

/// Weight-transfer comparison: lhs = sum W|u|^2, rhs = integral of JW |Iu|^2.
struct WeightTransfer {
  double lhs = 0.0;
  double rhs = 0.0;
  double ratio = 0.0;  // lhs / rhs (0 when both vanish)
};
WeightTransfer weight_transfer_check(const Potential& w, const Box& box,
                                     const std::vector<double>& u);

/// How the largest generalized eigenvalue of diag(W) vs L_R is computed.
enum class HardyRoute {
  kAuto,       // restricted congruence for small supports, power method else
  kRestricted, // sqrt(W) L_R^{-1} sqrt(W) on supp W, dense eigensolve
  kPowerMethod // full-box power iteration with sine-transform solves
};

struct HardyBoundResult {
  double value = 0.0;
  int iterations = 0;  // 0 for the restricted route
  HardyRoute route = HardyRoute::kAuto;
};

/// Best constant of sum W|u|^2 <= C * Q0[u] over functions supported in the
/// box of the given radius = largest generalized eigenvalue of the pencil
/// diag(W) u = lambda L_R u. A lower bound for H(W), non-decreasing in R.
/// Throws TheoryDomainError for d < 3.
HardyBoundResult hardy_lower_bound_at(const Potential& w, int radius,
                                      HardyRoute route = HardyRoute::kAuto);

struct HardyEstimate {
  std::string weight_name;
  std::vector<int> radii;
  std::vector<double> bounds;  // non-decreasing in R
};

/// Box lower-bound trend over a radius list.
HardyEstimate hardy_lower_bound(const Potential& w, const std::vector<int>& radii,
                                HardyRoute route = HardyRoute::kAuto,
                                const std::string& name = "");

}  // namespace lab
