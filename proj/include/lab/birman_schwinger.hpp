#pragma once
// Positive spectrum of the Birman-Schwinger operator B_V computed two
// independent ways, and the counting duality N_-(H_{alpha V}) =
// n_+(1/alpha, B_V).
//
//  * Gram reduction (reference): on supp V, K_{xy} = sqrt(V(x)V(y)) h0(x-y).
//    The reproducing property of h0 in the Dirichlet-form metric makes the
//    nonzero spectrum of B_V equal to the spectrum of K; only
//    Green-quadrature error enters, no lattice truncation.
//  * Box truncation: the generalized problem diag(V) u = lambda L_R u on a
//    Dirichlet box, either as a dense pencil or through the exact congruence
//    reduction sqrt(V) L_R^{-1} sqrt(V) on supp V with fast sine-transform
//    solves. Box eigenvalues increase monotonically in R toward the lattice
//    values.

#include <cstdint>
#include <string>
#include <vector>

#include "lab/green.hpp"
#include "lab/lattice.hpp"
#include "lab/operator.hpp"
#include "lab/report.hpp"

namespace lab {

struct BSSpectrum {
  std::vector<double> eigenvalues;  // positive, non-increasing
  std::string method;               // "gram-reduction" | "box-truncation"
  std::string resolution;           // e.g. "m=128" or "R=12"

  std::string to_csv() const { return spectrum_csv(eigenvalues, method, resolution); }
};

/// Gram-reduction spectrum on supp V. Throws InvalidArgument on dimension
/// mismatch (negative entries are impossible by the Potential invariant).
BSSpectrum bs_spectrum_gram(const Potential& v, GreenTable& green);

/// How the box-truncated problem is solved.
enum class BoxRoute {
  kAuto,        // dense pencil for small boxes, congruence otherwise
  kDensePencil, // eigen_gen(diag V, L_R) on the full box
  kSchur        // sqrt(V) L_R^{-1} sqrt(V) on supp V via BoxSolver
};

/// Box-truncated spectrum at the given radius: the #supp V positive
/// generalized eigenvalues of diag(V) u = lambda L_R u.
BSSpectrum bs_spectrum_box(const Potential& v, int radius, BoxRoute route = BoxRoute::kAuto);

/// Three-point extrapolation of the box spectrum in 1/R: fits
/// a + b/R + c/R^2 through the sorted eigenvalues at exactly three radii and
/// reports the extrapolated values a_j.
BSSpectrum bs_spectrum_extrapolated(const Potential& v, const std::vector<int>& radii);

/// Strict count n_+(s) = #{lambda_j > s}.
std::int64_t n_plus(const BSSpectrum& spec, double s);

/// Single-coupling duality comparison.
struct DualityPoint {
  double alpha = 0.0;
  std::int64_t count_operator = 0;  // radius-stabilized negative count of H
  std::int64_t count_gram = 0;      // n_+(1/alpha) of the Gram spectrum
  double margin = 0.0;              // min_j |lambda_j - 1/alpha|
  bool near_threshold = false;      // |1/alpha - lambda_j| < 1e-6 lambda_j for some j
  bool stabilized = false;
  bool match = false;
};
DualityPoint duality_point(const Potential& v, double alpha, const BSSpectrum& gram,
                           const StabilizeOptions& opts = {});

/// Duality sweep over a coupling grid. Near-threshold rows are excluded from
/// the verdict (but remain in the CSV, marked SKIP).
BoundReport duality_check(const Potential& v, const std::vector<double>& alphas,
                          GreenTable& green, const StabilizeOptions& opts = {});

/// Deterministic coupling grid for duality sweeps: `count` values spread over
/// the gap structure of the Gram thresholds 1/lambda_j (geometric quantiles
/// inside each gap, plus representatives below the smallest and above the
/// largest threshold). By construction the grid stays away from thresholds.
std::vector<double> midpoint_alphas(const BSSpectrum& gram, int count);

}  // namespace lab
