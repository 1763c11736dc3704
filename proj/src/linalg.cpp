#include "lab/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace lab {

void require_symmetric(const Matrix& a, const char* who) {
  if (a.rows() != a.cols()) throw InvalidArgument(std::string(who) + ": matrix not square");
  if (!a.allFinite()) throw InvalidArgument(std::string(who) + ": non-finite entries");
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < i; ++j)
      if (a(i, j) != a(j, i)) throw InvalidArgument(std::string(who) + ": matrix not symmetric");
}

EigenSym eigen_sym(const Matrix& a, bool with_vectors) {
  require_symmetric(a, "eigen_sym");
  Eigen::SelfAdjointEigenSolver<Matrix> es;
  es.compute(a, with_vectors ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw std::runtime_error("eigen_sym: eigensolver failed");
  EigenSym r;
  r.values = es.eigenvalues();
  if (with_vectors) r.vectors = es.eigenvectors();
  return r;
}

EigenGen eigen_gen(const Matrix& a, const Matrix& b, bool with_vectors) {
  require_symmetric(a, "eigen_gen(A)");
  require_symmetric(b, "eigen_gen(B)");
  if (a.rows() != b.rows()) throw InvalidArgument("eigen_gen: size mismatch");
  Eigen::LLT<Matrix> llt(b);
  if (llt.info() != Eigen::Success) {
    // Name the offending (approximate) null direction of the metric.
    EigenSym eb = eigen_sym(b, true);
    throw DegenerateMetric("eigen_gen: metric not positive definite (smallest eigenvalue " +
                               std::to_string(eb.values(0)) + ")",
                           eb.vectors.col(0));
  }
  Eigen::GeneralizedSelfAdjointEigenSolver<Matrix> es;
  es.compute(a, b, with_vectors ? (Eigen::ComputeEigenvectors | Eigen::Ax_lBx)
                                : (Eigen::EigenvaluesOnly | Eigen::Ax_lBx));
  if (es.info() != Eigen::Success) throw std::runtime_error("eigen_gen: solver failed");
  EigenGen r;
  r.values = es.eigenvalues();
  if (with_vectors) r.vectors = es.eigenvectors();
  return r;
}

EigenGen eigen_gen_restricted(const Matrix& a, const Matrix& b, const Matrix& p,
                              bool with_vectors) {
  if (p.rows() != a.rows()) throw InvalidArgument("eigen_gen_restricted: basis size mismatch");
  const Matrix ar = p.transpose() * a * p;
  const Matrix br = p.transpose() * b * p;
  // Symmetrize roundoff so the strict symmetry check passes.
  EigenGen r = eigen_gen(0.5 * (ar + ar.transpose()), 0.5 * (br + br.transpose()), with_vectors);
  if (with_vectors) r.vectors = (p * r.vectors).eval();
  return r;
}

Matrix complement_of_ones(int n) {
  if (n < 2) throw InvalidArgument("complement_of_ones: need n >= 2");
  Matrix ones = Matrix::Ones(n, 1);
  Eigen::HouseholderQR<Matrix> qr(ones);
  Matrix q = qr.householderQ() * Matrix::Identity(n, n);
  return q.rightCols(n - 1);
}

namespace {

// Classifies the eigenvalues of a 1x1 or 2x2 pivot block against zero_tol.
void classify_pivot1(double d, double zero_tol, Inertia& io) {
  if (std::abs(d) <= zero_tol)
    ++io.n_zero;
  else if (d > 0.0)
    ++io.n_plus;
  else
    ++io.n_minus;
}

void classify_pivot2(double a, double b, double c, double zero_tol, Inertia& io) {
  // Eigenvalues of [[a, b], [b, c]].
  const double tr = 0.5 * (a + c);
  const double disc = std::sqrt(std::max(0.0, 0.25 * (a - c) * (a - c) + b * b));
  classify_pivot1(tr + disc, zero_tol, io);
  classify_pivot1(tr - disc, zero_tol, io);
}

Inertia inertia_from_values(const Vector& vals, double zero_tol) {
  Inertia io;
  for (Eigen::Index i = 0; i < vals.size(); ++i) classify_pivot1(vals(i), zero_tol, io);
  return io;
}

}  // namespace

Inertia inertia(const Matrix& a_in, double shift, double zero_tol) {
  require_symmetric(a_in, "inertia");
  const Eigen::Index n = a_in.rows();
  Matrix a = a_in;
  if (shift != 0.0) a.diagonal().array() -= shift;
  const double scale = std::max(a.cwiseAbs().maxCoeff(), 1e-300);
  if (zero_tol < 0.0) zero_tol = 1e-9 * scale;

  // Bunch-Kaufman partial pivoting on the full symmetric working copy.
  const double alpha = (1.0 + std::sqrt(17.0)) / 8.0;
  Inertia io;
  Eigen::Index k = 0;
  bool ok = true;
  while (k < n && ok) {
    const Eigen::Index rem = n - k;
    if (rem == 1) {
      classify_pivot1(a(k, k), zero_tol, io);
      break;
    }
    // Largest off-diagonal magnitude in column k of the active block.
    Eigen::Index r = k + 1;
    double lambda = 0.0;
    for (Eigen::Index i = k + 1; i < n; ++i)
      if (std::abs(a(i, k)) > lambda) { lambda = std::abs(a(i, k)); r = i; }

    bool use_two = false;
    Eigen::Index swap_with = -1;
    if (lambda <= zero_tol * 1e-6 && std::abs(a(k, k)) <= zero_tol * 1e-6) {
      // Numerically null row/column: contributes a zero eigenvalue.
      ++io.n_zero;
      ++k;
      continue;
    }
    if (std::abs(a(k, k)) >= alpha * lambda) {
      // 1x1 pivot at k.
    } else {
      double sigma = 0.0;
      for (Eigen::Index i = k; i < n; ++i)
        if (i != r) sigma = std::max(sigma, std::abs(a(i, r)));
      if (std::abs(a(k, k)) * sigma >= alpha * lambda * lambda) {
        // 1x1 pivot at k.
      } else if (std::abs(a(r, r)) >= alpha * sigma) {
        swap_with = r;  // swap k <-> r, then 1x1 pivot
      } else {
        use_two = true;
        if (r != k + 1) {
          // swap k+1 <-> r, then 2x2 pivot on (k, k+1)
          a.row(k + 1).swap(a.row(r));
          a.col(k + 1).swap(a.col(r));
        }
      }
      if (swap_with >= 0) {
        a.row(k).swap(a.row(swap_with));
        a.col(k).swap(a.col(swap_with));
      }
    }

    if (!use_two) {
      const double d = a(k, k);
      if (std::abs(d) <= zero_tol * 1e-12) { ok = false; break; }
      classify_pivot1(d, zero_tol, io);
      const Eigen::Index m = n - k - 1;
      if (m > 0) {
        Vector col = a.block(k + 1, k, m, 1) / d;
        a.block(k + 1, k + 1, m, m).noalias() -= col * a.block(k + 1, k, m, 1).transpose();
        a.block(k + 1, k + 1, m, m) =
            0.5 * (a.block(k + 1, k + 1, m, m) + a.block(k + 1, k + 1, m, m).transpose().eval());
      }
      ++k;
    } else {
      const double p00 = a(k, k), p01 = a(k, k + 1), p11 = a(k + 1, k + 1);
      const double det = p00 * p11 - p01 * p01;
      if (std::abs(det) <= zero_tol * zero_tol * 1e-12) { ok = false; break; }
      classify_pivot2(p00, p01, p11, zero_tol, io);
      const Eigen::Index m = n - k - 2;
      if (m > 0) {
        // X = A(k+2:, k:k+2) * inv(P)
        Matrix b = a.block(k + 2, k, m, 2);
        Matrix x(m, 2);
        x.col(0) = (b.col(0) * p11 - b.col(1) * p01) / det;
        x.col(1) = (b.col(1) * p00 - b.col(0) * p01) / det;
        a.block(k + 2, k + 2, m, m).noalias() -= x * b.transpose();
        a.block(k + 2, k + 2, m, m) =
            0.5 * (a.block(k + 2, k + 2, m, m) + a.block(k + 2, k + 2, m, m).transpose().eval());
      }
      k += 2;
    }
    if (!a.allFinite()) ok = false;
  }
  if (ok && k >= n) {
    // Sanity: counts must exhaust the order.
    if (io.n_minus + io.n_zero + io.n_plus == n) return io;
    ok = false;
  }
  // Breakdown fallback: full eigendecomposition (contract: never abort).
  Matrix shifted = a_in;
  if (shift != 0.0) shifted.diagonal().array() -= shift;
  return inertia_from_values(eigen_sym(shifted, false).values, zero_tol);
}

BandedSymMatrix::BandedSymMatrix(std::int64_t n, std::int64_t bandwidth)
    : n_(n), bw_(bandwidth) {
  if (n < 1 || bandwidth < 0) throw InvalidArgument("BandedSymMatrix: bad shape");
  data_.assign(static_cast<std::size_t>(n * (bw_ + 1)), 0.0);
}

double& BandedSymMatrix::at(std::int64_t row, std::int64_t col) {
  if (col > row) std::swap(row, col);
  if (row - col > bw_ || col < 0 || row >= n_)
    throw InvalidArgument("BandedSymMatrix::at: outside band");
  return data_[static_cast<std::size_t>(col * (bw_ + 1) + (row - col))];
}

double BandedSymMatrix::at(std::int64_t row, std::int64_t col) const {
  if (col > row) std::swap(row, col);
  if (row - col > bw_ || col < 0 || row >= n_) return 0.0;
  return data_[static_cast<std::size_t>(col * (bw_ + 1) + (row - col))];
}

double BandedSymMatrix::max_abs() const {
  double m = 0.0;
  for (double v : data_) m = std::max(m, std::abs(v));
  return m;
}

Matrix BandedSymMatrix::to_dense() const {
  if (n_ > 5000) throw MemoryBudgetExceeded("BandedSymMatrix::to_dense: too large",
                                            static_cast<std::uint64_t>(n_) * n_ * 8);
  Matrix a = Matrix::Zero(n_, n_);
  for (std::int64_t j = 0; j < n_; ++j)
    for (std::int64_t r = 0; r <= std::min(bw_, n_ - 1 - j); ++r) {
      a(j + r, j) = col_ptr(j)[r];
      a(j, j + r) = col_ptr(j)[r];
    }
  return a;
}

namespace {

// One unpivoted banded LDL^T sweep; returns false on a pivot smaller than
// breakdown_tol. Pivot signs accumulate into io.
bool banded_ldlt_sweep(std::vector<double>& band, std::int64_t n, std::int64_t bw,
                       double breakdown_tol, double zero_tol, Inertia& io) {
  io = Inertia{};
  const std::int64_t stride = bw + 1;
  for (std::int64_t j = 0; j < n; ++j) {
    double* colj = band.data() + j * stride;
    const double d = colj[0];
    if (!(std::abs(d) > breakdown_tol)) return false;
    classify_pivot1(d, zero_tol, io);
    const std::int64_t m = std::min(bw, n - 1 - j);
    for (std::int64_t c = 1; c <= m; ++c) {
      const double f = colj[c] / d;
      if (f != 0.0) {
        double* __restrict dst = band.data() + (j + c) * stride;
        const double* __restrict src = colj + c;
        const std::int64_t len = m - c + 1;
        for (std::int64_t i = 0; i < len; ++i) dst[i] -= f * src[i];
      }
    }
  }
  return true;
}

}  // namespace

Inertia inertia_banded(const BandedSymMatrix& a, double shift, double zero_tol) {
  const std::int64_t n = a.order();
  const std::int64_t bw = a.bandwidth();
  const std::int64_t stride = bw + 1;
  const double scale = std::max(a.max_abs() + std::abs(shift), 1e-300);
  if (zero_tol < 0.0) zero_tol = 1e-9 * scale;
  const double breakdown_tol = 1e-13 * scale;

  // Deterministic jitter ladder: tiny extra shifts, used only if a pivot
  // collapses. Counting is insensitive to them when the spectrum keeps a
  // zero_tol-sized distance from `shift`.
  const double jitters[] = {0.0, 1e-11 * scale, -1e-11 * scale, 3e-11 * scale};
  std::vector<double> work;
  for (double jit : jitters) {
    work.assign(a.col_ptr(0), a.col_ptr(0) + n * stride);
    if (shift + jit != 0.0)
      for (std::int64_t j = 0; j < n; ++j) work[static_cast<std::size_t>(j * stride)] -= shift + jit;
    Inertia io;
    if (banded_ldlt_sweep(work, n, bw, breakdown_tol, zero_tol, io)) {
      bool finite = true;
      for (double v : work)
        if (!std::isfinite(v)) { finite = false; break; }
      if (finite) return io;
    }
  }
  if (n <= 4000) {
    Matrix dense = a.to_dense();
    dense.diagonal().array() -= shift;
    return inertia_from_values(eigen_sym(dense, false).values, zero_tol);
  }
  throw std::runtime_error("inertia_banded: factorization breakdown persisted under jitter");
}

std::int64_t count_greater(const std::vector<double>& values, double s) {
  std::int64_t n = 0;
  for (double v : values)
    if (v > s) ++n;
  return n;
}

}  // namespace lab
