#include "lab/operator.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace lab {

namespace {

std::string format_point(const Point& x) {
  std::ostringstream out;
  out << "(";
  for (std::size_t i = 0; i < x.size(); ++i) out << (i ? ", " : "") << x[i];
  out << ")";
  return out.str();
}

void check_support_inside(const Potential& v, const Box& box) {
  for (const Point& p : v.support())
    if (!box.contains(p))
      throw SupportOverflow("potential support point " + format_point(p) +
                            " lies outside the box of radius " + std::to_string(box.radius()));
}

// Advances a coordinate odometer over the box enumeration order (last
// coordinate fastest). Returns false after the last point.
bool advance(std::vector<std::int64_t>& c, std::int64_t radius) {
  int j = static_cast<int>(c.size()) - 1;
  while (j >= 0 && c[static_cast<std::size_t>(j)] == radius) {
    c[static_cast<std::size_t>(j)] = -radius;
    --j;
  }
  if (j < 0) return false;
  ++c[static_cast<std::size_t>(j)];
  return true;
}

constexpr std::int64_t kDenseSiteCap = 6000;
constexpr std::int64_t kBandedDoubleCap = 160'000'000;  // ~1.3 GB

template <typename Scalar>
double q0_form_impl(const Box& box, const std::vector<Scalar>& u) {
  const std::int64_t n = box.site_count();
  if (static_cast<std::int64_t>(u.size()) != n)
    throw InvalidArgument("q0_form: vector length does not match the box");
  const int d = box.dim();
  const std::int64_t radius = box.radius();
  // Strides of +1 steps per axis in the lexicographic layout.
  std::vector<std::int64_t> stride(static_cast<std::size_t>(d), 1);
  for (int j = d - 2; j >= 0; --j)
    stride[static_cast<std::size_t>(j)] = stride[static_cast<std::size_t>(j + 1)] * box.side();

  std::vector<std::int64_t> c(static_cast<std::size_t>(d), -radius);
  double total = 0.0;
  std::int64_t idx = 0;
  do {
    const Scalar ux = u[static_cast<std::size_t>(idx)];
    for (int j = 0; j < d; ++j) {
      const std::int64_t cj = c[static_cast<std::size_t>(j)];
      if (cj < radius) {
        const Scalar diff =
            u[static_cast<std::size_t>(idx + stride[static_cast<std::size_t>(j)])] - ux;
        total += std::norm(diff);
      } else {
        total += std::norm(ux);  // edge to x + e_j leaves the box
      }
      if (cj == -radius) total += std::norm(ux);  // edge from x - e_j enters the box
    }
    ++idx;
  } while (advance(c, radius));
  return total;
}

template <typename Scalar>
double potential_form_impl(const Box& box, const Potential& v, const std::vector<Scalar>& u) {
  if (static_cast<std::int64_t>(u.size()) != box.site_count())
    throw InvalidArgument("potential_form: vector length does not match the box");
  if (v.dim() != box.dim()) throw InvalidArgument("potential_form: dimension mismatch");
  double total = 0.0;
  const auto& pts = v.support();
  const auto& vals = v.values();
  for (std::size_t i = 0; i < pts.size(); ++i)
    if (box.contains(pts[i]))
      total += vals[i] * std::norm(u[static_cast<std::size_t>(box.index_of(pts[i]))]);
  return total;
}

}  // namespace

Matrix assemble_laplacian(int dim, int radius) {
  return assemble_hamiltonian(Potential(dim), 0.0, radius);
}

Matrix assemble_hamiltonian(const Potential& v, double alpha, int radius) {
  const int d = v.dim();
  Box box(d, radius);
  check_support_inside(v, box);
  const std::int64_t n = box.site_count();
  if (n > kDenseSiteCap)
    throw MemoryBudgetExceeded(
        "assemble_hamiltonian: dense box with " + std::to_string(n) + " sites refused",
        static_cast<std::uint64_t>(n) * static_cast<std::uint64_t>(n) * 8u);

  std::vector<std::int64_t> stride(static_cast<std::size_t>(d), 1);
  for (int j = d - 2; j >= 0; --j)
    stride[static_cast<std::size_t>(j)] = stride[static_cast<std::size_t>(j + 1)] * box.side();

  Matrix h = Matrix::Zero(n, n);
  const double diag = 2.0 * d;
  std::vector<std::int64_t> c(static_cast<std::size_t>(d), -radius);
  std::int64_t idx = 0;
  do {
    h(idx, idx) = diag;
    for (int j = 0; j < d; ++j)
      if (c[static_cast<std::size_t>(j)] < radius) {
        const std::int64_t nb = idx + stride[static_cast<std::size_t>(j)];
        h(idx, nb) = -1.0;
        h(nb, idx) = -1.0;
      }
    ++idx;
  } while (advance(c, radius));

  const auto& pts = v.support();
  const auto& vals = v.values();
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const std::int64_t k = box.index_of(pts[i]);
    h(k, k) -= alpha * vals[i];
  }
  return h;
}

BandedSymMatrix assemble_hamiltonian_banded(const Potential& v, double alpha, int radius) {
  const int d = v.dim();
  Box box(d, radius);
  check_support_inside(v, box);
  const std::int64_t n = box.site_count();
  std::int64_t bw = 1;
  for (int j = 0; j < d - 1; ++j) bw *= box.side();
  if (n * (bw + 1) > kBandedDoubleCap)
    throw MemoryBudgetExceeded(
        "assemble_hamiltonian_banded: band storage for radius " + std::to_string(radius) +
            " exceeds the budget",
        static_cast<std::uint64_t>(n) * static_cast<std::uint64_t>(bw + 1) * 8u);

  std::vector<std::int64_t> stride(static_cast<std::size_t>(d), 1);
  for (int j = d - 2; j >= 0; --j)
    stride[static_cast<std::size_t>(j)] = stride[static_cast<std::size_t>(j + 1)] * box.side();

  BandedSymMatrix h(n, bw);
  const double diag = 2.0 * d;
  std::vector<std::int64_t> c(static_cast<std::size_t>(d), -radius);
  std::int64_t idx = 0;
  do {
    h.at(idx, idx) = diag;
    for (int j = 0; j < d; ++j)
      if (c[static_cast<std::size_t>(j)] < radius)
        h.at(idx + stride[static_cast<std::size_t>(j)], idx) = -1.0;
    ++idx;
  } while (advance(c, radius));

  const auto& pts = v.support();
  const auto& vals = v.values();
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const std::int64_t k = box.index_of(pts[i]);
    h.at(k, k) -= alpha * vals[i];
  }
  return h;
}

Vector potential_on_box(const Potential& v, const Box& box) {
  if (v.dim() != box.dim()) throw InvalidArgument("potential_on_box: dimension mismatch");
  Vector w = Vector::Zero(box.site_count());
  const auto& pts = v.support();
  const auto& vals = v.values();
  for (std::size_t i = 0; i < pts.size(); ++i)
    if (box.contains(pts[i])) w[box.index_of(pts[i])] = vals[i];
  return w;
}

double q0_form(const Box& box, const std::vector<double>& u) { return q0_form_impl(box, u); }
double q0_form(const Box& box, const std::vector<std::complex<double>>& u) {
  return q0_form_impl(box, u);
}

double potential_form(const Box& box, const Potential& v, const std::vector<double>& u) {
  return potential_form_impl(box, v, u);
}
double potential_form(const Box& box, const Potential& v,
                      const std::vector<std::complex<double>>& u) {
  return potential_form_impl(box, v, u);
}

std::int64_t count_negative(const Potential& v, double alpha, int radius) {
  if (alpha < 0.0) throw InvalidArgument("count_negative: coupling must be nonnegative");
  const BandedSymMatrix h = assemble_hamiltonian_banded(v, alpha, radius);
  return inertia_banded(h, 0.0).n_minus;
}

StabilizedCount stabilized_count(const Potential& v, double alpha, const StabilizeOptions& opts) {
  if (opts.r_step <= 0 || opts.window < 2 || opts.r_start <= 0 || opts.r_max < opts.r_start)
    throw InvalidArgument("stabilized_count: bad ladder options");
  StabilizedCount out;
  int r0 = opts.r_start;
  const auto sr = static_cast<int>(v.support_radius());
  while (r0 < sr) r0 += opts.r_step;
  for (int r = r0; r <= opts.r_max; r += opts.r_step) {
    const std::int64_t c = count_negative(v, alpha, r);
    out.history.emplace_back(r, c);
    out.count = c;
    out.radius = r;
    if (static_cast<int>(out.history.size()) >= opts.window) {
      bool flat = true;
      for (int i = 1; i < opts.window; ++i)
        flat = flat && out.history[out.history.size() - 1 - static_cast<std::size_t>(i)].second == c;
      if (flat) {
        out.stabilized = true;
        return out;
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// BoxSolver
// ---------------------------------------------------------------------------

BoxSolver::BoxSolver(int dim, int radius) : dim_(dim), box_(dim, radius), n1_(2 * radius + 1) {
  const std::int64_t n = box_.site_count();
  if (n > 50'000'000)
    throw MemoryBudgetExceeded("BoxSolver: box too large", static_cast<std::uint64_t>(n) * 8u);
  const double denom = static_cast<double>(n1_) + 1.0;
  const double norm = std::sqrt(2.0 / denom);
  s_.resize(static_cast<std::size_t>(n1_ * n1_));
  std::vector<double> omega(static_cast<std::size_t>(n1_));
  for (std::int64_t k = 0; k < n1_; ++k) {
    omega[static_cast<std::size_t>(k)] =
        2.0 - 2.0 * std::cos(std::numbers::pi * static_cast<double>(k + 1) / denom);
    for (std::int64_t x = 0; x < n1_; ++x)
      s_[static_cast<std::size_t>(k * n1_ + x)] =
          norm * std::sin(std::numbers::pi * static_cast<double>((k + 1) * (x + 1)) / denom);
  }
  eigsum_inv_.resize(static_cast<std::size_t>(n));
  std::vector<std::int64_t> c(static_cast<std::size_t>(dim_), 0);
  std::int64_t idx = 0;
  while (true) {
    double sum = 0.0;
    for (int j = 0; j < dim_; ++j) sum += omega[static_cast<std::size_t>(c[static_cast<std::size_t>(j)])];
    eigsum_inv_[static_cast<std::size_t>(idx)] = 1.0 / sum;
    ++idx;
    int j = dim_ - 1;
    while (j >= 0 && ++c[static_cast<std::size_t>(j)] == n1_) {
      c[static_cast<std::size_t>(j)] = 0;
      --j;
    }
    if (j < 0) break;
  }
}

void BoxSolver::apply_sine_all_axes(std::vector<double>& u) const {
  const std::int64_t n = box_.site_count();
  std::vector<double> tmp(static_cast<std::size_t>(n1_));
  std::vector<double> out(static_cast<std::size_t>(n1_));
  std::int64_t stride = 1;
  for (int axis = 0; axis < dim_; ++axis) {
    const std::int64_t block = stride * n1_;
    for (std::int64_t base = 0; base < n; base += block) {
      for (std::int64_t i = 0; i < stride; ++i) {
        double* p = u.data() + base + i;
        for (std::int64_t k = 0; k < n1_; ++k) tmp[static_cast<std::size_t>(k)] = p[k * stride];
        for (std::int64_t k = 0; k < n1_; ++k) {
          const double* __restrict row = s_.data() + k * n1_;
          const double* __restrict t = tmp.data();
          double acc = 0.0;
          for (std::int64_t l = 0; l < n1_; ++l) acc += row[l] * t[l];
          out[static_cast<std::size_t>(k)] = acc;
        }
        for (std::int64_t k = 0; k < n1_; ++k) p[k * stride] = out[static_cast<std::size_t>(k)];
      }
    }
    stride *= n1_;
  }
}

void BoxSolver::solve_inplace(std::vector<double>& u) const {
  if (static_cast<std::int64_t>(u.size()) != box_.site_count())
    throw InvalidArgument("BoxSolver::solve_inplace: vector length does not match the box");
  apply_sine_all_axes(u);
  for (std::size_t i = 0; i < u.size(); ++i) u[i] *= eigsum_inv_[i];
  apply_sine_all_axes(u);
}

Vector BoxSolver::solve(const Vector& f) const {
  std::vector<double> u(f.data(), f.data() + f.size());
  solve_inplace(u);
  return Eigen::Map<const Vector>(u.data(), static_cast<Eigen::Index>(u.size()));
}

Vector BoxSolver::inverse_column(const Point& x, const std::vector<Point>& rows) const {
  std::vector<double> u(static_cast<std::size_t>(box_.site_count()), 0.0);
  u[static_cast<std::size_t>(box_.index_of(x))] = 1.0;
  solve_inplace(u);
  Vector out(static_cast<Eigen::Index>(rows.size()));
  for (std::size_t i = 0; i < rows.size(); ++i)
    out[static_cast<Eigen::Index>(i)] = u[static_cast<std::size_t>(box_.index_of(rows[i]))];
  return out;
}

double BoxSolver::min_eigenvalue() const {
  const double denom = static_cast<double>(n1_) + 1.0;
  return dim_ * (2.0 - 2.0 * std::cos(std::numbers::pi / denom));
}

}  // namespace lab
