#include "lab/hardy.hpp"

#include <algorithm>
#include <cmath>

#include "lab/operator.hpp"

namespace lab {

namespace {

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

Matrix one_d_stiffness() {
  Matrix k(2, 2);
  k << 1.0, -1.0, -1.0, 1.0;
  return k;
}

Matrix one_d_mass() {
  Matrix m(2, 2);
  m << 1.0 / 3.0, 1.0 / 6.0, 1.0 / 6.0, 1.0 / 3.0;
  return m;
}

// sum over axes of chains factor_0 x ... x factor_{d-1} where the factor at
// the distinguished axis is `special` and all others are `plain`. Axis 0 is
// the leftmost (slowest) Kronecker factor, matching corner index
// c = sum_j bit_j * 2^{d-1-j}.
Matrix chain_sum(int dim, const Matrix& special, const Matrix& plain) {
  Matrix total = Matrix::Zero(1 << dim, 1 << dim);
  for (int axis = 0; axis < dim; ++axis) {
    Matrix chain = (axis == 0) ? special : plain;
    for (int j = 1; j < dim; ++j) chain = kron(chain, (j == axis) ? special : plain);
    total += chain;
  }
  return total;
}

Matrix tensor_power(int dim, const Matrix& factor) {
  Matrix chain = factor;
  for (int j = 1; j < dim; ++j) chain = kron(chain, factor);
  return chain;
}

void check_cell_dim(int dim) {
  if (dim < 1 || dim > 6)
    throw InvalidArgument("cell forms: dimension must lie in 1..6");
}

}  // namespace

CellForms cell_forms(int dim) {
  check_cell_dim(dim);
  CellForms out;
  out.dim = dim;
  const Matrix k = one_d_stiffness();
  const Matrix m = one_d_mass();
  const Matrix id = Matrix::Identity(2, 2);
  out.d_cell = chain_sum(dim, k, m);
  out.q_cell = chain_sum(dim, k, id);
  out.mass_cell = tensor_power(dim, m);

  const int n = 1 << dim;
  const Matrix p = complement_of_ones(n);
  const EigenGen pencil = eigen_gen_restricted(out.d_cell, out.q_cell, p, /*with_vectors=*/true);
  out.pencil_lower = pencil.values[0];
  out.pencil_upper = pencil.values[pencil.values.size() - 1];
  out.pencil_lower_vector = pencil.vectors.col(0);
  out.pencil_upper_vector = pencil.vectors.col(pencil.vectors.cols() - 1);
  const double edge_multiplicity = std::pow(2.0, dim - 1);
  out.global_lower = out.pencil_lower * edge_multiplicity;
  out.global_upper = out.pencil_upper * edge_multiplicity;
  return out;
}

double interpolate_dirichlet(const Box& box, const std::vector<double>& u) {
  const int d = box.dim();
  check_cell_dim(d);
  const std::int64_t n = box.site_count();
  if (static_cast<std::int64_t>(u.size()) != n)
    throw InvalidArgument("interpolate_dirichlet: vector length does not match the box");
  const std::int64_t radius = box.radius();

  // Zero extension is seamless only when u vanishes on the boundary layer.
  for (std::int64_t idx = 0; idx < n; ++idx) {
    if (u[static_cast<std::size_t>(idx)] == 0.0) continue;
    const Point p = box.point_at(idx);
    for (std::int64_t c : p)
      if (std::llabs(c) == radius)
        throw InvalidArgument("interpolate_dirichlet: support touches the box boundary");
  }

  const Matrix d_cell = chain_sum(d, one_d_stiffness(), one_d_mass());
  const int corners = 1 << d;

  std::vector<std::int64_t> stride(static_cast<std::size_t>(d), 1);
  for (int j = d - 2; j >= 0; --j)
    stride[static_cast<std::size_t>(j)] = stride[static_cast<std::size_t>(j + 1)] * box.side();
  std::vector<std::int64_t> corner_offset(static_cast<std::size_t>(corners), 0);
  for (int c = 0; c < corners; ++c)
    for (int j = 0; j < d; ++j)
      if ((c >> (d - 1 - j)) & 1)
        corner_offset[static_cast<std::size_t>(c)] += stride[static_cast<std::size_t>(j)];

  // Cells by lower corner in [-R, R-1]^d; every corner stays inside the box.
  Vector vals(corners);
  double total = 0.0;
  std::vector<std::int64_t> coords(static_cast<std::size_t>(d), -radius);
  while (true) {
    std::int64_t base = 0;
    for (int j = 0; j < d; ++j)
      base += (coords[static_cast<std::size_t>(j)] + radius) * stride[static_cast<std::size_t>(j)];
    bool any = false;
    for (int c = 0; c < corners; ++c) {
      const double v =
          u[static_cast<std::size_t>(base + corner_offset[static_cast<std::size_t>(c)])];
      vals[c] = v;
      any = any || (v != 0.0);
    }
    if (any) total += vals.dot(d_cell * vals);

    int j = d - 1;
    while (j >= 0 && coords[static_cast<std::size_t>(j)] == radius - 1) {
      coords[static_cast<std::size_t>(j)] = -radius;
      --j;
    }
    if (j < 0) break;
    ++coords[static_cast<std::size_t>(j)];
  }
  return total;
}

double interpolate_weighted_mass(const Box& box, const Potential& w,
                                 const std::vector<double>& u) {
  const int d = box.dim();
  check_cell_dim(d);
  if (w.dim() != d) throw InvalidArgument("interpolate_weighted_mass: dimension mismatch");
  if (static_cast<std::int64_t>(u.size()) != box.site_count())
    throw InvalidArgument("interpolate_weighted_mass: vector length does not match the box");
  const Matrix mass = tensor_power(d, one_d_mass());
  const int corners = 1 << d;
  Vector vals(corners);
  double total = 0.0;
  const auto& pts = w.support();
  const auto& wv = w.values();
  for (std::size_t i = 0; i < pts.size(); ++i) {
    // Cell with lower corner at the support point (cell-constant extension).
    for (int c = 0; c < corners; ++c) {
      Point corner = pts[i];
      for (int j = 0; j < d; ++j)
        if ((c >> (d - 1 - j)) & 1) ++corner[static_cast<std::size_t>(j)];
      vals[c] = box.contains(corner) ? u[static_cast<std::size_t>(box.index_of(corner))] : 0.0;
    }
    total += wv[i] * vals.dot(mass * vals);
  }
  return total;
}

WeightTransfer weight_transfer_check(const Potential& w, const Box& box,
                                     const std::vector<double>& u) {
  WeightTransfer out;
  out.lhs = potential_form(box, w, u);
  out.rhs = interpolate_weighted_mass(box, w, u);
  out.ratio = (out.rhs > 0.0) ? out.lhs / out.rhs : 0.0;
  return out;
}

HardyBoundResult hardy_lower_bound_at(const Potential& w, int radius, HardyRoute route) {
  if (w.dim() < 3)
    throw TheoryDomainError("hardy_lower_bound: requires d >= 3 (no Hardy inequality below)");
  Box box(w.dim(), radius);
  // Truncate the weight to the box (W|_box); points outside are dropped.
  std::vector<Point> pts;
  std::vector<double> vals;
  for (std::size_t i = 0; i < w.support().size(); ++i)
    if (box.contains(w.support()[i])) {
      pts.push_back(w.support()[i]);
      vals.push_back(w.values()[i]);
    }
  HardyBoundResult out;
  if (pts.empty()) {
    out.route = route;
    return out;
  }
  if (route == HardyRoute::kAuto)
    route = (pts.size() <= 1000) ? HardyRoute::kRestricted : HardyRoute::kPowerMethod;
  out.route = route;

  BoxSolver solver(w.dim(), radius);
  if (route == HardyRoute::kRestricted) {
    const auto k = static_cast<Eigen::Index>(pts.size());
    Matrix s(k, k);
    for (Eigen::Index j = 0; j < k; ++j) {
      const Vector col = solver.inverse_column(pts[static_cast<std::size_t>(j)], pts);
      for (Eigen::Index i = 0; i < k; ++i)
        s(i, j) =
            std::sqrt(vals[static_cast<std::size_t>(i)] * vals[static_cast<std::size_t>(j)]) *
            col[i];
    }
    const Matrix sym = 0.5 * (s + s.transpose());
    const EigenSym es = eigen_sym(sym, /*with_vectors=*/false);
    out.value = es.values[es.values.size() - 1];
    return out;
  }

  // Full-box power iteration on B = sqrt(W) L_R^{-1} sqrt(W), started from
  // the positive vector sqrt(W) (B has positive entries on the support
  // subspace, so the principal eigenvalue is simple and the start vector has
  // a positive component on its eigenvector).
  const std::int64_t n = box.site_count();
  std::vector<double> sqrtw(static_cast<std::size_t>(n), 0.0);
  for (std::size_t i = 0; i < pts.size(); ++i)
    sqrtw[static_cast<std::size_t>(box.index_of(pts[i]))] = std::sqrt(vals[i]);

  std::vector<double> y = sqrtw;
  double norm = 0.0;
  for (double t : y) norm += t * t;
  norm = std::sqrt(norm);
  for (double& t : y) t /= norm;

  std::vector<double> by(static_cast<std::size_t>(n));
  constexpr int kMaxIter = 5000;
  double lambda = 0.0;
  for (int iter = 1; iter <= kMaxIter; ++iter) {
    for (std::size_t i = 0; i < y.size(); ++i) by[i] = sqrtw[i] * y[i];
    solver.solve_inplace(by);
    for (std::size_t i = 0; i < y.size(); ++i) by[i] *= sqrtw[i];
    lambda = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) lambda += y[i] * by[i];
    double resid2 = 0.0;
    double bynorm2 = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) {
      const double r = by[i] - lambda * y[i];
      resid2 += r * r;
      bynorm2 += by[i] * by[i];
    }
    out.iterations = iter;
    if (std::sqrt(resid2) <= 1e-10 * lambda) break;
    const double bynorm = std::sqrt(bynorm2);
    for (std::size_t i = 0; i < y.size(); ++i) y[i] = by[i] / bynorm;
  }
  out.value = lambda;
  return out;
}

HardyEstimate hardy_lower_bound(const Potential& w, const std::vector<int>& radii,
                                HardyRoute route, const std::string& name) {
  HardyEstimate out;
  out.weight_name = name;
  for (int r : radii) {
    out.radii.push_back(r);
    out.bounds.push_back(hardy_lower_bound_at(w, r, route).value);
  }
  return out;
}

}  // namespace lab
