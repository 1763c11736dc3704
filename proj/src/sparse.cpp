#include "lab/sparse.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace lab {

namespace {

void fill_set_quantities(SparseSet& set) {
  const int d = set.dim;
  const std::size_t n = set.points.size();
  set.r.assign(n, std::numeric_limits<double>::infinity());
  set.bracket.assign(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      set.r[i] = std::min(set.r[i], euclid_dist(set.points[i], set.points[j]));
      if (set.points[i] == set.points[j])
        throw InvalidArgument("sparse set: points must be distinct");
    }
    for (std::size_t j = 0; j < n; ++j)
      if (norm2(set.points[j]) <= norm2(set.points[i])) ++set.bracket[i];
  }
  set.a_sum = 0.0;
  set.a_sup = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (!std::isfinite(set.r[i])) continue;  // singleton convention: contributes 0
    const double inv = std::pow(set.r[i], -static_cast<double>(d - 2));
    set.a_sum += inv;
    set.a_sup = std::max(set.a_sup, static_cast<double>(set.bracket[i]) * inv);
  }
}

}  // namespace

SparseSet generate_sparse_set(int dim, int n, double gamma, SparsePattern pattern,
                              double a_target) {
  if (dim < 3) throw TheoryDomainError("generate_sparse_set: requires d >= 3");
  if (n < 1 || !(gamma > 1.0))
    throw InvalidArgument("generate_sparse_set: need n >= 1 and gamma > 1");
  SparseSet set;
  set.dim = dim;
  set.gamma = gamma;
  set.pattern = pattern;
  set.a_target = a_target;
  std::int64_t prev = 0;
  for (int j = 1; j <= n; ++j) {
    std::int64_t k = std::llround(std::pow(gamma, j));
    if (k <= prev) {  // rounding collision: bump to the next free radius
      k = prev + 1;
      ++set.adjustments;
    }
    prev = k;
    Point p(static_cast<std::size_t>(dim), 0);
    if (pattern == SparsePattern::kRay) {
      p[0] = k;
    } else {
      for (auto& c : p) c = k;
    }
    set.points.push_back(std::move(p));
  }
  fill_set_quantities(set);
  if (a_target > 0.0) {
    set.a_margin = a_target - set.a_sum;
    set.target_met = set.a_sum <= a_target;
  }
  return set;
}

SparseSet sparse_set_from_points(int dim, std::vector<Point> pts) {
  SparseSet set;
  set.dim = dim;
  set.gamma = 0.0;
  for (const auto& p : pts)
    if (static_cast<int>(p.size()) != dim)
      throw InvalidArgument("sparse_set_from_points: dimension mismatch");
  set.points = std::move(pts);
  fill_set_quantities(set);
  return set;
}

GramDiagnostics gram_diagnostics(const SparseSet& y, GreenTable& green) {
  if (green.dim() != y.dim)
    throw InvalidArgument("gram_diagnostics: table dimension does not match the set");
  const auto n = static_cast<Eigen::Index>(y.points.size());
  GramDiagnostics out;

  bool collinear_axis = (y.dim == 3);
  for (Eigen::Index i = 0; i < n && collinear_axis; ++i)
    for (Eigen::Index j = i + 1; j < n && collinear_axis; ++j) {
      const Point diff =
          y.points[static_cast<std::size_t>(i)] - y.points[static_cast<std::size_t>(j)];
      int nonzero = 0;
      for (auto c : diff)
        if (c != 0) ++nonzero;
      collinear_axis = (nonzero <= 1);
    }

  out.g = Matrix::Identity(n, n);
  double err_sum = 0.0;
  if (collinear_axis) {
    out.source = "axis-exact";
    const AxisGreen& axis = AxisGreen::instance();
    out.mu2 = axis.value(0);
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = i + 1; j < n; ++j) {
        const Point diff =
            y.points[static_cast<std::size_t>(i)] - y.points[static_cast<std::size_t>(j)];
        std::int64_t a = 0;
        for (auto c : diff)
          if (c != 0) a = c;
        const double g = axis.value(a) / out.mu2;
        out.g(i, j) = g;
        out.g(j, i) = g;
        err_sum += 1e-14;
      }
  } else {
    out.source = "quadrature";
    out.mu2 = green.mu_squared();
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = i + 1; j < n; ++j) {
        const Point diff =
            y.points[static_cast<std::size_t>(i)] - y.points[static_cast<std::size_t>(j)];
        const GreenEstimate e = green_value_extrap(y.dim, diff, green.grid());
        const double g = e.value / out.mu2;
        out.g(i, j) = g;
        out.g(j, i) = g;
        err_sum += e.error_bar / out.mu2;
      }
  }
  out.error_bar = err_sum;

  for (Eigen::Index i = 0; i < n; ++i) {
    double row = 0.0;
    for (Eigen::Index j = 0; j < n; ++j)
      if (j != i) row += std::abs(out.g(i, j));
    out.delta_schur = std::max(out.delta_schur, row);
  }
  if (n > 0) {
    const EigenSym es = eigen_sym(out.g - Matrix::Identity(n, n), /*with_vectors=*/false);
    for (Eigen::Index i = 0; i < n; ++i)
      out.delta_spec = std::max(out.delta_spec, std::abs(es.values[i]));
  }
  return out;
}

SparseSpectrumReport sparse_spectrum_vs_values(const SparseSet& y,
                                               const std::vector<double>& values,
                                               GreenTable& green) {
  const auto n = y.points.size();
  if (values.size() != n)
    throw InvalidArgument("sparse_spectrum_vs_values: need one value per point");
  for (std::size_t i = 0; i < n; ++i) {
    if (!(values[i] > 0.0))
      throw InvalidArgument("sparse_spectrum_vs_values: values must be positive");
    if (i > 0 && values[i] > values[i - 1])
      throw InvalidArgument("sparse_spectrum_vs_values: values must be non-increasing");
  }
  SparseSpectrumReport out;
  out.diag = gram_diagnostics(y, green);
  const auto ni = static_cast<Eigen::Index>(n);
  Matrix m(ni, ni);
  for (Eigen::Index i = 0; i < ni; ++i)
    for (Eigen::Index j = 0; j < ni; ++j)
      m(i, j) = std::sqrt(values[static_cast<std::size_t>(i)] *
                          values[static_cast<std::size_t>(j)]) *
                out.diag.g(i, j);
  const EigenSym es = eigen_sym(m, /*with_vectors=*/false);

  const double delta = out.diag.delta_spec;
  for (std::size_t j = 0; j < n; ++j) {
    SparseSpectrumRow row;
    row.j = static_cast<int>(j + 1);
    row.p = values[j];
    row.core = es.values[static_cast<Eigen::Index>(n - 1 - j)];  // descending
    row.lambda = out.diag.mu2 * row.core;
    row.ratio_raw = row.lambda / row.p;
    row.ratio_normalized = row.core / row.p;
    const double slack = 1e-12 * row.p;  // eigensolver rounding only
    row.sandwich_ok =
        (row.core >= (1.0 - delta) * row.p - slack) && (row.core <= (1.0 + delta) * row.p + slack);
    out.all_sandwich_ok = out.all_sandwich_ok && row.sandwich_ok;
    out.max_deviation = std::max(out.max_deviation, std::abs(row.ratio_normalized - 1.0));
    out.rows.push_back(row);
  }
  return out;
}

std::vector<double> law_values(const ValueLaw& law, int n) {
  if (n < 1) throw InvalidArgument("law_values: n must be >= 1");
  std::vector<double> p;
  p.reserve(static_cast<std::size_t>(n));
  for (int j = 1; j <= n; ++j) {
    if (law.kind == ValueLaw::Kind::kPower)
      p.push_back(std::pow(static_cast<double>(j), -law.q));
    else
      p.push_back(1.0 / (1.0 + std::log(static_cast<double>(j))));
  }
  return p;
}

std::vector<TrendRow> thm68_experiment(int dim, const std::vector<int>& ns,
                                       const std::vector<double>& gammas,
                                       const std::vector<ValueLaw>& laws, GreenTable& green) {
  std::vector<TrendRow> rows;
  for (int n : ns)
    for (double gamma : gammas)
      for (const ValueLaw& law : laws) {
        const SparseSet set = generate_sparse_set(dim, n, gamma, SparsePattern::kRay);
        const SparseSpectrumReport rep =
            sparse_spectrum_vs_values(set, law_values(law, n), green);
        TrendRow row;
        row.n = n;
        row.gamma = gamma;
        if (law.kind == ValueLaw::Kind::kPower) {
          std::ostringstream name;
          name << "power q=" << law.q;
          row.law = name.str();
        } else {
          row.law = "log";
        }
        row.max_deviation = rep.max_deviation;
        row.delta_spec = rep.diag.delta_spec;
        rows.push_back(row);
      }
  return rows;
}

}  // namespace lab
