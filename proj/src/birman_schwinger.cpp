#include "lab/birman_schwinger.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace lab {

namespace {

void push_positive_descending(const Vector& ascending, std::size_t max_count,
                              std::vector<double>& out) {
  const auto n = static_cast<std::size_t>(ascending.size());
  const std::size_t take = std::min(max_count, n);
  for (std::size_t i = 0; i < take; ++i) {
    const double lam = ascending[static_cast<Eigen::Index>(n - 1 - i)];
    if (lam > 0.0) out.push_back(lam);
  }
}

}  // namespace

BSSpectrum bs_spectrum_gram(const Potential& v, GreenTable& green) {
  if (green.dim() != v.dim())
    throw InvalidArgument("bs_spectrum_gram: table dimension does not match the potential");
  BSSpectrum out;
  out.method = "gram-reduction";
  out.resolution = "m=" + std::to_string(green.grid());
  const auto& pts = v.support();
  const auto& vals = v.values();
  const auto k = static_cast<Eigen::Index>(pts.size());
  if (k == 0) return out;
  Matrix kernel(k, k);
  for (Eigen::Index i = 0; i < k; ++i)
    for (Eigen::Index j = i; j < k; ++j) {
      const double g = green.value(pts[static_cast<std::size_t>(i)] -
                                   pts[static_cast<std::size_t>(j)]);
      const double kij =
          std::sqrt(vals[static_cast<std::size_t>(i)] * vals[static_cast<std::size_t>(j)]) * g;
      kernel(i, j) = kij;
      kernel(j, i) = kij;
    }
  const EigenSym es = eigen_sym(kernel, /*with_vectors=*/false);
  push_positive_descending(es.values, static_cast<std::size_t>(k), out.eigenvalues);
  return out;
}

BSSpectrum bs_spectrum_box(const Potential& v, int radius, BoxRoute route) {
  Box box(v.dim(), radius);
  BSSpectrum out;
  out.method = "box-truncation";
  out.resolution = "R=" + std::to_string(radius);
  const auto& pts = v.support();
  const auto& vals = v.values();
  const std::size_t k = pts.size();
  if (k == 0) return out;
  if (route == BoxRoute::kAuto)
    route = (box.site_count() <= 1000) ? BoxRoute::kDensePencil : BoxRoute::kSchur;

  if (route == BoxRoute::kDensePencil) {
    const Matrix l = assemble_laplacian(v.dim(), radius);
    const Vector w = potential_on_box(v, box);  // throws nothing; support check below
    for (const Point& p : pts)
      if (!box.contains(p))
        throw SupportOverflow("bs_spectrum_box: support outside the box");
    Matrix a = Matrix::Zero(l.rows(), l.cols());
    a.diagonal() = w;
    const EigenGen ge = eigen_gen(a, l, /*with_vectors=*/false);
    push_positive_descending(ge.values, k, out.eigenvalues);
    return out;
  }

  BoxSolver solver(v.dim(), radius);
  for (const Point& p : pts)
    if (!box.contains(p)) throw SupportOverflow("bs_spectrum_box: support outside the box");
  const auto ki = static_cast<Eigen::Index>(k);
  Matrix s(ki, ki);
  for (Eigen::Index j = 0; j < ki; ++j) {
    const Vector col = solver.inverse_column(pts[static_cast<std::size_t>(j)], pts);
    for (Eigen::Index i = 0; i < ki; ++i)
      s(i, j) = std::sqrt(vals[static_cast<std::size_t>(i)] * vals[static_cast<std::size_t>(j)]) *
                col[i];
  }
  const Matrix sym = 0.5 * (s + s.transpose());
  const EigenSym es = eigen_sym(sym, /*with_vectors=*/false);
  push_positive_descending(es.values, k, out.eigenvalues);
  return out;
}

BSSpectrum bs_spectrum_extrapolated(const Potential& v, const std::vector<int>& radii) {
  if (radii.size() != 3 || !(radii[0] < radii[1] && radii[1] < radii[2]))
    throw InvalidArgument("bs_spectrum_extrapolated: need three increasing radii");
  std::vector<BSSpectrum> specs;
  specs.reserve(3);
  for (int r : radii) specs.push_back(bs_spectrum_box(v, r, BoxRoute::kAuto));
  std::size_t k = specs[0].eigenvalues.size();
  for (const auto& s : specs) k = std::min(k, s.eigenvalues.size());

  Eigen::Matrix3d vand;
  for (int i = 0; i < 3; ++i) {
    const double t = 1.0 / static_cast<double>(radii[static_cast<std::size_t>(i)]);
    vand(i, 0) = 1.0;
    vand(i, 1) = t;
    vand(i, 2) = t * t;
  }
  const Eigen::Matrix3d inv = vand.inverse();

  BSSpectrum out;
  out.method = "box-truncation";
  out.resolution = "extrap R=" + std::to_string(radii[0]) + "," + std::to_string(radii[1]) + "," +
                   std::to_string(radii[2]);
  out.eigenvalues.reserve(k);
  for (std::size_t j = 0; j < k; ++j) {
    Eigen::Vector3d y(specs[0].eigenvalues[j], specs[1].eigenvalues[j], specs[2].eigenvalues[j]);
    const Eigen::Vector3d coef = inv * y;
    out.eigenvalues.push_back(coef[0]);
  }
  return out;
}

std::int64_t n_plus(const BSSpectrum& spec, double s) {
  if (!(s > 0.0)) throw InvalidArgument("n_plus: threshold must be positive");
  return count_greater(spec.eigenvalues, s);
}

DualityPoint duality_point(const Potential& v, double alpha, const BSSpectrum& gram,
                           const StabilizeOptions& opts) {
  if (!(alpha > 0.0)) throw InvalidArgument("duality_point: coupling must be positive");
  DualityPoint out;
  out.alpha = alpha;
  const double s = 1.0 / alpha;
  out.count_gram = n_plus(gram, s);
  out.margin = std::numeric_limits<double>::infinity();
  for (double lam : gram.eigenvalues) {
    out.margin = std::min(out.margin, std::abs(lam - s));
    if (std::abs(s - lam) < 1e-6 * lam) out.near_threshold = true;
  }
  const StabilizedCount sc = stabilized_count(v, alpha, opts);
  out.count_operator = sc.count;
  out.stabilized = sc.stabilized;
  out.match = (out.count_operator == out.count_gram);
  return out;
}

BoundReport duality_check(const Potential& v, const std::vector<double>& alphas,
                          GreenTable& green, const StabilizeOptions& opts) {
  BoundReport report;
  report.bound = "duality";
  report.param_names = {"alpha"};
  report.notes =
      "lhs = radius-stabilized negative count of H; rhs = Gram count n_+(1/alpha); "
      "margin = spectral gap min_j |lambda_j - 1/alpha|; near-threshold rows SKIP";
  const BSSpectrum gram = bs_spectrum_gram(v, green);
  for (double alpha : alphas) {
    const DualityPoint p = duality_point(v, alpha, gram, opts);
    BoundRow row;
    row.params = {alpha};
    row.lhs = static_cast<double>(p.count_operator);
    row.rhs = static_cast<double>(p.count_gram);
    row.margin = p.margin;
    row.excluded = p.near_threshold;
    row.pass = p.match && p.stabilized;
    report.rows.push_back(row);
  }
  return report;
}

std::vector<double> midpoint_alphas(const BSSpectrum& gram, int count) {
  if (count <= 0) throw InvalidArgument("midpoint_alphas: count must be positive");
  std::vector<double> thresholds;
  for (double lam : gram.eigenvalues)
    if (lam > 0.0) thresholds.push_back(1.0 / lam);
  std::sort(thresholds.begin(), thresholds.end());
  std::vector<double> th;
  for (double t : thresholds)
    if (th.empty() || t > th.back() * (1.0 + 1e-9)) th.push_back(t);

  std::vector<double> alphas;
  if (th.empty()) {
    for (int i = 0; i < count; ++i) alphas.push_back(std::pow(2.0, i));
    return alphas;
  }
  const int gaps = static_cast<int>(th.size()) + 1;
  std::vector<int> quota(static_cast<std::size_t>(gaps), count / gaps);
  for (int i = 0; i < count % gaps; ++i) ++quota[static_cast<std::size_t>(i % gaps)];
  for (int g = 0; g < gaps; ++g) {
    for (int i = 1; i <= quota[static_cast<std::size_t>(g)]; ++i) {
      double a = 0.0;
      if (g == 0) {
        a = th.front() / std::pow(2.0, i);
      } else if (g == gaps - 1) {
        a = th.back() * std::pow(2.0, i);
      } else {
        const double lo = th[static_cast<std::size_t>(g - 1)];
        const double hi = th[static_cast<std::size_t>(g)];
        a = lo * std::pow(hi / lo,
                          static_cast<double>(i) /
                              static_cast<double>(quota[static_cast<std::size_t>(g)] + 1));
      }
      alphas.push_back(a);
    }
  }
  std::sort(alphas.begin(), alphas.end());
  return alphas;
}

}  // namespace lab
