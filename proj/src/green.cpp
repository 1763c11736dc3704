#include "lab/green.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <sstream>

#include "lab/parallel.hpp"

namespace lab {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

void check_green_domain(int dim, const Point& x, int m) {
  if (dim <= 2)
    throw TheoryDomainError("green_value: the Green-function integral diverges for d <= 2");
  if (static_cast<int>(x.size()) != dim) throw InvalidArgument("green_value: dimension mismatch");
  if (m < 8 || m % 2 != 0) throw InvalidArgument("green_value: m must be even and >= 8");
}

struct QuadGrid {
  std::vector<double> w;                    // 2 - 2 cos z_k
  std::vector<std::vector<double>> cosx;    // cos(x_j z_k) per axis
  std::vector<std::vector<double>> sinx;    // sin(x_j z_k) per axis (self-check only)
};

QuadGrid make_grid(int dim, const Point& x, int m, bool with_sin) {
  QuadGrid g;
  g.w.resize(static_cast<std::size_t>(m));
  g.cosx.assign(static_cast<std::size_t>(dim), std::vector<double>(static_cast<std::size_t>(m)));
  if (with_sin)
    g.sinx.assign(static_cast<std::size_t>(dim), std::vector<double>(static_cast<std::size_t>(m)));
  for (int k = 0; k < m; ++k) {
    const double z = kTwoPi * (k + 0.5) / m - kPi;
    g.w[static_cast<std::size_t>(k)] = 2.0 - 2.0 * std::cos(z);
    for (int j = 0; j < dim; ++j) {
      const double xz = static_cast<double>(x[static_cast<std::size_t>(j)]) * z;
      g.cosx[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)] = std::cos(xz);
      if (with_sin)
        g.sinx[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)] = std::sin(xz);
    }
  }
  return g;
}

// Recursive accumulation over axes `axis`..dim-1 given the partial omega sum
// and partial cosine product of the outer axes. The innermost level runs the
// division loop. Only the all-cosine term survives the symmetric grid sums,
// so the sine components are dropped a priori (green_imag_magnitude checks
// the cancellation explicitly).
double accumulate_axes(const QuadGrid& g, int dim, int axis, double wpart, double cpart) {
  const int m = static_cast<int>(g.w.size());
  double total = 0.0;
  if (axis == dim - 1) {
    const double* __restrict w = g.w.data();
    const double* __restrict c = g.cosx[static_cast<std::size_t>(axis)].data();
    for (int k = 0; k < m; ++k) total += c[k] / (wpart + w[k]);
    return cpart * total;
  }
  for (int k = 0; k < m; ++k) {
    const double ck = g.cosx[static_cast<std::size_t>(axis)][static_cast<std::size_t>(k)];
    total += accumulate_axes(g, dim, axis + 1, wpart + g.w[static_cast<std::size_t>(k)],
                             cpart * ck);
  }
  return total;
}

}  // namespace

double green_value(int dim, const Point& x, int m, bool parallel) {
  check_green_domain(dim, x, m);
  const QuadGrid g = make_grid(dim, x, m, /*with_sin=*/false);
  // Fixed slab decomposition over the first axis: deterministic for any
  // thread count.
  const double total = slab_sum(
      m, m,
      [&](std::int64_t b, std::int64_t e) {
        double s = 0.0;
        for (std::int64_t k = b; k < e; ++k)
          s += accumulate_axes(g, dim, 1, g.w[static_cast<std::size_t>(k)],
                               g.cosx[0][static_cast<std::size_t>(k)]);
        return s;
      },
      parallel);
  return total / std::pow(static_cast<double>(m), dim);
}

double green_value_serial(int dim, const Point& x, int m) {
  check_green_domain(dim, x, m);
  const QuadGrid g = make_grid(dim, x, m, /*with_sin=*/false);
  double total = 0.0;
  for (int k = 0; k < m; ++k)
    total += accumulate_axes(g, dim, 1, g.w[static_cast<std::size_t>(k)],
                             g.cosx[0][static_cast<std::size_t>(k)]);
  return total / std::pow(static_cast<double>(m), dim);
}

double green_imag_magnitude(int dim, const Point& x, int m) {
  check_green_domain(dim, x, m);
  if (std::pow(static_cast<double>(m), dim) > 2e8)
    throw InvalidArgument("green_imag_magnitude: grid too large for the complex self-check");
  const QuadGrid g = make_grid(dim, x, m, /*with_sin=*/true);
  std::complex<double> total = 0.0;
  std::vector<int> idx(static_cast<std::size_t>(dim), 0);
  while (true) {
    double wsum = 0.0;
    std::complex<double> phase = 1.0;
    for (int j = 0; j < dim; ++j) {
      const auto k = static_cast<std::size_t>(idx[static_cast<std::size_t>(j)]);
      wsum += g.w[k];
      phase *= std::complex<double>(g.cosx[static_cast<std::size_t>(j)][k],
                                    g.sinx[static_cast<std::size_t>(j)][k]);
    }
    total += phase / wsum;
    int j = dim - 1;
    while (j >= 0 && ++idx[static_cast<std::size_t>(j)] == m) {
      idx[static_cast<std::size_t>(j)] = 0;
      --j;
    }
    if (j < 0) break;
  }
  return std::abs(total.imag()) / std::pow(static_cast<double>(m), dim);
}

GreenEstimate green_value_extrap(int dim, const Point& x, int m, bool parallel) {
  const double coarse = green_value(dim, x, m, parallel);
  const double fine = green_value(dim, x, 2 * m, parallel);
  const double denom = std::pow(2.0, dim - 2) - 1.0;
  GreenEstimate e;
  e.value = fine + (fine - coarse) / denom;
  e.error_bar = std::abs(fine - coarse);
  return e;
}

int default_grid(int dim) {
  switch (dim) {
    case 3: return 128;
    case 4: return 48;
    default: return 32;
  }
}

double mu(int dim, int m) {
  if (dim <= 2) throw TheoryDomainError("mu: requires d >= 3");
  if (m == 0) m = default_grid(dim);
  const Point origin(static_cast<std::size_t>(dim), 0);
  return std::sqrt(green_value_extrap(dim, origin, m).value);
}

double harmonicity_residual(int dim, const Point& x, int m) {
  if (dim <= 2) throw TheoryDomainError("harmonicity_residual: requires d >= 3");
  auto stencil = [&](int grid) {
    double r = 2.0 * dim * green_value(dim, x, grid);
    for (int j = 0; j < dim; ++j) {
      r -= green_value(dim, step(x, j, +1), grid);
      r -= green_value(dim, step(x, j, -1), grid);
    }
    return r;
  };
  const double denom = std::pow(2.0, dim - 2) - 1.0;
  const double coarse = stencil(m);
  const double fine = stencil(2 * m);
  const double extrap = fine + (fine - coarse) / denom;
  const bool at_origin = norm2(x) == 0;
  return extrap - (at_origin ? 1.0 : 0.0);
}

GreenTable::GreenTable(int dim, int m) : dim_(dim), m_(m) {
  if (dim <= 2) throw TheoryDomainError("GreenTable: requires d >= 3");
  if (m < 8 || m % 2 != 0) throw InvalidArgument("GreenTable: m must be even and >= 8");
}

double GreenTable::value(const Point& x) {
  if (static_cast<int>(x.size()) != dim_) throw InvalidArgument("GreenTable: dimension mismatch");
  const Point key = canonical_rep(x);
  auto it = cache_.find(key);
  if (it != cache_.end()) return it->second;
  const double v = green_value_extrap(dim_, key, m_).value;
  const double m2 = mu_squared();
  if (!(v > 0.0) || v > m2 * (1.0 + 1e-9))
    throw std::runtime_error("GreenTable: computed value violates 0 < h0(x) <= mu^2");
  cache_.emplace(key, v);
  return v;
}

double GreenTable::mu_squared() {
  const Point origin(static_cast<std::size_t>(dim_), 0);
  auto it = cache_.find(origin);
  if (it != cache_.end()) return it->second;
  const double v = green_value_extrap(dim_, origin, m_).value;
  cache_.emplace(origin, v);
  return v;
}

std::string GreenTable::to_csv() const {
  std::ostringstream out;
  for (int j = 1; j <= dim_; ++j) out << "x" << j << ",";
  out << "value,m\n";
  out.precision(17);
  for (const auto& [key, v] : cache_) {
    for (auto c : key) out << c << ",";
    out << v << "," << m_ << "\n";
  }
  return out.str();
}

std::vector<DecayRow> decay_report(int dim, const std::vector<std::int64_t>& radii, int m) {
  if (dim <= 2) throw TheoryDomainError("decay_report: requires d >= 3");
  std::vector<DecayRow> rows;
  for (auto r : radii) {
    Point x(static_cast<std::size_t>(dim), 0);
    x[0] = r;
    const double v = green_value_extrap(dim, x, m).value;
    rows.push_back({r, v, v * std::pow(static_cast<double>(r), dim - 2)});
  }
  return rows;
}

// ---------------------------------------------------------------------------
// On-axis d = 3 evaluator.
//
// With w = w(z) = 2 - 2 cos z, the two inner integrals evaluate to
//   gt(z) = (2 / (pi (4 + w))) K(k),  k^2 = 16 / (4 + w)^2 ... expressed via
// the complement v = 1 - k^2 = w (w + 8) / (4 + w)^2 in [0, 3/4]. Using
//   K = -(1/2) ln(v) S1(v) + S2(v),
//   S1 = sum a_n v^n,           a_n = ((2n)! / (2^n n!)^2)^2,
//   S2 = sum a_n d_n v^n,       d_0 = ln 4, d_n = d_{n-1} - 1/(n(2n-1)),
// and ln v = ln w + ln(w+8) - 2 ln(4+w), the integrand splits as
//   gt(z) = A(z) ln(w(z)) + B(z)
// with A, B analytic on the torus, so their cosine coefficients decay
// spectrally, while ln(4 sin^2(z/2)) has the exact Fourier series
// -sum_{n != 0} e^{inz} / |n|. Hence
//   h0(a,0,0) = Bhat_a + sum_k Ahat_k * (-1/|a-k|),
// a convolution of a finitely supported spectral sequence with 1/|n|.
// ---------------------------------------------------------------------------

namespace {

constexpr int kSeriesTerms = 160;

struct SeriesCoeffs {
  double a[kSeriesTerms];
  double d[kSeriesTerms];
  SeriesCoeffs() {
    a[0] = 1.0;
    d[0] = std::log(4.0);
    for (int n = 1; n < kSeriesTerms; ++n) {
      const double r = (2.0 * n - 1.0) / (2.0 * n);
      a[n] = a[n - 1] * r * r;
      d[n] = d[n - 1] - 1.0 / (static_cast<double>(n) * (2.0 * n - 1.0));
    }
  }
};

const SeriesCoeffs& series() {
  static const SeriesCoeffs c;
  return c;
}

// A(z) and B(z) of the splitting gt = A ln w + B.
void eval_ab(double z, double& a_out, double& b_out) {
  const SeriesCoeffs& c = series();
  const double w = 2.0 - 2.0 * std::cos(z);
  const double v = w * (w + 8.0) / ((4.0 + w) * (4.0 + w));
  double s1 = 0.0, s2 = 0.0;
  for (int n = kSeriesTerms - 1; n >= 0; --n) {
    s1 = s1 * v + c.a[n];
    s2 = s2 * v + c.a[n] * c.d[n];
  }
  const double denom = kPi * (4.0 + w);
  a_out = -s1 / denom;
  b_out = a_out * (std::log(w + 8.0) - 2.0 * std::log(4.0 + w)) + 2.0 * s2 / denom;
}

}  // namespace

AxisGreen::AxisGreen(int kmax, int grid) : kmax_(kmax) {
  if (kmax < 8 || grid < 4 * kmax) throw InvalidArgument("AxisGreen: bad resolution");
  std::vector<double> av(static_cast<std::size_t>(grid));
  std::vector<double> bv(static_cast<std::size_t>(grid));
  std::vector<double> zs(static_cast<std::size_t>(grid));
  for (int i = 0; i < grid; ++i) {
    zs[static_cast<std::size_t>(i)] = kTwoPi * (i + 0.5) / grid - kPi;
    eval_ab(zs[static_cast<std::size_t>(i)], av[static_cast<std::size_t>(i)],
            bv[static_cast<std::size_t>(i)]);
  }
  ak_.assign(static_cast<std::size_t>(kmax + 1), 0.0);
  bk_.assign(static_cast<std::size_t>(kmax + 1), 0.0);
  for (int k = 0; k <= kmax; ++k) {
    double sa = 0.0, sb = 0.0;
    for (int i = 0; i < grid; ++i) {
      const double c = std::cos(k * zs[static_cast<std::size_t>(i)]);
      sa += c * av[static_cast<std::size_t>(i)];
      sb += c * bv[static_cast<std::size_t>(i)];
    }
    // Signed-frequency convention: coefficient value shared by +k and -k.
    ak_[static_cast<std::size_t>(k)] = sa / grid;
    bk_[static_cast<std::size_t>(k)] = sb / grid;
  }
}

double AxisGreen::value(std::int64_t a) const {
  a = std::llabs(a);
  double total = (a <= kmax_) ? bk_[static_cast<std::size_t>(a)] : 0.0;
  for (int k = 0; k <= kmax_; ++k) {
    const double akv = ak_[static_cast<std::size_t>(k)];
    // + frequency k
    std::int64_t n = a - k;
    if (n != 0) total += akv * (-1.0 / static_cast<double>(std::llabs(n)));
    if (k != 0) {
      // - frequency k
      n = a + k;
      if (n != 0) total += akv * (-1.0 / static_cast<double>(std::llabs(n)));
    }
  }
  return total;
}

const AxisGreen& AxisGreen::instance() {
  static const AxisGreen g;
  return g;
}

}  // namespace lab
