#include "lab/estimates.hpp"

#include <algorithm>
#include <cmath>

#include "lab/operator.hpp"

namespace lab {

namespace {

// Both norm routes share this candidate so that their suprema are computed
// from bit-identical terms.
double candidate(double value, std::int64_t count, double q) {
  return value * std::pow(static_cast<double>(count), 1.0 / q);
}

}  // namespace

WeakNormReport weak_norm(const std::vector<double>& values, double q) {
  if (!(q > 0.0)) throw InvalidArgument("weak_norm: q must be positive");
  for (double v : values)
    if (!(v >= 0.0)) throw InvalidArgument("weak_norm: values must be nonnegative");
  std::vector<double> sorted = values;
  std::erase_if(sorted, [](double v) { return v == 0.0; });
  std::sort(sorted.begin(), sorted.end(), std::greater<double>());

  WeakNormReport out;
  out.q = q;
  const auto n = static_cast<std::int64_t>(sorted.size());
  if (n == 0) return out;

  // Rearrangement route: sup over every j of j^{1/q} V_j*.
  for (std::int64_t j = 1; j <= n; ++j)
    out.quasi_norm =
        std::max(out.quasi_norm, candidate(sorted[static_cast<std::size_t>(j - 1)], j, q));

  // Staircase route: sup over distinct values w of w * (#{V >= w})^{1/q}.
  // The count #{V >= w} is the last index of w's tie block.
  for (std::int64_t j = 1; j <= n; ++j) {
    const double w = sorted[static_cast<std::size_t>(j - 1)];
    if (j < n && sorted[static_cast<std::size_t>(j)] == w) continue;  // not a block end
    out.breakpoints.emplace_back(w, j);
    out.staircase_norm = std::max(out.staircase_norm, candidate(w, j, q));
  }

  out.in_weak_class = true;  // finite sample: the norm is finite
  if (n >= 4) {
    // Least-squares slope of log V_j* against log j over the upper half.
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    std::int64_t cnt = 0;
    for (std::int64_t j = n / 2; j <= n; ++j) {
      const double x = std::log(static_cast<double>(j));
      const double y = std::log(sorted[static_cast<std::size_t>(j - 1)]);
      sx += x;
      sy += y;
      sxx += x * x;
      sxy += x * y;
      ++cnt;
    }
    const double denom = cnt * sxx - sx * sx;
    if (denom > 0.0) out.tail_slope = (cnt * sxy - sx * sy) / denom;
  }
  out.small_class_evidence =
      candidate(sorted[static_cast<std::size_t>(n - 1)], n, q) < 0.5 * out.quasi_norm;
  return out;
}

WeakNormReport weak_norm(const Potential& v, double q) { return weak_norm(v.sorted_values(), q); }

BoundReport clc_bound_check(const Potential& v, const std::vector<double>& alphas,
                            GreenTable& green) {
  const int d = v.dim();
  if (d < 3) throw TheoryDomainError("clc_bound_check: requires d >= 3");
  BoundReport report;
  report.bound = "clc";
  report.param_names = {"alpha"};
  report.notes =
      "lhs = N_-(alpha V) via the Gram counting duality; rhs = alpha^{d/2} sum V^{d/2}; "
      "margin = lhs/rhs (the constant is empirical, rows are informational)";
  const double sum_v = v.lp_sum(0.5 * d);
  const BSSpectrum gram = bs_spectrum_gram(v, green);
  for (double alpha : alphas) {
    if (!(alpha > 0.0)) throw InvalidArgument("clc_bound_check: couplings must be positive");
    BoundRow row;
    row.params = {alpha};
    row.lhs = static_cast<double>(n_plus(gram, 1.0 / alpha));
    row.rhs = std::pow(alpha, 0.5 * d) * sum_v;
    row.margin = (row.rhs > 0.0) ? row.lhs / row.rhs : 0.0;
    row.pass = true;
    report.fitted_constant = std::max(report.fitted_constant, row.margin);
    report.rows.push_back(row);
  }
  return report;
}

BoundReport thm32_lower_check(const Potential& v, const std::vector<double>& s_grid,
                              GreenTable& green) {
  const int d = v.dim();
  BoundReport report;
  report.bound = "thm32";
  report.param_names = {"s"};
  report.notes =
      "constant-free: 2^d n_+(s, B_V) >= nu(2sd, V), verified in integer arithmetic";
  const BSSpectrum gram = bs_spectrum_gram(v, green);
  const std::int64_t two_d = std::int64_t{1} << d;
  for (double s : s_grid) {
    if (!(s > 0.0)) throw InvalidArgument("thm32_lower_check: s must be positive");
    const std::int64_t nu = v.distribution_function(2.0 * s * d);
    const std::int64_t np = n_plus(gram, s);
    BoundRow row;
    row.params = {s};
    row.lhs = static_cast<double>(nu) / static_cast<double>(two_d);
    row.rhs = static_cast<double>(np);
    row.margin = row.rhs - row.lhs;
    row.pass = (np * two_d >= nu);
    report.rows.push_back(row);
  }
  return report;
}

Thm31Report thm31_upper_check(const Potential& v, double q, GreenTable& green) {
  const int d = v.dim();
  if (!(q > 0.0) || !(q < 0.5 * d))
    throw TheoryDomainError("thm31_upper_check: out of regime, requires 0 < q < d/2");
  Thm31Report out;
  out.q = q;
  const BSSpectrum gram = bs_spectrum_gram(v, green);
  for (std::size_t j = 0; j < gram.eigenvalues.size(); ++j)
    out.sigma_norm = std::max(
        out.sigma_norm, candidate(gram.eigenvalues[j], static_cast<std::int64_t>(j + 1), q));
  out.weak_q_norm = weak_norm(v, q).quasi_norm;
  out.ratio = (out.weak_q_norm > 0.0) ? out.sigma_norm / out.weak_q_norm : 0.0;
  return out;
}

double cor53_functional(const Potential& v, double q) {
  if (!(q > 0.0)) throw InvalidArgument("cor53_functional: q must be positive");
  const double half_d = 0.5 * v.dim();
  std::vector<std::pair<double, double>> terms;  // (breakpoint b, summand g)
  terms.reserve(v.support().size());
  for (std::size_t i = 0; i < v.support().size(); ++i) {
    const double w = static_cast<double>(norm2(v.support()[i])) + 1.0;
    terms.emplace_back(w * v.values()[i], std::pow(w, -half_d));
  }
  std::sort(terms.begin(), terms.end(),
            [](const auto& a, const auto& b) { return a.first > b.first; });
  double best = 0.0;
  double cum = 0.0;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    cum += terms[i].second;
    // The sup over t is attained just below a breakpoint value; at t = b-0
    // the sum runs over all entries with (|x|^2+1)V(x) >= b: a tie block end.
    if (i + 1 < terms.size() && terms[i + 1].first == terms[i].first) continue;
    best = std::max(best, std::pow(terms[i].first, q) * cum);
  }
  return best;
}

namespace {

BoundReport cor53_report_shell(const Potential& v, double q) {
  const int d = v.dim();
  if (d < 3) throw TheoryDomainError("cor53_bound: requires d >= 3");
  if (!(2.0 * q > d))
    throw TheoryDomainError("cor53_bound: out of regime, requires 2q > d");
  BoundReport report;
  report.bound = "cor53";
  report.param_names = {"alpha"};
  return report;
}

}  // namespace

BoundReport cor53_bound(const Potential& v, double q, const std::vector<double>& alphas,
                        GreenTable& green) {
  BoundReport report = cor53_report_shell(v, q);
  report.notes =
      "lhs = N_-(alpha V) via the Gram counting duality; rhs = alpha^q * breakpoint functional; "
      "margin = lhs/rhs";
  const double functional = cor53_functional(v, q);
  const BSSpectrum gram = bs_spectrum_gram(v, green);
  for (double alpha : alphas) {
    if (!(alpha > 0.0)) throw InvalidArgument("cor53_bound: couplings must be positive");
    BoundRow row;
    row.params = {alpha};
    row.lhs = static_cast<double>(n_plus(gram, 1.0 / alpha));
    row.rhs = std::pow(alpha, q) * functional;
    row.margin = (row.rhs > 0.0) ? row.lhs / row.rhs : 0.0;
    row.pass = true;
    report.fitted_constant = std::max(report.fitted_constant, row.margin);
    report.rows.push_back(row);
  }
  return report;
}

BoundReport cor53_bound_box(const Potential& v, double q, const std::vector<double>& alphas,
                            int radius) {
  BoundReport report = cor53_report_shell(v, q);
  report.notes =
      "lhs = negative count of the box-truncated operator (V restricted to the box) at R=" +
      std::to_string(radius) +
      ": a lower approximation of N_-; rhs = alpha^q * breakpoint functional of the full V";
  const double functional = cor53_functional(v, q);
  const Potential vbox = truncate_to_box(v, radius);
  for (double alpha : alphas) {
    if (!(alpha > 0.0)) throw InvalidArgument("cor53_bound_box: couplings must be positive");
    BoundRow row;
    row.params = {alpha};
    row.lhs = static_cast<double>(count_negative(vbox, alpha, radius));
    row.rhs = std::pow(alpha, q) * functional;
    row.margin = (row.rhs > 0.0) ? row.lhs / row.rhs : 0.0;
    row.pass = true;
    report.fitted_constant = std::max(report.fitted_constant, row.margin);
    report.rows.push_back(row);
  }
  return report;
}

SigmaFunctionals sigma_functionals(const BSSpectrum& spec, double q) {
  if (!(q > 0.0)) throw InvalidArgument("sigma_functionals: q must be positive");
  if (spec.eigenvalues.empty())
    throw InvalidArgument("sigma_functionals: spectrum must be non-empty");
  SigmaFunctionals out;
  out.q = q;
  const std::vector<double>& lam = spec.eigenvalues;  // non-increasing
  const double smallest = lam.back();
  const double window_top = 10.0 * smallest;  // smallest available decade of s
  bool seen = false;
  for (std::size_t j = 0; j < lam.size(); ++j) {
    if (j + 1 < lam.size() && lam[j + 1] == lam[j]) continue;  // tie block end only
    const double s = lam[j];  // breakpoint: just below s the count is j+1
    if (s > window_top) continue;
    const double value = std::pow(s, q) * static_cast<double>(j + 1);
    if (!seen) {
      out.lower = out.upper = value;
      seen = true;
    } else {
      out.lower = std::min(out.lower, value);
      out.upper = std::max(out.upper, value);
    }
  }
  return out;
}

}  // namespace lab
