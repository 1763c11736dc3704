#pragma once
// Tabular bound reports: every verdict the laboratory emits is backed by a
// CSV row of the quantities that produced it.

#include <string>
#include <vector>

namespace lab {

struct BoundRow {
  std::vector<double> params;
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;
  bool pass = true;
  bool excluded = false;  // informational row, not counted in the verdict
};

struct BoundReport {
  std::string bound;                     // bound name (first CSV column)
  std::vector<std::string> param_names;  // parameter column names
  std::vector<BoundRow> rows;
  double fitted_constant = 0.0;  // empirical constant where no exact one exists
  std::string notes;

  /// PASS iff every non-excluded row passes.
  bool pass() const;

  /// CSV with header "bound,<params...>,lhs,rhs,margin,verdict".
  /// Excluded rows carry verdict SKIP.
  std::string to_csv() const;
};

/// CSV rows "j,lambda,method,resolution" for a spectrum listing.
std::string spectrum_csv(const std::vector<double>& lambdas, const std::string& method,
                         const std::string& resolution);

}  // namespace lab
