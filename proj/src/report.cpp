#include "lab/report.hpp"

#include <sstream>

namespace lab {

bool BoundReport::pass() const {
  for (const auto& row : rows)
    if (!row.excluded && !row.pass) return false;
  return true;
}

std::string BoundReport::to_csv() const {
  std::ostringstream out;
  out.precision(17);
  out << "bound";
  for (const auto& name : param_names) out << "," << name;
  out << ",lhs,rhs,margin,verdict\n";
  for (const auto& row : rows) {
    out << bound;
    for (double p : row.params) out << "," << p;
    out << "," << row.lhs << "," << row.rhs << "," << row.margin << ","
        << (row.excluded ? "SKIP" : (row.pass ? "PASS" : "FAIL")) << "\n";
  }
  return out.str();
}

std::string spectrum_csv(const std::vector<double>& lambdas, const std::string& method,
                         const std::string& resolution) {
  std::ostringstream out;
  out.precision(17);
  out << "j,lambda,method,resolution\n";
  for (std::size_t j = 0; j < lambdas.size(); ++j)
    out << (j + 1) << "," << lambdas[j] << "," << method << "," << resolution << "\n";
  return out.str();
}

}  // namespace lab
