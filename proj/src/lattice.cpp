#include "lab/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace lab {

std::int64_t norm2(const Point& x) {
  std::int64_t s = 0;
  for (auto c : x) s += c * c;
  return s;
}

double euclid_dist(const Point& a, const Point& b) {
  if (a.size() != b.size()) throw InvalidArgument("euclid_dist: dimension mismatch");
  std::int64_t s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const std::int64_t d = a[i] - b[i];
    s += d * d;
  }
  return std::sqrt(static_cast<double>(s));
}

Point operator+(const Point& a, const Point& b) {
  if (a.size() != b.size()) throw InvalidArgument("point sum: dimension mismatch");
  Point r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

Point operator-(const Point& a, const Point& b) {
  if (a.size() != b.size()) throw InvalidArgument("point difference: dimension mismatch");
  Point r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

Point step(const Point& x, int j, int dir) {
  Point r = x;
  r.at(static_cast<std::size_t>(j)) += (dir >= 0 ? 1 : -1);
  return r;
}

Point canonical_rep(const Point& x) {
  Point r(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) r[i] = std::llabs(x[i]);
  std::sort(r.begin(), r.end(), std::greater<std::int64_t>());
  return r;
}

Box::Box(int dim, int radius) : dim_(dim), radius_(radius) {
  if (dim < 1) throw InvalidArgument("Box: dimension must be >= 1");
  if (radius < 0) throw InvalidArgument("Box: radius must be >= 0");
  side_ = 2 * radius + 1;
  site_count_ = 1;
  for (int j = 0; j < dim; ++j) {
    site_count_ *= side_;
    if (site_count_ > (std::int64_t{1} << 40))
      throw MemoryBudgetExceeded("Box: site count too large",
                                 static_cast<std::uint64_t>(site_count_) * 8);
  }
}

bool Box::contains(const Point& x) const {
  if (static_cast<int>(x.size()) != dim_) throw InvalidArgument("Box::contains: dimension mismatch");
  for (auto c : x)
    if (c < -radius_ || c > radius_) return false;
  return true;
}

std::int64_t Box::index_of(const Point& x) const {
  if (!contains(x)) throw InvalidArgument("Box::index_of: point outside box");
  std::int64_t idx = 0;
  for (int j = 0; j < dim_; ++j) idx = idx * side_ + (x[static_cast<std::size_t>(j)] + radius_);
  return idx;
}

Point Box::point_at(std::int64_t idx) const {
  if (idx < 0 || idx >= site_count_) throw InvalidArgument("Box::point_at: index out of range");
  Point x(static_cast<std::size_t>(dim_));
  for (int j = dim_ - 1; j >= 0; --j) {
    x[static_cast<std::size_t>(j)] = static_cast<std::int64_t>(idx % side_) - radius_;
    idx /= side_;
  }
  return x;
}

std::vector<Point> Box::enumerate() const {
  std::vector<Point> pts;
  pts.reserve(static_cast<std::size_t>(site_count_));
  for (std::int64_t i = 0; i < site_count_; ++i) pts.push_back(point_at(i));
  return pts;
}

Potential::Potential(int dim) : dim_(dim) {
  if (dim < 1) throw InvalidArgument("Potential: dimension must be >= 1");
}

void Potential::set(const Point& x, double v) {
  if (static_cast<int>(x.size()) != dim_) throw InvalidArgument("Potential::set: dimension mismatch");
  if (!(v > 0.0)) {
    if (v == 0.0) return;  // zero means absence of an entry
    throw InvalidArgument("Potential::set: values must be nonnegative");
  }
  auto it = index_.find(x);
  if (it != index_.end()) {
    values_[it->second] = v;
    return;
  }
  // Keep the containers lexicographically sorted for deterministic layouts.
  const auto pos = index_.emplace(x, 0).first;
  const std::size_t insert_at = static_cast<std::size_t>(std::distance(index_.begin(), pos));
  points_.insert(points_.begin() + static_cast<std::ptrdiff_t>(insert_at), x);
  values_.insert(values_.begin() + static_cast<std::ptrdiff_t>(insert_at), v);
  std::size_t k = 0;
  for (auto& kv : index_) kv.second = k++;
}

Potential Potential::from_entries(int dim, std::vector<std::pair<Point, double>> entries) {
  Potential p(dim);
  std::erase_if(entries, [](const auto& e) { return e.second == 0.0; });
  for (const auto& e : entries) {
    if (static_cast<int>(e.first.size()) != dim)
      throw InvalidArgument("Potential::from_entries: entry dimension mismatch");
    if (!(e.second > 0.0)) throw InvalidArgument("Potential::from_entries: values must be nonnegative");
  }
  std::sort(entries.begin(), entries.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  for (std::size_t i = 1; i < entries.size(); ++i)
    if (entries[i].first == entries[i - 1].first)
      throw InvalidArgument("Potential::from_entries: duplicate point");
  p.points_.reserve(entries.size());
  p.values_.reserve(entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) {
    p.points_.push_back(std::move(entries[i].first));
    p.values_.push_back(entries[i].second);
    p.index_.emplace(p.points_.back(), i);
  }
  return p;
}

double Potential::at(const Point& x) const {
  auto it = index_.find(x);
  return it == index_.end() ? 0.0 : values_[it->second];
}

std::int64_t Potential::support_radius() const {
  std::int64_t r = 0;
  for (const auto& p : points_)
    for (auto c : p) r = std::max(r, std::llabs(c));
  return r;
}

std::vector<double> Potential::sorted_values() const {
  std::vector<double> v = values_;
  std::sort(v.begin(), v.end(), std::greater<double>());
  return v;
}

std::int64_t Potential::distribution_function(double s) const {
  if (!(s > 0.0)) throw InvalidArgument("distribution_function: s must be > 0");
  std::int64_t n = 0;
  for (double v : values_)
    if (v > s) ++n;
  return n;
}

double Potential::lp_sum(double p) const {
  double s = 0.0;
  for (double v : values_) s += std::pow(v, p);
  return s;
}

double Potential::max_value() const {
  double m = 0.0;
  for (double v : values_) m = std::max(m, v);
  return m;
}

Potential Potential::scaled(double c) const {
  if (!(c > 0.0)) throw InvalidArgument("Potential::scaled: factor must be > 0");
  Potential r(dim_);
  for (std::size_t i = 0; i < points_.size(); ++i) r.set(points_[i], c * values_[i]);
  return r;
}

std::string Potential::to_json() const {
  nlohmann::json j;
  j["dim"] = dim_;
  j["entries"] = nlohmann::json::array();
  for (std::size_t i = 0; i < points_.size(); ++i) {
    nlohmann::json e;
    e["x"] = points_[i];
    e["v"] = values_[i];
    j["entries"].push_back(e);
  }
  return j.dump(2);
}

Potential Potential::from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  if (!j.contains("dim") || !j.contains("entries"))
    throw InvalidArgument("potential JSON: required fields 'dim' and 'entries'");
  Potential p(j["dim"].get<int>());
  for (const auto& e : j["entries"]) {
    Point x = e.at("x").get<Point>();
    if (static_cast<int>(x.size()) != p.dim())
      throw InvalidArgument("potential JSON: entry dimension mismatch");
    p.set(x, e.at("v").get<double>());
  }
  return p;
}

Potential Potential::load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("potential JSON: cannot open file " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return from_json(ss.str());
}

Potential make_delta(int dim, double c) {
  Potential p(dim);
  p.set(Point(static_cast<std::size_t>(dim), 0), c);
  return p;
}

Potential make_coulomb_box(int dim, int R) {
  Box box(dim, R);
  std::vector<std::pair<Point, double>> entries;
  entries.reserve(static_cast<std::size_t>(box.site_count()));
  for (std::int64_t i = 0; i < box.site_count(); ++i) {
    Point x = box.point_at(i);
    const double v = 1.0 / (static_cast<double>(norm2(x)) + 1.0);
    entries.emplace_back(std::move(x), v);
  }
  return Potential::from_entries(dim, std::move(entries));
}

Potential make_logpow_box(int dim, double q, int R) {
  if (!(q > 0.0)) throw InvalidArgument("logpow weight: q must be > 0");
  Box box(dim, R);
  std::vector<std::pair<Point, double>> entries;
  for (std::int64_t i = 0; i < box.site_count(); ++i) {
    Point x = box.point_at(i);
    const double s = static_cast<double>(norm2(x));
    if (s <= 1.0) continue;  // defined for |x| > 1 only; zero inside
    const double v = 1.0 / s * std::pow(0.5 * std::log(s), -1.0 / q);
    entries.emplace_back(std::move(x), v);
  }
  return Potential::from_entries(dim, std::move(entries));
}

Potential random_potential(int dim, int radius, int count, double lo, double hi, Rng& rng) {
  Potential p(dim);
  int placed = 0;
  int guard = 0;
  while (placed < count && ++guard < 100000) {
    Point x(static_cast<std::size_t>(dim));
    for (auto& c : x) c = rng.uniform_int(-radius, radius);
    if (p.at(x) > 0.0) continue;
    p.set(x, rng.uniform(lo, hi));
    ++placed;
  }
  if (placed < count) throw InvalidArgument("random_potential: could not place requested count");
  return p;
}

Potential truncate_to_box(const Potential& v, int radius) {
  Box box(v.dim(), radius);
  std::vector<std::pair<Point, double>> entries;
  for (std::size_t i = 0; i < v.support().size(); ++i)
    if (box.contains(v.support()[i])) entries.emplace_back(v.support()[i], v.values()[i]);
  return Potential::from_entries(v.dim(), std::move(entries));
}

}  // namespace lab
