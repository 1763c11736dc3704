#pragma once
// Integer-lattice geometry: points, truncation boxes, enumeration, and
// nonnegative potential/weight containers with their sorted value sequences.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "lab/common.hpp"

namespace lab {

/// A point of the integer lattice Z^d. Coordinates are exact integers; the
/// dimension is the vector length and must agree across points used together.
using Point = std::vector<std::int64_t>;

/// Squared Euclidean norm |x|^2 as an exact integer.
std::int64_t norm2(const Point& x);

/// Euclidean distance between two lattice points.
double euclid_dist(const Point& a, const Point& b);

Point operator+(const Point& a, const Point& b);
Point operator-(const Point& a, const Point& b);

/// x +/- unit step along axis `j`.
Point step(const Point& x, int j, int dir);

/// Canonical representative of the symmetry orbit of `x` under coordinate
/// permutations and sign flips: absolute coordinates sorted descending.
Point canonical_rep(const Point& x);

/// Finite truncation window of Z^d: all x with max_j |x_j| <= R, with a
/// stable lexicographic site enumeration used for every matrix layout.
class Box {
 public:
  Box(int dim, int radius);

  int dim() const { return dim_; }
  int radius() const { return radius_; }
  int side() const { return side_; }
  std::int64_t site_count() const { return site_count_; }

  /// True iff max_j |x_j| <= R.
  bool contains(const Point& x) const;

  /// Lexicographic index of an in-box point; throws InvalidArgument outside.
  std::int64_t index_of(const Point& x) const;

  /// Inverse of index_of.
  Point point_at(std::int64_t idx) const;

  /// All (2R+1)^d points in enumeration order (coordinates -R..R, last
  /// coordinate fastest). Deterministic across runs.
  std::vector<Point> enumerate() const;

 private:
  int dim_;
  int radius_;
  int side_;
  std::int64_t site_count_;
};

/// A finitely supported nonnegative weight V: Z^d -> [0, inf). Only strictly
/// positive values are stored; V(x) = 0 for unlisted x. Entries are kept in a
/// deterministic (lexicographic) order.
class Potential {
 public:
  explicit Potential(int dim);

  /// Sets one entry. Zero is absence (the entry is dropped), negative values
  /// are rejected. O(support) per call; use from_entries for bulk builds.
  void set(const Point& x, double v);

  /// Bulk construction from (point, value) pairs (unsorted, duplicates
  /// rejected; zero values dropped, negative rejected). O(k log k).
  static Potential from_entries(int dim, std::vector<std::pair<Point, double>> entries);

  int dim() const { return dim_; }
  std::size_t support_size() const { return points_.size(); }
  const std::vector<Point>& support() const { return points_; }
  const std::vector<double>& values() const { return values_; }

  /// V(x): stored value or 0.
  double at(const Point& x) const;

  /// max_j sup-norm over the support (0 for the empty potential).
  std::int64_t support_radius() const;

  /// Non-increasing rearrangement V_1* >= V_2* >= ... of the positive values.
  std::vector<double> sorted_values() const;

  /// Distribution function nu(s, V) = #{x : V(x) > s} (strict), s > 0.
  std::int64_t distribution_function(double s) const;

  /// sum_x V(x)^p.
  double lp_sum(double p) const;

  double max_value() const;

  /// Scales every entry by c > 0.
  Potential scaled(double c) const;

  /// JSON round-trip: {"dim": d, "entries": [{"x": [...], "v": v}, ...]}.
  std::string to_json() const;
  static Potential from_json(const std::string& text);
  static Potential load_json_file(const std::string& path);

 private:
  int dim_;
  std::vector<Point> points_;   // lexicographically sorted
  std::vector<double> values_;  // parallel to points_
  std::map<Point, std::size_t> index_;
};

/// Builtin potential/weight families addressable by name from the CLI.
///   "delta"      : c * indicator of the origin (param c, default 1)
///   "coulomb"    : (|x|^2 + 1)^{-1} restricted to |x|_inf <= R
///   "logpow"     : |x|^{-2} (log|x|)^{-1/q} for |x| > 1, 0 otherwise,
///                  restricted to |x|_inf <= R (param q)
Potential make_delta(int dim, double c = 1.0);
Potential make_coulomb_box(int dim, int R);
Potential make_logpow_box(int dim, double q, int R);

/// Random finitely supported potential: `count` distinct points inside the
/// sup-norm ball of radius `radius`, values uniform in (lo, hi].
Potential random_potential(int dim, int radius, int count, double lo, double hi, Rng& rng);

/// Restriction of V to the box |x|_inf <= radius (entries outside dropped).
Potential truncate_to_box(const Potential& v, int radius);

}  // namespace lab
