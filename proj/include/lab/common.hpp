#pragma once
// Shared error types, RNG helpers, and numeric conventions used across the
// laboratory. All randomized suites take explicit 64-bit seeds so that every
// run is reproducible bit-for-bit.

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>

namespace lab {

/// Invalid input that violates an operation's precondition.
class InvalidArgument : public std::invalid_argument {
 public:
  explicit InvalidArgument(const std::string& what) : std::invalid_argument(what) {}
};

/// Request outside the mathematical domain of the theory (e.g. dimension < 3
/// where the lattice Green function diverges). Mapped to a dedicated CLI exit
/// code, distinct from usage errors.
class TheoryDomainError : public std::domain_error {
 public:
  explicit TheoryDomainError(const std::string& what) : std::domain_error(what) {}
};

/// A potential/weight whose support sticks out of the requested box.
class SupportOverflow : public std::runtime_error {
 public:
  explicit SupportOverflow(const std::string& what) : std::runtime_error(what) {}
};

/// Resource refusal (e.g. a lattice window whose explicit materialization
/// would exceed the memory budget). Carries the required budget in bytes.
class MemoryBudgetExceeded : public std::runtime_error {
 public:
  MemoryBudgetExceeded(const std::string& what, std::uint64_t required_bytes)
      : std::runtime_error(what), required_bytes(required_bytes) {}
  std::uint64_t required_bytes;
};

/// Deterministic RNG: a thin wrapper over mt19937_64 with explicit helpers so
/// that generated streams do not depend on library-specific distribution
/// implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  /// Uniform double in [0, 1).
  double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

  /// Uniform double in [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Uniform integer in {lo, ..., hi} (inclusive).
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<std::int64_t>(eng_() % span);
  }

  /// Standard normal via Box-Muller (deterministic across platforms).
  double normal() {
    double u1 = 0.0;
    do { u1 = uniform(); } while (u1 <= 1e-300);
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925287 * u2);
  }

  std::uint64_t raw() { return eng_(); }

 private:
  std::mt19937_64 eng_;
};

}  // namespace lab
