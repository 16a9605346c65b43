#pragma once

#include <cstdint>
#include <string>
#include <utility>

namespace mersquad {

/// Integer quadratic a2*n^2 + a1*n + a0, increasing on n >= 0.
///
/// Coefficients are restricted to a2 >= 1 and a1, a0 >= 0 so that the
/// positive root of model(n) = p is unique and forward evaluation is
/// strictly monotone.
struct QuadraticModel {
  std::string name;
  std::int64_t a2 = 1;
  std::int64_t a1 = 0;
  std::int64_t a0 = 0;

  QuadraticModel(std::string name, std::int64_t a2, std::int64_t a1, std::int64_t a0);

  /// n^2 + n + 41
  static QuadraticModel euler();
  /// n^2 + 1
  static QuadraticModel n2_plus_1();
  /// n^2 + n + 17
  static QuadraticModel n2_plus_n_17();

  bool operator==(const QuadraticModel&) const = default;
};

/// Result of inverting a model at a target value p.
struct RootSolution {
  long double n_exact = 0;     // positive real root of model(n) = p
  std::uint64_t n_closest = 0; // nearest non-negative integer to n_exact
  double d = 0;                // |n_exact - n_closest|, in [0, 0.5]
  bool exact = false;          // model(n_closest) == p
};

/// floor(sqrt(v)), exact for the whole 64-bit range.
std::uint64_t isqrt(std::uint64_t v);

/// Exact a2*n^2 + a1*n + a0. Throws std::overflow_error past 2^64 - 1.
std::uint64_t evaluate(const QuadraticModel& m, std::uint64_t n);

/// Integers (lower, upper) bracketing the real root: lower is the largest n
/// with model(n) <= p and upper == lower on an exact hit, lower + 1 otherwise.
/// Throws DomainError when p < a0.
std::pair<std::uint64_t, std::uint64_t> nearest_candidates(const QuadraticModel& m,
                                                           std::uint64_t p);

/// Positive root of model(n) = p with nearest-integer rounding.
///
/// The rounding decision is made in integer arithmetic: the root exceeds
/// k + 1/2 exactly when 4p > 4*model(k + 1/2), which expands to an integer
/// expression. Exact halves round down. n_exact itself is a long double used
/// for display and for d.
RootSolution invert(const QuadraticModel& m, std::uint64_t p);

/// Bit length of 2^p - 1, which is p. Throws DomainError for p == 0.
std::uint64_t mersenne_bit_length(std::uint64_t p);

}  // namespace mersquad
