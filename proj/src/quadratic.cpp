#include "mersquad/quadratic.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include <fmt/format.h>

#include "mersquad/errors.hpp"

namespace mersquad {

namespace {

using u128 = unsigned __int128;

constexpr u128 kU64Max = std::numeric_limits<std::uint64_t>::max();

u128 evaluate_wide(const QuadraticModel& m, std::uint64_t n) {
  // n < 2^64, so a2*n^2 can exceed 128 bits only for huge n; guard it.
  const u128 nn = static_cast<u128>(n) * n;
  if (n != 0 && nn / n != n) throw std::overflow_error("quadratic evaluation overflow");
  const u128 a2 = static_cast<u128>(m.a2);
  if (nn != 0 && a2 > (~u128{0}) / nn) throw std::overflow_error("quadratic evaluation overflow");
  return a2 * nn + static_cast<u128>(m.a1) * n + static_cast<u128>(m.a0);
}

}  // namespace

QuadraticModel::QuadraticModel(std::string name_, std::int64_t a2_, std::int64_t a1_,
                               std::int64_t a0_)
    : name(std::move(name_)), a2(a2_), a1(a1_), a0(a0_) {
  if (a2 < 1 || a1 < 0 || a0 < 0) {
    throw DomainError(fmt::format("model {}: coefficients ({}, {}, {}) not supported", name, a2,
                                  a1, a0));
  }
}

QuadraticModel QuadraticModel::euler() { return {"euler", 1, 1, 41}; }
QuadraticModel QuadraticModel::n2_plus_1() { return {"quad-n2p1", 1, 0, 1}; }
QuadraticModel QuadraticModel::n2_plus_n_17() { return {"quad-n2pn17", 1, 1, 17}; }

std::uint64_t isqrt(std::uint64_t v) {
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<long double>(v)));
  // Correct the floating estimate in both directions; r*r must not overflow.
  while (r > 0 && (r > 0xFFFFFFFFull || r * r > v)) --r;
  while (r < 0xFFFFFFFFull && (r + 1) * (r + 1) <= v) ++r;
  return r;
}

std::uint64_t evaluate(const QuadraticModel& m, std::uint64_t n) {
  const u128 v = evaluate_wide(m, n);
  if (v > kU64Max) throw std::overflow_error("quadratic evaluation overflow");
  return static_cast<std::uint64_t>(v);
}

std::pair<std::uint64_t, std::uint64_t> nearest_candidates(const QuadraticModel& m,
                                                           std::uint64_t p) {
  if (p < static_cast<std::uint64_t>(m.a0)) {
    throw DomainError(
        fmt::format("model {}: target {} is below the model minimum {}", m.name, p, m.a0));
  }
  // Discriminant a1^2 + 4*a2*(p - a0) of a2*n^2 + a1*n + (a0 - p).
  const u128 disc = static_cast<u128>(m.a1) * m.a1 +
                    u128{4} * static_cast<u128>(m.a2) * (p - static_cast<std::uint64_t>(m.a0));
  if (disc > kU64Max) throw std::overflow_error("discriminant overflow");
  const std::uint64_t s = isqrt(static_cast<std::uint64_t>(disc));
  std::uint64_t k = s >= static_cast<std::uint64_t>(m.a1)
                        ? (s - static_cast<std::uint64_t>(m.a1)) / (2 * static_cast<std::uint64_t>(m.a2))
                        : 0;
  while (evaluate_wide(m, k + 1) <= p) ++k;
  while (k > 0 && evaluate_wide(m, k) > p) --k;
  if (evaluate_wide(m, k) == p) return {k, k};
  return {k, k + 1};
}

RootSolution invert(const QuadraticModel& m, std::uint64_t p) {
  const auto [lower, upper] = nearest_candidates(m, p);

  const long double disc = static_cast<long double>(m.a1) * m.a1 +
                           4.0L * m.a2 * static_cast<long double>(p - m.a0);
  long double root = std::sqrt(disc);
  if (root > 0) root = 0.5L * (root + disc / root);

  RootSolution sol;
  sol.n_exact = (root - m.a1) / (2.0L * m.a2);

  if (lower == upper) {
    sol.n_closest = lower;
    sol.n_exact = static_cast<long double>(lower);
    sol.d = 0;
    sol.exact = true;
    return sol;
  }

  // Root lies strictly above lower + 1/2 iff
  // 4p > a2*(2k+1)^2 + 2*a1*(2k+1) + 4*a0 with k = lower.
  const u128 odd = u128{2} * lower + 1;
  const u128 midpoint4 = static_cast<u128>(m.a2) * odd * odd + u128{2} * m.a1 * odd +
                         u128{4} * static_cast<u128>(m.a0);
  sol.n_closest = (u128{4} * p > midpoint4) ? upper : lower;
  sol.exact = false;
  sol.d = static_cast<double>(std::fabs(sol.n_exact - static_cast<long double>(sol.n_closest)));
  if (sol.d > 0.5) sol.d = 0.5;
  return sol;
}

std::uint64_t mersenne_bit_length(std::uint64_t p) {
  if (p == 0) throw DomainError("mersenne_bit_length: exponent must be >= 1");
  return p;
}

}  // namespace mersquad
