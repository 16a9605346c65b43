#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

namespace mersquad {

enum class PrimalityMethod { TrialDivision, MillerRabin, LucasLehmer };

std::string_view to_string(PrimalityMethod method);

struct PrimalityVerdict {
  std::uint64_t value = 0;     // m, or the exponent p for Lucas-Lehmer verdicts
  bool is_prime = false;
  PrimalityMethod method = PrimalityMethod::MillerRabin;
};

/// Deterministic Miller-Rabin over the full 64-bit range using the
/// seven-base set {2, 325, 9375, 28178, 450775, 9780504, 1795265022}.
bool is_prime(std::uint64_t m);

inline constexpr std::uint64_t kTrialDivisionLimit = 10'000'000'000ull;

/// Divides by every prime <= sqrt(m). Refuses m > 10^10 with DomainError.
bool trial_division(std::uint64_t m);

/// All primes <= limit, ascending (sieve of Eratosthenes).
std::vector<std::uint32_t> primes_up_to(std::uint32_t limit);

inline constexpr unsigned kLucasLehmerDefaultCap = 10007;

/// Lucas-Lehmer test of 2^p - 1 for an odd prime p.
/// Throws DomainError if p is not an odd prime or exceeds cap.
bool lucas_lehmer(unsigned p, unsigned cap = kLucasLehmerDefaultCap);

/// Lucas-Lehmer verdict for every odd prime p <= cap, ordered by p.
/// Work is spread over `threads` workers; the result does not depend on it.
std::vector<PrimalityVerdict> lucas_lehmer_sweep(unsigned cap, unsigned threads = 1);

}  // namespace mersquad
