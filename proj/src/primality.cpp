#include "mersquad/primality.hpp"

#include <atomic>
#include <thread>

#include <fmt/format.h>
#include <gmpxx.h>

#include "mersquad/errors.hpp"
#include "mersquad/quadratic.hpp"

namespace mersquad {

namespace {

using u128 = unsigned __int128;

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<u128>(a) * b % m);
}

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
  std::uint64_t result = 1 % m;
  base %= m;
  while (exp > 0) {
    if (exp & 1) result = mul_mod(result, base, m);
    base = mul_mod(base, base, m);
    exp >>= 1;
  }
  return result;
}

// One strong-probable-prime round; m odd, m > 2, d * 2^s = m - 1.
bool strong_probable_prime(std::uint64_t m, std::uint64_t witness, std::uint64_t d, int s) {
  witness %= m;
  if (witness == 0) return true;
  std::uint64_t x = pow_mod(witness, d, m);
  if (x == 1 || x == m - 1) return true;
  for (int r = 1; r < s; ++r) {
    x = mul_mod(x, x, m);
    if (x == m - 1) return true;
  }
  return false;
}

const std::vector<std::uint32_t>& trial_primes() {
  // sqrt(10^10) = 10^5
  static const std::vector<std::uint32_t> primes = primes_up_to(100'000);
  return primes;
}

// s <- s mod (2^p - 1) using 2^p == 1.
void reduce_mersenne(mpz_class& s, mpz_class& hi, unsigned p, const mpz_class& mersenne) {
  while (mpz_sizeinbase(s.get_mpz_t(), 2) > p) {
    mpz_tdiv_q_2exp(hi.get_mpz_t(), s.get_mpz_t(), p);
    mpz_tdiv_r_2exp(s.get_mpz_t(), s.get_mpz_t(), p);
    s += hi;
  }
  if (s == mersenne) s = 0;
}

}  // namespace

std::string_view to_string(PrimalityMethod method) {
  switch (method) {
    case PrimalityMethod::TrialDivision: return "trial-division";
    case PrimalityMethod::MillerRabin: return "miller-rabin";
    case PrimalityMethod::LucasLehmer: return "lucas-lehmer";
  }
  return "unknown";
}

bool is_prime(std::uint64_t m) {
  if (m < 2) return false;
  for (std::uint64_t small : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (m % small == 0) return m == small;
  }
  if (m < 37 * 37) return true;

  std::uint64_t d = m - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t w : {2ull, 325ull, 9375ull, 28178ull, 450775ull, 9780504ull, 1795265022ull}) {
    if (!strong_probable_prime(m, w, d, s)) return false;
  }
  return true;
}

std::vector<std::uint32_t> primes_up_to(std::uint32_t limit) {
  std::vector<std::uint32_t> primes;
  if (limit < 2) return primes;
  std::vector<bool> composite(static_cast<std::size_t>(limit) + 1, false);
  for (std::uint64_t i = 2; i <= limit; ++i) {
    if (composite[i]) continue;
    primes.push_back(static_cast<std::uint32_t>(i));
    for (std::uint64_t j = i * i; j <= limit; j += i) composite[j] = true;
  }
  return primes;
}

bool trial_division(std::uint64_t m) {
  if (m > kTrialDivisionLimit) {
    throw DomainError(fmt::format("trial_division: {} exceeds oracle limit {}", m,
                                  kTrialDivisionLimit));
  }
  if (m < 2) return false;
  const std::uint64_t root = isqrt(m);
  for (std::uint32_t q : trial_primes()) {
    if (q > root) break;
    if (m % q == 0) return false;
  }
  return true;
}

bool lucas_lehmer(unsigned p, unsigned cap) {
  if (p > cap) {
    throw DomainError(fmt::format("lucas_lehmer: p={} exceeds cap {}", p, cap));
  }
  if (p < 3 || !trial_division(p)) {
    throw DomainError(fmt::format("lucas_lehmer: p={} is not an odd prime", p));
  }
  mpz_class mersenne;
  mpz_ui_pow_ui(mersenne.get_mpz_t(), 2, p);
  mersenne -= 1;

  mpz_class s = 4;
  mpz_class hi;
  for (unsigned k = 0; k < p - 2; ++k) {
    s = s * s;
    reduce_mersenne(s, hi, p, mersenne);
    // s >= 0 here, and s - 2 may go negative only when s < 2.
    if (s < 2) s += mersenne;
    s -= 2;
  }
  return s == 0;
}

std::vector<PrimalityVerdict> lucas_lehmer_sweep(unsigned cap, unsigned threads) {
  std::vector<PrimalityVerdict> results;
  for (std::uint32_t p : primes_up_to(cap)) {
    if (p == 2) continue;
    results.push_back({p, false, PrimalityMethod::LucasLehmer});
  }
  if (threads == 0) threads = 1;

  // Largest exponents first keeps the workers balanced.
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    while (true) {
      const std::size_t i = next.fetch_add(1);
      if (i >= results.size()) return;
      auto& v = results[results.size() - 1 - i];
      v.is_prime = lucas_lehmer(static_cast<unsigned>(v.value), cap);
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  return results;
}

}  // namespace mersquad
