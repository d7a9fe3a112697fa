#pragma once

// Small integer helpers shared by the sieving and search modules: prime
// sieves, exact integer roots, trial-division factorization.

#include <cstdint>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace nvsign {

using Factorization = std::vector<std::pair<std::uint64_t, unsigned>>;

// All primes p <= n.
std::vector<std::uint64_t> primes_up_to(std::uint64_t n);

// Number of primes p <= x, by sieving.
std::uint64_t prime_pi(std::uint64_t x);

// Smallest-prime-factor table covering [0, limit].
class PrimeSieve {
 public:
  explicit PrimeSieve(std::uint64_t limit);

  std::uint64_t limit() const { return limit_; }
  bool is_prime(std::uint64_t n) const;
  // Requires 2 <= n <= limit().
  std::uint64_t smallest_factor(std::uint64_t n) const { return spf_[n]; }
  // Falls back to trial division by the sieved primes above limit().
  Factorization factor(std::uint64_t n) const;
  const std::vector<std::uint64_t>& primes() const { return primes_; }

 private:
  std::uint64_t limit_;
  std::vector<std::uint32_t> spf_;
  std::vector<std::uint64_t> primes_;
};

Factorization factor_trial(std::uint64_t n);
bool is_prime(std::uint64_t n);
bool is_squarefree(std::uint64_t n);

// floor(n^(1/k)) and ceil(n^(1/k)), exact.
std::uint64_t iroot_floor(std::uint64_t n, unsigned k);
std::uint64_t iroot_ceil(std::uint64_t n, unsigned k);

// Exact power; returns false on overflow of 64 bits.
bool checked_pow(std::uint64_t base, unsigned exp, std::uint64_t& out);

std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b);
std::uint64_t lcm_u64(std::uint64_t a, std::uint64_t b);

inline int sign_of(const mpz_class& v) { return sgn(v); }

// |v| converted to long double keeping the top 64 bits of the magnitude.
long double to_long_double(const mpz_class& v);

}  // namespace nvsign
