#include "nvsign/arith.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace nvsign {

std::vector<std::uint64_t> primes_up_to(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  if (n < 2) return out;
  std::vector<bool> composite(n + 1, false);
  for (std::uint64_t i = 2; i <= n; ++i) {
    if (composite[i]) continue;
    out.push_back(i);
    for (std::uint64_t j = i * i; j <= n; j += i) composite[j] = true;
  }
  return out;
}

std::uint64_t prime_pi(std::uint64_t x) { return primes_up_to(x).size(); }

PrimeSieve::PrimeSieve(std::uint64_t limit) : limit_(limit), spf_(limit + 1, 0) {
  if (limit > std::numeric_limits<std::uint32_t>::max()) {
    throw std::invalid_argument("PrimeSieve: limit exceeds 32-bit table range");
  }
  for (std::uint64_t i = 2; i <= limit; ++i) {
    if (spf_[i] == 0) {
      spf_[i] = static_cast<std::uint32_t>(i);
      primes_.push_back(i);
    }
    for (std::uint64_t p : primes_) {
      if (p > spf_[i] || i * p > limit) break;
      spf_[i * p] = static_cast<std::uint32_t>(p);
    }
  }
}

bool PrimeSieve::is_prime(std::uint64_t n) const {
  if (n <= limit_) return n >= 2 && spf_[n] == n;
  return nvsign::is_prime(n);
}

Factorization PrimeSieve::factor(std::uint64_t n) const {
  Factorization out;
  if (n <= limit_) {
    while (n > 1) {
      std::uint64_t p = spf_[n];
      unsigned e = 0;
      while (n % p == 0) {
        n /= p;
        ++e;
      }
      out.emplace_back(p, e);
    }
    return out;
  }
  for (std::uint64_t p : primes_) {
    if (p * p > n) break;
    if (n % p != 0) continue;
    unsigned e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    out.emplace_back(p, e);
  }
  if (n > 1) {
    // Remaining cofactor may still be composite if the table was too short.
    if (limit_ * limit_ >= n) {
      out.emplace_back(n, 1);
    } else {
      for (auto& pe : factor_trial(n)) out.push_back(pe);
    }
  }
  return out;
}

Factorization factor_trial(std::uint64_t n) {
  Factorization out;
  for (std::uint64_t p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
    if (n % p != 0) continue;
    unsigned e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    out.emplace_back(p, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  if (n < 4) return true;
  if (n % 2 == 0) return false;
  for (std::uint64_t d = 3; d * d <= n; d += 2) {
    if (n % d == 0) return false;
  }
  return true;
}

bool is_squarefree(std::uint64_t n) {
  if (n == 0) return false;
  for (auto [p, e] : factor_trial(n)) {
    if (e > 1) return false;
  }
  return true;
}

bool checked_pow(std::uint64_t base, unsigned exp, std::uint64_t& out) {
  unsigned __int128 acc = 1;
  for (unsigned i = 0; i < exp; ++i) {
    acc *= base;
    if (acc > std::numeric_limits<std::uint64_t>::max()) return false;
  }
  out = static_cast<std::uint64_t>(acc);
  return true;
}

std::uint64_t iroot_floor(std::uint64_t n, unsigned k) {
  if (k == 0) throw std::invalid_argument("iroot_floor: k must be positive");
  if (k == 1 || n < 2) return n;
  auto guess = static_cast<std::uint64_t>(std::pow(static_cast<long double>(n), 1.0L / k));
  // Correct the floating guess exactly in both directions.
  std::uint64_t p = 0;
  while (guess > 0 && (!checked_pow(guess, k, p) || p > n)) --guess;
  while (checked_pow(guess + 1, k, p) && p <= n) ++guess;
  return guess;
}

std::uint64_t iroot_ceil(std::uint64_t n, unsigned k) {
  std::uint64_t r = iroot_floor(n, k);
  std::uint64_t p = 0;
  checked_pow(r, k, p);
  return p == n ? r : r + 1;
}

std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b) { return std::gcd(a, b); }

std::uint64_t lcm_u64(std::uint64_t a, std::uint64_t b) { return std::lcm(a, b); }

long double to_long_double(const mpz_class& v) {
  if (v == 0) return 0.0L;
  const std::size_t bits = mpz_sizeinbase(v.get_mpz_t(), 2);
  mpz_class mag = abs(v);
  long exponent = 0;
  if (bits > 64) {
    exponent = static_cast<long>(bits - 64);
    mpz_tdiv_q_2exp(mag.get_mpz_t(), mag.get_mpz_t(), static_cast<mp_bitcnt_t>(exponent));
  }
  // mag now fits in 64 bits; the long double mantissa holds it exactly.
  unsigned long long top = 0;
  mpz_export(&top, nullptr, -1, sizeof(top), 0, 0, mag.get_mpz_t());
  long double out = std::ldexp(static_cast<long double>(top), static_cast<int>(exponent));
  return sgn(v) < 0 ? -out : out;
}

}  // namespace nvsign
