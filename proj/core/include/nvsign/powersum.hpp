#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include <gmpxx.h>

namespace nvsign {

// Exponents r, s >= 2 with alpha = (r-1)(s-1)/(rs) and window constant
// C = 2^{rs} r s. Every n >= 1 has some m = A^r + B^s, A, B >= 1, in the
// closed window [n, n + C n^alpha].
struct PowerSumParams {
  unsigned r = 2;
  unsigned s = 2;
  mpq_class alpha;
  mpz_class C;

  static PowerSumParams make(unsigned r, unsigned s);
};

struct Representation {
  std::uint64_t n = 0;
  std::uint64_t m = 0;
  std::uint64_t A = 0;
  std::uint64_t B = 0;
  // m == n, or m - n equal to the window bound exactly.
  bool boundary_hit = false;
};

// Exact test of n <= m <= n + K n^alpha, i.e. (m-n)^{rs} <= K^{rs} n^{(r-1)(s-1)}.
bool in_window(std::uint64_t n, std::uint64_t m, const PowerSumParams& params, const mpz_class& K);
// ceil(n^alpha) by an exact rs-th root of n^{(r-1)(s-1)}.
mpz_class ceil_n_alpha(std::uint64_t n, const PowerSumParams& params);

// B = floor(n^{1/s}) and A the least natural number with A^r + B^s >= n.
// Throws TheoremViolation if m leaves the window.
Representation find_representation(std::uint64_t n, const PowerSumParams& params);

// Least m >= n with m = A^r + B^s, A, B >= 1 and m < limit, by exhaustive
// double loop.
std::optional<std::uint64_t> oracle_min_representation(std::uint64_t n, unsigned r, unsigned s, std::uint64_t limit);

// Whether the interval [x1, x2] of the construction has length > 1, where
// x1^r + t^s = n and x2^r + t^s = n + C n^alpha.
enum class GapCertainty { kProvenLonger, kProvenShorter, kUndecided };
GapCertainty interval_longer_than_one(std::uint64_t n, const PowerSumParams& params);

struct NormFormRepresentation {
  std::uint64_t n = 0;
  std::uint64_t D = 1;
  std::uint64_t m = 0;
  std::uint64_t a = 0;
  std::uint64_t b = 0;
  // Window constant derived for this D; m - n <= C' n^{1/4}.
  mpz_class C_prime;
};

// C'(D) = 64 D: the r = s = 2 constant scaled so that the window also
// covers n < D, where the least candidate is 1 + D.
mpz_class normform_constant(std::uint64_t D);
// m = a^2 + D b^2 in [n, n + C'(D) n^{1/4}], D squarefree.
NormFormRepresentation find_normform(std::uint64_t n, std::uint64_t D);
std::optional<std::uint64_t> oracle_min_normform(std::uint64_t n, std::uint64_t D, std::uint64_t limit);

struct CoprimeRepresentation {
  Representation rep;
  // Window constant actually allowed: K = multiplier * C.
  mpz_class K;
  std::uint64_t multiplier = 1;
  // m - n, the part of the window actually needed.
  std::uint64_t window_used = 0;
};

// Default multiplier 2^{|badset|}.
std::uint64_t default_coprime_multiplier(const std::vector<std::uint64_t>& badset);

// Every m = A^r + B^s (A, B >= 1) in [n, n + K n^alpha], ascending; each m
// once, with its smallest A.
std::vector<Representation> window_candidates(std::uint64_t n, const PowerSumParams& params, const mpz_class& K);

// The construction's m when it avoids every bad prime, else the least
// candidate in the enlarged window that does. Throws SearchExhausted when
// none exists.
CoprimeRepresentation find_representation_coprime(std::uint64_t n, const PowerSumParams& params,
                                                  const std::vector<std::uint64_t>& badset,
                                                  std::optional<std::uint64_t> multiplier = std::nullopt);

}  // namespace nvsign
