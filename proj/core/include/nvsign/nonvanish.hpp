#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "nvsign/arith.hpp"
#include "nvsign/forms.hpp"

namespace nvsign {

// c_p = 2 (mod 4) for primes p = 1 (mod 4); c_{p^r} = 1 (mod 4) for
// p = 3 (mod 4) and r even.
struct CongruenceViolation {
  std::uint64_t index = 0;  // p or p^r
  std::uint64_t p = 0;
  unsigned r = 1;
  unsigned residue = 0;
  unsigned expected = 0;
};

struct CongruenceReport {
  std::string label;
  std::uint64_t x_prime = 0;
  std::uint64_t x_power = 0;
  std::uint64_t primes_checked = 0;
  std::uint64_t powers_checked = 0;
  std::vector<CongruenceViolation> violations;
  bool ok() const { return violations.empty(); }
};

// Prime branch for p <= x_prime, prime-power branch for p^r <= x_power.
// Level-1 forms only.
CongruenceReport check_hatada(const ModularForm& f, std::uint64_t x_prime, std::uint64_t x_power);
inline CongruenceReport check_hatada(const ModularForm& f, std::uint64_t x) { return check_hatada(f, x, x); }

inline constexpr std::uint64_t kDefaultWitnessK = 64;

struct TwoSquaresWitness {
  std::uint64_t n = 0;
  std::uint64_t m = 0;
  std::uint64_t A = 0;
  std::uint64_t B = 0;
  // m - n <= K n^{1/4}.
  std::uint64_t K = kDefaultWitnessK;
  Factorization factorization;
};

// Every prime p = 3 (mod 4) occurs to even multiplicity.
bool two_squares_criterion(const Factorization& fac);

// m = A^2 + B^2 in [n, n + K n^{1/4}] with no prime factor in badset;
// K must be a positive multiple of 64.
TwoSquaresWitness two_squares_witness(std::uint64_t n, const std::vector<std::uint64_t>& badset,
                                      std::uint64_t K = kDefaultWitnessK);

// Primes p whose powers could make c_m vanish for a coprime sum of two
// squares below the form's precision: congruence violations, and primes p
// with some c_{p^e} = 0 (p^2 < precision, and always p = 2).
std::vector<std::uint64_t> empirical_badset(const ModularForm& f);

struct NonvanishingWitness {
  std::uint64_t n = 0;
  std::uint64_t m = 0;
  std::uint64_t gap = 0;
  std::uint64_t K = kDefaultWitnessK;
  std::vector<std::string> labels;
  std::vector<mpz_class> coefficients;
  std::vector<std::uint64_t> badset;
  // Candidates skipped because some coefficient vanished there.
  std::vector<std::uint64_t> escalations;
};

// Witness m for one form with c_m != 0. Candidates beyond the first are
// tried only when a coefficient vanishes; those events are recorded.
NonvanishingWitness nonvanishing_witness(const ModularForm& f, std::uint64_t n, const std::vector<std::uint64_t>& badset,
                                         std::uint64_t K = kDefaultWitnessK);
NonvanishingWitness nonvanishing_witness(const ModularForm& f, std::uint64_t n);

// Shared witness m with c_m(f_j) != 0 for every form.
NonvanishingWitness simultaneous_witness(const std::vector<const ModularForm*>& forms, std::uint64_t n,
                                         const std::vector<std::uint64_t>& badset,
                                         std::uint64_t K = kDefaultWitnessK);

std::string witness_json(const NonvanishingWitness& w);
std::string congruence_report_json(const CongruenceReport& r);

}  // namespace nvsign
