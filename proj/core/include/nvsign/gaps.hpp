#pragma once

#include <cstdint>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "nvsign/forms.hpp"

namespace nvsign {

// i(n) = min{ j >= 0 : target(n + j) != 0 } together with its witness.
struct GapRecord {
  std::uint64_t n = 0;
  std::uint64_t gap = 0;
  std::uint64_t witness = 0;
  // Form label, or "f,g" for a pair.
  std::string context;
};

// The search ceiling starts at ceil(n^0.9), doubles on demand and stops
// hard at n (or at the coefficient precision). Stopping throws
// SearchExhausted; running past the precision throws InsufficientPrecision.
GapRecord gap_single(const ModularForm& f, std::uint64_t n);
GapRecord gap_pair(const FormPair& pair, std::uint64_t n);

// Records for every n in [from, to], from a single backward pass.
std::vector<GapRecord> scan_gaps(const ModularForm& f, std::uint64_t from, std::uint64_t to);
std::vector<GapRecord> scan_gaps(const FormPair& pair, std::uint64_t from, std::uint64_t to);

struct ZeroPrimeCount {
  std::uint64_t x = 0;
  std::uint64_t count = 0;
  std::uint64_t pi_x = 0;
  // count / (x / (log x)^{3/2})
  double serre_ratio = 0.0;
  // count / pi(x)
  double prime_fraction = 0.0;
};

// Primes p <= x with c_p = 0.
ZeroPrimeCount serre_zero_count(const ModularForm& f, std::uint64_t x);
// Primes p <= x with c_p(f) c_p(g) != 0; prime_fraction is count / pi(x).
ZeroPrimeCount nonvanishing_prime_count(const FormPair& pair, std::uint64_t x);

struct ExponentFit {
  // Fewer than ten nonzero gaps: slope and envelope are not meaningful.
  bool degenerate = true;
  std::size_t nonzero = 0;
  // Least-squares slope of log(gap) against log(n) over gaps >= 1.
  double slope = 0.0;
  // max gap / n^{7/17}
  double envelope = 0.0;
};

ExponentFit exponent_fit(std::span<const GapRecord> records);

// Header: n,gap,witness,c_witness_f,c_witness_g. Single-form records leave
// the last column empty.
void write_gap_csv(std::ostream& out, std::span<const GapRecord> records, const ModularForm& f,
                   const ModularForm* g = nullptr);

}  // namespace nvsign
