#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "nvsign/forms.hpp"

namespace nvsign {

// A set B of pairwise coprime integers > 1, enumerated lazily up to any
// bound. Sets built from finite coefficient data only enumerate up to
// max_bound(); asking beyond it throws InsufficientPrecision.
class BFreeSet {
 public:
  using Enumerator = std::function<std::vector<std::uint64_t>(std::uint64_t bound)>;

  BFreeSet(std::string descriptor, Enumerator enumerate, std::optional<std::uint64_t> max_bound = std::nullopt);

  static BFreeSet prime_squares();
  // Checks pairwise coprimality and b > 1 up front.
  static BFreeSet from_list(std::vector<std::uint64_t> generators);

  const std::string& descriptor() const { return descriptor_; }
  std::optional<std::uint64_t> max_bound() const { return max_bound_; }

  // Strictly increasing generators b <= bound.
  std::vector<std::uint64_t> generators(std::uint64_t bound) const;
  // sum of 1/b over generators b <= bound.
  double reciprocal_partial_sum(std::uint64_t bound) const;
  // Returns the first pair (b_i, b_j) with a common factor, if any.
  std::optional<std::pair<std::uint64_t, std::uint64_t>> coprimality_violation(std::uint64_t bound) const;
  // Member of B and generator of the set with an extra element.
  BFreeSet with_generator(std::uint64_t b) const;

 private:
  std::string descriptor_;
  Enumerator enumerate_;
  std::optional<std::uint64_t> max_bound_;
};

struct PairBFreeSet {
  BFreeSet set;
  // S = {p <= X : c_p(f) c_p(g) = 0 or p | N}.
  std::vector<std::uint64_t> s_primes;
  std::uint64_t bound = 0;
  // |S| / (X / log X).
  double serre_ratio = 0.0;
};

// B = S u {p^2 : p not in S}, restricted to generators <= X.
PairBFreeSet build_from_pair(const FormPair& pair, std::uint64_t bound);

struct IntervalSieve {
  std::uint64_t x = 0;
  std::uint64_t y = 0;
  std::uint64_t count = 0;
  // bitmap[i] is true when x + 1 + i is B-free.
  std::vector<bool> bitmap;

  double density() const { return y == 0 ? 0.0 : static_cast<double>(count) / static_cast<double>(y); }
  std::vector<std::uint64_t> members() const;
};

inline constexpr std::size_t kDefaultSegment = std::size_t{1} << 16;

// B-free n in the half-open interval (x, x + y].
IntervalSieve sieve_interval(const BFreeSet& set, std::uint64_t x, std::uint64_t y,
                             std::size_t segment = kDefaultSegment);

struct ProgressionCount {
  std::uint64_t count = 0;
  // q exceeds x^epsilon, outside the short-interval regime.
  bool outside_regime = false;
};

// B-free n = a (mod q) in (x, x + y]. Requires 1 <= a <= q and
// gcd(gcd(a, q), b) = 1 for every generator b <= x + y.
ProgressionCount sieve_progression(const BFreeSet& set, std::uint64_t x, std::uint64_t y, std::uint64_t a,
                                   std::uint64_t q, double regime_epsilon = 0.1);

// Run-length file: "NVRL" | u32 version | u64 x | u64 y | u8 first bit |
// u64 run count | u64 run lengths (little-endian), runs alternate values.
void write_bitmap_rle(const std::filesystem::path& path, const IntervalSieve& sieve);
IntervalSieve read_bitmap_rle(const std::filesystem::path& path);
// {"x":..,"y":..,"count":..,"density":..}
std::string sieve_summary_json(const IntervalSieve& sieve);

}  // namespace nvsign
