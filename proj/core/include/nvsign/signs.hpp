#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "nvsign/forms.hpp"

namespace nvsign {

// Sign changes of the nonzero subsequence of c_n(f) c_n(g) over (x, x+H].
// Zeros are transparent: the tracked sign persists across them.
struct SignChangeReport {
  std::uint64_t x = 0;
  std::uint64_t H = 0;
  std::optional<std::uint64_t> first_change;
  std::uint64_t count = 0;
  std::uint64_t positives = 0;
  std::uint64_t negatives = 0;
  std::uint64_t zeros = 0;
  // n at which each flip is observed (the second index of the pair).
  std::vector<std::uint64_t> flips;
};

using SignFunction = std::function<int(std::uint64_t)>;

SignChangeReport scan_sign_changes(const SignFunction& sign, std::uint64_t x, std::uint64_t H);
SignChangeReport scan_sign_changes(const FormPair& pair, std::uint64_t x, std::uint64_t H);

// Whether a pair satisfies the same-weight, same-level, distinct-newform
// hypotheses of the window theorem. Pairs outside it are exploratory.
struct PairEligibility {
  bool same_weight = false;
  bool same_level = false;
  bool distinct = false;
  bool in_regime() const { return same_weight && same_level && distinct; }
  std::string label() const { return in_regime() ? "theorem" : "exploratory"; }
};

PairEligibility pair_eligibility(const FormPair& pair);

struct CumulativeSignChanges {
  std::uint64_t x = 0;
  std::uint64_t count = 0;
  // count / x^{1 - delta}
  double ratio = 0.0;
};

struct WindowSweep {
  double delta = 0.0;
  PairEligibility eligibility;
  std::vector<SignChangeReport> windows;
  double fraction_with_change = 0.0;
  std::vector<CumulativeSignChanges> cumulative;
};

// One window (x, x + ceil(x^delta)] per grid point. delta must lie in (0, 1).
WindowSweep window_sweep(const FormPair& pair, double delta, std::span<const std::uint64_t> x_grid);

// Header: x,H,count,first_change,positives,negatives,zeros,eligibility
void write_window_csv(std::ostream& out, const WindowSweep& sweep);

struct BlockSigns {
  unsigned j = 0;
  std::uint64_t positives = 0;
  std::uint64_t negatives = 0;
};

// Product signs over each dyadic block [2^j, 2^{j+1}).
std::vector<BlockSigns> dyadic_sign_blocks(const FormPair& pair, unsigned j_min, unsigned j_max);

// Partial sums S1(x) = sum a_n b_n and S2(x) = sum a_n^2 b_n^2 of the
// normalized products, with log-log exponent fits for the three growth
// conditions of the sign-change criterion.
struct PartialSumFit {
  std::uint64_t x_max = 0;
  std::vector<std::uint64_t> xs;
  std::vector<long double> s1;
  std::vector<long double> s2;
  // Least-squares slope of S2 against x through the origin.
  long double c_hat = 0;
  // Pearson correlation of S2 against x over the samples.
  double s2_correlation = 0.0;
  // Growth exponent of max_{n<=x} |a_n b_n|.
  double alpha_hat = 0.0;
  // Growth exponent of max_{n<=x} |S1(n)|.
  double s1_exponent = 0.0;
  // Growth exponent of max_{n<=x} |S2(n) - c_hat n|.
  double err_exponent = 0.0;
  // Absolute floating-point error bounds on the final S1 and S2.
  long double s1_error_bound = 0;
  long double s2_error_bound = 0;
  bool s1_has_both_signs = false;
};

inline constexpr std::size_t kDefaultSamples = 64;

// terms[n - 1] = a_n b_n for 1 <= n <= terms.size(). Rejects fewer than 100 terms.
PartialSumFit partial_sums_from_terms(std::span<const long double> terms, std::size_t samples = kDefaultSamples);
// a_n b_n = c_n(f) c_n(g) / n^{(k1 + k2 - 2)/2}, n <= x_max.
PartialSumFit partial_sums(const FormPair& pair, std::uint64_t x_max, std::size_t samples = kDefaultSamples);

struct CriterionVerdict {
  bool pass = false;
  // c_hat <= 0: the second moment does not grow, no verdict is given.
  bool refused = false;
  // max(alpha + beta, gamma)
  double lhs = 0.0;
  // delta - lhs and 1 - delta; both positive on a pass.
  double lower_margin = 0.0;
  double upper_margin = 0.0;
  std::string reason;
};

// Empirical check of max(alpha + beta, gamma) < delta < 1 with alpha + beta < 1.
CriterionVerdict criterion_check(const PartialSumFit& fit, double delta);

std::string partial_sum_fit_json(const PartialSumFit& fit);

}  // namespace nvsign
