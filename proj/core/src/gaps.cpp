#include "nvsign/gaps.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

#include "nvsign/arith.hpp"
#include "nvsign/errors.hpp"

namespace nvsign {

namespace {

using SignFn = std::function<int(std::uint64_t)>;

GapRecord search_gap(const SignFn& sign, std::size_t precision, std::uint64_t n, const std::string& context) {
  if (n == 0) throw std::invalid_argument("gap search: n must be positive");
  auto ceiling = static_cast<std::uint64_t>(std::ceil(std::pow(static_cast<double>(n), 0.9)));
  ceiling = std::max<std::uint64_t>(ceiling, 1);
  std::uint64_t j = 0;
  while (true) {
    for (; j <= ceiling; ++j) {
      if (n + j >= precision) {
        throw InsufficientPrecision("gap search for " + context + " at n=" + std::to_string(n) +
                                    " needs coefficients beyond " + std::to_string(precision));
      }
      if (sign(n + j) != 0) return GapRecord{n, j, n + j, context};
    }
    if (ceiling >= n) break;
    ceiling = std::min<std::uint64_t>(2 * ceiling, n);
  }
  throw SearchExhausted("gap search for " + context + " at n=" + std::to_string(n) + " reached the hard stop " +
                        std::to_string(n));
}

std::vector<GapRecord> scan(const SignFn& sign, std::size_t precision, std::uint64_t from, std::uint64_t to,
                            const std::string& context) {
  if (from == 0 || from > to) throw std::invalid_argument("scan_gaps: need 1 <= from <= to");
  // The last record may need a witness beyond `to`; extend on demand.
  std::uint64_t next = 0;
  bool have_next = false;
  for (std::uint64_t m = to; m < precision; ++m) {
    if (sign(m) != 0) {
      next = m;
      have_next = true;
      break;
    }
  }
  if (!have_next) {
    throw InsufficientPrecision("scan_gaps for " + context + ": no nonzero target at or after " + std::to_string(to) +
                                " below precision " + std::to_string(precision));
  }
  std::vector<GapRecord> out(to - from + 1);
  for (std::uint64_t n = to + 1; n-- > from;) {
    if (sign(n) != 0) next = n;
    out[n - from] = GapRecord{n, next - n, next, context};
  }
  return out;
}

double log_of(std::uint64_t v) { return std::log(static_cast<double>(v)); }

}  // namespace

GapRecord gap_single(const ModularForm& f, std::uint64_t n) {
  return search_gap([&f](std::uint64_t m) { return f.sign(m); }, f.precision(), n, f.label());
}

GapRecord gap_pair(const FormPair& pair, std::uint64_t n) {
  return search_gap([&pair](std::uint64_t m) { return pair.sign(m); }, pair.precision(), n, pair.label());
}

std::vector<GapRecord> scan_gaps(const ModularForm& f, std::uint64_t from, std::uint64_t to) {
  return scan([&f](std::uint64_t m) { return f.sign(m); }, f.precision(), from, to, f.label());
}

std::vector<GapRecord> scan_gaps(const FormPair& pair, std::uint64_t from, std::uint64_t to) {
  return scan([&pair](std::uint64_t m) { return pair.sign(m); }, pair.precision(), from, to, pair.label());
}

namespace {

ZeroPrimeCount count_primes(const SignFn& zero_test, std::size_t precision, std::uint64_t x) {
  if (x >= precision) {
    throw InsufficientPrecision("prime count to " + std::to_string(x) + " needs precision beyond " +
                                std::to_string(precision));
  }
  ZeroPrimeCount out;
  out.x = x;
  const auto primes = primes_up_to(x);
  out.pi_x = primes.size();
  for (std::uint64_t p : primes) out.count += zero_test(p) ? 1 : 0;
  if (x >= 3) {
    const double lx = log_of(x);
    out.serre_ratio = static_cast<double>(out.count) / (static_cast<double>(x) / std::pow(lx, 1.5));
  }
  if (out.pi_x > 0) out.prime_fraction = static_cast<double>(out.count) / static_cast<double>(out.pi_x);
  return out;
}

}  // namespace

ZeroPrimeCount serre_zero_count(const ModularForm& f, std::uint64_t x) {
  return count_primes([&f](std::uint64_t p) { return f.sign(p) == 0; }, f.precision(), x);
}

ZeroPrimeCount nonvanishing_prime_count(const FormPair& pair, std::uint64_t x) {
  return count_primes([&pair](std::uint64_t p) { return pair.sign(p) != 0; }, pair.precision(), x);
}

ExponentFit exponent_fit(std::span<const GapRecord> records) {
  ExponentFit out;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const auto& r : records) {
    if (r.gap == 0) continue;
    const double lx = log_of(r.n);
    const double ly = log_of(r.gap);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
    ++out.nonzero;
    out.envelope = std::max(out.envelope, static_cast<double>(r.gap) / std::pow(static_cast<double>(r.n), 7.0 / 17.0));
  }
  if (out.nonzero < 10) {
    out.envelope = 0.0;
    return out;
  }
  const auto k = static_cast<double>(out.nonzero);
  const double denom = k * sxx - sx * sx;
  if (denom <= 0) return out;
  out.degenerate = false;
  out.slope = (k * sxy - sx * sy) / denom;
  return out;
}

void write_gap_csv(std::ostream& out, std::span<const GapRecord> records, const ModularForm& f, const ModularForm* g) {
  out << "n,gap,witness,c_witness_f,c_witness_g\n";
  for (const auto& r : records) {
    out << r.n << ',' << r.gap << ',' << r.witness << ',' << f.c(r.witness).get_str() << ',';
    if (g != nullptr) out << g->c(r.witness).get_str();
    out << '\n';
  }
}

}  // namespace nvsign
