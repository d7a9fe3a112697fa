#include "nvsign/bfree.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "nvsign/arith.hpp"
#include "nvsign/errors.hpp"

namespace nvsign {

BFreeSet::BFreeSet(std::string descriptor, Enumerator enumerate, std::optional<std::uint64_t> max_bound)
    : descriptor_(std::move(descriptor)), enumerate_(std::move(enumerate)), max_bound_(max_bound) {}

BFreeSet BFreeSet::prime_squares() {
  return BFreeSet("{p^2 : p prime}", [](std::uint64_t bound) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t p : primes_up_to(iroot_floor(bound, 2))) out.push_back(p * p);
    return out;
  });
}

BFreeSet BFreeSet::from_list(std::vector<std::uint64_t> generators) {
  std::sort(generators.begin(), generators.end());
  generators.erase(std::unique(generators.begin(), generators.end()), generators.end());
  for (std::size_t i = 0; i < generators.size(); ++i) {
    if (generators[i] < 2) throw std::invalid_argument("B-free generators must exceed 1");
    for (std::size_t j = 0; j < i; ++j) {
      if (std::gcd(generators[i], generators[j]) != 1) {
        throw std::invalid_argument("B-free generators " + std::to_string(generators[j]) + " and " +
                                    std::to_string(generators[i]) + " are not coprime");
      }
    }
  }
  std::ostringstream desc;
  desc << "{";
  for (std::size_t i = 0; i < generators.size(); ++i) desc << (i ? "," : "") << generators[i];
  desc << "}";
  return BFreeSet(desc.str(), [gens = std::move(generators)](std::uint64_t bound) {
    return std::vector<std::uint64_t>(gens.begin(), std::upper_bound(gens.begin(), gens.end(), bound));
  });
}

std::vector<std::uint64_t> BFreeSet::generators(std::uint64_t bound) const {
  if (max_bound_ && bound > *max_bound_) {
    throw InsufficientPrecision("B-free set " + descriptor_ + " is only known up to " + std::to_string(*max_bound_) +
                                ", asked for " + std::to_string(bound));
  }
  return enumerate_(bound);
}

double BFreeSet::reciprocal_partial_sum(std::uint64_t bound) const {
  double sum = 0.0;
  for (std::uint64_t b : generators(bound)) sum += 1.0 / static_cast<double>(b);
  return sum;
}

std::optional<std::pair<std::uint64_t, std::uint64_t>> BFreeSet::coprimality_violation(std::uint64_t bound) const {
  const std::vector<std::uint64_t> gens = generators(bound);
  const std::uint64_t top = gens.empty() ? 1 : gens.back();
  const PrimeSieve sieve(std::min<std::uint64_t>(top, 1u << 24));
  // Pairwise coprime iff no prime divides two generators.
  std::map<std::uint64_t, std::uint64_t> owner;
  for (std::uint64_t b : gens) {
    for (auto [p, e] : sieve.factor(b)) {
      auto [it, inserted] = owner.emplace(p, b);
      if (!inserted) return std::make_pair(it->second, b);
    }
  }
  return std::nullopt;
}

BFreeSet BFreeSet::with_generator(std::uint64_t b) const {
  if (b < 2) throw std::invalid_argument("B-free generators must exceed 1");
  return BFreeSet(descriptor_ + " u {" + std::to_string(b) + "}",
                  [inner = enumerate_, b](std::uint64_t bound) {
                    std::vector<std::uint64_t> g = inner(bound);
                    if (b <= bound && !std::binary_search(g.begin(), g.end(), b)) {
                      g.insert(std::upper_bound(g.begin(), g.end(), b), b);
                    }
                    return g;
                  },
                  max_bound_);
}

PairBFreeSet build_from_pair(const FormPair& pair, std::uint64_t bound) {
  if (bound >= pair.precision()) {
    throw InsufficientPrecision("build_from_pair: need coefficients through " + std::to_string(bound) +
                                ", have precision " + std::to_string(pair.precision()));
  }
  std::vector<std::uint64_t> s_primes, gens;
  const std::uint64_t level = pair.level();
  for (std::uint64_t p : primes_up_to(bound)) {
    if (level % p == 0 || pair.sign(p) == 0) {
      s_primes.push_back(p);
      gens.push_back(p);
    } else if (p * p <= bound) {
      gens.push_back(p * p);
    }
  }
  std::sort(gens.begin(), gens.end());
  double serre_ratio = 0.0;
  if (bound >= 3) {
    const double x = static_cast<double>(bound);
    serre_ratio = static_cast<double>(s_primes.size()) / (x / std::log(x));
  }
  BFreeSet set(
      "S u {p^2 : p not in S}, S = {p : a_p b_p = 0} u {p | N} for pair (" + pair.label() + ")",
      [gens = std::move(gens)](std::uint64_t b) {
        return std::vector<std::uint64_t>(gens.begin(), std::upper_bound(gens.begin(), gens.end(), b));
      },
      bound);
  return {std::move(set), std::move(s_primes), bound, serre_ratio};
}

std::vector<std::uint64_t> IntervalSieve::members() const {
  std::vector<std::uint64_t> out;
  for (std::size_t i = 0; i < bitmap.size(); ++i) {
    if (bitmap[i]) out.push_back(x + 1 + i);
  }
  return out;
}

IntervalSieve sieve_interval(const BFreeSet& set, std::uint64_t x, std::uint64_t y, std::size_t segment) {
  if (y == 0) throw std::invalid_argument("sieve_interval: y must be at least 1");
  if (segment == 0) throw std::invalid_argument("sieve_interval: segment size must be positive");
  const std::uint64_t end = x + y;  // inclusive
  const std::vector<std::uint64_t> gens = set.generators(end);
  IntervalSieve out;
  out.x = x;
  out.y = y;
  out.bitmap.assign(y, true);
  std::vector<char> seg;
  for (std::uint64_t lo = x + 1; lo <= end; lo += segment) {
    const std::uint64_t hi = std::min<std::uint64_t>(end, lo + segment - 1);
    seg.assign(hi - lo + 1, 1);
    for (std::uint64_t b : gens) {
      if (b > hi) break;
      for (std::uint64_t m = ((lo + b - 1) / b) * b; m <= hi; m += b) seg[m - lo] = 0;
    }
    for (std::uint64_t n = lo; n <= hi; ++n) {
      const bool free = seg[n - lo] != 0;
      out.bitmap[n - x - 1] = free;
      out.count += free ? 1 : 0;
    }
  }
  return out;
}

ProgressionCount sieve_progression(const BFreeSet& set, std::uint64_t x, std::uint64_t y, std::uint64_t a,
                                   std::uint64_t q, double regime_epsilon) {
  if (q == 0 || a < 1 || a > q) throw std::invalid_argument("sieve_progression: need 1 <= a <= q");
  const std::uint64_t g = std::gcd(a, q);
  for (std::uint64_t b : set.generators(x + y)) {
    if (std::gcd(g, b) != 1) {
      throw std::invalid_argument("sieve_progression: gcd(gcd(a, q), b) != 1 for generator b = " + std::to_string(b));
    }
  }
  const IntervalSieve sieve = sieve_interval(set, x, y);
  ProgressionCount out;
  for (std::size_t i = 0; i < sieve.bitmap.size(); ++i) {
    const std::uint64_t n = x + 1 + i;
    if (sieve.bitmap[i] && n % q == a % q) ++out.count;
  }
  out.outside_regime = static_cast<double>(q) > std::pow(static_cast<double>(x), regime_epsilon);
  return out;
}

namespace {

constexpr char kRleMagic[4] = {'N', 'V', 'R', 'L'};
constexpr std::uint32_t kRleVersion = 1;

template <typename T>
void write_le(std::ostream& out, T v) {
  for (std::size_t i = 0; i < sizeof(T); ++i) out.put(static_cast<char>((static_cast<std::uint64_t>(v) >> (8 * i)) & 0xff));
}

template <typename T>
T read_le(std::istream& in) {
  std::uint64_t v = 0;
  for (std::size_t i = 0; i < sizeof(T); ++i) {
    const int c = in.get();
    if (c == EOF) throw std::runtime_error("bitmap file truncated");
    v |= static_cast<std::uint64_t>(static_cast<unsigned char>(c)) << (8 * i);
  }
  return static_cast<T>(v);
}

}  // namespace

void write_bitmap_rle(const std::filesystem::path& path, const IntervalSieve& sieve) {
  std::vector<std::uint64_t> runs;
  for (std::size_t i = 0; i < sieve.bitmap.size();) {
    std::size_t j = i;
    while (j < sieve.bitmap.size() && sieve.bitmap[j] == sieve.bitmap[i]) ++j;
    runs.push_back(j - i);
    i = j;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out.write(kRleMagic, 4);
  write_le<std::uint32_t>(out, kRleVersion);
  write_le<std::uint64_t>(out, sieve.x);
  write_le<std::uint64_t>(out, sieve.y);
  write_le<std::uint8_t>(out, !sieve.bitmap.empty() && sieve.bitmap[0] ? 1 : 0);
  write_le<std::uint64_t>(out, runs.size());
  for (std::uint64_t r : runs) write_le<std::uint64_t>(out, r);
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

IntervalSieve read_bitmap_rle(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  char magic[4];
  in.read(magic, 4);
  if (!in || std::memcmp(magic, kRleMagic, 4) != 0) throw std::runtime_error(path.string() + ": bad magic");
  if (read_le<std::uint32_t>(in) != kRleVersion) throw std::runtime_error(path.string() + ": unsupported version");
  IntervalSieve out;
  out.x = read_le<std::uint64_t>(in);
  out.y = read_le<std::uint64_t>(in);
  bool value = read_le<std::uint8_t>(in) != 0;
  const auto nruns = read_le<std::uint64_t>(in);
  for (std::uint64_t i = 0; i < nruns; ++i) {
    const auto len = read_le<std::uint64_t>(in);
    if (out.bitmap.size() + len > out.y) throw std::runtime_error(path.string() + ": runs exceed y");
    out.bitmap.insert(out.bitmap.end(), len, value);
    if (value) out.count += len;
    value = !value;
  }
  if (out.bitmap.size() != out.y) throw std::runtime_error(path.string() + ": runs do not cover y");
  return out;
}

std::string sieve_summary_json(const IntervalSieve& sieve) {
  std::ostringstream out;
  out.precision(17);
  out << "{\"x\":" << sieve.x << ",\"y\":" << sieve.y << ",\"count\":" << sieve.count
      << ",\"density\":" << sieve.density() << "}";
  return out.str();
}

}  // namespace nvsign
