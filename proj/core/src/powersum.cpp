#include "nvsign/powersum.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <string>

#include "nvsign/arith.hpp"
#include "nvsign/errors.hpp"

namespace nvsign {

namespace {

mpz_class mpz_u64(std::uint64_t v) {
  mpz_class out;
  mpz_import(out.get_mpz_t(), 1, -1, sizeof(v), 0, 0, &v);
  return out;
}

std::uint64_t pow_u64(std::uint64_t base, unsigned exp) {
  std::uint64_t out = 0;
  if (!checked_pow(base, exp, out)) {
    throw std::overflow_error("power " + std::to_string(base) + "^" + std::to_string(exp) + " exceeds 64 bits");
  }
  return out;
}

mpz_class pow_mpz(const mpz_class& base, unsigned long exp) {
  mpz_class out;
  mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), exp);
  return out;
}

bool coprime_to(std::uint64_t m, const std::vector<std::uint64_t>& badset) {
  return std::none_of(badset.begin(), badset.end(), [m](std::uint64_t p) { return m % p == 0; });
}

// Exact comparison of (m - n)^{rs} against K^{rs} n^{(r-1)(s-1)}.
int window_compare(std::uint64_t n, std::uint64_t m, const PowerSumParams& params, const mpz_class& K) {
  const unsigned long rs = params.r * params.s;
  const unsigned long e = (params.r - 1) * (params.s - 1);
  const mpz_class lhs = pow_mpz(mpz_u64(m - n), rs);
  const mpz_class rhs = pow_mpz(K, rs) * pow_mpz(mpz_u64(n), e);
  return cmp(lhs, rhs);
}

}  // namespace

PowerSumParams PowerSumParams::make(unsigned r, unsigned s) {
  if (r < 2 || s < 2) throw std::invalid_argument("PowerSumParams: r and s must be at least 2");
  if (r * s > 62) throw std::invalid_argument("PowerSumParams: r*s too large");
  PowerSumParams p;
  p.r = r;
  p.s = s;
  p.alpha = mpq_class((r - 1) * (s - 1), r * s);
  p.alpha.canonicalize();
  mpz_class two_rs;
  mpz_ui_pow_ui(two_rs.get_mpz_t(), 2, r * s);
  p.C = two_rs * (r * s);
  return p;
}

bool in_window(std::uint64_t n, std::uint64_t m, const PowerSumParams& params, const mpz_class& K) {
  return m >= n && window_compare(n, m, params, K) <= 0;
}

mpz_class ceil_n_alpha(std::uint64_t n, const PowerSumParams& params) {
  const unsigned long rs = params.r * params.s;
  const mpz_class x = pow_mpz(mpz_u64(n), (params.r - 1) * (params.s - 1));
  mpz_class root;
  const int exact = mpz_root(root.get_mpz_t(), x.get_mpz_t(), rs);
  return exact ? root : root + 1;
}

Representation find_representation(std::uint64_t n, const PowerSumParams& params) {
  if (n == 0) throw std::invalid_argument("find_representation: n must be positive");
  const std::uint64_t t = iroot_floor(n, params.s);
  const std::uint64_t ts = pow_u64(t, params.s);
  const std::uint64_t u = n - ts;
  const std::uint64_t A = std::max<std::uint64_t>(1, iroot_ceil(u, params.r));
  Representation rep{n, pow_u64(A, params.r) + ts, A, t, false};
  const int c = rep.m >= n ? window_compare(n, rep.m, params, params.C) : 1;
  if (c > 0) {
    throw TheoremViolation("power-sum window violated: n=" + std::to_string(n) + " m=" + std::to_string(rep.m) +
                           " r=" + std::to_string(params.r) + " s=" + std::to_string(params.s));
  }
  rep.boundary_hit = rep.m == n || c == 0;
  return rep;
}

std::optional<std::uint64_t> oracle_min_representation(std::uint64_t n, unsigned r, unsigned s, std::uint64_t limit) {
  if (limit < n) throw std::invalid_argument("oracle_min_representation: limit must be >= n");
  std::optional<std::uint64_t> best;
  std::uint64_t ar = 0;
  for (std::uint64_t A = 1; checked_pow(A, r, ar) && ar < limit; ++A) {
    std::uint64_t bs = 0;
    for (std::uint64_t B = 1; checked_pow(B, s, bs) && ar + bs < limit; ++B) {
      const std::uint64_t v = ar + bs;
      if (best && v >= *best) break;
      if (v >= n) best = v;
    }
  }
  return best;
}

GapCertainty interval_longer_than_one(std::uint64_t n, const PowerSumParams& params) {
  const std::uint64_t t = iroot_floor(n, params.s);
  const mpz_class u = mpz_u64(n - pow_u64(t, params.s));
  const unsigned long rs = params.r * params.s;
  const mpz_class x = pow_mpz(mpz_u64(n), (params.r - 1) * (params.s - 1));
  mpz_class alpha_floor;
  const bool exact = mpz_root(alpha_floor.get_mpz_t(), x.get_mpz_t(), rs) != 0;
  const mpz_class alpha_ceil = exact ? alpha_floor : alpha_floor + 1;
  mpz_class root_lo;
  const bool u_exact = mpz_root(root_lo.get_mpz_t(), u.get_mpz_t(), params.r) != 0;
  const mpz_class root_hi = u_exact ? root_lo : root_lo + 1;
  // x1 lies in [root_lo, root_hi]; x2^r lies in [u + C floor, u + C ceil].
  if (u + params.C * alpha_floor > pow_mpz(root_hi + 1, params.r)) return GapCertainty::kProvenLonger;
  if (u + params.C * alpha_ceil <= pow_mpz(root_lo + 1, params.r)) return GapCertainty::kProvenShorter;
  return GapCertainty::kUndecided;
}

mpz_class normform_constant(std::uint64_t D) { return mpz_u64(D) * 64; }

NormFormRepresentation find_normform(std::uint64_t n, std::uint64_t D) {
  if (n == 0) throw std::invalid_argument("find_normform: n must be positive");
  if (D == 0 || !is_squarefree(D)) throw std::invalid_argument("find_normform: D must be a squarefree positive integer");
  NormFormRepresentation out;
  out.n = n;
  out.D = D;
  out.C_prime = normform_constant(D);
  out.b = std::max<std::uint64_t>(1, iroot_floor(n / D, 2));
  const std::uint64_t second = D * out.b * out.b;
  const std::uint64_t u = n > second ? n - second : 0;
  out.a = std::max<std::uint64_t>(1, iroot_ceil(u, 2));
  out.m = out.a * out.a + second;
  const PowerSumParams shape = PowerSumParams::make(2, 2);
  if (!in_window(n, out.m, shape, out.C_prime)) {
    throw TheoremViolation("norm-form window violated: n=" + std::to_string(n) + " D=" + std::to_string(D) +
                           " m=" + std::to_string(out.m));
  }
  return out;
}

std::optional<std::uint64_t> oracle_min_normform(std::uint64_t n, std::uint64_t D, std::uint64_t limit) {
  std::optional<std::uint64_t> best;
  for (std::uint64_t a = 1; a * a < limit; ++a) {
    for (std::uint64_t b = 1; a * a + D * b * b < limit; ++b) {
      const std::uint64_t v = a * a + D * b * b;
      if (best && v >= *best) break;
      if (v >= n) best = v;
    }
  }
  return best;
}

std::uint64_t default_coprime_multiplier(const std::vector<std::uint64_t>& badset) {
  if (badset.size() >= 32) throw std::invalid_argument("badset too large");
  return std::uint64_t{1} << badset.size();
}

std::vector<Representation> window_candidates(std::uint64_t n, const PowerSumParams& params, const mpz_class& K) {
  const mpz_class width = K * ceil_n_alpha(n, params);
  const mpz_class hi_z = mpz_u64(n) + width;
  const std::uint64_t hi = hi_z.fits_ulong_p() ? hi_z.get_ui() : std::numeric_limits<std::uint64_t>::max();
  std::vector<Representation> out;
  std::uint64_t bs = 0;
  for (std::uint64_t B = 1; checked_pow(B, params.s, bs) && bs < hi; ++B) {
    const std::uint64_t need = n > bs ? n - bs : 1;
    std::uint64_t ar = 0;
    for (std::uint64_t A = std::max<std::uint64_t>(1, iroot_ceil(need, params.r));
         checked_pow(A, params.r, ar) && ar <= hi - bs; ++A) {
      const std::uint64_t m = ar + bs;
      const int c = window_compare(n, m, params, K);
      if (c > 0) break;
      out.push_back({n, m, A, B, m == n || c == 0});
    }
  }
  std::sort(out.begin(), out.end(), [](const Representation& x, const Representation& y) {
    return x.m != y.m ? x.m < y.m : x.A < y.A;
  });
  out.erase(std::unique(out.begin(), out.end(), [](const Representation& x, const Representation& y) { return x.m == y.m; }),
            out.end());
  return out;
}

CoprimeRepresentation find_representation_coprime(std::uint64_t n, const PowerSumParams& params,
                                                  const std::vector<std::uint64_t>& badset,
                                                  std::optional<std::uint64_t> multiplier) {
  CoprimeRepresentation out;
  out.multiplier = multiplier.value_or(default_coprime_multiplier(badset));
  if (out.multiplier == 0) throw std::invalid_argument("find_representation_coprime: multiplier must be positive");
  out.K = params.C * mpz_u64(out.multiplier);
  const Representation direct = find_representation(n, params);
  if (coprime_to(direct.m, badset)) {
    out.rep = direct;
    out.window_used = direct.m - n;
    return out;
  }
  for (const auto& cand : window_candidates(n, params, out.K)) {
    if (!coprime_to(cand.m, badset)) continue;
    out.rep = cand;
    out.window_used = cand.m - n;
    return out;
  }
  throw SearchExhausted("no A^r + B^s coprime to the bad primes in [n, n + K n^alpha] for n=" + std::to_string(n) +
                        ", K=" + out.K.get_str());
}

}  // namespace nvsign
