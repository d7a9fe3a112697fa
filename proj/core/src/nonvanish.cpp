#include "nvsign/nonvanish.hpp"

#include <algorithm>
#include <iostream>
#include <set>
#include <stdexcept>

#include "json.hpp"
#include "nvsign/errors.hpp"
#include "nvsign/powersum.hpp"

namespace nvsign {

namespace {

unsigned mod4(const mpz_class& v) { return static_cast<unsigned>(mpz_fdiv_ui(v.get_mpz_t(), 4)); }

void require_level1(const ModularForm& f) {
  if (f.level() != 1) throw std::invalid_argument("form " + f.label() + " is not of level 1");
}

bool coprime_to(std::uint64_t m, const std::vector<std::uint64_t>& badset) {
  return std::none_of(badset.begin(), badset.end(), [&](std::uint64_t p) { return m % p == 0; });
}

const PowerSumParams& squares() {
  static const PowerSumParams p = PowerSumParams::make(2, 2);
  return p;
}

std::uint64_t multiplier_for(std::uint64_t K) {
  if (K == 0 || K % 64 != 0) throw std::invalid_argument("K must be a positive multiple of 64");
  return K / 64;
}

}  // namespace

CongruenceReport check_hatada(const ModularForm& f, std::uint64_t x_prime, std::uint64_t x_power) {
  require_level1(f);
  const std::uint64_t top = std::max(x_prime, x_power);
  if (top >= f.precision())
    throw InsufficientPrecision("form " + f.label() + " needs coefficients up to " + std::to_string(top));
  CongruenceReport rep;
  rep.label = f.label();
  rep.x_prime = x_prime;
  rep.x_power = x_power;
  for (std::uint64_t p : primes_up_to(top)) {
    if (p % 4 == 1 && p <= x_prime) {
      ++rep.primes_checked;
      unsigned res = mod4(f.c(p));
      if (res != 2) rep.violations.push_back({p, p, 1, res, 2});
    }
    if (p % 4 == 3 && p <= x_power / p) {
      std::uint64_t q = p * p;
      for (unsigned r = 2;; r += 2) {
        ++rep.powers_checked;
        unsigned res = mod4(f.c(q));
        if (res != 1) rep.violations.push_back({q, p, r, res, 1});
        if (q > x_power / (p * p)) break;
        q *= p * p;
      }
    }
  }
  return rep;
}

bool two_squares_criterion(const Factorization& fac) {
  return std::all_of(fac.begin(), fac.end(), [](const auto& pe) { return pe.first % 4 != 3 || pe.second % 2 == 0; });
}

TwoSquaresWitness two_squares_witness(std::uint64_t n, const std::vector<std::uint64_t>& badset, std::uint64_t K) {
  const auto cr = find_representation_coprime(n, squares(), badset, multiplier_for(K));
  TwoSquaresWitness w;
  w.n = n;
  w.m = cr.rep.m;
  w.A = cr.rep.A;
  w.B = cr.rep.B;
  w.K = K;
  w.factorization = factor_trial(w.m);
  if (!two_squares_criterion(w.factorization))
    throw TheoremViolation("m=" + std::to_string(w.m) + " fails the two-squares criterion");
  return w;
}

std::vector<std::uint64_t> empirical_badset(const ModularForm& f) {
  require_level1(f);
  const std::uint64_t P = f.precision();
  if (P < 3) return {};
  std::set<std::uint64_t> bad;
  for (const auto& v : check_hatada(f, P - 1, P - 1).violations) bad.insert(v.p);
  for (std::uint64_t p : primes_up_to(P - 1)) {
    if (p != 2 && p > (P - 1) / p) break;
    for (std::uint64_t q = p; q < P; q *= p) {
      if (f.c(q) == 0) {
        bad.insert(p);
        break;
      }
      if (q > (P - 1) / p) break;
    }
  }
  return {bad.begin(), bad.end()};
}

NonvanishingWitness simultaneous_witness(const std::vector<const ModularForm*>& forms, std::uint64_t n,
                                         const std::vector<std::uint64_t>& badset, std::uint64_t K) {
  if (forms.empty()) throw std::invalid_argument("no forms given");
  if (n == 0) throw std::invalid_argument("n must be positive");
  NonvanishingWitness w;
  w.n = n;
  w.K = K;
  w.badset = badset;
  for (const auto* f : forms) w.labels.push_back(f->label());

  auto accept = [&](std::uint64_t m) {
    for (const auto* f : forms)
      if (m >= f->precision())
        throw InsufficientPrecision("form " + f->label() + " needs coefficients up to " + std::to_string(m));
    for (const auto* f : forms)
      if (f->c(m) == 0) {
        w.escalations.push_back(m);
        std::cerr << "warning: vanishing coefficient at witness candidate m=" << m << " for " << f->label() << '\n';
        return false;
      }
    w.m = m;
    w.gap = m - n;
    for (const auto* f : forms) w.coefficients.push_back(f->c(m));
    return true;
  };

  const auto first = two_squares_witness(n, badset, K);
  if (accept(first.m)) return w;
  const mpz_class Kz(static_cast<unsigned long>(K));
  for (const auto& cand : window_candidates(n, squares(), Kz)) {
    if (cand.m == first.m || !coprime_to(cand.m, badset)) continue;
    if (accept(cand.m)) return w;
  }
  throw SearchExhausted("no nonvanishing witness in [n, n + K n^{1/4}] for n=" + std::to_string(n));
}

NonvanishingWitness nonvanishing_witness(const ModularForm& f, std::uint64_t n, const std::vector<std::uint64_t>& badset,
                                         std::uint64_t K) {
  require_level1(f);
  return simultaneous_witness({&f}, n, badset, K);
}

NonvanishingWitness nonvanishing_witness(const ModularForm& f, std::uint64_t n) {
  return nonvanishing_witness(f, n, empirical_badset(f));
}

std::string witness_json(const NonvanishingWitness& w) {
  nlohmann::json j;
  j["n"] = w.n;
  j["m"] = w.m;
  j["gap"] = w.gap;
  j["K"] = w.K;
  j["badset"] = w.badset;
  j["escalations"] = w.escalations;
  auto& c = j["coefficients"] = nlohmann::json::object();
  for (std::size_t i = 0; i < w.labels.size(); ++i) c[w.labels[i]] = w.coefficients[i].get_str();
  return j.dump();
}

std::string congruence_report_json(const CongruenceReport& r) {
  nlohmann::json j;
  j["label"] = r.label;
  j["x_prime"] = r.x_prime;
  j["x_power"] = r.x_power;
  j["primes_checked"] = r.primes_checked;
  j["powers_checked"] = r.powers_checked;
  auto& v = j["violations"] = nlohmann::json::array();
  for (const auto& e : r.violations)
    v.push_back({{"index", e.index}, {"p", e.p}, {"r", e.r}, {"residue", e.residue}, {"expected", e.expected}});
  return j.dump(2);
}

}  // namespace nvsign
