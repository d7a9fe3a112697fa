#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "nvsign/qseries.hpp"

namespace nvsign {

enum class CoefficientSource { kFullList, kPrimeMap };

// A normalized form given by its exact Fourier coefficients c_n for
// 0 <= n < precision(). All sign and zero decisions downstream are made on
// these integers; the normalized a_n = c_n / n^{(k-1)/2} shares their sign.
class ModularForm {
 public:
  ModularForm(std::string label, std::uint64_t level, int weight, std::vector<mpz_class> coeffs,
              bool is_cm, CoefficientSource source);

  const std::string& label() const { return label_; }
  std::uint64_t level() const { return level_; }
  int weight() const { return weight_; }
  bool is_cm() const { return is_cm_; }
  CoefficientSource source() const { return source_; }
  // Coefficients are known for n < precision().
  std::size_t precision() const { return coeffs_.size(); }

  const mpz_class& c(std::uint64_t n) const;
  int sign(std::uint64_t n) const { return sgn(c(n)); }
  std::span<const mpz_class> coeffs() const { return coeffs_; }
  QSeries series() const { return QSeries(coeffs_); }

  // Same form restricted to n < precision.
  ModularForm truncated(std::size_t precision) const;

 private:
  std::string label_;
  std::uint64_t level_;
  int weight_;
  std::vector<mpz_class> coeffs_;
  bool is_cm_;
  CoefficientSource source_;
};

using FormPtr = std::shared_ptr<const ModularForm>;

class FormPair {
 public:
  FormPair(FormPtr f, FormPtr g);

  const ModularForm& f() const { return *f_; }
  const ModularForm& g() const { return *g_; }
  // lcm of the two levels.
  std::uint64_t level() const;
  std::size_t precision() const;
  std::string label() const { return f_->label() + "," + g_->label(); }

  mpz_class product(std::uint64_t n) const { return f_->c(n) * g_->c(n); }
  int sign(std::uint64_t n) const { return f_->sign(n) * g_->sign(n); }

 private:
  FormPtr f_;
  FormPtr g_;
};

struct MillerBasis {
  int weight = 0;
  // basis[i] = q^i + O(q^dim) for i < dim.
  std::vector<QSeries> basis;

  std::size_t dimension() const { return basis.size(); }
  // Forms with zero constant term: basis[1..].
  std::span<const QSeries> cusp() const;
};

// dim M_k(SL2(Z)) for even k >= 0.
std::size_t level1_dimension(int k);

// Echelonized integral basis of M_k(SL2(Z)) built from E4^a E6^b Delta^c.
MillerBasis miller_basis(int k, std::size_t precision);
// Only the cusp slice; skips the Eisenstein monomial.
std::vector<QSeries> miller_cusp_basis(int k, std::size_t precision);

// Delta computed as (E4^3 - E6^2) / 1728 with the division checked exact.
QSeries delta_from_eisenstein(std::size_t precision);

// Delta = q (sum_k (-1)^k (2k+1) q^{k(k+1)/2})^8, from Jacobi's identity
// for eta^3. The sparse starting series keeps this the fastest route at
// large precision.
QSeries delta_series(std::size_t precision);

// The unique normalized cusp eigenform of level 1 for
// k in {12, 16, 18, 20, 22, 26}, built as Delta * E4^a E6^b. Pass a
// precomputed delta_series() of at least the requested precision to
// share it across weights.
ModularForm level1_eigenform(int k, std::size_t precision, const QSeries* delta = nullptr);

// T_m on a level-1 q-expansion of weight k; output precision floor(P/m).
QSeries hecke_apply(const QSeries& f, int weight, std::uint64_t m);

// Extends prime coefficients multiplicatively to all n < precision.
// Missing primes below precision throw std::invalid_argument.
ModularForm hecke_fill(std::string label, std::uint64_t level, int weight,
                       const std::map<std::uint64_t, mpz_class>& prime_coeffs, std::size_t precision,
                       bool is_cm = false);

// The level-32 weight-2 CM newform eta(4z)^2 eta(8z)^2.
ModularForm cm32_form(std::size_t precision);

// First prime p < precision with p not dividing the level and
// c_p^2 > 4 p^{k-1}.
std::optional<std::uint64_t> deligne_violation(const ModularForm& f);

// First coprime pair (m, n), mn < limit, with c_{mn} != c_m c_n.
std::optional<std::pair<std::uint64_t, std::uint64_t>> multiplicativity_violation(const ModularForm& f,
                                                                                   std::uint64_t limit);

}  // namespace nvsign
