#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "nvsign/forms.hpp"

namespace nvsign {

// Exact Dirichlet series coefficients d(1), ..., d(P).
class DirichletCoeffs {
 public:
  explicit DirichletCoeffs(std::size_t length = 0) : values_(length + 1) {}

  std::size_t length() const { return values_.size() - 1; }
  // 1-based; n = 0 and n > length() throw std::out_of_range.
  const mpz_class& operator[](std::uint64_t n) const;
  mpz_class& operator[](std::uint64_t n);

  // 1 at n = 1, 0 elsewhere.
  static DirichletCoeffs identity(std::size_t length);

  bool operator==(const DirichletCoeffs& o) const { return values_ == o.values_; }

 private:
  std::vector<mpz_class> values_;
};

// c_n(f) c_n(g) if gcd(n, M) = 1, else 0, for n <= P.
DirichletCoeffs restricted_product_coeffs(const FormPair& pair, std::uint64_t M, std::size_t P);

// m^{k1 + k2 - 2} at n = m^2 with gcd(m, Q) = 1, else 0.
DirichletCoeffs zeta_factor_coeffs(int k1, int k2, std::uint64_t Q, std::size_t P);

// Exact Dirichlet convolution; lengths must agree.
DirichletCoeffs convolve(const DirichletCoeffs& d, const DirichletCoeffs& r);

struct PositivityReport {
  std::optional<std::uint64_t> first_negative;
  std::uint64_t negatives = 0;
  std::uint64_t positives = 0;
  std::uint64_t zeros = 0;
};

PositivityReport positivity_scan(const DirichletCoeffs& c);

struct RankinCoefficients {
  std::uint64_t M = 1;
  // Euler factors are removed at the primes dividing Q = N * M.
  std::uint64_t Q = 1;
  DirichletCoeffs coeffs;
};

// Coefficients of the shifted zeta factor times the restricted product.
RankinCoefficients rankin_coefficients(const FormPair& pair, std::uint64_t M, std::size_t P);

std::string positivity_report_json(const std::string& pair_label, const RankinCoefficients& rc,
                                   const PositivityReport& report);

}  // namespace nvsign
