#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include <gmpxx.h>

namespace nvsign {

// Truncated q-expansion c_0 + c_1 q + ... + c_{P-1} q^{P-1} + O(q^P) with
// exact integer coefficients. Binary operations return a series at the
// smaller of the two operand precisions.
class QSeries {
 public:
  QSeries() = default;
  // Zero series of the given precision.
  explicit QSeries(std::size_t precision);
  explicit QSeries(std::vector<mpz_class> coeffs);

  static QSeries one(std::size_t precision);
  static QSeries monomial(std::size_t exponent, std::size_t precision);

  std::size_t precision() const { return coeffs_.size(); }
  const mpz_class& operator[](std::size_t n) const;
  std::span<const mpz_class> coeffs() const { return coeffs_; }

  QSeries truncated(std::size_t precision) const;
  // f(q) -> f(q^d), keeping the precision.
  QSeries dilated(std::size_t d) const;
  // f -> q^e f, keeping the precision.
  QSeries shifted(std::size_t e) const;
  // Exact division of every coefficient; throws std::domain_error otherwise.
  QSeries exact_div(const mpz_class& divisor) const;

  QSeries& operator+=(const QSeries& rhs);
  QSeries& operator-=(const QSeries& rhs);
  QSeries& operator*=(const mpz_class& scalar);

  friend QSeries operator+(QSeries lhs, const QSeries& rhs) { return lhs += rhs; }
  friend QSeries operator-(QSeries lhs, const QSeries& rhs) { return lhs -= rhs; }
  friend QSeries operator*(QSeries lhs, const mpz_class& s) { return lhs *= s; }
  friend bool operator==(const QSeries& a, const QSeries& b) { return a.coeffs_ == b.coeffs_; }

 private:
  std::vector<mpz_class> coeffs_;
};

// Precision above which mul() switches to Kronecker substitution.
inline constexpr std::size_t kSchoolbookThreshold = 32;

QSeries mul(const QSeries& a, const QSeries& b);
QSeries operator*(const QSeries& a, const QSeries& b);
QSeries mul_schoolbook(const QSeries& a, const QSeries& b);
// Packs both operands into single big integers, multiplies with GMP and
// unpacks balanced digits. Bit-exact with mul_schoolbook.
QSeries mul_kronecker(const QSeries& a, const QSeries& b);

QSeries pow(const QSeries& f, unsigned exponent);
// 1/f to the precision of f. Requires constant term +1 or -1.
QSeries invert(const QSeries& f);

// prod_{n>=1} (1 - q^n) to precision P, from the pentagonal number theorem.
QSeries euler_product(std::size_t precision);

struct EtaFactor {
  std::uint64_t scale;   // d in eta(d z)
  std::int64_t exponent; // r_d, nonzero
};

class EtaQuotient {
 public:
  explicit EtaQuotient(std::vector<EtaFactor> factors);

  const std::vector<EtaFactor>& factors() const { return factors_; }
  // sum d * r_d; the q-order is this over 24.
  std::int64_t weighted_order() const;

 private:
  std::vector<EtaFactor> factors_;
};

// q^{(sum d r_d)/24} prod_d prod_n (1 - q^{dn})^{r_d} to precision P.
// Throws std::invalid_argument unless the leading exponent is a
// nonnegative integer.
QSeries eta_quotient_expand(const EtaQuotient& eq, std::size_t precision);

// B_k as an exact rational.
mpq_class bernoulli(unsigned k);

// sigma_e(n) for 0 <= n < P (entry 0 is zero).
std::vector<mpz_class> divisor_power_sums(unsigned e, std::size_t precision);

// D_k * E_k where E_k = 1 - (2k/B_k) sum sigma_{k-1}(n) q^n and D_k is
// the smallest positive integer making every coefficient integral; D_k = 1
// for k in {4, 6, 8, 10, 14}. Rejects odd k and k < 4.
QSeries eisenstein(int k, std::size_t precision);
mpz_class eisenstein_denominator(int k);

}  // namespace nvsign
