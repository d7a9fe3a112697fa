#include "nvsign/qseries.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>
#include <string>

#include "nvsign/errors.hpp"

namespace nvsign {

QSeries::QSeries(std::size_t precision) : coeffs_(precision) {}

QSeries::QSeries(std::vector<mpz_class> coeffs) : coeffs_(std::move(coeffs)) {}

QSeries QSeries::one(std::size_t precision) { return monomial(0, precision); }

QSeries QSeries::monomial(std::size_t exponent, std::size_t precision) {
  QSeries out(precision);
  if (exponent < precision) out.coeffs_[exponent] = 1;
  return out;
}

const mpz_class& QSeries::operator[](std::size_t n) const {
  if (n >= coeffs_.size()) {
    throw InsufficientPrecision("QSeries: index " + std::to_string(n) + " beyond precision " +
                                std::to_string(coeffs_.size()));
  }
  return coeffs_[n];
}

QSeries QSeries::truncated(std::size_t precision) const {
  if (precision > coeffs_.size()) {
    throw InsufficientPrecision("QSeries::truncated: cannot raise precision " +
                                std::to_string(coeffs_.size()) + " to " + std::to_string(precision));
  }
  return QSeries(std::vector<mpz_class>(coeffs_.begin(), coeffs_.begin() + precision));
}

QSeries QSeries::dilated(std::size_t d) const {
  if (d == 0) throw std::invalid_argument("QSeries::dilated: scale must be positive");
  QSeries out(precision());
  for (std::size_t i = 0; i * d < precision(); ++i) out.coeffs_[i * d] = coeffs_[i];
  return out;
}

QSeries QSeries::shifted(std::size_t e) const {
  QSeries out(precision());
  for (std::size_t i = 0; i + e < precision(); ++i) out.coeffs_[i + e] = coeffs_[i];
  return out;
}

QSeries QSeries::exact_div(const mpz_class& divisor) const {
  if (divisor == 0) throw std::domain_error("QSeries::exact_div: division by zero");
  QSeries out(precision());
  for (std::size_t i = 0; i < precision(); ++i) {
    if (!mpz_divisible_p(coeffs_[i].get_mpz_t(), divisor.get_mpz_t())) {
      throw std::domain_error("QSeries::exact_div: coefficient " + std::to_string(i) +
                              " not divisible by " + divisor.get_str());
    }
    mpz_divexact(out.coeffs_[i].get_mpz_t(), coeffs_[i].get_mpz_t(), divisor.get_mpz_t());
  }
  return out;
}

QSeries& QSeries::operator+=(const QSeries& rhs) {
  coeffs_.resize(std::min(precision(), rhs.precision()));
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += rhs.coeffs_[i];
  return *this;
}

QSeries& QSeries::operator-=(const QSeries& rhs) {
  coeffs_.resize(std::min(precision(), rhs.precision()));
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= rhs.coeffs_[i];
  return *this;
}

QSeries& QSeries::operator*=(const mpz_class& scalar) {
  for (auto& c : coeffs_) c *= scalar;
  return *this;
}

QSeries mul_schoolbook(const QSeries& a, const QSeries& b) {
  const std::size_t p = std::min(a.precision(), b.precision());
  std::vector<std::size_t> nonzero_b;
  for (std::size_t j = 0; j < p; ++j) {
    if (b[j] != 0) nonzero_b.push_back(j);
  }
  std::vector<mpz_class> out(p);
  for (std::size_t i = 0; i < p; ++i) {
    const mpz_class& ai = a[i];
    if (ai == 0) continue;
    for (std::size_t j : nonzero_b) {
      if (i + j >= p) break;
      mpz_addmul(out[i + j].get_mpz_t(), ai.get_mpz_t(), b[j].get_mpz_t());
    }
  }
  return QSeries(std::move(out));
}

namespace {

std::size_t max_bits(std::span<const mpz_class> c, std::size_t len) {
  std::size_t bits = 0;
  for (std::size_t i = 0; i < len; ++i) {
    if (c[i] != 0) bits = std::max(bits, mpz_sizeinbase(c[i].get_mpz_t(), 2));
  }
  return bits;
}

std::size_t effective_length(std::span<const mpz_class> c, std::size_t len) {
  while (len > 0 && c[len - 1] == 0) --len;
  return len;
}

// Evaluates the polynomial at 2^(64*slot_limbs).
mpz_class pack(std::span<const mpz_class> c, std::size_t len, std::size_t slot_limbs) {
  std::vector<mp_limb_t> pos(len * slot_limbs, 0);
  std::vector<mp_limb_t> neg(len * slot_limbs, 0);
  bool any_neg = false;
  for (std::size_t i = 0; i < len; ++i) {
    const int s = sgn(c[i]);
    if (s == 0) continue;
    const std::size_t n = mpz_size(c[i].get_mpz_t());
    const mp_limb_t* src = mpz_limbs_read(c[i].get_mpz_t());
    mp_limb_t* dst = (s > 0 ? pos.data() : neg.data()) + i * slot_limbs;
    std::copy(src, src + n, dst);
    any_neg = any_neg || s < 0;
  }
  mpz_t view;
  mpz_class out(mpz_roinit_n(view, pos.data(), static_cast<mp_size_t>(pos.size())));
  if (any_neg) {
    mpz_t neg_view;
    mpz_sub(out.get_mpz_t(), out.get_mpz_t(),
            mpz_roinit_n(neg_view, neg.data(), static_cast<mp_size_t>(neg.size())));
  }
  return out;
}

std::vector<mpz_class> unpack(const mpz_class& value, std::size_t count, std::size_t slot_limbs) {
  std::vector<mpz_class> out(count);
  const int s = sgn(value);
  if (s == 0) return out;
  const std::size_t n = mpz_size(value.get_mpz_t());
  const mp_limb_t* limbs = mpz_limbs_read(value.get_mpz_t());
  const mp_bitcnt_t slot_bits = static_cast<mp_bitcnt_t>(64 * slot_limbs);
  mpz_class half;
  mpz_class full;
  mpz_setbit(half.get_mpz_t(), slot_bits - 1);
  mpz_setbit(full.get_mpz_t(), slot_bits);
  bool carry = false;
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t begin = i * slot_limbs;
    mpz_class digit;
    if (begin < n) {
      const std::size_t width = std::min(slot_limbs, n - begin);
      mpz_t view;
      digit = mpz_class(mpz_roinit_n(view, limbs + begin, static_cast<mp_size_t>(width)));
    }
    if (carry) digit += 1;
    if (digit >= half) {
      digit -= full;
      carry = true;
    } else {
      carry = false;
    }
    if (s < 0) digit = -digit;
    out[i] = std::move(digit);
  }
  return out;
}

}  // namespace

QSeries mul_kronecker(const QSeries& a, const QSeries& b) {
  const std::size_t p = std::min(a.precision(), b.precision());
  const std::size_t la = effective_length(a.coeffs(), p);
  const std::size_t lb = effective_length(b.coeffs(), p);
  if (la == 0 || lb == 0) return QSeries(p);
  const std::size_t bits = max_bits(a.coeffs(), la) + max_bits(b.coeffs(), lb) +
                           static_cast<std::size_t>(std::bit_width(std::min(la, lb))) + 2;
  const std::size_t slot_limbs = (bits + 63) / 64;
  const mpz_class pa = pack(a.coeffs(), la, slot_limbs);
  mpz_class product;
  if (&a == &b) {
    mpz_mul(product.get_mpz_t(), pa.get_mpz_t(), pa.get_mpz_t());
  } else {
    const mpz_class pb = pack(b.coeffs(), lb, slot_limbs);
    mpz_mul(product.get_mpz_t(), pa.get_mpz_t(), pb.get_mpz_t());
  }
  return QSeries(unpack(product, p, slot_limbs));
}

QSeries mul(const QSeries& a, const QSeries& b) {
  if (std::min(a.precision(), b.precision()) > kSchoolbookThreshold) return mul_kronecker(a, b);
  return mul_schoolbook(a, b);
}

QSeries operator*(const QSeries& a, const QSeries& b) { return mul(a, b); }

QSeries pow(const QSeries& f, unsigned exponent) {
  QSeries result = QSeries::one(f.precision());
  if (exponent == 0) return result;
  QSeries base = f;
  bool first = true;
  while (true) {
    if (exponent & 1u) {
      result = first ? base : mul(result, base);
      first = false;
    }
    exponent >>= 1;
    if (exponent == 0) break;
    base = mul(base, base);
  }
  return result;
}

namespace {

QSeries padded(const QSeries& f, std::size_t precision) {
  std::vector<mpz_class> c(precision);
  for (std::size_t i = 0; i < std::min(precision, f.precision()); ++i) c[i] = f[i];
  return QSeries(std::move(c));
}

}  // namespace

QSeries invert(const QSeries& f) {
  const std::size_t p = f.precision();
  if (p == 0) return f;
  if (f[0] != 1 && f[0] != -1) {
    throw std::invalid_argument("invert: constant term must be +1 or -1, got " + f[0].get_str());
  }
  // Newton iteration g <- g (2 - f g), doubling the correct precision.
  QSeries g = QSeries::one(1) * f[0];
  std::size_t have = 1;
  while (have < p) {
    const std::size_t next = std::min(2 * have, p);
    QSeries gp = padded(g, next);
    QSeries e = mul(f.truncated(next), gp) * mpz_class(-1);
    e = e + QSeries::monomial(0, next) * mpz_class(2);
    g = mul(gp, e);
    have = next;
  }
  return g;
}

QSeries euler_product(std::size_t precision) {
  std::vector<mpz_class> c(precision);
  if (precision > 0) c[0] = 1;
  for (std::uint64_t k = 1;; ++k) {
    const std::uint64_t g1 = k * (3 * k - 1) / 2;
    const std::uint64_t g2 = k * (3 * k + 1) / 2;
    if (g1 >= precision) break;
    const int s = (k % 2 == 0) ? 1 : -1;
    c[g1] = s;
    if (g2 < precision) c[g2] = s;
  }
  return QSeries(std::move(c));
}

EtaQuotient::EtaQuotient(std::vector<EtaFactor> factors) : factors_(std::move(factors)) {
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    if (factors_[i].scale == 0) throw std::invalid_argument("EtaQuotient: scale must be positive");
    if (factors_[i].exponent == 0) throw std::invalid_argument("EtaQuotient: exponent must be nonzero");
    for (std::size_t j = 0; j < i; ++j) {
      if (factors_[j].scale == factors_[i].scale) {
        throw std::invalid_argument("EtaQuotient: repeated scale " + std::to_string(factors_[i].scale));
      }
    }
  }
}

std::int64_t EtaQuotient::weighted_order() const {
  std::int64_t total = 0;
  for (const auto& f : factors_) total += static_cast<std::int64_t>(f.scale) * f.exponent;
  return total;
}

QSeries eta_quotient_expand(const EtaQuotient& eq, std::size_t precision) {
  if (precision == 0) throw std::invalid_argument("eta_quotient_expand: precision must be positive");
  const std::int64_t order = eq.weighted_order();
  if (order < 0 || order % 24 != 0) {
    throw std::invalid_argument("eta_quotient_expand: leading power " + std::to_string(order) +
                                "/24 is not a nonnegative integer");
  }
  const auto lead = static_cast<std::size_t>(order / 24);
  if (lead >= precision) return QSeries(precision);
  const std::size_t body = precision - lead;

  QSeries product = QSeries::one(body);
  for (const auto& f : eq.factors()) {
    // Factors (1 - q^{dn}) with dn >= body cannot reach the retained range.
    const std::size_t base_precision = (body + f.scale - 1) / f.scale;
    QSeries base = euler_product(base_precision);
    if (f.exponent < 0) base = invert(base);
    const auto e = static_cast<unsigned>(f.exponent < 0 ? -f.exponent : f.exponent);
    QSeries powered = pow(base, e);
    std::vector<mpz_class> dil(body);
    for (std::size_t i = 0; i < base_precision && i * f.scale < body; ++i) dil[i * f.scale] = powered[i];
    product = mul(product, QSeries(std::move(dil)));
  }
  std::vector<mpz_class> out(precision);
  for (std::size_t i = 0; i < body; ++i) out[i + lead] = product[i];
  return QSeries(std::move(out));
}

mpq_class bernoulli(unsigned k) {
  std::vector<mpq_class> b(k + 1);
  b[0] = 1;
  for (unsigned m = 1; m <= k; ++m) {
    mpq_class acc = 0;
    mpz_class binom = 1;  // C(m+1, j)
    for (unsigned j = 0; j < m; ++j) {
      acc += mpq_class(binom) * b[j];
      binom = binom * (m + 1 - j) / (j + 1);
    }
    b[m] = -acc / (m + 1);
    b[m].canonicalize();
  }
  return b[k];
}

std::vector<mpz_class> divisor_power_sums(unsigned e, std::size_t precision) {
  std::vector<mpz_class> s(precision);
  mpz_class dp;
  for (std::size_t d = 1; d < precision; ++d) {
    mpz_ui_pow_ui(dp.get_mpz_t(), d, e);
    for (std::size_t m = d; m < precision; m += d) s[m] += dp;
  }
  return s;
}

namespace {

mpq_class eisenstein_factor(int k) {
  if (k < 4 || k % 2 != 0) {
    throw std::invalid_argument("eisenstein: weight must be even and >= 4, got " + std::to_string(k));
  }
  mpq_class f = mpq_class(-2 * k) / bernoulli(static_cast<unsigned>(k));
  f.canonicalize();
  return f;
}

}  // namespace

mpz_class eisenstein_denominator(int k) { return eisenstein_factor(k).get_den(); }

QSeries eisenstein(int k, std::size_t precision) {
  const mpq_class factor = eisenstein_factor(k);
  std::vector<mpz_class> c = divisor_power_sums(static_cast<unsigned>(k - 1), precision);
  for (auto& v : c) v *= factor.get_num();
  if (precision > 0) c[0] = factor.get_den();
  return QSeries(std::move(c));
}

}  // namespace nvsign
