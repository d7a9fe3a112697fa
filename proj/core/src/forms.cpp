#include "nvsign/forms.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

#include "nvsign/arith.hpp"
#include "nvsign/errors.hpp"

namespace nvsign {

ModularForm::ModularForm(std::string label, std::uint64_t level, int weight, std::vector<mpz_class> coeffs,
                         bool is_cm, CoefficientSource source)
    : label_(std::move(label)),
      level_(level),
      weight_(weight),
      coeffs_(std::move(coeffs)),
      is_cm_(is_cm),
      source_(source) {
  if (level_ == 0) throw std::invalid_argument("ModularForm: level must be positive");
  if (weight_ < 2) throw std::invalid_argument("ModularForm: weight must be at least 2");
}

const mpz_class& ModularForm::c(std::uint64_t n) const {
  if (n >= coeffs_.size()) {
    throw InsufficientPrecision("form " + label_ + ": coefficient " + std::to_string(n) +
                                " requested, precision is " + std::to_string(coeffs_.size()));
  }
  return coeffs_[n];
}

ModularForm ModularForm::truncated(std::size_t precision) const {
  if (precision > coeffs_.size()) {
    throw InsufficientPrecision("form " + label_ + ": cannot extend precision to " + std::to_string(precision));
  }
  return ModularForm(label_, level_, weight_, std::vector<mpz_class>(coeffs_.begin(), coeffs_.begin() + precision),
                     is_cm_, source_);
}

FormPair::FormPair(FormPtr f, FormPtr g) : f_(std::move(f)), g_(std::move(g)) {
  if (!f_ || !g_) throw std::invalid_argument("FormPair: null form");
}

std::uint64_t FormPair::level() const { return std::lcm(f_->level(), g_->level()); }

std::size_t FormPair::precision() const { return std::min(f_->precision(), g_->precision()); }

std::span<const QSeries> MillerBasis::cusp() const {
  if (basis.empty()) return {};
  return std::span<const QSeries>(basis).subspan(1);
}

std::size_t level1_dimension(int k) {
  if (k < 0 || k % 2 != 0) throw std::invalid_argument("level1_dimension: weight must be even and nonnegative");
  if (k == 2) return 0;
  const auto base = static_cast<std::size_t>(k / 12);
  return k % 12 == 2 ? base : base + 1;
}

QSeries delta_from_eisenstein(std::size_t precision) {
  const QSeries e4 = eisenstein(4, precision);
  const QSeries e6 = eisenstein(6, precision);
  const QSeries e4_sq = mul(e4, e4);
  QSeries diff = mul(e4_sq, e4) - mul(e6, e6);
  return diff.exact_div(1728);
}

namespace {

// Delta^c E4^a E6^b of weight k, normalized q^c + ...
struct MonomialFactory {
  std::size_t precision;
  QSeries e4;
  QSeries e6;
  QSeries delta;

  explicit MonomialFactory(std::size_t p)
      : precision(p), e4(eisenstein(4, p)), e6(eisenstein(6, p)), delta(delta_from_eisenstein(p)) {}

  QSeries make(int k, std::size_t c) const {
    const int w = k - 12 * static_cast<int>(c);
    unsigned a = 0;
    unsigned b = 0;
    if (w % 4 == 0) {
      a = static_cast<unsigned>(w / 4);
    } else {
      b = 1;
      a = static_cast<unsigned>((w - 6) / 4);
    }
    QSeries out = pow(delta, static_cast<unsigned>(c));
    if (a > 0) out = mul(out, pow(e4, a));
    if (b > 0) out = mul(out, e6);
    return out;
  }
};

void echelonize(std::vector<QSeries>& rows, std::size_t first_pivot) {
  // rows[i] has pivot first_pivot + i; clear every other pivot column.
  for (std::size_t i = rows.size(); i-- > 0;) {
    for (std::size_t j = i + 1; j < rows.size(); ++j) {
      const std::size_t col = first_pivot + j;
      if (col >= rows[i].precision()) break;
      const mpz_class factor = rows[i][col];
      if (factor != 0) rows[i] -= rows[j] * factor;
    }
  }
}

void check_even(int k) {
  if (k < 0 || k % 2 != 0) throw std::invalid_argument("miller_basis: weight must be even, got " + std::to_string(k));
}

}  // namespace

MillerBasis miller_basis(int k, std::size_t precision) {
  check_even(k);
  MillerBasis out;
  out.weight = k;
  const std::size_t dim = level1_dimension(k);
  if (dim == 0) return out;
  const MonomialFactory factory(precision);
  for (std::size_t c = 0; c < dim; ++c) out.basis.push_back(factory.make(k, c));
  echelonize(out.basis, 0);
  return out;
}

std::vector<QSeries> miller_cusp_basis(int k, std::size_t precision) {
  check_even(k);
  const std::size_t dim = level1_dimension(k);
  std::vector<QSeries> rows;
  if (dim <= 1) return rows;
  const MonomialFactory factory(precision);
  for (std::size_t c = 1; c < dim; ++c) rows.push_back(factory.make(k, c));
  echelonize(rows, 1);
  return rows;
}

QSeries delta_series(std::size_t precision) {
  if (precision == 0) throw std::invalid_argument("delta_series: precision must be positive");
  const std::size_t body = precision - 1;
  if (body == 0) return QSeries(precision);
  std::vector<mpz_class> cube(body);
  for (std::uint64_t k = 0; k * (k + 1) / 2 < body; ++k) {
    const long v = static_cast<long>(2 * k + 1);
    cube[k * (k + 1) / 2] = (k % 2 == 0) ? v : -v;
  }
  QSeries s(std::move(cube));
  // The first squaring is sparse: schoolbook skips the zero terms.
  s = mul_schoolbook(s, s);
  s = mul(s, s);
  s = mul(s, s);
  std::vector<mpz_class> c(precision);
  for (std::size_t i = 0; i < body; ++i) c[i + 1] = s[i];
  return QSeries(std::move(c));
}

ModularForm level1_eigenform(int k, std::size_t precision, const QSeries* delta) {
  static constexpr int kWeights[] = {12, 16, 18, 20, 22, 26};
  if (std::find(std::begin(kWeights), std::end(kWeights), k) == std::end(kWeights)) {
    throw std::invalid_argument("level1_eigenform: weight " + std::to_string(k) +
                                " does not have a one-dimensional cusp space");
  }
  QSeries f = (delta != nullptr && delta->precision() >= precision) ? delta->truncated(precision)
                                                                     : delta_series(precision);
  const int w = k - 12;
  const unsigned a = (w % 4 == 0) ? static_cast<unsigned>(w / 4) : static_cast<unsigned>((w - 6) / 4);
  if (a > 0) f = mul(f, pow(eisenstein(4, precision), a));
  if (w % 4 != 0) f = mul(f, eisenstein(6, precision));
  const std::string label = k == 12 ? "delta" : "w" + std::to_string(k);
  const auto coeffs = f.coeffs();
  return ModularForm(label, 1, k, std::vector<mpz_class>(coeffs.begin(), coeffs.end()), false,
                     CoefficientSource::kFullList);
}

QSeries hecke_apply(const QSeries& f, int weight, std::uint64_t m) {
  if (m == 0) throw std::invalid_argument("hecke_apply: m must be positive");
  const std::size_t out_precision = f.precision() / m;
  if (out_precision == 0) {
    throw InsufficientPrecision("hecke_apply: precision " + std::to_string(f.precision()) + " too small for T_" +
                                std::to_string(m));
  }
  std::vector<std::uint64_t> divisors;
  for (std::uint64_t d = 1; d <= m; ++d) {
    if (m % d == 0) divisors.push_back(d);
  }
  std::vector<mpz_class> dpow(divisors.size());
  for (std::size_t i = 0; i < divisors.size(); ++i) {
    mpz_ui_pow_ui(dpow[i].get_mpz_t(), divisors[i], static_cast<unsigned long>(weight - 1));
  }
  std::vector<mpz_class> out(out_precision);
  for (std::size_t n = 0; n < out_precision; ++n) {
    const std::uint64_t g = std::gcd(m, static_cast<std::uint64_t>(n));
    for (std::size_t i = 0; i < divisors.size(); ++i) {
      const std::uint64_t d = divisors[i];
      if (g % d != 0) continue;
      mpz_addmul(out[n].get_mpz_t(), dpow[i].get_mpz_t(), f[m * n / (d * d)].get_mpz_t());
    }
  }
  return QSeries(std::move(out));
}

ModularForm hecke_fill(std::string label, std::uint64_t level, int weight,
                       const std::map<std::uint64_t, mpz_class>& prime_coeffs, std::size_t precision, bool is_cm) {
  if (precision < 2) throw std::invalid_argument("hecke_fill: precision must be at least 2");
  const PrimeSieve sieve(precision - 1);
  for (std::uint64_t p : sieve.primes()) {
    if (!prime_coeffs.contains(p)) {
      throw std::invalid_argument("hecke_fill: form " + label + " is missing c_" + std::to_string(p));
    }
  }
  std::vector<mpz_class> c(precision);
  c[1] = 1;
  // prime_power[n] = p^e exactly dividing n, p the smallest prime factor.
  std::vector<std::uint64_t> prime_power(precision, 0);
  mpz_class pk;
  for (std::uint64_t n = 2; n < precision; ++n) {
    const std::uint64_t p = sieve.smallest_factor(n);
    const std::uint64_t rest = n / p;
    prime_power[n] = (rest % p == 0) ? prime_power[rest] * p : p;
    const std::uint64_t pe = prime_power[n];
    if (pe != n) {
      c[n] = c[pe] * c[n / pe];
      continue;
    }
    const mpz_class& cp = prime_coeffs.at(p);
    if (n == p) {
      c[n] = cp;
    } else if (level % p == 0) {
      c[n] = cp * c[rest];
    } else {
      mpz_ui_pow_ui(pk.get_mpz_t(), p, static_cast<unsigned long>(weight - 1));
      c[n] = cp * c[rest] - pk * c[rest / p];
    }
  }
  return ModularForm(std::move(label), level, weight, std::move(c), is_cm, CoefficientSource::kPrimeMap);
}

ModularForm cm32_form(std::size_t precision) {
  const QSeries s = eta_quotient_expand(EtaQuotient({{4, 2}, {8, 2}}), precision);
  const auto coeffs = s.coeffs();
  return ModularForm("cm32", 32, 2, std::vector<mpz_class>(coeffs.begin(), coeffs.end()), true,
                     CoefficientSource::kFullList);
}

std::optional<std::uint64_t> deligne_violation(const ModularForm& f) {
  if (f.precision() < 3) return std::nullopt;
  mpz_class bound;
  for (std::uint64_t p : primes_up_to(f.precision() - 1)) {
    if (f.level() % p == 0) continue;
    mpz_ui_pow_ui(bound.get_mpz_t(), p, static_cast<unsigned long>(f.weight() - 1));
    bound *= 4;
    if (f.c(p) * f.c(p) > bound) return p;
  }
  return std::nullopt;
}

std::optional<std::pair<std::uint64_t, std::uint64_t>> multiplicativity_violation(const ModularForm& f,
                                                                                   std::uint64_t limit) {
  if (limit >= f.precision()) {
    throw InsufficientPrecision("multiplicativity_violation: limit " + std::to_string(limit) +
                                " needs precision beyond " + std::to_string(f.precision()));
  }
  for (std::uint64_t m = 2; m * m <= limit; ++m) {
    for (std::uint64_t n = m + 1; m * n <= limit; ++n) {
      if (std::gcd(m, n) != 1) continue;
      if (f.c(m * n) != f.c(m) * f.c(n)) return std::make_pair(m, n);
    }
  }
  return std::nullopt;
}

}  // namespace nvsign
