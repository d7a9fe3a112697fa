#include "nvsign/rankin.hpp"

#include <numeric>
#include <stdexcept>

#include "json.hpp"
#include "nvsign/errors.hpp"

namespace nvsign {

const mpz_class& DirichletCoeffs::operator[](std::uint64_t n) const {
  if (n == 0 || n >= values_.size()) throw std::out_of_range("Dirichlet index " + std::to_string(n) + " out of range");
  return values_[n];
}

mpz_class& DirichletCoeffs::operator[](std::uint64_t n) {
  if (n == 0 || n >= values_.size()) throw std::out_of_range("Dirichlet index " + std::to_string(n) + " out of range");
  return values_[n];
}

DirichletCoeffs DirichletCoeffs::identity(std::size_t length) {
  DirichletCoeffs e(length);
  if (length >= 1) e[1] = 1;
  return e;
}

DirichletCoeffs restricted_product_coeffs(const FormPair& pair, std::uint64_t M, std::size_t P) {
  if (M == 0) throw std::invalid_argument("M must be positive");
  if (P >= pair.precision())
    throw InsufficientPrecision("pair " + pair.label() + " needs coefficients up to " + std::to_string(P));
  DirichletCoeffs d(P);
  for (std::uint64_t n = 1; n <= P; ++n)
    if (std::gcd(n, M) == 1) d[n] = pair.product(n);
  return d;
}

DirichletCoeffs zeta_factor_coeffs(int k1, int k2, std::uint64_t Q, std::size_t P) {
  if (Q == 0) throw std::invalid_argument("Q must be positive");
  const int e = k1 + k2 - 2;
  if (e < 0) throw std::invalid_argument("weights must satisfy k1 + k2 >= 2");
  DirichletCoeffs z(P);
  for (std::uint64_t m = 1; m * m <= P; ++m)
    if (std::gcd(m, Q) == 1) mpz_ui_pow_ui(z[m * m].get_mpz_t(), m, static_cast<unsigned long>(e));
  return z;
}

DirichletCoeffs convolve(const DirichletCoeffs& d, const DirichletCoeffs& r) {
  if (d.length() != r.length()) throw std::invalid_argument("convolve: lengths differ");
  const std::size_t P = d.length();
  DirichletCoeffs out(P);
  for (std::uint64_t a = 1; a <= P; ++a) {
    const mpz_class& da = d[a];
    if (da == 0) continue;
    for (std::uint64_t b = 1; a * b <= P; ++b) {
      const mpz_class& rb = r[b];
      if (rb != 0) mpz_addmul(out[a * b].get_mpz_t(), da.get_mpz_t(), rb.get_mpz_t());
    }
  }
  return out;
}

PositivityReport positivity_scan(const DirichletCoeffs& c) {
  PositivityReport rep;
  for (std::uint64_t n = 1; n <= c.length(); ++n) {
    int s = sgn(c[n]);
    if (s < 0) {
      if (!rep.first_negative) rep.first_negative = n;
      ++rep.negatives;
    } else if (s > 0) {
      ++rep.positives;
    } else {
      ++rep.zeros;
    }
  }
  return rep;
}

RankinCoefficients rankin_coefficients(const FormPair& pair, std::uint64_t M, std::size_t P) {
  if (M == 0) throw std::invalid_argument("M must be positive");
  const std::uint64_t N = pair.level();
  if (N > UINT64_MAX / M) throw std::invalid_argument("N * M overflows");
  RankinCoefficients rc;
  rc.M = M;
  rc.Q = N * M;
  auto z = zeta_factor_coeffs(pair.f().weight(), pair.g().weight(), rc.Q, P);
  rc.coeffs = convolve(z, restricted_product_coeffs(pair, M, P));
  return rc;
}

std::string positivity_report_json(const std::string& pair_label, const RankinCoefficients& rc,
                                   const PositivityReport& report) {
  nlohmann::json j;
  j["pair"] = pair_label;
  j["M"] = rc.M;
  j["Q"] = rc.Q;
  j["P"] = rc.coeffs.length();
  j["first_negative"] = report.first_negative ? nlohmann::json(*report.first_negative) : nlohmann::json(nullptr);
  if (report.first_negative) j["first_negative_value"] = rc.coeffs[*report.first_negative].get_str();
  j["negatives"] = report.negatives;
  j["positives"] = report.positives;
  j["zeros"] = report.zeros;
  return j.dump(2);
}

}  // namespace nvsign
