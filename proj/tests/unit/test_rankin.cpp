#include <random>

#include <gtest/gtest.h>

#include "nvsign/arith.hpp"
#include "nvsign/forms.hpp"
#include "nvsign/rankin.hpp"
#include "oracles.hpp"

using namespace nvsign;

namespace {

FormPtr share(ModularForm f) { return std::make_shared<const ModularForm>(std::move(f)); }

DirichletCoeffs random_coeffs(std::mt19937_64& rng, std::size_t P) {
  DirichletCoeffs d(P);
  std::uniform_int_distribution<long> u(-1000, 1000);
  for (std::uint64_t n = 1; n <= P; ++n) d[n] = u(rng);
  return d;
}

std::vector<mpz_class> as_vector(const DirichletCoeffs& d) {
  std::vector<mpz_class> v(d.length() + 1);
  for (std::uint64_t n = 1; n <= d.length(); ++n) v[n] = d[n];
  return v;
}

}  // namespace

TEST(RestrictedProduct, Examples) {
  const std::size_t P = 101;
  FormPair p(share(level1_eigenform(12, P)), share(level1_eigenform(16, P)));
  auto plain = restricted_product_coeffs(p, 1, 100);
  for (std::uint64_t n = 1; n <= 100; ++n) EXPECT_EQ(plain[n], p.product(n));
  auto odd = restricted_product_coeffs(p, 2, 100);
  for (std::uint64_t n = 2; n <= 100; n += 2) EXPECT_EQ(odd[n], 0);
  auto six = restricted_product_coeffs(p, 6, 100);
  EXPECT_EQ(six[5], 4830 * p.g().c(5));
  EXPECT_EQ(six[9], 0);
  EXPECT_EQ(six[35], p.product(35));
  EXPECT_THROW(restricted_product_coeffs(p, 0, 10), std::invalid_argument);
}

TEST(ZetaFactor, Examples) {
  auto z = zeta_factor_coeffs(12, 16, 1, 100);
  EXPECT_EQ(z[1], 1);
  mpz_class two26;
  mpz_ui_pow_ui(two26.get_mpz_t(), 2, 26);
  EXPECT_EQ(z[4], two26);
  EXPECT_EQ(zeta_factor_coeffs(12, 16, 3, 100)[4], two26);
  EXPECT_EQ(zeta_factor_coeffs(12, 16, 2, 100)[4], 0);
  for (std::uint64_t n : {2, 3, 5, 8, 99}) EXPECT_EQ(z[n], 0);
  for (std::uint64_t n = 1; n <= 100; ++n) EXPECT_GE(z[n], 0);
}

TEST(Convolve, IdentityAndBruteForce) {
  std::mt19937_64 rng(9);
  auto r = random_coeffs(rng, 20);
  EXPECT_EQ(convolve(DirichletCoeffs::identity(20), r), r);
  EXPECT_EQ(convolve(r, DirichletCoeffs::identity(20)), r);
  for (std::size_t P : {20u, 1000u}) {
    auto a = random_coeffs(rng, P), b = random_coeffs(rng, P);
    EXPECT_EQ(as_vector(convolve(a, b)), oracle::dirichlet_brute(as_vector(a), as_vector(b))) << P;
  }
  EXPECT_THROW(convolve(DirichletCoeffs(3), DirichletCoeffs(4)), std::invalid_argument);
}

TEST(Convolve, CommutativeAssociative) {
  std::mt19937_64 rng(21);
  for (int t = 0; t < 5; ++t) {
    auto a = random_coeffs(rng, 60), b = random_coeffs(rng, 60), c = random_coeffs(rng, 60);
    EXPECT_EQ(convolve(a, b), convolve(b, a));
    EXPECT_EQ(convolve(convolve(a, b), c), convolve(a, convolve(b, c)));
  }
}

TEST(Convolve, PreservesMultiplicativity) {
  const std::size_t P = 2000;
  FormPair p(share(level1_eigenform(12, P + 1)), share(level1_eigenform(16, P + 1)));
  auto c = convolve(zeta_factor_coeffs(12, 16, 1, P), restricted_product_coeffs(p, 1, P));
  for (std::uint64_t m = 2; m * m <= P; ++m)
    for (std::uint64_t n = m + 1; m * n <= P; ++n)
      if (std::gcd(m, n) == 1) {
        ASSERT_EQ(c[m * n], c[m] * c[n]) << m << " " << n;
      }
}

TEST(Positivity, SelfPairNonnegative) {
  const std::size_t P = 10000;
  auto d = share(level1_eigenform(12, P + 1));
  for (std::uint64_t M : {1, 2, 6, 30}) {
    auto rc = rankin_coefficients(FormPair(d, d), M, P);
    EXPECT_EQ(rc.Q, M);
    auto rep = positivity_scan(rc.coeffs);
    EXPECT_FALSE(rep.first_negative) << M;
    EXPECT_EQ(rep.negatives, 0u);
  }
}

TEST(Positivity, DeltaW16HasNegative) {
  const std::size_t P = 10000;
  FormPair p(share(level1_eigenform(12, P + 1)), share(level1_eigenform(16, P + 1)));
  auto rc = rankin_coefficients(p, 1, P);
  auto rep = positivity_scan(rc.coeffs);
  ASSERT_TRUE(rep.first_negative);
  EXPECT_EQ(*rep.first_negative, 2u);
  EXPECT_EQ(rc.coeffs[2], -5184);
  auto rc6 = rankin_coefficients(p, 6, P);
  auto rep6 = positivity_scan(rc6.coeffs);
  ASSERT_TRUE(rep6.first_negative);
  EXPECT_EQ(*rep6.first_negative, 7u);
  EXPECT_NE(positivity_report_json(p.label(), rc6, rep6).find("\"Q\": 6"), std::string::npos);
}

TEST(Positivity, AllZeroInput) {
  auto rep = positivity_scan(DirichletCoeffs(50));
  EXPECT_FALSE(rep.first_negative);
  EXPECT_EQ(rep.negatives, 0u);
  EXPECT_EQ(rep.positives, 0u);
  EXPECT_EQ(rep.zeros, 50u);
}

TEST(Positivity, LevelEntersQ) {
  const std::size_t P = 500;
  auto cm = share(cm32_form(P + 1));
  auto rc = rankin_coefficients(FormPair(cm, cm), 3, P);
  EXPECT_EQ(rc.Q, 96u);
  EXPECT_FALSE(positivity_scan(rc.coeffs).first_negative);
  EXPECT_EQ(rc.coeffs[4], 0);  // 2 | Q and c_2 = 0
}
