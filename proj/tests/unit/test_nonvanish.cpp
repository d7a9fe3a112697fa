#include <gtest/gtest.h>

#include "nvsign/arith.hpp"
#include "nvsign/forms.hpp"
#include "nvsign/nonvanish.hpp"
#include "nvsign/powersum.hpp"
#include "oracles.hpp"

using namespace nvsign;

TEST(Hatada, DeltaExamples) {
  auto d = level1_eigenform(12, 20);
  EXPECT_EQ(mpz_class(d.c(5) % 4), 2);
  EXPECT_EQ(d.c(9), -113643);
  EXPECT_EQ(mpz_fdiv_ui(d.c(9).get_mpz_t(), 4), 1u);
  auto rep = check_hatada(d, 19);
  EXPECT_TRUE(rep.ok());
  EXPECT_EQ(rep.powers_checked, 1u);  // 9
  auto vac = check_hatada(d, 4);
  EXPECT_EQ(vac.primes_checked, 0u);
  EXPECT_TRUE(vac.ok());
}

TEST(Hatada, AllLevel1FixturesHold) {
  for (int k : {12, 16, 18, 20, 22, 26}) {
    auto f = level1_eigenform(k, 20001);
    auto rep = check_hatada(f, 20000);
    EXPECT_TRUE(rep.ok()) << k;
    EXPECT_GT(rep.primes_checked, 1000u);
  }
}

TEST(Hatada, ViolationsAreReported) {
  std::vector<mpz_class> c(30, 1);
  c[0] = 0;
  ModularForm fake("fake", 1, 12, c, false, CoefficientSource::kFullList);
  auto rep = check_hatada(fake, 29);
  ASSERT_FALSE(rep.ok());
  EXPECT_EQ(rep.violations.front().index, 5u);
  EXPECT_EQ(rep.violations.front().residue, 1u);
  EXPECT_EQ(rep.violations.front().expected, 2u);
  EXPECT_NE(congruence_report_json(rep).find("\"violations\""), std::string::npos);
}

TEST(Hatada, RejectsHigherLevel) {
  EXPECT_THROW(check_hatada(cm32_form(100), 50), std::invalid_argument);
}

TEST(TwoSquares, Examples) {
  auto a = two_squares_witness(1, {});
  EXPECT_EQ(a.m, 2u);
  auto b = two_squares_witness(10000, {3});
  EXPECT_NE(b.m % 3, 0u);
  EXPECT_TRUE(oracle::sum_of_two_positive_squares(b.m));
  EXPECT_TRUE(two_squares_criterion(b.factorization));
  EXPECT_THROW(two_squares_witness(10, {}, 65), std::invalid_argument);
}

TEST(TwoSquares, WitnessesAreValid) {
  auto params = PowerSumParams::make(2, 2);
  for (std::uint64_t n = 1; n <= 5000; ++n) {
    auto w = two_squares_witness(n, {3, 7});
    ASSERT_EQ(w.A * w.A + w.B * w.B, w.m);
    ASSERT_TRUE(w.m % 3 && w.m % 7);
    ASSERT_TRUE(in_window(n, w.m, params, mpz_class(64ul)));
    std::uint64_t prod = 1;
    for (auto [p, e] : w.factorization) prod *= oracle::ipow(p, e);
    ASSERT_EQ(prod, w.m);
    ASSERT_TRUE(two_squares_criterion(w.factorization));
  }
}

TEST(Badset, DeltaIsEmpty) {
  EXPECT_TRUE(empirical_badset(level1_eigenform(12, 5000)).empty());
}

TEST(Witness, SmallN) {
  auto d = level1_eigenform(12, 200);
  auto w = nonvanishing_witness(d, 1);
  EXPECT_TRUE(w.m == 1 || w.m == 2);
  EXPECT_NE(w.coefficients.at(0), 0);
  EXPECT_TRUE(w.escalations.empty());
}

TEST(Witness, EscalatesPastVanishingCoefficient) {
  // c_2 = 0 forces the next candidate 5.
  std::vector<mpz_class> c(40, 1);
  c[0] = 0;
  c[2] = 0;
  ModularForm f("synthetic", 1, 12, c, false, CoefficientSource::kFullList);
  auto w = nonvanishing_witness(f, 1, {});
  EXPECT_EQ(w.m, 5u);
  EXPECT_EQ(w.escalations, (std::vector<std::uint64_t>{2}));
  EXPECT_NE(witness_json(w).find("\"escalations\":[2]"), std::string::npos);
}

TEST(Witness, GapBoundAndExactness) {
  auto d = level1_eigenform(12, 12000);
  auto params = PowerSumParams::make(2, 2);
  for (std::uint64_t n = 1; n <= 10000; n += 37) {
    auto w = nonvanishing_witness(d, n);
    ASSERT_NE(d.c(w.m), 0);
    ASSERT_EQ(w.gap, w.m - n);
    ASSERT_TRUE(in_window(n, w.m, params, mpz_class(static_cast<unsigned long>(w.K))));
  }
}

TEST(Witness, SimultaneousPair) {
  auto d = level1_eigenform(12, 3000);
  auto g = level1_eigenform(16, 3000);
  for (std::uint64_t n = 1; n <= 2000; n += 11) {
    auto w = simultaneous_witness({&d, &g}, n, {});
    ASSERT_EQ(w.coefficients.size(), 2u);
    ASSERT_NE(d.c(w.m), 0);
    ASSERT_NE(g.c(w.m), 0);
  }
}
