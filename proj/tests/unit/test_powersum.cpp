#include <gtest/gtest.h>

#include "nvsign/arith.hpp"
#include "nvsign/errors.hpp"
#include "nvsign/powersum.hpp"
#include "oracles.hpp"

using namespace nvsign;

TEST(PowerSumParams, AlphaAndConstant) {
  auto p = PowerSumParams::make(2, 3);
  EXPECT_EQ(p.alpha, mpq_class(1, 3));
  EXPECT_EQ(p.C, 64 * 6);
  auto q = PowerSumParams::make(2, 2);
  EXPECT_EQ(q.alpha, mpq_class(1, 4));
  EXPECT_EQ(q.C, 64);
  for (unsigned r = 2; r <= 5; ++r)
    for (unsigned s = 2; s <= 5; ++s) {
      auto x = PowerSumParams::make(r, s);
      EXPECT_GT(x.alpha, 0);
      EXPECT_LT(x.alpha, 1);
      EXPECT_GE(x.C, 16);
    }
  EXPECT_THROW(PowerSumParams::make(1, 2), std::invalid_argument);
}

TEST(FindRepresentation, Examples) {
  auto p = PowerSumParams::make(2, 2);
  auto a = find_representation(1, p);
  EXPECT_EQ(a.m, 2u);
  EXPECT_EQ(a.A, 1u);
  EXPECT_EQ(a.B, 1u);
  auto b = find_representation(10000, p);
  EXPECT_EQ(b.m, 10001u);
  EXPECT_EQ(b.A, 1u);
  EXPECT_EQ(b.B, 100u);
}

TEST(FindRepresentation, ConstructionMatchesDefinition) {
  for (unsigned r = 2; r <= 4; ++r)
    for (unsigned s = 2; s <= 4; ++s) {
      auto p = PowerSumParams::make(r, s);
      for (std::uint64_t n = 1; n <= 3000; ++n) {
        auto rep = find_representation(n, p);
        std::uint64_t t = 1;
        while (oracle::ipow(t + 1, s) <= n) ++t;
        ASSERT_EQ(rep.B, t);
        ASSERT_EQ(rep.m, oracle::ipow(rep.A, r) + oracle::ipow(rep.B, s));
        ASSERT_GE(rep.m, n);
        ASSERT_TRUE(rep.A == 1 || oracle::ipow(rep.A - 1, r) + oracle::ipow(t, s) < n);
      }
    }
}

TEST(InWindow, ExactBoundary) {
  auto p = PowerSumParams::make(2, 2);
  // n = 16: window bound 64 * 16^{1/4} = 128 exactly.
  EXPECT_TRUE(in_window(16, 16 + 128, p, p.C));
  EXPECT_FALSE(in_window(16, 16 + 129, p, p.C));
  EXPECT_FALSE(in_window(16, 15, p, p.C));
  EXPECT_EQ(ceil_n_alpha(16, p), 2);
  EXPECT_EQ(ceil_n_alpha(17, p), 3);
}

TEST(OracleMin, Examples) {
  EXPECT_EQ(oracle_min_representation(3, 2, 2, 10), 5u);
  EXPECT_EQ(oracle_min_representation(2, 2, 2, 10), 2u);
  // 10000 = 28^2 + 96^2 = 60^2 + 80^2 is itself a sum of two positive squares.
  EXPECT_EQ(oracle_min_representation(10000, 2, 2, 20000), 10000u);
  EXPECT_FALSE(oracle_min_representation(3, 2, 2, 5));
}

TEST(OracleMin, AgreesWithIndependentEnumeration) {
  for (unsigned r = 2; r <= 3; ++r)
    for (unsigned s = 2; s <= 3; ++s) {
      auto all = oracle::power_sums(r, s, 4000);
      for (std::uint64_t n = 1; n < 3000; n += 7) {
        auto it = all.lower_bound(n);
        ASSERT_NE(it, all.end());
        ASSERT_EQ(oracle_min_representation(n, r, s, 4000), *it) << r << s << " " << n;
      }
    }
}

TEST(GapCertainty, ProvenLongerForLargeN) {
  auto p = PowerSumParams::make(2, 2);
  EXPECT_EQ(interval_longer_than_one(1000000, p), GapCertainty::kProvenLonger);
}

TEST(NormForm, Examples) {
  auto a = find_normform(1, 1);
  EXPECT_EQ(a.m, 2u);
  auto b = find_normform(50, 2);
  EXPECT_EQ(b.m, b.a * b.a + 2 * b.b * b.b);
  EXPECT_GE(b.m, 50u);
  EXPECT_LE(b.m, 51u);
  EXPECT_EQ(oracle_min_normform(50, 2, 100), 51u);
  auto c = find_normform(10000, 5);
  EXPECT_EQ(c.m, c.a * c.a + 5 * c.b * c.b);
  EXPECT_GE(c.m, 10000u);
  EXPECT_LE(c.m, 10000u + c.C_prime.get_ui() * 10);
  EXPECT_EQ(c.C_prime, normform_constant(5));
  EXPECT_THROW(find_normform(10, 4), std::invalid_argument);
}

TEST(NormForm, WindowHoldsAndOracleBelow) {
  for (std::uint64_t D : {1, 2, 3, 5, 6, 7, 10, 11}) {
    for (std::uint64_t n = 1; n <= 2000; ++n) {
      auto rep = find_normform(n, D);
      ASSERT_TRUE(rep.a >= 1 && rep.b >= 1);
      ASSERT_EQ(rep.m, rep.a * rep.a + D * rep.b * rep.b);
      auto params = PowerSumParams::make(2, 2);
      ASSERT_TRUE(in_window(n, rep.m, params, rep.C_prime)) << D << " " << n;
      auto best = oracle_min_normform(n, D, rep.m + 1);
      ASSERT_TRUE(best && *best <= rep.m);
    }
  }
}

TEST(Coprime, EmptyBadsetIsDirect) {
  auto p = PowerSumParams::make(2, 2);
  for (std::uint64_t n : {1, 17, 100, 10000}) {
    auto c = find_representation_coprime(n, p, {});
    EXPECT_EQ(c.rep.m, find_representation(n, p).m);
    EXPECT_EQ(c.multiplier, 1u);
  }
}

TEST(Coprime, Examples) {
  auto p = PowerSumParams::make(2, 2);
  auto a = find_representation_coprime(100, p, {2});
  EXPECT_EQ(a.rep.m, 101u);
  auto b = find_representation_coprime(10000, p, {2, 3, 5});
  EXPECT_EQ(std::gcd(b.rep.m, std::uint64_t{30}), 1u);
  EXPECT_TRUE(in_window(10000, b.rep.m, p, b.K));
  EXPECT_EQ(b.K, 64 * 8);
  EXPECT_EQ(b.window_used, b.rep.m - 10000);
}

TEST(Coprime, ScanAgreesWithBruteForce) {
  auto p = PowerSumParams::make(2, 2);
  const std::vector<std::uint64_t> bad{2, 5};
  auto all = oracle::power_sums(2, 2, 20000);
  for (std::uint64_t n = 1; n <= 5000; n += 13) {
    auto c = find_representation_coprime(n, p, bad);
    ASSERT_TRUE(c.rep.m % 2 != 0 && c.rep.m % 5 != 0);
    ASSERT_TRUE(all.count(c.rep.m));
    ASSERT_TRUE(in_window(n, c.rep.m, p, c.K));
    auto direct = find_representation(n, p);
    if (direct.m % 2 && direct.m % 5) {
      ASSERT_EQ(c.rep.m, direct.m);
    } else {
      // Least admissible candidate.
      for (auto it = all.lower_bound(n); *it < c.rep.m; ++it) ASSERT_TRUE(*it % 2 == 0 || *it % 5 == 0);
    }
  }
}

TEST(Coprime, ExhaustionIsReported) {
  auto p = PowerSumParams::make(2, 2);
  // Every A^2 + B^2 <= 65 has a factor among these.
  EXPECT_THROW(find_representation_coprime(1, p, {2, 5, 13, 17, 29, 37, 41, 53, 61}, 1), SearchExhausted);
}

TEST(WindowCandidates, SortedUniqueAndComplete) {
  auto p = PowerSumParams::make(2, 3);
  auto all = oracle::power_sums(2, 3, 5000);
  for (std::uint64_t n : {1, 50, 999}) {
    auto cands = window_candidates(n, p, p.C);
    std::vector<std::uint64_t> ms;
    for (auto& c : cands) ms.push_back(c.m);
    std::vector<std::uint64_t> expect;
    for (auto m : all)
      if (m >= n && in_window(n, m, p, p.C)) expect.push_back(m);
    EXPECT_EQ(ms, expect) << n;
  }
}
