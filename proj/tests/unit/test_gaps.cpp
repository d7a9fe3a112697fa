#include <cmath>
#include <sstream>

#include <gtest/gtest.h>

#include "nvsign/arith.hpp"
#include "nvsign/errors.hpp"
#include "nvsign/forms.hpp"
#include "nvsign/gaps.hpp"

using namespace nvsign;

namespace {

FormPtr share(ModularForm f) { return std::make_shared<const ModularForm>(std::move(f)); }

ModularForm from_values(std::vector<long> v) {
  std::vector<mpz_class> c;
  for (long x : v) c.emplace_back(x);
  return ModularForm("synthetic", 1, 2, std::move(c), false, CoefficientSource::kFullList);
}

}  // namespace

TEST(GapSingle, DeltaHasNoGaps) {
  auto d = level1_eigenform(12, 20001);
  for (auto& r : scan_gaps(d, 1, 20000)) ASSERT_EQ(r.gap, 0u) << r.n;
  EXPECT_EQ(gap_single(d, 777).gap, 0u);
}

TEST(GapSingle, CmForm) {
  auto f = cm32_form(200);
  auto r = gap_single(f, 3);
  EXPECT_EQ(f.c(3), 0);
  EXPECT_EQ(r.witness, 5u);  // c_3 = c_4 = 0, c_5 = -2
  EXPECT_EQ(r.gap, 2u);
  EXPECT_EQ(gap_single(f, 1).gap, 0u);
}

TEST(GapSingle, MatchesDefinitionAndScan) {
  auto f = cm32_form(5000);
  auto recs = scan_gaps(f, 1, 4000);
  for (auto& r : recs) {
    ASSERT_EQ(r.witness, r.n + r.gap);
    ASSERT_NE(f.c(r.witness), 0);
    for (std::uint64_t j = 0; j < r.gap; ++j) ASSERT_EQ(f.c(r.n + j), 0);
    // The direct search stops at j = n; longer gaps are reported as exhausted.
    if (r.gap > r.n) {
      ASSERT_THROW(gap_single(f, r.n), SearchExhausted) << r.n;
      continue;
    }
    ASSERT_EQ(gap_single(f, r.n).gap, r.gap) << r.n;
  }
}

TEST(GapSingle, ExhaustionAndPrecision) {
  // Zeros from 2 to 9: hard stop at n for n = 4.
  auto f = from_values({0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 1, 1});
  EXPECT_THROW(gap_single(f, 4), SearchExhausted);
  EXPECT_EQ(gap_single(f, 8).witness, 10u);
  auto g = from_values({0, 1, 0, 0});
  EXPECT_THROW(gap_single(g, 2), InsufficientPrecision);
}

TEST(GapPair, ProductZerosDominateSingleZeros) {
  const std::size_t P = 6000;
  FormPair p(share(level1_eigenform(12, P)), share(cm32_form(P)));
  auto r3 = gap_pair(p, 3);
  EXPECT_EQ(r3.witness, 5u);
  auto single = scan_gaps(p.g(), 1, 5000);
  for (auto& r : scan_gaps(p, 1, 5000)) {
    ASSERT_NE(p.f().c(r.witness), 0);
    ASSERT_NE(p.g().c(r.witness), 0);
    ASSERT_GE(r.gap, single[r.n - 1].gap);
    for (std::uint64_t j = 0; j < r.gap; ++j) ASSERT_EQ(p.sign(r.n + j), 0);
  }
}

TEST(GapPair, DeltaW16NoGaps) {
  const std::size_t P = 20001;
  FormPair p(share(level1_eigenform(12, P)), share(level1_eigenform(16, P)));
  for (auto& r : scan_gaps(p, 1, 20000)) ASSERT_EQ(r.gap, 0u);
}

TEST(SerreCount, DeltaAndCm) {
  auto d = level1_eigenform(12, 20001);
  EXPECT_EQ(serre_zero_count(d, 20000).count, 0u);
  auto f = cm32_form(10001);
  auto z = serre_zero_count(f, 10000);
  std::uint64_t expect = 0;
  for (auto p : primes_up_to(10000)) expect += (p == 2 || p % 4 == 3);
  EXPECT_EQ(z.count, expect);
  EXPECT_EQ(z.pi_x, prime_pi(10000));
  EXPECT_NEAR(z.prime_fraction, 0.5, 0.05);
  EXPECT_LE(serre_zero_count(f, 2).count, 1u);
  EXPECT_THROW(serre_zero_count(f, 10001), InsufficientPrecision);
}

TEST(NonvanishingPrimes, NonCmPairAboveNinetyNinePercent) {
  const std::size_t P = 20001;
  FormPair p(share(level1_eigenform(12, P)), share(level1_eigenform(16, P)));
  EXPECT_GT(nonvanishing_prime_count(p, 20000).prime_fraction, 0.99);
}

TEST(ExponentFit, DegenerateAndSynthetic) {
  std::vector<GapRecord> zeros;
  for (std::uint64_t n = 1; n < 100; ++n) zeros.push_back({n, 0, n, "x"});
  EXPECT_TRUE(exponent_fit(zeros).degenerate);

  std::vector<GapRecord> recs;
  for (std::uint64_t n = 1000; n <= 1000000; n += 997) {
    auto g = static_cast<std::uint64_t>(std::cbrt(static_cast<double>(n)));
    recs.push_back({n, g, n + g, "x"});
  }
  auto fit = exponent_fit(recs);
  EXPECT_FALSE(fit.degenerate);
  EXPECT_NEAR(fit.slope, 1.0 / 3.0, 0.02);
  EXPECT_GT(fit.envelope, 0.0);
}

TEST(GapCsv, HeaderAndRows) {
  const std::size_t P = 50;
  FormPair p(share(level1_eigenform(12, P)), share(cm32_form(P)));
  std::ostringstream out;
  auto recs = scan_gaps(p, 2, 4);
  write_gap_csv(out, recs, p.f(), &p.g());
  EXPECT_EQ(out.str(), "n,gap,witness,c_witness_f,c_witness_g\n2,3,5,4830,-2\n3,2,5,4830,-2\n4,1,5,4830,-2\n");
}
