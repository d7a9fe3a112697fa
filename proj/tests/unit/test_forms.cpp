#include <filesystem>
#include <fstream>

#include <gtest/gtest.h>

#include "nvsign/arith.hpp"
#include "nvsign/errors.hpp"
#include "nvsign/forms.hpp"
#include "nvsign/newform_io.hpp"
#include "oracles.hpp"

using namespace nvsign;

namespace {

std::map<std::uint64_t, mpz_class> prime_map(const ModularForm& f, std::uint64_t below) {
  std::map<std::uint64_t, mpz_class> ap;
  for (auto p : primes_up_to(below - 1)) ap[p] = f.c(p);
  return ap;
}

std::filesystem::path temp_file(const std::string& name, const std::string& content) {
  auto path = std::filesystem::temp_directory_path() / ("nvsign_forms_" + name);
  std::ofstream(path) << content;
  return path;
}

}  // namespace

TEST(MillerBasis, CuspSliceWeight12) {
  auto cusp = miller_cusp_basis(12, 4);
  ASSERT_EQ(cusp.size(), 1u);
  EXPECT_EQ(cusp[0][1], 1);
  EXPECT_EQ(cusp[0][2], -24);
  EXPECT_EQ(cusp[0][3], 252);
}

TEST(MillerBasis, CuspSliceWeight16) {
  auto cusp = miller_cusp_basis(16, 4);
  ASSERT_EQ(cusp.size(), 1u);
  EXPECT_EQ(cusp[0][1], 1);
  EXPECT_EQ(cusp[0][2], 216);
  EXPECT_EQ(cusp[0][3], -3348);
}

TEST(MillerBasis, Weight4HasNoCuspForms) { EXPECT_TRUE(miller_cusp_basis(4, 2).empty()); }

TEST(MillerBasis, EchelonShapeAndDimensions) {
  for (int k = 0; k <= 48; k += 2) {
    if (k == 2) continue;
    auto b = miller_basis(k, 40);
    ASSERT_EQ(b.dimension(), level1_dimension(k)) << k;
    for (std::size_t i = 0; i < b.dimension(); ++i)
      for (std::size_t j = 0; j < b.dimension(); ++j) EXPECT_EQ(b.basis[i][j], i == j ? 1 : 0) << k;
  }
  EXPECT_THROW(miller_basis(13, 10), std::invalid_argument);
}

TEST(Level1Eigenform, KnownCoefficients) {
  EXPECT_EQ(level1_eigenform(12, 10).c(5), 4830);
  EXPECT_EQ(level1_eigenform(16, 4).c(2), 216);
  EXPECT_THROW(level1_eigenform(14, 10), std::invalid_argument);
  EXPECT_THROW(level1_eigenform(24, 10), std::invalid_argument);
}

TEST(Level1Eigenform, Weight16IsDeltaTimesE4) {
  const std::size_t P = 500;
  auto f = level1_eigenform(16, P);
  // Naive Delta * E4 from the divisor-sum and product oracles.
  auto tau = oracle::tau(P);
  std::vector<mpz_class> e4(P);
  e4[0] = 1;
  for (std::size_t n = 1; n < P; ++n) e4[n] = 240 * oracle::sigma(n, 3);
  for (std::size_t n = 1; n < P; ++n) {
    mpz_class s = 0;
    for (std::size_t i = 1; i <= n; ++i) s += tau[i] * e4[n - i];
    ASSERT_EQ(f.c(n), s) << n;
  }
}

TEST(Level1Eigenform, MatchesCuspBasis) {
  for (int k : {12, 16, 18, 20, 22, 26}) {
    auto f = level1_eigenform(k, 200);
    auto cusp = miller_cusp_basis(k, 200);
    ASSERT_EQ(cusp.size(), 1u);
    for (std::size_t n = 0; n < 200; ++n) EXPECT_EQ(f.c(n), cusp[0][n]) << k << " " << n;
    EXPECT_EQ(f.level(), 1u);
    EXPECT_FALSE(f.is_cm());
  }
}

TEST(Hecke, EigenvectorProperty) {
  for (int k : {12, 16, 18, 20, 22, 26}) {
    auto f = level1_eigenform(k, 400);
    for (std::uint64_t p : {2, 3, 5, 7}) {
      auto t = hecke_apply(f.series(), k, p);
      EXPECT_EQ(t, f.series().truncated(400 / p) * f.c(p)) << k << " T_" << p;
    }
  }
}

TEST(Hecke, CompositeAndIdentity) {
  auto d = delta_series(600);
  EXPECT_EQ(hecke_apply(d, 12, 1), d);
  EXPECT_EQ(hecke_apply(d, 12, 2), d.truncated(300) * mpz_class(-24));
  // T_6 = T_2 T_3 on an eigenform: eigenvalue tau(6).
  EXPECT_EQ(hecke_apply(d, 12, 6), d.truncated(100) * mpz_class(-6048));
  // T_4 eigenvalue tau(4).
  EXPECT_EQ(hecke_apply(d, 12, 4), d.truncated(150) * mpz_class(-1472));
  EXPECT_THROW(hecke_apply(d, 12, 601), InsufficientPrecision);
}

TEST(Hecke, Weight16T3) {
  auto f = level1_eigenform(16, 300);
  EXPECT_EQ(hecke_apply(f.series(), 16, 3), f.series().truncated(100) * mpz_class(-3348));
}

TEST(HeckeFill, ReproducesDelta) {
  const std::size_t P = 2000;
  auto d = level1_eigenform(12, P);
  auto filled = hecke_fill("delta_fill", 1, 12, prime_map(d, P), P);
  EXPECT_EQ(filled.c(1), 1);
  EXPECT_EQ(filled.c(6), -6048);
  EXPECT_EQ(filled.c(4), -1472);
  for (std::size_t n = 0; n < P; ++n) ASSERT_EQ(filled.c(n), d.c(n)) << n;
}

TEST(HeckeFill, MissingPrimeThrows) {
  std::map<std::uint64_t, mpz_class> ap{{2, -24}, {3, 252}};
  EXPECT_THROW(hecke_fill("x", 1, 12, ap, 10), std::invalid_argument);
}

TEST(HeckeFill, BadPrimeUsesPurePowers) {
  std::map<std::uint64_t, mpz_class> ap{{2, 0}, {3, 0}, {5, -2}, {7, 0}};
  auto f = hecke_fill("cm", 32, 2, ap, 10);
  EXPECT_EQ(f.c(4), 0);
  EXPECT_EQ(f.c(8), 0);
  EXPECT_EQ(f.c(9), -3);  // c_3^2 - 3 for the good prime 3
}

TEST(Cm32, ZeroPatternAndHeckeConsistency) {
  const std::size_t P = 3000;
  auto f = cm32_form(P);
  EXPECT_TRUE(f.is_cm());
  EXPECT_EQ(f.level(), 32u);
  EXPECT_EQ(f.weight(), 2);
  for (auto p : primes_up_to(P - 1)) {
    if (p % 2 == 1) {
      EXPECT_EQ(f.c(p) == 0, p % 4 == 3) << p;
    }
  }
  EXPECT_FALSE(multiplicativity_violation(f, P - 1));
  EXPECT_FALSE(deligne_violation(f));
  auto filled = hecke_fill("cm32_fill", 32, 2, prime_map(f, P), P, true);
  for (std::size_t n = 0; n < P; ++n) ASSERT_EQ(filled.c(n), f.c(n)) << n;
}

TEST(EigenformProperties, MultiplicativityAndDeligne) {
  for (int k : {12, 16, 18, 20, 22, 26}) {
    auto f = level1_eigenform(k, 1500);
    EXPECT_EQ(f.c(1), 1);
    EXPECT_FALSE(multiplicativity_violation(f, 1499)) << k;
    EXPECT_FALSE(deligne_violation(f)) << k;
  }
}

TEST(EigenformProperties, DetectorsFireOnBrokenData) {
  std::vector<mpz_class> c{0, 1, 2, 3, 10, 5, 7, 7, 8, 9};
  ModularForm bad("bad", 1, 2, c, false, CoefficientSource::kFullList);
  EXPECT_TRUE(multiplicativity_violation(bad, 9));
  EXPECT_EQ(deligne_violation(bad), 5u);  // 25 > 4 * 5
}

TEST(FormPair, SignIsProductSign) {
  auto d = std::make_shared<const ModularForm>(level1_eigenform(12, 200));
  auto w = std::make_shared<const ModularForm>(level1_eigenform(16, 150));
  FormPair p(d, w);
  EXPECT_EQ(p.precision(), 150u);
  EXPECT_EQ(p.level(), 1u);
  for (std::uint64_t n = 1; n < 150; ++n) {
    EXPECT_EQ(p.sign(n), sgn(p.product(n)));
    EXPECT_EQ(p.product(n), d->c(n) * w->c(n));
  }
}

TEST(Ingest, ApRecordMatchesEtaQuotient) {
  const std::size_t P = 400;
  auto cm = cm32_form(P);
  NewformRecord r;
  r.label = "cm32_ing";
  r.level = 32;
  r.weight = 2;
  r.cm = true;
  r.ap = prime_map(cm, P);
  EXPECT_EQ(r.ap->at(5), -2);
  auto path = temp_file("cm.jsonl", format_newform_record(r) + "\n\n");
  auto forms = ingest_newforms(path);
  ASSERT_EQ(forms.size(), 1u);
  EXPECT_TRUE(forms[0].is_cm());
  EXPECT_EQ(forms[0].precision(), 401u);  // first prime missing from the map
  for (std::size_t n = 0; n < P; ++n) EXPECT_EQ(forms[0].c(n), cm.c(n)) << n;
}

TEST(Ingest, EmptyFileGivesNoForms) { EXPECT_TRUE(ingest_newforms(temp_file("empty.jsonl", "")).empty()); }

TEST(Ingest, RejectsBadNormalization) {
  EXPECT_THROW(materialize(parse_newform_record(R"({"label":"x","level":1,"weight":12,"an":[2,-24]})")),
               std::invalid_argument);
}

TEST(Ingest, RejectsDeligneViolationNamingPrime) {
  try {
    materialize(parse_newform_record(R"({"label":"x","level":11,"weight":2,"ap":{"2":3,"3":0}})"));
    FAIL() << "expected rejection";
  } catch (const std::invalid_argument& e) {
    EXPECT_NE(std::string(e.what()).find("p = 2"), std::string::npos) << e.what();
  }
  // p | N is exempt.
  EXPECT_NO_THROW(materialize(parse_newform_record(R"({"label":"x","level":2,"weight":2,"ap":{"2":3,"3":0}})")));
}

TEST(Ingest, MalformedRecords) {
  for (const char* line : {"not json", "[]", R"({"level":1,"weight":2,"ap":{}})",
                           R"({"label":"x","level":1,"weight":2})",
                           R"({"label":"x","level":1,"weight":2,"ap":{"4":1}})",
                           R"({"label":"x","level":0,"weight":2,"ap":{}})",
                           R"({"label":"x","level":1,"weight":2,"an":[1],"ap":{}})",
                           R"({"label":"x","level":1,"weight":2,"an":["1x"]})"}) {
    EXPECT_THROW(materialize(parse_newform_record(line)), std::invalid_argument) << line;
  }
}

TEST(Ingest, LineNumbersInErrors) {
  auto path = temp_file("bad.jsonl", "{\"label\":\"a\",\"level\":1,\"weight\":12,\"an\":[1,-24]}\nbroken\n");
  try {
    ingest_newforms(path);
    FAIL();
  } catch (const std::invalid_argument& e) {
    EXPECT_NE(std::string(e.what()).find(":2"), std::string::npos) << e.what();
  }
}

TEST(Ingest, BigIntegersRoundTripAsStrings) {
  auto d = level1_eigenform(26, 60);
  ASSERT_GT(mpz_sizeinbase(d.c(59).get_mpz_t(), 2), 53u);
  NewformRecord r;
  r.label = "d";
  r.level = 1;
  r.weight = 26;
  r.an = std::vector<mpz_class>(d.coeffs().begin() + 1, d.coeffs().end());
  auto line = format_newform_record(r);
  EXPECT_NE(line.find('"' + d.c(59).get_str() + '"'), std::string::npos);
  auto back = materialize(parse_newform_record(line));
  for (std::size_t n = 1; n < 60; ++n) EXPECT_EQ(back.c(n), d.c(n));
}
