#include <map>

#include <benchmark/benchmark.h>

#include "nvsign/arith.hpp"
#include "nvsign/bfree.hpp"
#include "nvsign/forms.hpp"
#include "nvsign/nonvanish.hpp"
#include "nvsign/qseries.hpp"
#include "nvsign/rankin.hpp"

using namespace nvsign;

namespace {

QSeries sample_series(std::size_t P) {
  return eta_quotient_expand(EtaQuotient(std::vector<EtaFactor>{{1, 24}}), P);
}

void BM_MulSchoolbook(benchmark::State& state) {
  const auto a = sample_series(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(mul_schoolbook(a, a));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_MulSchoolbook)->RangeMultiplier(4)->Range(16, 4096)->Complexity();

void BM_MulKronecker(benchmark::State& state) {
  const auto a = sample_series(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(mul_kronecker(a, a));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_MulKronecker)->RangeMultiplier(4)->Range(16, 65536)->Complexity();

void BM_EtaExpand(benchmark::State& state) {
  const auto P = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(sample_series(P));
}
BENCHMARK(BM_EtaExpand)->RangeMultiplier(4)->Range(1024, 1 << 18)->Unit(benchmark::kMillisecond);

void BM_DeltaSeries(benchmark::State& state) {
  const auto P = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(delta_series(P));
}
BENCHMARK(BM_DeltaSeries)->RangeMultiplier(4)->Range(1024, 1 << 18)->Unit(benchmark::kMillisecond);

void BM_DeltaFromEisenstein(benchmark::State& state) {
  const auto P = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(delta_from_eisenstein(P));
}
BENCHMARK(BM_DeltaFromEisenstein)->RangeMultiplier(4)->Range(1024, 1 << 16)->Unit(benchmark::kMillisecond);

void BM_HeckeFill(benchmark::State& state) {
  const auto P = static_cast<std::size_t>(state.range(0));
  const auto d = sample_series(P);
  std::map<std::uint64_t, mpz_class> ap;
  for (auto p : primes_up_to(P - 1)) ap[p] = d[p];
  for (auto _ : state) benchmark::DoNotOptimize(hecke_fill("delta", 1, 12, ap, P));
}
BENCHMARK(BM_HeckeFill)->RangeMultiplier(4)->Range(1024, 1 << 18)->Unit(benchmark::kMillisecond);

void BM_SieveInterval(benchmark::State& state) {
  const auto set = BFreeSet::prime_squares();
  const auto y = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(sieve_interval(set, 1000000000000ull, y));
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) * state.range(0));
}
BENCHMARK(BM_SieveInterval)->RangeMultiplier(8)->Range(1 << 12, 1 << 21)->Unit(benchmark::kMillisecond);

void BM_RankinCoefficients(benchmark::State& state) {
  const auto P = static_cast<std::size_t>(state.range(0));
  auto f = std::make_shared<const ModularForm>(level1_eigenform(12, P + 1));
  auto g = std::make_shared<const ModularForm>(level1_eigenform(16, P + 1));
  const FormPair pair(f, g);
  for (auto _ : state) benchmark::DoNotOptimize(rankin_coefficients(pair, 1, P));
}
BENCHMARK(BM_RankinCoefficients)->RangeMultiplier(4)->Range(1024, 1 << 16)->Unit(benchmark::kMillisecond);

void BM_TwoSquaresWitness(benchmark::State& state) {
  std::uint64_t n = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(two_squares_witness(n++, {}));
}
BENCHMARK(BM_TwoSquaresWitness)->Arg(1000000)->Arg(1000000000000ll);

}  // namespace

BENCHMARK_MAIN();
