#include <benchmark/benchmark.h>

#include <string>

#include "lielat/chevalley.hpp"
#include "lielat/intform.hpp"
#include "lielat/parahoric.hpp"
#include "lielat/report.hpp"

using namespace lielat;

namespace {

const char* const kTypes[] = {"G2", "F4", "E6", "E7", "E8"};

const ChevalleyAlgebra& cached(int which) {
  static const ChevalleyAlgebra algs[] = {
      ChevalleyAlgebra(RootSystem(LieType::parse("G2"))), ChevalleyAlgebra(RootSystem(LieType::parse("F4"))),
      ChevalleyAlgebra(RootSystem(LieType::parse("E6"))), ChevalleyAlgebra(RootSystem(LieType::parse("E7"))),
      ChevalleyAlgebra(RootSystem(LieType::parse("E8")))};
  return algs[which];
}

void BM_RootSystem(benchmark::State& state) {
  const LieType t = LieType::parse(kTypes[state.range(0)]);
  for (auto _ : state) benchmark::DoNotOptimize(RootSystem(t));
  state.SetLabel(kTypes[state.range(0)]);
}
BENCHMARK(BM_RootSystem)->DenseRange(0, 4);

void BM_Construct(benchmark::State& state) {
  const RootSystem rs(LieType::parse(kTypes[state.range(0)]));
  for (auto _ : state) benchmark::DoNotOptimize(ChevalleyAlgebra(rs));
  state.SetLabel(kTypes[state.range(0)]);
}
BENCHMARK(BM_Construct)->DenseRange(0, 4)->Unit(benchmark::kMillisecond);

void BM_KillingGram(benchmark::State& state) {
  const ChevalleyAlgebra& alg = cached(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(killing_matrix(alg));
  state.SetLabel(kTypes[state.range(0)]);
}
BENCHMARK(BM_KillingGram)->DenseRange(0, 4)->Unit(benchmark::kMillisecond);

void BM_Determinant(benchmark::State& state) {
  const IntegerForm form = normalized_gram(cached(static_cast<int>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(determinant(form));
  state.SetLabel(kTypes[state.range(0)]);
}
BENCHMARK(BM_Determinant)->DenseRange(0, 4)->Unit(benchmark::kMillisecond);

void BM_ElementaryDivisors(benchmark::State& state) {
  const IntegerForm form = normalized_gram(cached(static_cast<int>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(elementary_divisors(form));
  state.SetLabel(kTypes[state.range(0)]);
}
BENCHMARK(BM_ElementaryDivisors)->DenseRange(0, 4)->Unit(benchmark::kMillisecond);

void BM_VerifyFast(benchmark::State& state) {
  const ChevalleyAlgebra& alg = cached(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(verify_algebra(alg, VerifyMode::Fast));
  state.SetLabel(kTypes[state.range(0)]);
}
BENCHMARK(BM_VerifyFast)->DenseRange(0, 4)->Unit(benchmark::kMillisecond);

void BM_E8VerifyFull(benchmark::State& state) {
  const ChevalleyAlgebra& alg = cached(4);
  for (auto _ : state) benchmark::DoNotOptimize(verify_algebra(alg, VerifyMode::Full));
}
BENCHMARK(BM_E8VerifyFull)->Unit(benchmark::kMillisecond);

// All nine maximal parahorics of E8 at p = 2: reports plus discriminants.
void BM_E8ParahoricSweep(benchmark::State& state) {
  const ParahoricCalculator calc(cached(4));
  for (auto _ : state)
    for (int node = 0; node <= 8; ++node) benchmark::DoNotOptimize(make_report(calc, node, 2));
}
BENCHMARK(BM_E8ParahoricSweep)->Unit(benchmark::kMillisecond);

void BM_E8ParahoricDivisors(benchmark::State& state) {
  const ParahoricCalculator calc(cached(4));
  for (auto _ : state) benchmark::DoNotOptimize(calc.parahoric_divisors(4, 2));
}
BENCHMARK(BM_E8ParahoricDivisors)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
