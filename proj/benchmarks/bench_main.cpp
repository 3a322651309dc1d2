#include <benchmark/benchmark.h>

#include <memory>

#include "parakit/algebra.hpp"
#include "parakit/catalog.hpp"
#include "parakit/envelope.hpp"
#include "parakit/morphisms.hpp"

using namespace parakit;

namespace {

std::shared_ptr<InducedAlgebra> z3_01() {
  return std::make_shared<InducedAlgebra>(Monoid::cyclic(3), Subset::of(FinSet(3), {0, 1}));
}

void BM_CongruenceZ3(benchmark::State& state) {
  const auto a = z3_01();
  const auto w = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(Congruence::close(*a, w).num_classes());
}
BENCHMARK(BM_CongruenceZ3)->DenseRange(4, 10, 2)->Unit(benchmark::kMillisecond);

void BM_CongruenceN(benchmark::State& state) {
  const auto n = table_n();
  const auto w = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(Congruence::close(*n, w).num_classes());
}
BENCHMARK(BM_CongruenceN)->DenseRange(4, 8, 2)->Unit(benchmark::kMillisecond);

void BM_ClosureOracle(benchmark::State& state) {
  const auto n = table_n();
  for (auto _ : state) benchmark::DoNotOptimize(naive_closure_oracle(*n, 4).num_classes());
}
BENCHMARK(BM_ClosureOracle)->Unit(benchmark::kMillisecond);

void BM_Saturation(benchmark::State& state) {
  const auto a = z3_01();
  const auto b = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(check_saturation(*a, b).holds);
}
BENCHMARK(BM_Saturation)->DenseRange(3, 7)->Unit(benchmark::kMillisecond);

void BM_Descent(benchmark::State& state) {
  const auto a = z3_01();
  const auto b = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(check_descent_formulation(*a, b).holds);
}
BENCHMARK(BM_Descent)->DenseRange(3, 6)->Unit(benchmark::kMillisecond);

void BM_CatalogParamonoid(benchmark::State& state) {
  const auto entries = catalog();
  for (auto _ : state)
    for (const CatalogEntry& e : entries)
      benchmark::DoNotOptimize(check_paramonoid(*e.algebra, std::min<std::size_t>(4, e.algebra->effective_bound())).agree());
}
BENCHMARK(BM_CatalogParamonoid)->Unit(benchmark::kMillisecond);

void BM_FactorisationSaturation(benchmark::State& state) {
  const auto n = table_n();
  for (auto _ : state) benchmark::DoNotOptimize(check_factorisation_saturation(n, 4, 6).agree());
}
BENCHMARK(BM_FactorisationSaturation)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
