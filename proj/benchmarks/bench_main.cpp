#include <benchmark/benchmark.h>

#include "hvcheck/finite_field.hpp"
#include "hvcheck/monodromy.hpp"
#include "hvcheck/picard_fuchs.hpp"
#include "hvcheck/point_count.hpp"

using namespace hvcheck;

static void BM_CharSum(benchmark::State& state) {
  count::CountJob job;
  job.p = static_cast<std::uint32_t>(state.range(0));
  job.power = static_cast<int>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(count::char_sum(job).total);
}
BENCHMARK(BM_CharSum)->Args({31, 1})->Args({113, 1})->Args({13, 2})->Args({31, 2})->Unit(benchmark::kMillisecond);

static void BM_QuadCharPrime(benchmark::State& state) {
  const ff::PrimeField k(static_cast<std::uint32_t>(state.range(0)));
  std::uint32_t i = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(k.quad_char(ff::Element{i}));
    if (++i == k.order()) i = 1;
  }
}
BENCHMARK(BM_QuadCharPrime)->Arg(113)->Arg(65521);

static void BM_QuadCharExtension(benchmark::State& state) {
  const auto k = ff::make_quadratic_extension(static_cast<std::uint32_t>(state.range(0)));
  std::uint32_t i = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(k.quad_char(ff::Element{i}));
    if (++i == k.order()) i = 1;
  }
}
BENCHMARK(BM_QuadCharExtension)->Arg(113);

static void BM_MonodromyClosure(benchmark::State& state) {
  const auto gens = mono::monodromy_generators(1).list();
  for (auto _ : state) benchmark::DoNotOptimize(mono::closure(gens).order());
}
BENCHMARK(BM_MonodromyClosure)->Unit(benchmark::kMillisecond);

static void BM_PeriodCoefficients(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(pf::period_coefficients(static_cast<std::size_t>(state.range(0))));
}
BENCHMARK(BM_PeriodCoefficients)->Arg(50)->Arg(200)->Unit(benchmark::kMicrosecond);

static void BM_RecoverRecurrence(benchmark::State& state) {
  const auto a = pf::period_coefficients(60);
  for (auto _ : state) benchmark::DoNotOptimize(pf::recover_recurrence(a, 40));
}
BENCHMARK(BM_RecoverRecurrence)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
