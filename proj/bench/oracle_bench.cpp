// Serial reference vs OpenMP kernels for the oracle, plus the NdN ladder.
#include <benchmark/benchmark.h>

#include "dice/evaluator.hpp"
#include "dice/oracle.hpp"

namespace {

const char* const kExpressions[] = {"2d6kh", "3d6dldh", "4d6f<3c", "1d6!", "d6+d6"};

void BM_EnumerateSerial(benchmark::State& state) {
    const auto expr = dice::parse(kExpressions[state.range(0)]);
    for (auto _ : state) benchmark::DoNotOptimize(dice::enumerate_serial(expr));
    state.SetLabel(kExpressions[state.range(0)]);
}

void BM_EnumerateParallel(benchmark::State& state) {
    const auto expr = dice::parse(kExpressions[state.range(0)]);
    for (auto _ : state) benchmark::DoNotOptimize(dice::enumerate_parallel(expr));
    state.SetLabel(kExpressions[state.range(0)]);
}

void BM_SampleSerial(benchmark::State& state) {
    const auto expr = dice::parse(kExpressions[state.range(0)]);
    for (auto _ : state) benchmark::DoNotOptimize(dice::sample_serial(expr, 10'000, 7));
    state.SetLabel(kExpressions[state.range(0)]);
}

void BM_SampleParallel(benchmark::State& state) {
    const auto expr = dice::parse(kExpressions[state.range(0)]);
    for (auto _ : state) benchmark::DoNotOptimize(dice::sample_parallel(expr, 10'000, 7));
    state.SetLabel(kExpressions[state.range(0)]);
}

void BM_RollNdN(benchmark::State& state) {
    const std::string n = std::to_string(state.range(0));
    const std::string source = n + "d" + n;
    std::uint64_t i = 0;
    for (auto _ : state) {
        dice::SeededSource rng(dice::derive_seed(1, i++));
        dice::MacroTable macros;
        benchmark::DoNotOptimize(dice::evaluate(dice::parse(source), macros, rng));
    }
    state.SetComplexityN(state.range(0));
}

}  // namespace

BENCHMARK(BM_EnumerateSerial)->DenseRange(0, 4);
BENCHMARK(BM_EnumerateParallel)->DenseRange(0, 4);
BENCHMARK(BM_SampleSerial)->DenseRange(0, 4);
BENCHMARK(BM_SampleParallel)->DenseRange(0, 4);
BENCHMARK(BM_RollNdN)->RangeMultiplier(10)->Range(1, 10'000)->Complexity();

BENCHMARK_MAIN();
