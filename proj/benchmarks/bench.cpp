#include <benchmark/benchmark.h>

#include "lnz/dfao.hpp"
#include "lnz/factbuild.hpp"
#include "lnz/numkit.hpp"

using namespace lnz;

static void BM_OracleStream(benchmark::State& state) {
    const std::uint64_t base = static_cast<std::uint64_t>(state.range(0));
    for (auto _ : state) {
        LnzStream s(base);
        std::uint64_t acc = 0;
        for (int i = 0; i < 100000; ++i) {
            s.advance();
            acc += s.value();
        }
        benchmark::DoNotOptimize(acc);
    }
    state.SetItemsProcessed(state.iterations() * 100000);
}
BENCHMARK(BM_OracleStream)->Arg(10)->Arg(12)->Arg(49);

static void BM_BuildSoundPrimePower(benchmark::State& state) {
    const std::uint64_t p = static_cast<std::uint64_t>(state.range(0));
    const std::uint32_t a = static_cast<std::uint32_t>(state.range(1));
    for (auto _ : state) {
        auto d = build_prime_power(p, a, PrimePowerMode::Sound);
        benchmark::DoNotOptimize(d.num_states());
    }
}
BENCHMARK(BM_BuildSoundPrimePower)->Args({3, 2})->Args({2, 4})->Args({7, 2});

static void BM_BuildDominant(benchmark::State& state) {
    const std::uint64_t base = static_cast<std::uint64_t>(state.range(0));
    for (auto _ : state) {
        auto d = build_dominant(base);
        benchmark::DoNotOptimize(d.num_states());
    }
}
BENCHMARK(BM_BuildDominant)->Arg(10)->Arg(24)->Arg(50);

static void BM_Eval(benchmark::State& state) {
    auto d = build_dominant(static_cast<std::uint64_t>(state.range(0)));
    std::uint64_t n = 1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(eval(d, n));
        n = n * 6364136223846793005ull + 1442695040888963407ull;
        n >>= 16; // keep digit counts moderate
    }
}
BENCHMARK(BM_Eval)->Arg(10)->Arg(48);

static void BM_Minimize(benchmark::State& state) {
    auto d = build_prime_power(2, 5, PrimePowerMode::Sound);
    for (auto _ : state) {
        auto m = minimize(d);
        benchmark::DoNotOptimize(m.num_states());
    }
}
BENCHMARK(BM_Minimize);

BENCHMARK_MAIN();
