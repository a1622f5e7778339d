#include <benchmark/benchmark.h>

#include "csctop/ordinal.hpp"
#include "csctop/pairing.hpp"

namespace {

void BM_PairRoundTrip(benchmark::State& state) {
    std::uint64_t z = 0;
    for (auto _ : state) {
        auto [a, b] = csctop::unpair_code(z);
        benchmark::DoNotOptimize(csctop::pair_code(a, b));
        z = (z + 97) % 100000;
    }
}
BENCHMARK(BM_PairRoundTrip);

void BM_OrdinalArithmetic(benchmark::State& state) {
    const csctop::Ordinal w = csctop::Ordinal::omega();
    const csctop::Ordinal big = w * w + w * csctop::Ordinal(3) + csctop::Ordinal(7);
    for (auto _ : state) {
        benchmark::DoNotOptimize(big * w + big);
    }
}
BENCHMARK(BM_OrdinalArithmetic);

} // namespace

BENCHMARK_MAIN();
