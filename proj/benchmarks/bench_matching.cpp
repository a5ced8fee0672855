#include <benchmark/benchmark.h>

#include "atlas/metrics.hpp"
#include "atlas/rng.hpp"

using namespace atlas;

static void BM_HungarianRandom(benchmark::State& state)
{
    const int k = static_cast<int>(state.range(0));
    Rng rng(7);
    std::vector<std::vector<Rational>> w(k, std::vector<Rational>(k));
    for (auto& row : w) {
        for (auto& x : row) x = Rational(BigInt(static_cast<long>(rng.below(100))), BigInt(1 + static_cast<long>(rng.below(9))));
    }
    const MatchingInstance instance(std::move(w));
    for (auto _ : state) benchmark::DoNotOptimize(min_weight_perfect_matching(instance));
    state.SetComplexityN(k);
}
BENCHMARK(BM_HungarianRandom)->RangeMultiplier(2)->Range(2, 32)->Complexity(benchmark::oNCubed);
