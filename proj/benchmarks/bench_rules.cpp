#include <benchmark/benchmark.h>

#include "atlas/metrics.hpp"
#include "atlas/rules.hpp"
#include "common.hpp"

using namespace atlas;

static void BM_ThieleOptimal(benchmark::State& state, const char* culture, ThieleWeights w)
{
    const auto e = bench::reduced_instance(culture, 100);
    for (auto _ : state) benchmark::DoNotOptimize(thiele_optimal(e, w, 5));
}
BENCHMARK_CAPTURE(BM_ThieleOptimal, pav_disjoint, "disjoint", ThieleWeights::pav());
BENCHMARK_CAPTURE(BM_ThieleOptimal, cc_party_list, "party_list", ThieleWeights::cc());
BENCHMARK_CAPTURE(BM_ThieleOptimal, pav_euclidean_2d, "euclidean_2d", ThieleWeights::pav());

static void BM_MinimaxAV(benchmark::State& state)
{
    const auto e = bench::reduced_instance("euclidean_1d", 100);
    for (auto _ : state) benchmark::DoNotOptimize(minimax_av(e, 5));
}
BENCHMARK(BM_MinimaxAV);

static void BM_EqualShares(benchmark::State& state)
{
    const auto e = bench::reduced_instance("resampling", 100);
    for (auto _ : state) benchmark::DoNotOptimize(equal_shares(e, 5));
}
BENCHMARK(BM_EqualShares);

static void BM_AllRulesAndMatrix(benchmark::State& state)
{
    const auto e = bench::reduced_instance("disjoint", 100);
    for (auto _ : state) {
        RuleCommittees committees;
        for (auto id : kAllRules) committees.emplace_back(id, run_rule(id, e, 5));
        benchmark::DoNotOptimize(pairwise_rule_distances(e, committees, CandidateMetric::Jaccard));
    }
}
BENCHMARK(BM_AllRulesAndMatrix)->Unit(benchmark::kMillisecond);
