#include <benchmark/benchmark.h>

#include "atlas/axioms.hpp"
#include "atlas/rules.hpp"
#include "common.hpp"

using namespace atlas;

static void BM_Priceability(benchmark::State& state, const char* culture, RuleId rule)
{
    const auto e = bench::reduced_instance(culture, 100);
    const auto w = run_rule(rule, e, 5);
    for (auto _ : state) benchmark::DoNotOptimize(check_priceability(e, w));
}
BENCHMARK_CAPTURE(BM_Priceability, equal_shares_resampling, "resampling", RuleId::EqualShares);
BENCHMARK_CAPTURE(BM_Priceability, cc_party_list, "party_list", RuleId::CC);
BENCHMARK_CAPTURE(BM_Priceability, av_euclidean_1d, "euclidean_1d", RuleId::AV);

static void BM_EJR(benchmark::State& state, const char* culture, RuleId rule)
{
    const auto e = bench::reduced_instance(culture, 100);
    const auto w = run_rule(rule, e, 5);
    for (auto _ : state) benchmark::DoNotOptimize(check_ejr(e, w));
}
BENCHMARK_CAPTURE(BM_EJR, av_disjoint, "disjoint", RuleId::AV);
BENCHMARK_CAPTURE(BM_EJR, pav_resampling, "resampling", RuleId::PAV);
