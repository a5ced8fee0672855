#include <doctest.h>

#include <sstream>

#include "atlas/metrics.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace atlas;
using fixtures::q;

namespace {

MatchingInstance square(std::vector<std::vector<long>> w)
{
    std::vector<std::vector<Rational>> r;
    for (auto& row : w) {
        r.emplace_back();
        for (long x : row) r.back().push_back(x);
    }
    return MatchingInstance(std::move(r));
}

} // namespace

TEST_CASE("hungarian matching on small instances")
{
    auto res = min_weight_perfect_matching(square({{4, 1, 3}, {2, 0, 5}, {3, 2, 2}}));
    CHECK(res.weight == 5);
    CHECK(res.assignment == std::vector<int>{1, 0, 2});
    CHECK(min_weight_perfect_matching(square({})).weight == 0);
    CHECK(min_weight_perfect_matching(square({{7}})).weight == 7);
    CHECK_THROWS_AS(square({{1, 2}}), std::invalid_argument);
    CHECK_THROWS_AS(square({{-1}}), std::invalid_argument);
}

TEST_CASE("hungarian matching agrees with permutation enumeration")
{
    Rng rng(21);
    for (int trial = 0; trial < 300; ++trial) {
        const int k = 1 + static_cast<int>(rng.below(6));
        std::vector<std::vector<Rational>> w(k, std::vector<Rational>(k));
        for (auto& row : w) {
            for (auto& x : row) x = make_rational(static_cast<long>(rng.below(20)), 1 + static_cast<long>(rng.below(4)));
        }
        auto res = min_weight_perfect_matching(MatchingInstance(w));
        std::vector<int> perm(k);
        std::iota(perm.begin(), perm.end(), 0);
        Rational best = -1;
        do {
            Rational s = 0;
            for (int i = 0; i < k; ++i) s += w[i][perm[i]];
            if (best < 0 || s < best) best = s;
        } while (std::next_permutation(perm.begin(), perm.end()));
        REQUIRE(res.weight == best);
        Rational s = 0;
        auto sorted = res.assignment;
        std::sort(sorted.begin(), sorted.end());
        for (int i = 0; i < k; ++i) {
            CHECK(sorted[i] == i);
            s += w[i][res.assignment[i]];
        }
        CHECK(s == res.weight);
    }
}

TEST_CASE("committee distance basics")
{
    const auto e = fixtures::similarity_election();
    CHECK(committee_distance(e, CandidateMetric::Jaccard, {0, 1}, {0, 1}) == 0);
    CHECK(committee_distance(e, CandidateMetric::Discrete, {0, 1}, {1, 2}) == 1);
    // {p} vs {r}, {q} vs {q}: 1/2.
    CHECK(committee_distance(e, CandidateMetric::Jaccard, {0, 1}, {1, 2}) == q(1, 2));
    CHECK(committee_distance(e, CandidateMetric::Hamming, {0}, {1}) == 4);
    CHECK_THROWS_AS(committee_distance(e, CandidateMetric::Hamming, {0}, {1, 2}), std::invalid_argument);
    CHECK_THROWS_AS(committee_distance(e, CandidateMetric::Hamming, {0}, {4}), std::invalid_argument);
}

TEST_CASE("committee distance matches the permutation oracle")
{
    Rng rng(22);
    for (int trial = 0; trial < 200; ++trial) {
        const int m = 2 + static_cast<int>(rng.below(7));
        const int n = 1 + static_cast<int>(rng.below(6));
        const int k = 1 + static_cast<int>(rng.below(std::min(4, m)));
        auto e = oracle::random_election(rng, m, n, 0.4);
        auto x = oracle::random_committee(rng, m, k), y = oracle::random_committee(rng, m, k);
        for (auto metric : {CandidateMetric::Discrete, CandidateMetric::Hamming, CandidateMetric::NormalizedHamming,
                            CandidateMetric::Jaccard}) {
            REQUIRE(committee_distance(e, metric, Committee(x), Committee(y)) ==
                    oracle::committee_distance(e, metric, x, y));
        }
        const auto both = std::count_if(x.begin(), x.end(), [&](int c) { return std::count(y.begin(), y.end(), c); });
        CHECK(committee_distance(e, CandidateMetric::Discrete, Committee(x), Committee(y)) == k - both);
    }
}

TEST_CASE("pairwise rule matrices normalize and average")
{
    const auto e = fixtures::similarity_election();
    RuleCommittees rc{{RuleId::AV, {0, 1}}, {RuleId::CC, {1, 2}}, {RuleId::PAV, {2, 3}}};
    auto mat = pairwise_rule_distances(e, rc, CandidateMetric::Jaccard);
    REQUIRE(mat.size() == 3);
    for (int a = 0; a < 3; ++a) {
        CHECK(mat.values[a][a] == 0);
        for (int b = 0; b < 3; ++b) CHECK(mat.values[a][b] == mat.values[b][a]);
    }
    auto norm = normalize_by_observed_max(mat);
    Rational top = 0;
    for (auto& row : norm.values) {
        for (auto& v : row) top = std::max(top, v);
    }
    CHECK(top == 1);
    RuleMatrix zeros{{RuleId::AV, RuleId::CC}, {{0, 0}, {0, 0}}};
    CHECK(normalize_by_observed_max(zeros).values == zeros.values);

    RuleMatrix other{{RuleId::AV, RuleId::CC}, {{0, 1}, {1, 0}}};
    std::vector<RuleMatrix> mats{zeros, other, other};
    auto avg = average_matrices(mats);
    CHECK(avg.at(RuleId::AV, RuleId::CC) == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
    CHECK_THROWS_AS(avg.index_of(RuleId::PAV), std::out_of_range);
    CHECK_THROWS(average_matrices(std::span<const RuleMatrix>{}));
    std::vector<RuleMatrix> mismatched{zeros, RuleMatrix{{RuleId::CC, RuleId::AV}, {{0, 0}, {0, 0}}}};
    CHECK_THROWS(average_matrices(mismatched));
}

TEST_CASE("distance CSV round-trips at six digits")
{
    DistanceMatrix mat{{RuleId::AV, RuleId::SeqPhragmen}, {{0, 0.25}, {0.25, 0}}};
    std::stringstream ss;
    write_distance_csv(ss, mat);
    CHECK(ss.str() == "rule,av,seq_phragmen\nav,0.000000,0.250000\nseq_phragmen,0.250000,0.000000\n");
    auto back = read_distance_csv(ss);
    CHECK(back.rules == mat.rules);
    CHECK(back.values == mat.values);
}
