#include <doctest.h>

#include "atlas/farthest.hpp"
#include "atlas/metrics.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace atlas;
using fixtures::q;

TEST_CASE("brute force on the similarity election")
{
    const auto e = fixtures::similarity_election();
    auto res = fc_brute_force(e, 1, CandidateMetric::Jaccard);
    CHECK(res.distance == 1);
    CHECK(res.x == Committee{0});
    CHECK(res.y == Committee{1});
    CHECK(res.evaluations == 6);
    auto all = fc_brute_force(e, 4, CandidateMetric::Hamming);
    CHECK(all.x == all.y);
    CHECK(all.distance == 0);
    CHECK(fc_brute_force(e, 2, CandidateMetric::Discrete).distance == 2);
}

TEST_CASE("brute force respects its budget")
{
    Election e(20, {{0}});
    CHECK_THROWS_AS(fc_brute_force(e, 10, CandidateMetric::Hamming), ResourceError);
    CHECK_THROWS_AS(fc_brute_force(e, 3, CandidateMetric::Hamming, 1000), ResourceError);
    CHECK_THROWS_AS(fc_brute_force(e, 21, CandidateMetric::Hamming), std::invalid_argument);
}

TEST_CASE("discrete closed form")
{
    Election four(4, {{0}});
    auto res = fc_discrete(four, 2);
    CHECK(res.distance == 2);
    CHECK(res.x == Committee{0, 1});
    CHECK(res.y == Committee{2, 3});
    Election three(3, {{0}});
    auto r3 = fc_discrete(three, 2);
    CHECK(r3.distance == 1);
    CHECK(committee_distance(three, CandidateMetric::Discrete, r3.x, r3.y) == 1);
    CHECK(fc_discrete(three, 0).distance == 0);
}

TEST_CASE("discrete closed form agrees with brute force")
{
    Rng rng(51);
    for (int m = 1; m <= 8; ++m) {
        auto e = oracle::random_election(rng, m, 3, 0.5);
        for (int k = 0; k <= std::min(4, m); ++k) {
            auto fast = fc_discrete(e, k);
            auto slow = fc_brute_force(e, k, CandidateMetric::Discrete);
            CHECK(fast.distance == slow.distance);
            CHECK(fast.x == slow.x);
            CHECK(fast.y == slow.y);
        }
    }
}

TEST_CASE("candidate types")
{
    const auto e = fixtures::similarity_election();
    CHECK(candidate_types(e).size() == 4);
    Election same(5, {{0, 1, 2, 3, 4}, {0, 1, 2, 3, 4}});
    auto one = candidate_types(same);
    REQUIRE(one.size() == 1);
    CHECK(one[0].count() == 5);
    Election mixed(5, {{0, 2}, {1, 3}, {0, 2}});
    auto types = candidate_types(mixed);
    REQUIRE(types.size() == 3);
    CHECK(types[0].members == std::vector<int>{0, 2});
    CHECK(types[1].members == std::vector<int>{1, 3});
    CHECK(types[2].members == std::vector<int>{4});
    int total = 0;
    for (const auto& t : types) total += t.count();
    CHECK(total == 5);
}

TEST_CASE("typed search on structured elections")
{
    Election same(5, {{0, 1, 2, 3, 4}, {0, 1, 2, 3, 4}});
    for (auto metric : {CandidateMetric::Hamming, CandidateMetric::NormalizedHamming, CandidateMetric::Jaccard}) {
        CHECK(fc_type_compressed(same, 2, metric).distance == 0);
    }
    CHECK(fc_type_compressed(same, 2, CandidateMetric::Discrete).distance == 2);

    // Complementary approver sets: three candidates of each type reach
    // Jaccard distance k.
    Election split(6, {{0, 1, 2}, {0, 1, 2}, {3, 4, 5}});
    for (int k = 1; k <= 3; ++k) {
        auto typed = fc_type_compressed(split, k, CandidateMetric::Jaccard);
        CHECK(typed.distance == k);
        CHECK(fc_brute_force(split, k, CandidateMetric::Jaccard).distance == k);
        CHECK(committee_distance(split, CandidateMetric::Jaccard, typed.x, typed.y) == typed.distance);
    }
}

TEST_CASE("typed search agrees with brute force and the oracle")
{
    Rng rng(52);
    for (int trial = 0; trial < 120; ++trial) {
        const int m = 2 + static_cast<int>(rng.below(7));
        const int n = 1 + static_cast<int>(rng.below(4));
        const int k = 1 + static_cast<int>(rng.below(std::min(3, m)));
        auto e = oracle::random_election(rng, m, n, 0.5);
        for (auto metric : {CandidateMetric::Hamming, CandidateMetric::Jaccard}) {
            auto brute = fc_brute_force(e, k, metric);
            auto typed = fc_type_compressed(e, k, metric);
            REQUIRE(brute.distance == typed.distance);
            CHECK(committee_distance(e, metric, brute.x, brute.y) == brute.distance);
            CHECK(committee_distance(e, metric, typed.x, typed.y) == typed.distance);
            CHECK(typed.x <= typed.y);
            if (m <= 6) {
                auto ref = oracle::farthest(e, k, metric);
                CHECK(ref.distance == brute.distance);
                CHECK(ref.x == brute.x.members());
                CHECK(ref.y == brute.y.members());
            }
        }
    }
}

TEST_CASE("jaccard optimum never exceeds k")
{
    Rng rng(53);
    for (int trial = 0; trial < 40; ++trial) {
        auto e = oracle::random_election(rng, 7, 5, 0.4);
        for (int k = 1; k <= 3; ++k) CHECK(fc_type_compressed(e, k, CandidateMetric::Jaccard).distance <= k);
    }
}
