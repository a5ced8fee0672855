#include <doctest.h>

#include <sstream>

#include "atlas/election.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace atlas;
using fixtures::q;

TEST_CASE("election sorts ballots and builds both views")
{
    Election e(3, {{2, 0}, {}, {1}});
    CHECK(e.num_candidates() == 3);
    CHECK(e.num_voters() == 3);
    CHECK(std::vector<int>(e.ballot(0).begin(), e.ballot(0).end()) == std::vector<int>{0, 2});
    CHECK(e.ballot(1).empty());
    CHECK(std::vector<int>(e.supporters(0).begin(), e.supporters(0).end()) == std::vector<int>{0});
    CHECK(e.approvers(2).count() == 1);
    CHECK(e.approvers(2).test(0));
    CHECK(e.approves(2, 1));
    CHECK_FALSE(e.approves(1, 1));
    CHECK(e.label(1) == "c1");
}

TEST_CASE("election rejects malformed input")
{
    CHECK_THROWS_AS(Election(0, {{}}), std::invalid_argument);
    CHECK_THROWS_AS(Election(3, {}), std::invalid_argument);
    CHECK_THROWS_AS(Election(3, {{3}}), std::invalid_argument);
    CHECK_THROWS_AS(Election(3, {{-1}}), std::invalid_argument);
    CHECK_THROWS_AS(Election(3, {{1, 1}}), std::invalid_argument);
    CHECK_THROWS_AS(Election(3, {{1}}, {"a", "b"}), std::invalid_argument);
    Election e(2, {{0}});
    CHECK_THROWS_AS(e.approvers(2), std::invalid_argument);
}

TEST_CASE("committee keeps strictly increasing members")
{
    Committee w{0, 3, 5};
    CHECK(w.size() == 3);
    CHECK(w.contains(3));
    CHECK_FALSE(w.contains(4));
    CHECK_THROWS_AS(Committee({3, 1}), std::invalid_argument);
    CHECK_THROWS_AS(Committee({1, 1}), std::invalid_argument);
    CHECK(Committee::from_unsorted({5, 0, 3}) == w);
    CHECK_THROWS_AS(Committee::from_unsorted({2, 2}), std::invalid_argument);
    CHECK(Committee{0, 1} < Committee{0, 2});
    Election e(4, {{0}});
    CHECK_THROWS_AS(w.validate_for(e), std::invalid_argument);
    std::ostringstream os;
    os << w;
    CHECK(os.str() == "{0,3,5}");
}

TEST_CASE("metric names round-trip")
{
    for (auto m : {CandidateMetric::Discrete, CandidateMetric::Hamming, CandidateMetric::NormalizedHamming,
                   CandidateMetric::Jaccard}) {
        CHECK(parse_metric(to_string(m)) == m);
    }
    CHECK(parse_metric("normalized_hamming") == CandidateMetric::NormalizedHamming);
    CHECK_THROWS_AS(parse_metric("cosine"), std::invalid_argument);
}

TEST_CASE("candidate distances on the four-voter similarity example")
{
    const auto e = fixtures::similarity_election();
    const int p = 0, qq = 1, r = 2, s = 3;
    CHECK(candidate_distance(e, CandidateMetric::Hamming, p, qq) == 4);
    CHECK(candidate_distance(e, CandidateMetric::NormalizedHamming, p, qq) == 1);
    CHECK(candidate_distance(e, CandidateMetric::Jaccard, p, qq) == 1);
    CHECK(candidate_distance(e, CandidateMetric::NormalizedHamming, p, r) == q(1, 4));
    CHECK(candidate_distance(e, CandidateMetric::Jaccard, p, r) == q(1, 2));
    CHECK(candidate_distance(e, CandidateMetric::NormalizedHamming, p, s) == q(1, 2));
    CHECK(candidate_distance(e, CandidateMetric::Jaccard, p, s) == q(2, 3));
    CHECK(candidate_distance(e, CandidateMetric::NormalizedHamming, qq, r) == q(3, 4));
    CHECK(candidate_distance(e, CandidateMetric::Jaccard, qq, r) == 1);
    CHECK(candidate_distance(e, CandidateMetric::Discrete, p, qq) == 1);
    CHECK(candidate_distance(e, CandidateMetric::Discrete, r, r) == 0);
}

TEST_CASE("jaccard between two unapproved candidates is zero")
{
    Election e(3, {{0}, {0}});
    CHECK(candidate_distance(e, CandidateMetric::Jaccard, 1, 2) == 0);
    CHECK(candidate_distance(e, CandidateMetric::Jaccard, 0, 1) == 1);
}

TEST_CASE("candidate distances match the set-based oracle and are metrics")
{
    Rng rng(7);
    for (int trial = 0; trial < 60; ++trial) {
        const int m = 2 + static_cast<int>(rng.below(6));
        const int n = 1 + static_cast<int>(rng.below(7));
        auto e = oracle::random_election(rng, m, n, 0.4);
        for (auto metric : {CandidateMetric::Discrete, CandidateMetric::Hamming, CandidateMetric::NormalizedHamming,
                            CandidateMetric::Jaccard}) {
            for (int a = 0; a < m; ++a) {
                CHECK(candidate_distance(e, metric, a, a) == 0);
                for (int b = 0; b < m; ++b) {
                    const auto dab = candidate_distance(e, metric, a, b);
                    REQUIRE(dab == oracle::candidate_distance(e, metric, a, b));
                    CHECK(dab == candidate_distance(e, metric, b, a));
                    for (int c = 0; c < m; ++c) {
                        CHECK(dab <= candidate_distance(e, metric, a, c) + candidate_distance(e, metric, c, b));
                    }
                }
            }
        }
    }
}

TEST_CASE("election JSON round-trips")
{
    const auto e = fixtures::similarity_election();
    const auto text = election_to_json(e);
    CHECK(election_from_json(text) == e);
    std::stringstream ss;
    std::vector<Election> all{e, Election(2, {{1}, {}})};
    write_elections_jsonl(ss, all);
    CHECK(read_elections_jsonl(ss) == all);
    CHECK_THROWS(election_from_json("{\"m\": 2}"));
    CHECK(election_from_json(R"({"m": 2, "approvals": [[1]], "extra": true})") == Election(2, {{1}}));
}

TEST_CASE("rational parsing and formatting")
{
    CHECK(parse_rational("3/6") == q(1, 2));
    CHECK(parse_rational("-4") == q(-4));
    CHECK(parse_rational("0.25") == q(1, 4));
    CHECK(parse_rational("010/007") == q(10, 7));
    CHECK(parse_rational("-0.05") == q(-1, 20));
    CHECK(parse_rational("0.000") == 0);
    CHECK(to_string(q(6, 4)) == "3/2");
    CHECK(to_string(q(5)) == "5");
    CHECK_THROWS(parse_rational("1/0"));
    CHECK_THROWS(parse_rational("abc"));
    CHECK(atlas::ceil(q(7, 2)) == 4);
    CHECK(atlas::ceil(q(-7, 2)) == -3);
    CHECK(atlas::ceil(q(4)) == 4);
}
