#include <doctest.h>

#include "atlas/axioms.hpp"
#include "atlas/cultures.hpp"
#include "atlas/rules.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace atlas;
using fixtures::q;

TEST_CASE("cohesion thresholds are exact")
{
    CHECK(cohesion_threshold(1, 7, 2) == q(7, 2));
    CHECK(cohesion_threshold(2, 6, 3) == 4);
}

TEST_CASE("uncovered cohesive pair violates JR")
{
    // v0, v1 approve {c, d}; v2, v3 approve {a, b}; n/k = 2.
    Election e(4, {{2, 3}, {2, 3}, {0, 1}, {0, 1}});
    auto jr = check_jr(e, {0, 1});
    CHECK_FALSE(jr.holds);
    const auto& w = std::get<CohesiveWitness>(jr.witness);
    CHECK(w.ell == 1);
    CHECK(w.voters == std::vector<int>{0, 1});
    CHECK(verify_violation(e, {0, 1}, Axiom::JR, w));
    CHECK(check_jr(e, {0, 2}).holds);
    CHECK(check_pjr(e, {0, 2}).holds);
    CHECK(check_ejr(e, {0, 2}).holds);
}

TEST_CASE("PJR can hold while EJR fails")
{
    // n = 6, k = 3. Four voters share {a, b} (a 2-cohesive group) but the
    // committee {x, y, z} gives each of them one member.
    // a=0, b=1, x=2, y=3, z=4.
    Election e(5, {{0, 1, 2}, {0, 1, 2}, {0, 1, 3}, {0, 1, 3}, {4}, {4}});
    const Committee w{2, 3, 4};
    CHECK(check_jr(e, w).holds);
    CHECK(check_pjr(e, w).holds);
    auto ejr = check_ejr(e, w);
    CHECK_FALSE(ejr.holds);
    const auto& witness = std::get<CohesiveWitness>(ejr.witness);
    CHECK(witness.ell == 2);
    CHECK(verify_violation(e, w, Axiom::EJR, witness));
    auto profile = axiom_profile(e, w);
    CHECK_FALSE(profile.ejr.holds);
    CHECK(profile.pjr.holds);
}

TEST_CASE("a majority-only committee is not priceable")
{
    // Two voters fund both seats alone, leaving the other pair's candidate
    // with leftover support 2b >= 2.
    Election e(3, {{0, 1}, {0, 1}, {2}, {2}});
    CHECK_FALSE(check_priceability(e, {0, 1}).holds);
    auto ok = check_priceability(e, {0, 2});
    REQUIRE(ok.holds);
    CHECK(verify_price_system(e, {0, 2}, std::get<PriceSystem>(ok.witness)));
}

TEST_CASE("a committee member nobody approves cannot be priced")
{
    Election e(3, {{0}, {1}});
    CHECK_FALSE(check_priceability(e, {0, 2}).holds);
}

TEST_CASE("price system verification rejects tampered witnesses")
{
    const auto e = fixtures::majority_and_minority();
    const Committee w{0, 1};
    auto v = check_priceability(e, w);
    REQUIRE(v.holds);
    auto ps = std::get<PriceSystem>(v.witness);
    CHECK(verify_price_system(e, w, ps));
    auto overspent = ps;
    overspent.payments.front().amount += 1;
    CHECK_FALSE(verify_price_system(e, w, overspent));
    auto outsider = ps;
    outsider.payments.push_back({5, 0, q(0)});
    outsider.payments.back().amount = q(1, 100);
    CHECK_FALSE(verify_price_system(e, w, outsider));
}

TEST_CASE("JR, PJR and EJR agree with voter-group enumeration")
{
    Rng rng(41);
    int violations = 0;
    for (int trial = 0; trial < 400; ++trial) {
        const int m = 3 + static_cast<int>(rng.below(6));
        const int n = 2 + static_cast<int>(rng.below(8));
        const int k = 1 + static_cast<int>(rng.below(std::min(4, m)));
        auto e = oracle::random_election(rng, m, n, 0.45);
        const Committee w(oracle::random_committee(rng, m, k));
        const auto jr = check_jr(e, w), pjr = check_pjr(e, w), ejr = check_ejr(e, w);
        REQUIRE(jr.holds == oracle::satisfies(e, w.members(), oracle::Property::JR));
        REQUIRE(pjr.holds == oracle::satisfies(e, w.members(), oracle::Property::PJR));
        REQUIRE(ejr.holds == oracle::satisfies(e, w.members(), oracle::Property::EJR));
        for (const auto* v : {&jr, &pjr, &ejr}) {
            if (!v->holds) {
                ++violations;
                CHECK(verify_violation(e, w, v->axiom, std::get<CohesiveWitness>(v->witness)));
            }
        }
        for (int ell = 1; ell <= k; ++ell) CHECK(has_cohesive_group(e, k, ell) == oracle::has_cohesive_group(e, k, ell));
    }
    CHECK(violations > 50);
}

TEST_CASE("proportional rules keep their guarantees on sampled elections")
{
    Rng rng(42);
    for (int trial = 0; trial < 40; ++trial) {
        auto e = sample_resampling(12, 10, 0.25, 0.5, rng);
        for (int k : {2, 5}) {
            auto es = axiom_profile(e, equal_shares(e, k));
            CHECK(es.priceable.holds);
            CHECK(es.ejr.holds);
            auto ph = axiom_profile(e, seq_phragmen(e, k));
            CHECK(ph.priceable.holds);
            CHECK(ph.pjr.holds);
            auto pav = axiom_profile(e, thiele_optimal(e, ThieleWeights::pav(), k));
            CHECK(pav.ejr.holds);
            if (10 % k == 0) CHECK(axiom_profile(e, greedy_monroe(e, k)).pjr.holds);
        }
    }
}

TEST_CASE("verdicts serialize with their witnesses")
{
    Election e(4, {{2, 3}, {2, 3}, {0, 1}, {0, 1}});
    auto text = verdict_to_json(check_jr(e, {0, 1}));
    CHECK(text.find("\"axiom\":\"jr\"") != std::string::npos);
    CHECK(text.find("\"holds\":false") != std::string::npos);
    CHECK(text.find("\"voters\":[0,1]") != std::string::npos);
    auto priced = verdict_to_json(check_priceability(e, {0, 2}));
    CHECK(priced.find("\"budget\"") != std::string::npos);
}
