#include <doctest.h>

#include "atlas/rules.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace atlas;
using fixtures::q;

TEST_CASE("thiele weight sequences")
{
    CHECK(ThieleWeights::av().weight(1) == 1);
    CHECK(ThieleWeights::av().weight(7) == 1);
    CHECK(ThieleWeights::pav().weight(3) == q(1, 3));
    CHECK(ThieleWeights::slav().weight(1) == 1);
    CHECK(ThieleWeights::slav().weight(3) == q(1, 5));
    CHECK(ThieleWeights::cc().weight(1) == 1);
    CHECK(ThieleWeights::cc().weight(2) == 0);
    CHECK(ThieleWeights::geometric(q(2)).weight(3) == q(1, 8));
    CHECK(ThieleWeights::geometric(q(5, 2)).weight(2) == q(4, 25));
    CHECK_THROWS_AS(ThieleWeights::geometric(q(1)), std::invalid_argument);
    CHECK_THROWS(ThieleWeights::pav().weight(0));
}

TEST_CASE("rule identifiers round-trip")
{
    for (auto id : kAllRules) {
        CHECK(parse_rule(to_string(id)) == id);
        CHECK_FALSE(display_name(id).empty());
    }
    CHECK(to_string(RuleId::SeqPhragmen) == "seq_phragmen");
    CHECK(display_name(RuleId::Geometric3) == "G-3");
    CHECK_THROWS_AS(parse_rule("borda"), std::invalid_argument);
    CHECK(is_optimization_rule(RuleId::PAV));
    CHECK(is_optimization_rule(RuleId::MinimaxAV));
    CHECK_FALSE(is_optimization_rule(RuleId::SeqPAV));
    CHECK_FALSE(is_optimization_rule(RuleId::EqualShares));
}

TEST_CASE("rules on the majority-and-minority election")
{
    // Derived by hand: the five {a,b} voters dominate the score-based
    // rules, while covering and quota rules give the two {c} voters a seat.
    const auto e = fixtures::majority_and_minority();
    const Committee ab{0, 1}, ac{0, 2};
    CHECK(run_rule(RuleId::AV, e, 2) == ab);
    CHECK(run_rule(RuleId::SAV, e, 2) == ab);
    CHECK(run_rule(RuleId::PAV, e, 2) == ab);
    CHECK(run_rule(RuleId::SeqPAV, e, 2) == ab);
    CHECK(run_rule(RuleId::CC, e, 2) == ac);
    CHECK(run_rule(RuleId::SeqCC, e, 2) == ac);
    CHECK(run_rule(RuleId::MinimaxAV, e, 2) == ac);
    CHECK(run_rule(RuleId::GreedyMonroe, e, 2) == ac);
    CHECK(run_rule(RuleId::SeqPhragmen, e, 2) == ab);
    CHECK(run_rule(RuleId::EqualShares, e, 2) == ab);
    CHECK(thiele_score(e, ThieleWeights::pav(), ab) == q(15, 2));
    CHECK(thiele_score(e, ThieleWeights::pav(), ac) == 7);
    CHECK(minimax_objective(e, ac) == 2);
    CHECK(minimax_objective(e, ab) == 3);
}

TEST_CASE("every rule picks {p,q} on the similarity election")
{
    const auto e = fixtures::similarity_election();
    for (auto id : kAllRules) {
        CAPTURE(to_string(id));
        CHECK(run_rule(id, e, 2) == Committee{0, 1});
    }
}

TEST_CASE("rules handle the extreme committee sizes")
{
    const auto e = fixtures::similarity_election();
    for (auto id : kAllRules) {
        CAPTURE(to_string(id));
        CHECK(run_rule(id, e, 0).size() == 0);
        CHECK(run_rule(id, e, 4) == Committee{0, 1, 2, 3});
        CHECK_THROWS_AS(run_rule(id, e, 5), std::invalid_argument);
        CHECK_THROWS_AS(run_rule(id, e, -1), std::invalid_argument);
    }
}

TEST_CASE("ties break toward lower candidate indices")
{
    Election e(4, {{2, 3}, {0, 1}});
    CHECK(approval_voting(e, 2) == Committee{0, 1});
    CHECK(thiele_optimal(e, ThieleWeights::pav(), 1) == Committee{0});
    CHECK(run_rule(RuleId::SeqPhragmen, e, 2) == Committee{0, 2});
    Election empty(3, {{}, {}});
    for (auto id : kAllRules) {
        CAPTURE(to_string(id));
        CHECK(run_rule(id, empty, 2) == Committee{0, 1});
    }
}

TEST_CASE("thiele_optimal matches exhaustive search")
{
    Rng rng(11);
    const std::vector<ThieleWeights> families{ThieleWeights::av(), ThieleWeights::pav(), ThieleWeights::slav(),
                                              ThieleWeights::cc(), ThieleWeights::geometric(q(3))};
    for (int trial = 0; trial < 120; ++trial) {
        const int m = 3 + static_cast<int>(rng.below(6));
        const int n = 2 + static_cast<int>(rng.below(9));
        const int k = 1 + static_cast<int>(rng.below(std::min(4, m)));
        auto e = oracle::random_election(rng, m, n, 0.35);
        for (const auto& w : families) {
            auto expected = oracle::thiele_optimal(e, [&](int i) { return w.weight(i); }, k);
            REQUIRE(thiele_optimal(e, w, k).members() == expected);
        }
    }
}

TEST_CASE("thiele_optimal takes the exact path for large weights")
{
    // Base 1000 weights force the exact fallback inside the search.
    Rng rng(5);
    for (int trial = 0; trial < 20; ++trial) {
        auto e = oracle::random_election(rng, 7, 8, 0.5);
        const auto w = ThieleWeights::geometric(q(1000));
        auto expected = oracle::thiele_optimal(e, [&](int i) { return w.weight(i); }, 4);
        CHECK(thiele_optimal(e, w, 4).members() == expected);
    }
}

TEST_CASE("sequential thiele is greedy on marginal gains")
{
    Rng rng(12);
    for (int trial = 0; trial < 80; ++trial) {
        auto e = oracle::random_election(rng, 7, 9, 0.4);
        for (const auto& w : {ThieleWeights::pav(), ThieleWeights::cc(), ThieleWeights::slav()}) {
            auto weight = [&](int i) { return w.weight(i); };
            std::vector<int> chosen;
            for (int round = 0; round < 4; ++round) {
                int best = -1;
                Rational best_gain = -1;
                for (int c = 0; c < 7; ++c) {
                    if (std::count(chosen.begin(), chosen.end(), c)) continue;
                    auto with = chosen;
                    with.push_back(c);
                    Rational gain = oracle::thiele_score(e, weight, with) - oracle::thiele_score(e, weight, chosen);
                    if (gain > best_gain) {
                        best_gain = gain;
                        best = c;
                    }
                }
                chosen.push_back(best);
            }
            std::sort(chosen.begin(), chosen.end());
            CHECK(thiele_sequential(e, w, 4).members() == chosen);
        }
    }
}

TEST_CASE("minimax_av matches exhaustive search")
{
    Rng rng(13);
    for (int trial = 0; trial < 150; ++trial) {
        const int m = 2 + static_cast<int>(rng.below(7));
        const int n = 1 + static_cast<int>(rng.below(8));
        const int k = 1 + static_cast<int>(rng.below(std::min(4, m)));
        auto e = oracle::random_election(rng, m, n, 0.4);
        auto got = minimax_av(e, k);
        REQUIRE(got.members() == oracle::minimax_av(e, k));
        CHECK(minimax_objective(e, got) == oracle::minimax_objective(e, got.members()));
    }
}

TEST_CASE("sav weighs supporters by ballot length")
{
    // c0: 1/3 + 1/3; c1: 1/3 + 1/3; c2: 1/3 + 1; c3: 1/3.
    Election e(4, {{0, 1, 2}, {0, 1, 3}, {2}});
    CHECK(sav(e, 1) == Committee{2});
    CHECK(sav(e, 2) == Committee{0, 2});
}

TEST_CASE("greedy monroe quotas and assignments")
{
    Election e(3, {{0}, {0}, {0}, {1}, {1}, {2}, {2}});
    auto out = greedy_monroe_detailed(e, 3);
    // n = 7, k = 3: quotas 3, 2, 2.
    CHECK(out.quotas == std::vector<int>{3, 2, 2});
    CHECK(out.order == std::vector<int>{0, 1, 2});
    CHECK(out.assigned[0] == std::vector<int>{0, 1, 2});
    CHECK(out.committee == Committee{0, 1, 2});
    // Voters assigned to distinct rounds never overlap.
    std::vector<int> seen;
    for (const auto& g : out.assigned) seen.insert(seen.end(), g.begin(), g.end());
    std::sort(seen.begin(), seen.end());
    CHECK(std::adjacent_find(seen.begin(), seen.end()) == seen.end());
}

TEST_CASE("seq-phragmen loads")
{
    const auto e = fixtures::majority_and_minority();
    auto out = seq_phragmen_detailed(e, 3);
    CHECK(out.order == std::vector<int>{0, 1, 2});
    CHECK(out.selection_loads[0] == q(1, 5));
    CHECK(out.selection_loads[1] == q(2, 5));
    CHECK(out.selection_loads[2] == q(1, 2));
    CHECK(out.final_loads[0] == q(2, 5));
    CHECK(out.final_loads[6] == q(1, 2));
    Rational total = 0;
    for (const auto& l : out.final_loads) total += l;
    CHECK(total == 3);
}

TEST_CASE("equal shares spending and completion")
{
    const auto e = fixtures::majority_and_minority();
    auto out = equal_shares_detailed(e, 2);
    CHECK(out.equal_shares_picks == 1);
    CHECK(out.order == std::vector<int>{0, 1});
    CHECK(out.rho == std::vector<Rational>{q(1, 5)});
    CHECK(out.spending[0] == q(1, 5));
    CHECK(out.spending[5] == 0);
    // Each voter's spending never exceeds the k/n budget.
    for (const auto& s : out.spending) CHECK(s <= q(2, 7));
}

TEST_CASE("equal shares buys cheap popular candidates first")
{
    // n = 4, k = 3: budgets 3/4. c0 has four supporters (rho 1/4); then
    // c1 and c2 each exhaust their two supporters' remaining 1/2.
    Election e(3, {{0, 1}, {0, 1}, {0, 2}, {0, 2}});
    auto out = equal_shares_detailed(e, 3);
    CHECK(out.order == std::vector<int>{0, 1, 2});
    CHECK(out.equal_shares_picks == 3);
    CHECK(out.rho == std::vector<Rational>{q(1, 4), q(1, 2), q(1, 2)});
    for (const auto& s : out.spending) CHECK(s == q(3, 4));
}
