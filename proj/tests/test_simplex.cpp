#include <doctest.h>

#include "atlas/rng.hpp"
#include "atlas/simplex.hpp"
#include "fixtures.hpp"

using namespace atlas;
using namespace atlas::lp;
using fixtures::q;

namespace {

bool satisfied(const std::vector<Constraint>& cons, const std::vector<Rational>& x)
{
    for (const auto& v : x) {
        if (v < 0) return false;
    }
    for (const auto& c : cons) {
        Rational lhs = 0;
        for (const auto& [j, a] : c.terms) lhs += a * x[j];
        if (c.relation == Relation::LessEqual && lhs > c.rhs) return false;
        if (c.relation == Relation::GreaterEqual && lhs < c.rhs) return false;
        if (c.relation == Relation::Equal && lhs != c.rhs) return false;
    }
    return true;
}

} // namespace

TEST_CASE("feasible system returns an exact point")
{
    // x + y = 1, x - y >= 1/3, y >= 1/4.
    std::vector<Constraint> cons{
        {{{0, q(1)}, {1, q(1)}}, Relation::Equal, q(1)},
        {{{0, q(1)}, {1, q(-1)}}, Relation::GreaterEqual, q(1, 3)},
        {{{1, q(1)}}, Relation::GreaterEqual, q(1, 4)},
    };
    auto res = find_feasible_point(2, cons);
    REQUIRE(res.feasible);
    CHECK(satisfied(cons, res.point));
}

TEST_CASE("infeasible systems are detected")
{
    std::vector<Constraint> cons{
        {{{0, q(1)}, {1, q(1)}}, Relation::LessEqual, q(1)},
        {{{0, q(1)}}, Relation::GreaterEqual, q(2)},
    };
    CHECK_FALSE(find_feasible_point(2, cons).feasible);
    std::vector<Constraint> negative{{{{0, q(1)}}, Relation::Equal, q(-1)}};
    CHECK_FALSE(find_feasible_point(1, negative).feasible);
}

TEST_CASE("negative right-hand sides are normalized")
{
    std::vector<Constraint> cons{{{{0, q(-1)}, {1, q(-2)}}, Relation::LessEqual, q(-3)}};
    auto res = find_feasible_point(2, cons);
    REQUIRE(res.feasible);
    CHECK(satisfied(cons, res.point));
}

TEST_CASE("degenerate and empty systems")
{
    CHECK(find_feasible_point(3, {}).feasible);
    std::vector<Constraint> zero{{{{0, q(1)}}, Relation::Equal, q(0)}, {{{0, q(2)}}, Relation::Equal, q(0)}};
    CHECK(find_feasible_point(1, zero).feasible);
}

TEST_CASE("random box systems agree with a witness-based construction")
{
    // Constraints built around a hidden nonnegative point are feasible;
    // adding x0 <= -1 makes them infeasible.
    Rng rng(31);
    for (int trial = 0; trial < 60; ++trial) {
        const int nv = 2 + static_cast<int>(rng.below(5));
        std::vector<Rational> hidden(nv);
        for (auto& h : hidden) h = q(static_cast<long>(rng.below(5)), 1 + static_cast<long>(rng.below(3)));
        std::vector<Constraint> cons;
        for (int r = 0; r < 6; ++r) {
            Constraint c;
            Rational value = 0;
            for (int j = 0; j < nv; ++j) {
                Rational a = q(static_cast<long>(rng.below(7)) - 3);
                c.terms.emplace_back(j, a);
                value += a * hidden[j];
            }
            const auto kind = rng.below(3);
            c.relation = kind == 0 ? Relation::LessEqual : kind == 1 ? Relation::Equal : Relation::GreaterEqual;
            c.rhs = value;
            cons.push_back(c);
        }
        auto res = find_feasible_point(nv, cons);
        REQUIRE(res.feasible);
        CHECK(satisfied(cons, res.point));
        cons.push_back({{{0, q(1)}}, Relation::LessEqual, q(-1)});
        CHECK_FALSE(find_feasible_point(nv, cons).feasible);
    }
}
