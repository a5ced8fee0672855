#pragma once

#include <span>
#include <utility>
#include <vector>

#include "atlas/rational.hpp"

namespace atlas::lp {

enum class Relation { LessEqual, Equal, GreaterEqual };

// sum_j terms[j].second * x[terms[j].first]  <rel>  rhs
struct Constraint {
    std::vector<std::pair<int, Rational>> terms;
    Relation relation = Relation::LessEqual;
    Rational rhs;
};

struct FeasibilityResult {
    bool feasible = false;
    std::vector<Rational> point; // one value per variable when feasible
    int pivots = 0;
};

// Decides whether {x >= 0 : all constraints hold} is nonempty, by phase one
// of the simplex method on a dense rational tableau with Bland's rule.
// Exact: the verdict and the returned point carry no rounding.
FeasibilityResult find_feasible_point(int num_vars, std::span<const Constraint> constraints);

} // namespace atlas::lp
