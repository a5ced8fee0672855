#pragma once

#include "atlas/election.hpp"

namespace fixtures {

// Four voters over p, q, r, s (indices 0..3):
// {p}, {q, s}, {p, r, s}, {q}.
inline atlas::Election similarity_election()
{
    return atlas::Election(4, {{0}, {1, 3}, {0, 2, 3}, {1}}, {"p", "q", "r", "s"});
}

// Five voters approve {a, b}, two approve {c}; d is unapproved.
inline atlas::Election majority_and_minority()
{
    return atlas::Election(4, {{0, 1}, {0, 1}, {0, 1}, {0, 1}, {0, 1}, {2}, {2}});
}

inline atlas::Rational q(long num, long den = 1) { return atlas::make_rational(num, den); }

} // namespace fixtures
