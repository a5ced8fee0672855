#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "atlas/election.hpp"
#include "atlas/rational.hpp"

namespace atlas {

// Thrown when an exact search would exceed its work budget.
class ResourceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct FarthestResult {
    Committee x;
    Committee y;
    Rational distance;
    std::uint64_t evaluations = 0; // matchings solved
};

inline constexpr std::uint64_t kDefaultFarthestBudget = 100'000'000;

// Every pair X <= Y of size-k committees. Needs C(m,k)^2 <= budget.
// Among optimal pairs returns the lexicographically smallest (X, Y).
FarthestResult fc_brute_force(const Election& e, int k, CandidateMetric metric,
                              std::uint64_t budget = kDefaultFarthestBudget);

// Closed form: X = {0..k-1}, Y the lexicographically smallest committee
// sharing max(0, 2k-m) members with X. Distance min(k, m-k).
FarthestResult fc_discrete(const Election& e, int k);

struct CandidateType {
    VoterSet approver_set;
    std::vector<int> members; // ascending candidate indices

    int count() const noexcept { return static_cast<int>(members.size()); }
};

// Classes of candidates with identical approver sets, ordered by their
// lowest member.
std::vector<CandidateType> candidate_types(const Election& e);

// Enumerates how many candidates of each type the two committees take and
// solves one k x k matching over type representatives per pair. Each
// committee is rebuilt from the lowest-index members of its types. The
// discrete metric is delegated to fc_discrete, since it separates
// candidates of the same type. Needs (#count vectors)^2 <= budget.
FarthestResult fc_type_compressed(const Election& e, int k, CandidateMetric metric,
                                  std::uint64_t budget = kDefaultFarthestBudget);

} // namespace atlas
