#pragma once

#include <iosfwd>
#include <span>
#include <utility>
#include <vector>

#include "atlas/election.hpp"
#include "atlas/rational.hpp"
#include "atlas/rules.hpp"

namespace atlas {

// Square matrix of nonnegative edge weights; weights[i][j] = d(x_i, y_j).
class MatchingInstance {
public:
    explicit MatchingInstance(std::vector<std::vector<Rational>> weights);

    int size() const noexcept { return static_cast<int>(weights_.size()); }
    const Rational& weight(int i, int j) const { return weights_[i][j]; }
    const std::vector<std::vector<Rational>>& weights() const noexcept { return weights_; }

private:
    std::vector<std::vector<Rational>> weights_;
};

struct MatchingResult {
    std::vector<int> assignment; // row i is matched to column assignment[i]
    Rational weight;
};

// Hungarian method with exact potentials, O(k^3).
MatchingResult min_weight_perfect_matching(const MatchingInstance& instance);

// Minimum-weight perfect matching between X and Y under the candidate
// metric. A candidate in both committees appears once on each side.
// Throws std::invalid_argument if |X| != |Y|.
Rational committee_distance(const Election& e, CandidateMetric metric, const Committee& x,
                            const Committee& y);

using RuleCommittees = std::vector<std::pair<RuleId, Committee>>;

// Exact per-election rule-by-rule matrix.
struct RuleMatrix {
    std::vector<RuleId> rules;
    std::vector<std::vector<Rational>> values;

    int size() const noexcept { return static_cast<int>(rules.size()); }
};

RuleMatrix pairwise_rule_distances(const Election& e, const RuleCommittees& committees,
                                   CandidateMetric metric);

// Divides by the largest entry; an all-zero matrix is returned unchanged.
RuleMatrix normalize_by_observed_max(RuleMatrix mat);

// Culture-level averaged matrix, in floating point.
struct DistanceMatrix {
    std::vector<RuleId> rules;
    std::vector<std::vector<double>> values;

    int size() const noexcept { return static_cast<int>(rules.size()); }
    int index_of(RuleId id) const; // throws std::out_of_range
    double at(RuleId a, RuleId b) const { return values[index_of(a)][index_of(b)]; }
};

// Entrywise mean, summed exactly and converted once. Throws on empty input
// or mismatched rule orderings.
DistanceMatrix average_matrices(std::span<const RuleMatrix> mats);

// Header "rule,<id>,<id>,..."; each row is the rule id followed by the
// values with six fractional digits.
void write_distance_csv(std::ostream& out, const DistanceMatrix& mat);
DistanceMatrix read_distance_csv(std::istream& in);

} // namespace atlas
