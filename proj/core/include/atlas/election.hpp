#pragma once

#include <cstddef>
#include <initializer_list>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "atlas/rational.hpp"

namespace atlas {

using Bitset = boost::dynamic_bitset<std::uint64_t>;
using VoterSet = Bitset;     // indexed by voter
using CandidateSet = Bitset; // indexed by candidate

// An approval election over candidates {0..m-1} and voters {0..n-1}.
// Immutable after construction; both the voter-major and the
// candidate-major views are materialized up front.
class Election {
public:
    // ballots[i] lists the candidates voter i approves (any order, no
    // duplicates). Throws std::invalid_argument on out-of-range indices,
    // duplicates, m < 1 or an empty voter list.
    Election(int m, std::vector<std::vector<int>> ballots,
             std::vector<std::string> labels = {});

    int num_candidates() const noexcept { return m_; }
    int num_voters() const noexcept { return static_cast<int>(ballots_.size()); }

    // Sorted ascending.
    std::span<const int> ballot(int voter) const { return ballots_.at(voter); }
    std::span<const int> supporters(int candidate) const { return supporters_.at(candidate); }

    const CandidateSet& ballot_set(int voter) const { return ballot_sets_.at(voter); }
    const VoterSet& approvers(int candidate) const;

    bool approves(int voter, int candidate) const { return ballot_sets_[voter].test(candidate); }

    const std::vector<std::string>& labels() const noexcept { return labels_; }
    std::string label(int candidate) const;

    friend bool operator==(const Election& a, const Election& b)
    {
        return a.m_ == b.m_ && a.ballots_ == b.ballots_ && a.labels_ == b.labels_;
    }

private:
    int m_;
    std::vector<std::vector<int>> ballots_;
    std::vector<std::vector<int>> supporters_;
    std::vector<CandidateSet> ballot_sets_;
    std::vector<VoterSet> approver_sets_;
    std::vector<std::string> labels_;
};

// A size-k candidate subset, stored as a strictly increasing index list.
class Committee {
public:
    Committee() = default;
    // Throws std::invalid_argument unless members are strictly increasing
    // and nonnegative.
    explicit Committee(std::vector<int> members);
    Committee(std::initializer_list<int> members) : Committee(std::vector<int>(members)) {}

    // Sorts; throws on duplicates.
    static Committee from_unsorted(std::vector<int> members);

    int size() const noexcept { return static_cast<int>(members_.size()); }
    const std::vector<int>& members() const noexcept { return members_; }
    bool contains(int candidate) const;

    auto begin() const noexcept { return members_.begin(); }
    auto end() const noexcept { return members_.end(); }

    // Throws std::invalid_argument if some member is >= e.num_candidates().
    void validate_for(const Election& e) const;

    CandidateSet as_set(int m) const;

    friend bool operator==(const Committee&, const Committee&) = default;
    friend auto operator<=>(const Committee&, const Committee&) = default;

private:
    std::vector<int> members_;
};

std::ostream& operator<<(std::ostream& os, const Committee& w);

enum class CandidateMetric { Discrete, Hamming, NormalizedHamming, Jaccard };

std::string_view to_string(CandidateMetric metric);
// Accepts discrete, hamming, nham / normalized_hamming, jaccard.
CandidateMetric parse_metric(std::string_view name);

// Voters approving c. Throws std::invalid_argument if c is out of range.
VoterSet approvers(const Election& e, int c);

// Exact distance between two candidates. Jaccard between two candidates
// that nobody approves is 0 (identical empty approver sets); a warning is
// logged once per process.
Rational candidate_distance(const Election& e, CandidateMetric metric, int c, int d);

// One election per line:
// {"m": int, "n": int, "approvals": [[int,...],...], "labels": [...]}
std::string election_to_json(const Election& e);
Election election_from_json(std::string_view line);

std::vector<Election> read_elections_jsonl(std::istream& in);
void write_elections_jsonl(std::ostream& out, std::span<const Election> elections);

} // namespace atlas
