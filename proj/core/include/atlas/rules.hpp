#pragma once

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "atlas/election.hpp"
#include "atlas/rational.hpp"

namespace atlas {

// Non-increasing Thiele weight sequence w(1), w(2), ...
class ThieleWeights {
public:
    enum class Kind { AV, PAV, SLAV, CC, Geometric };

    static ThieleWeights av() { return ThieleWeights(Kind::AV, Rational(0)); }
    static ThieleWeights pav() { return ThieleWeights(Kind::PAV, Rational(0)); }
    static ThieleWeights slav() { return ThieleWeights(Kind::SLAV, Rational(0)); }
    static ThieleWeights cc() { return ThieleWeights(Kind::CC, Rational(0)); }
    // w(i) = p^-i; requires p > 1.
    static ThieleWeights geometric(const Rational& p);

    Kind kind() const noexcept { return kind_; }
    const Rational& base() const noexcept { return p_; }

    // i >= 1.
    Rational weight(int i) const;
    std::string name() const;

private:
    ThieleWeights(Kind kind, Rational p) : kind_(kind), p_(std::move(p)) {}

    Kind kind_;
    Rational p_;
};

enum class RuleId {
    AV,
    SAV,
    PAV,
    SeqPAV,
    SLAV,
    SeqSLAV,
    CC,
    SeqCC,
    Geometric2,
    Geometric3,
    Geometric4,
    Geometric5,
    GreedyMonroe,
    MinimaxAV,
    SeqPhragmen,
    EqualShares,
};

inline constexpr std::array<RuleId, 16> kAllRules = {
    RuleId::AV,         RuleId::SAV,        RuleId::PAV,          RuleId::SeqPAV,
    RuleId::SLAV,       RuleId::SeqSLAV,    RuleId::CC,           RuleId::SeqCC,
    RuleId::Geometric2, RuleId::Geometric3, RuleId::Geometric4,   RuleId::Geometric5,
    RuleId::GreedyMonroe, RuleId::MinimaxAV, RuleId::SeqPhragmen, RuleId::EqualShares,
};

// snake_case identifier used in files: av, sav, pav, seq_pav, ..., equal_shares.
std::string_view to_string(RuleId id);
RuleId parse_rule(std::string_view id);
// Human-facing label for tables and maps, e.g. "seq-Phragmen", "G-3".
std::string_view display_name(RuleId id);

// True for rules whose computation is an exponential-time exact search.
bool is_optimization_rule(RuleId id);

// Candidate-index order everywhere; for set-valued ties the
// lexicographically smallest committee (as a sorted index sequence) wins.
enum class TieBreak { Lexicographic };

Rational thiele_score(const Election& e, const ThieleWeights& w, const Committee& committee);

// Lexicographically smallest maximizer of the Thiele score, by
// branch-and-bound with the submodular top-gains upper bound.
Committee thiele_optimal(const Election& e, const ThieleWeights& w, int k,
                         TieBreak tb = TieBreak::Lexicographic);

// Greedy: k rounds adding the candidate with the largest marginal score.
Committee thiele_sequential(const Election& e, const ThieleWeights& w, int k,
                            TieBreak tb = TieBreak::Lexicographic);

// Top-k by approval count.
Committee approval_voting(const Election& e, int k, TieBreak tb = TieBreak::Lexicographic);

// Top-k by sum over supporters of 1/|A(v)|.
Committee sav(const Election& e, int k, TieBreak tb = TieBreak::Lexicographic);

// max_v |A(v) symmetric-difference W|
int minimax_objective(const Election& e, const Committee& committee);
Committee minimax_av(const Election& e, int k, TieBreak tb = TieBreak::Lexicographic);

struct MonroeOutcome {
    Committee committee;
    std::vector<int> order;                 // members in selection order
    std::vector<int> quotas;                // quota used in each round
    std::vector<std::vector<int>> assigned; // voters assigned in each round
};

MonroeOutcome greedy_monroe_detailed(const Election& e, int k);
Committee greedy_monroe(const Election& e, int k, TieBreak tb = TieBreak::Lexicographic);

struct PhragmenOutcome {
    Committee committee;
    std::vector<int> order;
    std::vector<Rational> selection_loads; // new load set at each pick
    std::vector<Rational> final_loads;     // per voter
};

PhragmenOutcome seq_phragmen_detailed(const Election& e, int k);
Committee seq_phragmen(const Election& e, int k, TieBreak tb = TieBreak::Lexicographic);

struct EqualSharesOutcome {
    Committee committee;
    std::vector<int> order;
    int equal_shares_picks = 0;      // members bought with the k/n budgets
    std::vector<Rational> rho;       // per-voter cap for each such purchase
    std::vector<Rational> spending;  // per voter, equal-shares phase only
    std::vector<Rational> final_loads; // per voter, after completion
};

EqualSharesOutcome equal_shares_detailed(const Election& e, int k);
Committee equal_shares(const Election& e, int k, TieBreak tb = TieBreak::Lexicographic);

// Dispatcher; total and deterministic for 0 <= k <= m.
Committee run_rule(RuleId id, const Election& e, int k);

} // namespace atlas
