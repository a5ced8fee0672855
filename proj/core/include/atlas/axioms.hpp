#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "atlas/election.hpp"
#include "atlas/rational.hpp"

namespace atlas {

enum class Axiom { JR, PJR, EJR, Priceable };

std::string_view to_string(Axiom axiom);

// ell candidates jointly approved by a group of at least ell*n/k voters.
struct CohesiveWitness {
    int ell = 0;
    std::vector<int> candidates;
    std::vector<int> voters;

    friend bool operator==(const CohesiveWitness&, const CohesiveWitness&) = default;
};

struct Payment {
    int voter;
    int candidate;
    Rational amount;
};

// Budget b and per-(voter, candidate) payments; absent pairs pay 0.
struct PriceSystem {
    Rational budget;
    std::vector<Payment> payments;
};

struct AxiomVerdict {
    Axiom axiom;
    bool holds = false;
    // CohesiveWitness for a violated JR/PJR/EJR, PriceSystem for a
    // satisfied priceability check, empty otherwise.
    std::variant<std::monostate, CohesiveWitness, PriceSystem> witness;
};

// Threshold ell*n/k as an exact rational.
Rational cohesion_threshold(int ell, int n, int k);

// Some ell-subset T of candidates with |{v in eligible : T subset A(v)}| >=
// threshold, or nullopt. Exact depth-first search.
std::optional<CohesiveWitness> find_cohesive_group(const Election& e, const VoterSet& eligible, int ell,
                                                   const Rational& threshold);

// True if the whole electorate contains an ell-cohesive group for size k.
bool has_cohesive_group(const Election& e, int k, int ell);

AxiomVerdict check_jr(const Election& e, const Committee& committee);
AxiomVerdict check_pjr(const Election& e, const Committee& committee);
AxiomVerdict check_ejr(const Election& e, const Committee& committee);
AxiomVerdict check_priceability(const Election& e, const Committee& committee);

struct AxiomProfile {
    AxiomVerdict priceable;
    AxiomVerdict ejr;
    AxiomVerdict pjr;
    AxiomVerdict jr;
};

// All four verdicts. Throws std::logic_error if the results contradict
// EJR => PJR => JR or Priceable => PJR.
AxiomProfile axiom_profile(const Election& e, const Committee& committee);

// Independent re-checks straight from the definitions.
bool verify_violation(const Election& e, const Committee& committee, Axiom axiom, const CohesiveWitness& w);
bool verify_price_system(const Election& e, const Committee& committee, const PriceSystem& ps);

// {"axiom": "ejr", "holds": false, "witness": {...}}
std::string verdict_to_json(const AxiomVerdict& verdict);

} // namespace atlas
