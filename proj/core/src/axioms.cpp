#include "atlas/axioms.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>

#include <json.hpp>

#include "atlas/simplex.hpp"

namespace atlas {

std::string_view to_string(Axiom axiom)
{
    switch (axiom) {
    case Axiom::JR: return "jr";
    case Axiom::PJR: return "pjr";
    case Axiom::EJR: return "ejr";
    case Axiom::Priceable: return "priceability";
    }
    return "?";
}

Rational cohesion_threshold(int ell, int n, int k)
{
    if (k <= 0) {
        throw std::invalid_argument("cohesion threshold needs k >= 1");
    }
    return make_rational(static_cast<std::int64_t>(ell) * n, k);
}

namespace {

std::vector<int> members_of(const Bitset& s)
{
    std::vector<int> out;
    for (auto i = s.find_first(); i != Bitset::npos; i = s.find_next(i)) out.push_back(static_cast<int>(i));
    return out;
}

class CohesiveSearch {
public:
    CohesiveSearch(const Election& e, const VoterSet& eligible, int ell, std::size_t need)
        : e_(e), eligible_(eligible), ell_(ell), need_(need)
    {
        std::vector<std::pair<std::size_t, int>> support;
        for (int c = 0; c < e.num_candidates(); ++c) {
            auto s = (e.approvers(c) & eligible).count();
            if (s >= need_) support.emplace_back(s, c);
        }
        std::stable_sort(support.begin(), support.end(),
                         [](const auto& a, const auto& b) { return a.first > b.first; });
        for (const auto& [s, c] : support) order_.push_back(c);
    }

    std::optional<CohesiveWitness> run()
    {
        if (static_cast<int>(order_.size()) < ell_) return std::nullopt;
        chosen_.clear();
        if (!visit(0, eligible_)) return std::nullopt;
        CohesiveWitness w;
        w.ell = ell_;
        w.candidates = chosen_;
        std::sort(w.candidates.begin(), w.candidates.end());
        w.voters = members_of(group_);
        return w;
    }

private:
    bool visit(std::size_t start, const VoterSet& group)
    {
        if (static_cast<int>(chosen_.size()) == ell_) {
            group_ = group;
            return true;
        }
        const std::size_t missing = ell_ - chosen_.size();
        for (std::size_t i = start; i + missing <= order_.size(); ++i) {
            const int c = order_[i];
            VoterSet next = group & e_.approvers(c);
            if (next.count() < need_) continue;
            chosen_.push_back(c);
            if (visit(i + 1, next)) return true;
            chosen_.pop_back();
        }
        return false;
    }

    const Election& e_;
    const VoterSet& eligible_;
    int ell_;
    std::size_t need_;
    std::vector<int> order_;
    std::vector<int> chosen_;
    VoterSet group_;
};

// Voters whose number of approved members is below `limit`.
VoterSet underrepresented(const Election& e, const CandidateSet& members, std::size_t limit)
{
    VoterSet out(e.num_voters());
    for (int v = 0; v < e.num_voters(); ++v) {
        if ((e.ballot_set(v) & members).count() < limit) out.set(v);
    }
    return out;
}

void require_committee(const Election& e, const Committee& w)
{
    w.validate_for(e);
    if (w.size() < 1) {
        throw std::invalid_argument("axiom checks need a nonempty committee");
    }
}

AxiomVerdict violated(Axiom a, CohesiveWitness w) { return AxiomVerdict{a, false, std::move(w)}; }
AxiomVerdict satisfied(Axiom a) { return AxiomVerdict{a, true, std::monostate{}}; }

} // namespace

std::optional<CohesiveWitness> find_cohesive_group(const Election& e, const VoterSet& eligible, int ell,
                                                   const Rational& threshold)
{
    if (ell < 1) {
        throw std::invalid_argument("cohesive groups need ell >= 1");
    }
    if (static_cast<int>(eligible.size()) != e.num_voters()) {
        throw std::invalid_argument("eligible voter set has the wrong width");
    }
    BigInt need_big = threshold <= 0 ? BigInt(0) : ceil(threshold);
    if (need_big > static_cast<long>(eligible.count())) return std::nullopt;
    const auto need = need_big.convert_to<std::size_t>();
    return CohesiveSearch(e, eligible, ell, need).run();
}

bool has_cohesive_group(const Election& e, int k, int ell)
{
    VoterSet all(e.num_voters());
    all.set();
    return find_cohesive_group(e, all, ell, cohesion_threshold(ell, e.num_voters(), k)).has_value();
}

AxiomVerdict check_jr(const Election& e, const Committee& committee)
{
    require_committee(e, committee);
    const auto members = committee.as_set(e.num_candidates());
    auto eligible = underrepresented(e, members, 1);
    auto w = find_cohesive_group(e, eligible, 1, cohesion_threshold(1, e.num_voters(), committee.size()));
    return w ? violated(Axiom::JR, std::move(*w)) : satisfied(Axiom::JR);
}

AxiomVerdict check_ejr(const Election& e, const Committee& committee)
{
    require_committee(e, committee);
    const int k = committee.size();
    const auto members = committee.as_set(e.num_candidates());
    for (int ell = 1; ell <= k; ++ell) {
        auto eligible = underrepresented(e, members, ell);
        auto w = find_cohesive_group(e, eligible, ell, cohesion_threshold(ell, e.num_voters(), k));
        if (w) return violated(Axiom::EJR, std::move(*w));
    }
    return satisfied(Axiom::EJR);
}

AxiomVerdict check_pjr(const Election& e, const Committee& committee)
{
    require_committee(e, committee);
    const int k = committee.size();
    const int m = e.num_candidates();
    const auto members = committee.as_set(m);
    const auto& ws = committee.members();
    for (int ell = 1; ell <= k; ++ell) {
        const auto threshold = cohesion_threshold(ell, e.num_voters(), k);
        // Every PJR-eligible set below is contained in this one.
        auto loose = underrepresented(e, members, ell);
        if (!find_cohesive_group(e, loose, ell, threshold)) continue;

        const int s = ell - 1;
        std::vector<int> pick(s);
        std::iota(pick.begin(), pick.end(), 0);
        while (true) {
            CandidateSet subset(m);
            for (int i : pick) subset.set(ws[i]);
            VoterSet eligible(e.num_voters());
            for (int v = 0; v < e.num_voters(); ++v) {
                if ((e.ballot_set(v) & members).is_subset_of(subset)) eligible.set(v);
            }
            if (auto w = find_cohesive_group(e, eligible, ell, threshold)) {
                return violated(Axiom::PJR, std::move(*w));
            }
            // Next s-combination of {0..k-1}.
            int i = s - 1;
            while (i >= 0 && pick[i] == k - s + i) --i;
            if (i < 0) break;
            ++pick[i];
            for (int j = i + 1; j < s; ++j) pick[j] = pick[j - 1] + 1;
        }
    }
    return satisfied(Axiom::PJR);
}

// ---------------------------------------------------------------------------
// Priceability

namespace {

// Payments indexed [voter][position in committee].
struct PaymentTable {
    std::vector<std::vector<Rational>> pay;

    PriceSystem to_price_system(const Committee& w) const
    {
        PriceSystem ps;
        ps.budget = 0;
        for (std::size_t v = 0; v < pay.size(); ++v) {
            Rational spent(0);
            for (std::size_t i = 0; i < pay[v].size(); ++i) {
                if (pay[v][i].is_zero()) continue;
                spent += pay[v][i];
                ps.payments.push_back(Payment{static_cast<int>(v), w.members()[i], pay[v][i]});
            }
            ps.budget = std::max(ps.budget, spent);
        }
        return ps;
    }
};

// Load-based Phragmen restricted to the committee, continuing from `load`;
// each pick charges every supporter its load increase.
void phragmen_within(const Election& e, const Committee& w, std::vector<char>& bought, std::vector<Rational>& load,
                     PaymentTable& table)
{
    const int k = w.size();
    while (true) {
        int best = -1;
        Rational best_load;
        for (int i = 0; i < k; ++i) {
            if (bought[i]) continue;
            const auto sup = e.supporters(w.members()[i]);
            Rational t(1);
            for (int v : sup) t += load[v];
            t /= static_cast<long>(sup.size());
            if (best < 0 || t < best_load) {
                best = i;
                best_load = t;
            }
        }
        if (best < 0) return;
        bought[best] = 1;
        for (int v : e.supporters(w.members()[best])) {
            table.pay[v][best] += best_load - load[v];
            load[v] = best_load;
        }
    }
}

std::optional<PriceSystem> phragmen_witness(const Election& e, const Committee& w)
{
    PaymentTable table{std::vector<std::vector<Rational>>(e.num_voters(), std::vector<Rational>(w.size()))};
    std::vector<char> bought(w.size(), 0);
    std::vector<Rational> load(e.num_voters(), Rational(0));
    phragmen_within(e, w, bought, load, table);
    auto ps = table.to_price_system(w);
    if (verify_price_system(e, w, ps)) return ps;
    return std::nullopt;
}

std::optional<PriceSystem> equal_shares_witness(const Election& e, const Committee& w)
{
    const int n = e.num_voters();
    const int k = w.size();
    PaymentTable table{std::vector<std::vector<Rational>>(n, std::vector<Rational>(k))};
    const Rational start = make_rational(k, n);
    std::vector<Rational> budget(n, start);
    std::vector<char> bought(k, 0);
    std::vector<int> sorted;
    while (true) {
        int best = -1;
        Rational best_rho;
        for (int i = 0; i < k; ++i) {
            if (bought[i]) continue;
            const auto sup = e.supporters(w.members()[i]);
            Rational total(0);
            for (int v : sup) total += budget[v];
            if (total < 1) continue;
            sorted.assign(sup.begin(), sup.end());
            std::sort(sorted.begin(), sorted.end(), [&](int a, int b) { return budget[a] < budget[b]; });
            Rational remaining(1);
            auto left = static_cast<long>(sorted.size());
            Rational rho;
            for (int v : sorted) {
                if (budget[v] * left >= remaining) {
                    rho = remaining / left;
                    break;
                }
                remaining -= budget[v];
                --left;
            }
            if (best < 0 || rho < best_rho) {
                best = i;
                best_rho = rho;
            }
        }
        if (best < 0) break;
        bought[best] = 1;
        for (int v : e.supporters(w.members()[best])) {
            Rational p = std::min(budget[v], best_rho);
            budget[v] -= p;
            table.pay[v][best] += p;
        }
    }
    std::vector<Rational> load(n);
    for (int v = 0; v < n; ++v) load[v] = start - budget[v];
    phragmen_within(e, w, bought, load, table);
    auto ps = table.to_price_system(w);
    if (verify_price_system(e, w, ps)) return ps;
    return std::nullopt;
}

// Exact LP over (b, per-voter-type payments). Voters with identical ballots
// share payment variables: averaging any feasible price system over such
// voters stays feasible. Constraints for unelected candidates whose
// approver set is contained in another's are implied and dropped.
std::optional<PriceSystem> lp_witness(const Election& e, const Committee& w)
{
    const int n = e.num_voters();
    const int m = e.num_candidates();
    const auto members = w.as_set(m);

    std::map<std::vector<int>, int> type_of_ballot;
    std::vector<int> voter_type(n);
    std::vector<long> multiplicity;
    std::vector<int> representative;
    for (int v = 0; v < n; ++v) {
        std::vector<int> key(e.ballot(v).begin(), e.ballot(v).end());
        auto [it, fresh] = type_of_ballot.emplace(std::move(key), static_cast<int>(multiplicity.size()));
        if (fresh) {
            multiplicity.push_back(0);
            representative.push_back(v);
        }
        voter_type[v] = it->second;
        ++multiplicity[it->second];
    }
    const int types = static_cast<int>(multiplicity.size());

    // Variable 0 is b; then one variable per (type, approved member).
    std::vector<std::vector<std::pair<int, int>>> vars_of_type(types); // (member position, var)
    int num_vars = 1;
    for (int t = 0; t < types; ++t) {
        for (int i = 0; i < w.size(); ++i) {
            if (e.approves(representative[t], w.members()[i])) vars_of_type[t].emplace_back(i, num_vars++);
        }
    }

    std::vector<lp::Constraint> cons;
    for (int t = 0; t < types; ++t) {
        if (vars_of_type[t].empty()) continue;
        lp::Constraint c;
        c.relation = lp::Relation::LessEqual;
        c.rhs = 0;
        c.terms.emplace_back(0, Rational(-1));
        for (auto [i, var] : vars_of_type[t]) c.terms.emplace_back(var, Rational(1));
        cons.push_back(std::move(c));
    }
    for (int i = 0; i < w.size(); ++i) {
        lp::Constraint c;
        c.relation = lp::Relation::Equal;
        c.rhs = 1;
        for (int t = 0; t < types; ++t) {
            for (auto [pos, var] : vars_of_type[t]) {
                if (pos == i) c.terms.emplace_back(var, Rational(multiplicity[t]));
            }
        }
        cons.push_back(std::move(c));
    }
    // Leftover constraints, keeping only inclusion-maximal approver sets.
    std::vector<int> outside;
    for (int c = 0; c < m; ++c) {
        if (!members.test(c) && !e.supporters(c).empty()) outside.push_back(c);
    }
    for (int c : outside) {
        const auto& ac = e.approvers(c);
        bool implied = false;
        for (int d : outside) {
            if (d == c) continue;
            const auto& ad = e.approvers(d);
            if (ac.is_subset_of(ad) && (ac != ad || d < c)) {
                implied = true;
                break;
            }
        }
        if (implied) continue;
        std::vector<long> type_count(types, 0);
        for (int v : e.supporters(c)) ++type_count[voter_type[v]];
        lp::Constraint row;
        row.relation = lp::Relation::LessEqual;
        row.rhs = 1;
        row.terms.emplace_back(0, Rational(static_cast<long>(e.supporters(c).size())));
        for (int t = 0; t < types; ++t) {
            if (type_count[t] == 0) continue;
            for (auto [pos, var] : vars_of_type[t]) row.terms.emplace_back(var, Rational(-type_count[t]));
        }
        cons.push_back(std::move(row));
    }

    auto result = lp::find_feasible_point(num_vars, cons);
    if (!result.feasible) return std::nullopt;
    PriceSystem ps;
    ps.budget = result.point[0];
    for (int v = 0; v < n; ++v) {
        for (auto [pos, var] : vars_of_type[voter_type[v]]) {
            if (!result.point[var].is_zero()) ps.payments.push_back(Payment{v, w.members()[pos], result.point[var]});
        }
    }
    if (!verify_price_system(e, w, ps)) {
        throw std::logic_error("priceability LP returned a point that fails verification");
    }
    return ps;
}

} // namespace

AxiomVerdict check_priceability(const Election& e, const Committee& committee)
{
    committee.validate_for(e);
    for (int c : committee) {
        if (e.supporters(c).empty()) return AxiomVerdict{Axiom::Priceable, false, std::monostate{}};
    }
    if (auto ps = phragmen_witness(e, committee)) return AxiomVerdict{Axiom::Priceable, true, std::move(*ps)};
    if (auto ps = equal_shares_witness(e, committee)) return AxiomVerdict{Axiom::Priceable, true, std::move(*ps)};
    if (auto ps = lp_witness(e, committee)) return AxiomVerdict{Axiom::Priceable, true, std::move(*ps)};
    return AxiomVerdict{Axiom::Priceable, false, std::monostate{}};
}

AxiomProfile axiom_profile(const Election& e, const Committee& committee)
{
    AxiomProfile p{check_priceability(e, committee), check_ejr(e, committee), check_pjr(e, committee),
                   check_jr(e, committee)};
    if ((p.ejr.holds && !p.pjr.holds) || (p.pjr.holds && !p.jr.holds) || (p.priceable.holds && !p.pjr.holds)) {
        throw std::logic_error("axiom verdicts contradict EJR => PJR => JR or Priceable => PJR");
    }
    return p;
}

bool verify_violation(const Election& e, const Committee& committee, Axiom axiom, const CohesiveWitness& w)
{
    const int n = e.num_voters();
    const int k = committee.size();
    if (w.ell < 1 || static_cast<int>(w.candidates.size()) != w.ell || k < 1) return false;
    if (axiom == Axiom::JR && w.ell != 1) return false;
    if (axiom == Axiom::Priceable) return false;
    // |N| >= ell*n/k  <=>  |N|*k >= ell*n
    if (static_cast<long>(w.voters.size()) * k < static_cast<long>(w.ell) * n) return false;
    std::vector<int> cands = w.candidates;
    std::sort(cands.begin(), cands.end());
    if (std::adjacent_find(cands.begin(), cands.end()) != cands.end()) return false;
    std::vector<int> group = w.voters;
    std::sort(group.begin(), group.end());
    if (std::adjacent_find(group.begin(), group.end()) != group.end()) return false;

    std::vector<char> union_hits(e.num_candidates(), 0);
    for (int v : group) {
        if (v < 0 || v >= n) return false;
        for (int c : cands) {
            if (c < 0 || c >= e.num_candidates() || !e.approves(v, c)) return false;
        }
        int hits = 0;
        for (int c : committee) {
            if (e.approves(v, c)) {
                ++hits;
                union_hits[c] = 1;
            }
        }
        if (axiom == Axiom::EJR && hits >= w.ell) return false;
        if (axiom == Axiom::JR && hits > 0) return false;
    }
    if (axiom == Axiom::PJR) {
        int covered = static_cast<int>(std::count(union_hits.begin(), union_hits.end(), 1));
        if (covered >= w.ell) return false;
    }
    return true;
}

bool verify_price_system(const Election& e, const Committee& committee, const PriceSystem& ps)
{
    const int n = e.num_voters();
    const int m = e.num_candidates();
    if (ps.budget < 0) return false;
    std::vector<Rational> spent(n, Rational(0));
    std::vector<Rational> received(m, Rational(0));
    for (const auto& p : ps.payments) {
        if (p.voter < 0 || p.voter >= n || p.candidate < 0 || p.candidate >= m) return false;
        if (p.amount < 0) return false;
        if (p.amount.is_zero()) continue;
        // Only approved committee members may be paid for.
        if (!e.approves(p.voter, p.candidate) || !committee.contains(p.candidate)) return false;
        spent[p.voter] += p.amount;
        received[p.candidate] += p.amount;
    }
    for (int v = 0; v < n; ++v) {
        if (spent[v] > ps.budget) return false;
    }
    for (int c = 0; c < m; ++c) {
        if (committee.contains(c)) {
            if (received[c] != 1) return false;
            continue;
        }
        Rational leftover(0);
        for (int v : e.supporters(c)) leftover += ps.budget - spent[v];
        if (leftover > 1) return false;
    }
    return true;
}

std::string verdict_to_json(const AxiomVerdict& verdict)
{
    nlohmann::json j;
    j["axiom"] = std::string(to_string(verdict.axiom));
    j["holds"] = verdict.holds;
    if (const auto* cw = std::get_if<CohesiveWitness>(&verdict.witness)) {
        j["witness"] = {{"ell", cw->ell}, {"candidates", cw->candidates}, {"voters", cw->voters}};
    } else if (const auto* ps = std::get_if<PriceSystem>(&verdict.witness)) {
        auto payments = nlohmann::json::array();
        for (const auto& p : ps->payments) {
            payments.push_back({{"voter", p.voter}, {"candidate", p.candidate}, {"amount", to_string(p.amount)}});
        }
        j["witness"] = {{"budget", to_string(ps->budget)}, {"payments", std::move(payments)}};
    } else {
        j["witness"] = nullptr;
    }
    return j.dump();
}

} // namespace atlas
