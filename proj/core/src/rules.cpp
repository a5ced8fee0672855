#include "atlas/rules.hpp"

#include <algorithm>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <stdexcept>

namespace atlas {

namespace {

void check_size(const Election& e, int k)
{
    if (k < 0 || k > e.num_candidates()) {
        throw std::invalid_argument("committee size " + std::to_string(k) +
                                    " outside [0, m=" + std::to_string(e.num_candidates()) + "]");
    }
}

// Indices of the k largest scores; lower index wins ties.
template <class Score>
Committee top_k(const std::vector<Score>& score, int k)
{
    std::vector<int> idx(score.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) { return score[a] > score[b]; });
    idx.resize(k);
    return Committee::from_unsorted(std::move(idx));
}

// ---------------------------------------------------------------------------
// Thiele search, generic over the score representation. The int64 path uses
// weights scaled by a common denominator; the Rational path is the fallback
// when the scaled values would not fit.

template <class Score>
struct ThieleProblem {
    const Election& e;
    int k;
    std::vector<Score> w; // w[i] for i = 0..k, w[0] unused

    Score gain(int c, const std::vector<int>& count) const
    {
        Score g{0};
        for (int v : e.supporters(c)) {
            int next = count[v] + 1;
            if (next <= k) {
                g += w[next];
            }
        }
        return g;
    }
};

template <class Score>
std::vector<int> greedy_thiele(const ThieleProblem<Score>& pb, Score& total)
{
    const int m = pb.e.num_candidates();
    std::vector<int> count(pb.e.num_voters(), 0);
    std::vector<char> chosen(m, 0);
    std::vector<int> picks;
    total = Score{0};
    for (int round = 0; round < pb.k; ++round) {
        int best = -1;
        Score best_gain{0};
        for (int c = 0; c < m; ++c) {
            if (chosen[c]) continue;
            Score g = pb.gain(c, count);
            if (best < 0 || g > best_gain) {
                best = c;
                best_gain = g;
            }
        }
        chosen[best] = 1;
        picks.push_back(best);
        total += best_gain;
        for (int v : pb.e.supporters(best)) ++count[v];
    }
    return picks;
}

template <class Score>
class ThieleSearch {
public:
    explicit ThieleSearch(const ThieleProblem<Score>& pb)
        : pb_(pb), m_(pb.e.num_candidates()), count_(pb.e.num_voters(), 0)
    {
    }

    std::vector<int> run()
    {
        best_ = greedy_thiele(pb_, best_score_);
        std::sort(best_.begin(), best_.end());
        found_ = false;
        current_.clear();
        visit(0, Score{0});
        return best_;
    }

private:
    bool dominated(const Score& bound) const
    {
        return found_ ? !(bound > best_score_) : bound < best_score_;
    }

    void visit(int idx, const Score& score)
    {
        const int slots = pb_.k - static_cast<int>(current_.size());
        if (slots == 0) {
            if (score > best_score_ || (score == best_score_ && !found_)) {
                best_score_ = score;
                best_ = current_;
                found_ = true;
            }
            return;
        }
        if (m_ - idx < slots) {
            return;
        }
        std::vector<Score> gains;
        gains.reserve(m_ - idx);
        for (int c = idx; c < m_; ++c) {
            gains.push_back(pb_.gain(c, count_));
        }
        Score first_gain = gains.front();
        std::nth_element(gains.begin(), gains.begin() + (slots - 1), gains.end(),
                         [](const Score& a, const Score& b) { return a > b; });
        Score bound = score;
        for (int i = 0; i < slots; ++i) bound += gains[i];
        if (dominated(bound)) {
            return;
        }
        // Include idx first: committees are then visited in lexicographic order.
        current_.push_back(idx);
        for (int v : pb_.e.supporters(idx)) ++count_[v];
        visit(idx + 1, score + first_gain);
        for (int v : pb_.e.supporters(idx)) --count_[v];
        current_.pop_back();
        visit(idx + 1, score);
    }

    const ThieleProblem<Score>& pb_;
    int m_;
    std::vector<int> count_;
    std::vector<int> current_;
    std::vector<int> best_;
    Score best_score_{0};
    bool found_ = false;
};

// Scales w(1..k) to integers with a common denominator; nullopt if any
// attainable score could overflow.
std::optional<std::vector<std::int64_t>> scaled_weights(const Election& e, const ThieleWeights& w, int k)
{
    BigInt lcm = 1;
    std::vector<Rational> ws(k + 1, Rational(0));
    for (int i = 1; i <= k; ++i) {
        ws[i] = w.weight(i);
        BigInt den = boost::multiprecision::denominator(ws[i]);
        lcm = boost::multiprecision::lcm(lcm, den);
    }
    BigInt sum = 0;
    std::vector<std::int64_t> out(k + 1, 0);
    const BigInt limit = BigInt(std::numeric_limits<std::int64_t>::max() / 4);
    for (int i = 1; i <= k; ++i) {
        Rational scaled = ws[i] * Rational(lcm);
        BigInt num = boost::multiprecision::numerator(scaled);
        sum += num;
        if (num > limit || sum * e.num_voters() > limit) {
            return std::nullopt;
        }
        out[i] = num.convert_to<std::int64_t>();
    }
    return out;
}

std::vector<Rational> exact_weights(const ThieleWeights& w, int k)
{
    std::vector<Rational> out(k + 1, Rational(0));
    for (int i = 1; i <= k; ++i) out[i] = w.weight(i);
    return out;
}

} // namespace

// ---------------------------------------------------------------------------

ThieleWeights ThieleWeights::geometric(const Rational& p)
{
    if (p <= 1) {
        throw std::invalid_argument("geometric Thiele base must exceed 1");
    }
    return ThieleWeights(Kind::Geometric, p);
}

Rational ThieleWeights::weight(int i) const
{
    if (i < 1) {
        throw std::invalid_argument("Thiele weights are indexed from 1");
    }
    switch (kind_) {
    case Kind::AV: return Rational(1);
    case Kind::PAV: return make_rational(1, i);
    case Kind::SLAV: return make_rational(1, 2 * static_cast<std::int64_t>(i) - 1);
    case Kind::CC: return Rational(i == 1 ? 1 : 0);
    case Kind::Geometric: {
        Rational r(1);
        for (int j = 0; j < i; ++j) r /= p_;
        return r;
    }
    }
    throw std::logic_error("unhandled Thiele kind");
}

std::string ThieleWeights::name() const
{
    switch (kind_) {
    case Kind::AV: return "av";
    case Kind::PAV: return "pav";
    case Kind::SLAV: return "slav";
    case Kind::CC: return "cc";
    case Kind::Geometric: return "geom(" + to_string(p_) + ")";
    }
    return "?";
}

std::string_view to_string(RuleId id)
{
    switch (id) {
    case RuleId::AV: return "av";
    case RuleId::SAV: return "sav";
    case RuleId::PAV: return "pav";
    case RuleId::SeqPAV: return "seq_pav";
    case RuleId::SLAV: return "slav";
    case RuleId::SeqSLAV: return "seq_slav";
    case RuleId::CC: return "cc";
    case RuleId::SeqCC: return "seq_cc";
    case RuleId::Geometric2: return "geom2";
    case RuleId::Geometric3: return "geom3";
    case RuleId::Geometric4: return "geom4";
    case RuleId::Geometric5: return "geom5";
    case RuleId::GreedyMonroe: return "greedy_monroe";
    case RuleId::MinimaxAV: return "minimax_av";
    case RuleId::SeqPhragmen: return "seq_phragmen";
    case RuleId::EqualShares: return "equal_shares";
    }
    return "?";
}

RuleId parse_rule(std::string_view id)
{
    for (RuleId r : kAllRules) {
        if (to_string(r) == id) return r;
    }
    throw std::invalid_argument("unknown rule id: " + std::string(id));
}

std::string_view display_name(RuleId id)
{
    switch (id) {
    case RuleId::AV: return "AV";
    case RuleId::SAV: return "SAV";
    case RuleId::PAV: return "PAV";
    case RuleId::SeqPAV: return "seq-PAV";
    case RuleId::SLAV: return "SLAV";
    case RuleId::SeqSLAV: return "seq-SLAV";
    case RuleId::CC: return "CC";
    case RuleId::SeqCC: return "seq-CC";
    case RuleId::Geometric2: return "G-2";
    case RuleId::Geometric3: return "G-3";
    case RuleId::Geometric4: return "G-4";
    case RuleId::Geometric5: return "G-5";
    case RuleId::GreedyMonroe: return "Greedy Monroe";
    case RuleId::MinimaxAV: return "Minimax AV";
    case RuleId::SeqPhragmen: return "seq-Phragmen";
    case RuleId::EqualShares: return "Equal Shares";
    }
    return "?";
}

bool is_optimization_rule(RuleId id)
{
    switch (id) {
    case RuleId::PAV:
    case RuleId::SLAV:
    case RuleId::CC:
    case RuleId::Geometric2:
    case RuleId::Geometric3:
    case RuleId::Geometric4:
    case RuleId::Geometric5:
    case RuleId::MinimaxAV:
        return true;
    default:
        return false;
    }
}

Rational thiele_score(const Election& e, const ThieleWeights& w, const Committee& committee)
{
    committee.validate_for(e);
    const auto members = committee.as_set(e.num_candidates());
    std::vector<Rational> prefix(committee.size() + 1, Rational(0));
    for (int i = 1; i <= committee.size(); ++i) prefix[i] = prefix[i - 1] + w.weight(i);
    Rational total(0);
    for (int v = 0; v < e.num_voters(); ++v) {
        auto hits = (e.ballot_set(v) & members).count();
        total += prefix[hits];
    }
    return total;
}

Committee thiele_optimal(const Election& e, const ThieleWeights& w, int k, TieBreak)
{
    check_size(e, k);
    if (k == 0) return Committee{};
    if (auto scaled = scaled_weights(e, w, k)) {
        ThieleProblem<std::int64_t> pb{e, k, std::move(*scaled)};
        return Committee(ThieleSearch<std::int64_t>(pb).run());
    }
    ThieleProblem<Rational> pb{e, k, exact_weights(w, k)};
    return Committee(ThieleSearch<Rational>(pb).run());
}

Committee thiele_sequential(const Election& e, const ThieleWeights& w, int k, TieBreak)
{
    check_size(e, k);
    if (auto scaled = scaled_weights(e, w, k)) {
        ThieleProblem<std::int64_t> pb{e, k, std::move(*scaled)};
        std::int64_t total = 0;
        return Committee::from_unsorted(greedy_thiele(pb, total));
    }
    ThieleProblem<Rational> pb{e, k, exact_weights(w, k)};
    Rational total;
    return Committee::from_unsorted(greedy_thiele(pb, total));
}

Committee approval_voting(const Election& e, int k, TieBreak)
{
    check_size(e, k);
    std::vector<int> support(e.num_candidates());
    for (int c = 0; c < e.num_candidates(); ++c) {
        support[c] = static_cast<int>(e.supporters(c).size());
    }
    return top_k(support, k);
}

Committee sav(const Election& e, int k, TieBreak)
{
    check_size(e, k);
    std::vector<Rational> score(e.num_candidates(), Rational(0));
    for (int v = 0; v < e.num_voters(); ++v) {
        auto b = e.ballot(v);
        if (b.empty()) continue;
        Rational share = make_rational(1, static_cast<std::int64_t>(b.size()));
        for (int c : b) score[c] += share;
    }
    return top_k(score, k);
}

int minimax_objective(const Election& e, const Committee& committee)
{
    committee.validate_for(e);
    const auto members = committee.as_set(e.num_candidates());
    int worst = 0;
    for (int v = 0; v < e.num_voters(); ++v) {
        worst = std::max(worst, static_cast<int>((e.ballot_set(v) ^ members).count()));
    }
    return worst;
}

namespace {

// Exact minimax search. Per voter, with P the chosen prefix, X the rejected
// prefix and R the undecided suffix, every completion has distance at least
// |P \ A| + |A n X| + | (k - |P|) - |A n R| |.
class MinimaxSearch {
public:
    MinimaxSearch(const Election& e, int k)
        : e_(e), k_(k), m_(e.num_candidates()), n_(e.num_voters()),
          in_p_(n_, 0), in_x_(n_, 0), in_r_(n_, 0)
    {
        for (int v = 0; v < n_; ++v) in_r_[v] = static_cast<int>(e.ballot(v).size());
    }

    std::vector<int> run()
    {
        visit(0);
        return best_;
    }

private:
    int lower_bound() const
    {
        const int chosen = static_cast<int>(current_.size());
        const int slots = k_ - chosen;
        int lb = 0;
        for (int v = 0; v < n_; ++v) {
            int d = (chosen - in_p_[v]) + in_x_[v] + std::abs(slots - in_r_[v]);
            lb = std::max(lb, d);
        }
        return lb;
    }

    void visit(int idx)
    {
        const int slots = k_ - static_cast<int>(current_.size());
        if (m_ - idx < slots) return;
        int lb = lower_bound();
        if (found_ && lb >= best_value_) return;
        if (slots == 0) {
            // lb is exact here: the undecided suffix is rejected wholesale.
            best_value_ = lb;
            best_ = current_;
            found_ = true;
            return;
        }
        current_.push_back(idx);
        for (int v : e_.supporters(idx)) { --in_r_[v]; ++in_p_[v]; }
        visit(idx + 1);
        for (int v : e_.supporters(idx)) { ++in_r_[v]; --in_p_[v]; }
        current_.pop_back();

        for (int v : e_.supporters(idx)) { --in_r_[v]; ++in_x_[v]; }
        visit(idx + 1);
        for (int v : e_.supporters(idx)) { ++in_r_[v]; --in_x_[v]; }
    }

    const Election& e_;
    int k_, m_, n_;
    std::vector<int> in_p_, in_x_, in_r_;
    std::vector<int> current_, best_;
    int best_value_ = 0;
    bool found_ = false;
};

} // namespace

Committee minimax_av(const Election& e, int k, TieBreak)
{
    check_size(e, k);
    return Committee(MinimaxSearch(e, k).run());
}

MonroeOutcome greedy_monroe_detailed(const Election& e, int k)
{
    check_size(e, k);
    const int n = e.num_voters();
    const int m = e.num_candidates();
    MonroeOutcome out;
    if (k == 0) return out;
    std::vector<char> assigned(n, 0), elected(m, 0);
    const int base = n / k, extra = n % k;
    for (int round = 0; round < k; ++round) {
        const int quota = round < extra ? base + 1 : base;
        int best = -1, best_count = -1;
        for (int c = 0; c < m; ++c) {
            if (elected[c]) continue;
            int cnt = 0;
            for (int v : e.supporters(c)) cnt += !assigned[v];
            if (cnt > best_count) {
                best = c;
                best_count = cnt;
            }
        }
        if (best < 0) throw std::logic_error("greedy Monroe ran out of candidates");
        elected[best] = 1;
        std::vector<int> group;
        for (int v : e.supporters(best)) {
            if (static_cast<int>(group.size()) == quota) break;
            if (!assigned[v]) {
                assigned[v] = 1;
                group.push_back(v);
            }
        }
        out.order.push_back(best);
        out.quotas.push_back(quota);
        out.assigned.push_back(std::move(group));
    }
    out.committee = Committee::from_unsorted(out.order);
    return out;
}

Committee greedy_monroe(const Election& e, int k, TieBreak) { return greedy_monroe_detailed(e, k).committee; }

namespace {

// Phragmen in load form, continuing from the given loads until `order`
// holds k candidates. Unapproved candidates only fill seats once every
// approved candidate is taken, in index order.
void phragmen_fill(const Election& e, int k, std::vector<Rational>& load, std::vector<char>& elected,
                   std::vector<int>& order, std::vector<Rational>* selection_loads)
{
    const int m = e.num_candidates();
    while (static_cast<int>(order.size()) < k) {
        int best = -1;
        Rational best_load;
        for (int c = 0; c < m; ++c) {
            if (elected[c] || e.supporters(c).empty()) continue;
            Rational total(1);
            for (int v : e.supporters(c)) total += load[v];
            total /= static_cast<long>(e.supporters(c).size());
            if (best < 0 || total < best_load) {
                best = c;
                best_load = total;
            }
        }
        if (best < 0) {
            for (int c = 0; c < m && static_cast<int>(order.size()) < k; ++c) {
                if (!elected[c]) {
                    elected[c] = 1;
                    order.push_back(c);
                    if (selection_loads) selection_loads->push_back(Rational(0));
                }
            }
            break;
        }
        elected[best] = 1;
        order.push_back(best);
        for (int v : e.supporters(best)) load[v] = best_load;
        if (selection_loads) selection_loads->push_back(best_load);
    }
}

} // namespace

PhragmenOutcome seq_phragmen_detailed(const Election& e, int k)
{
    check_size(e, k);
    PhragmenOutcome out;
    std::vector<Rational> load(e.num_voters(), Rational(0));
    std::vector<char> elected(e.num_candidates(), 0);
    phragmen_fill(e, k, load, elected, out.order, &out.selection_loads);
    out.committee = Committee::from_unsorted(out.order);
    out.final_loads = std::move(load);
    return out;
}

Committee seq_phragmen(const Election& e, int k, TieBreak) { return seq_phragmen_detailed(e, k).committee; }

EqualSharesOutcome equal_shares_detailed(const Election& e, int k)
{
    check_size(e, k);
    const int n = e.num_voters();
    const int m = e.num_candidates();
    EqualSharesOutcome out;
    const Rational start = make_rational(k, n);
    std::vector<Rational> budget(n, start);
    std::vector<char> elected(m, 0);

    std::vector<int> sorted;
    while (static_cast<int>(out.order.size()) < k) {
        int best = -1;
        Rational best_rho;
        for (int c = 0; c < m; ++c) {
            if (elected[c] || e.supporters(c).empty()) continue;
            Rational total(0);
            for (int v : e.supporters(c)) total += budget[v];
            if (total < 1) continue;
            // Smallest rho with sum_v min(budget_v, rho) = 1.
            sorted.assign(e.supporters(c).begin(), e.supporters(c).end());
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
                best = c;
                best_rho = rho;
            }
        }
        if (best < 0) break;
        elected[best] = 1;
        out.order.push_back(best);
        out.rho.push_back(best_rho);
        for (int v : e.supporters(best)) {
            budget[v] -= std::min(budget[v], best_rho);
        }
    }
    out.equal_shares_picks = static_cast<int>(out.order.size());
    out.spending.resize(n);
    for (int v = 0; v < n; ++v) out.spending[v] = start - budget[v];

    std::vector<Rational> load = out.spending;
    phragmen_fill(e, k, load, elected, out.order, nullptr);
    out.final_loads = std::move(load);
    out.committee = Committee::from_unsorted(out.order);
    return out;
}

Committee equal_shares(const Election& e, int k, TieBreak) { return equal_shares_detailed(e, k).committee; }

Committee run_rule(RuleId id, const Election& e, int k)
{
    switch (id) {
    case RuleId::AV: return approval_voting(e, k);
    case RuleId::SAV: return sav(e, k);
    case RuleId::PAV: return thiele_optimal(e, ThieleWeights::pav(), k);
    case RuleId::SeqPAV: return thiele_sequential(e, ThieleWeights::pav(), k);
    case RuleId::SLAV: return thiele_optimal(e, ThieleWeights::slav(), k);
    case RuleId::SeqSLAV: return thiele_sequential(e, ThieleWeights::slav(), k);
    case RuleId::CC: return thiele_optimal(e, ThieleWeights::cc(), k);
    case RuleId::SeqCC: return thiele_sequential(e, ThieleWeights::cc(), k);
    case RuleId::Geometric2: return thiele_optimal(e, ThieleWeights::geometric(Rational(2)), k);
    case RuleId::Geometric3: return thiele_optimal(e, ThieleWeights::geometric(Rational(3)), k);
    case RuleId::Geometric4: return thiele_optimal(e, ThieleWeights::geometric(Rational(4)), k);
    case RuleId::Geometric5: return thiele_optimal(e, ThieleWeights::geometric(Rational(5)), k);
    case RuleId::GreedyMonroe: return greedy_monroe(e, k);
    case RuleId::MinimaxAV: return minimax_av(e, k);
    case RuleId::SeqPhragmen: return seq_phragmen(e, k);
    case RuleId::EqualShares: return equal_shares(e, k);
    }
    throw std::logic_error("unhandled rule id");
}

} // namespace atlas
