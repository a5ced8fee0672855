#include "atlas/farthest.hpp"

#include <algorithm>
#include <limits>
#include <map>

#include "atlas/metrics.hpp"

namespace atlas {

namespace {

constexpr std::uint64_t kSaturated = std::numeric_limits<std::uint64_t>::max();

std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b)
{
    if (a != 0 && b > kSaturated / a) return kSaturated;
    return a * b;
}

std::uint64_t binomial(int n, int k)
{
    if (k < 0 || k > n) return 0;
    k = std::min(k, n - k);
    // acc * (n-k+i) / i stays integral; saturate instead of overflowing.
    std::uint64_t acc = 1;
    for (int i = 1; i <= k; ++i) {
        const auto factor = static_cast<std::uint64_t>(n - k + i);
        if (acc > kSaturated / factor) return kSaturated;
        acc = acc * factor / static_cast<std::uint64_t>(i);
    }
    return acc;
}

void check_k(const Election& e, int k)
{
    if (k < 0 || k > e.num_candidates()) {
        throw std::invalid_argument("committee size must lie in [0, m]");
    }
}

std::vector<std::vector<Rational>> distance_table(const Election& e, CandidateMetric metric)
{
    const int m = e.num_candidates();
    std::vector<std::vector<Rational>> d(m, std::vector<Rational>(m));
    for (int a = 0; a < m; ++a) {
        for (int b = a + 1; b < m; ++b) {
            d[a][b] = d[b][a] = candidate_distance(e, metric, a, b);
        }
    }
    return d;
}

Rational matched_distance(const std::vector<std::vector<Rational>>& d, const std::vector<int>& x,
                          const std::vector<int>& y)
{
    const std::size_t k = x.size();
    std::vector<std::vector<Rational>> w(k, std::vector<Rational>(k));
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j) w[i][j] = d[x[i]][y[j]];
    }
    return min_weight_perfect_matching(MatchingInstance(std::move(w))).weight;
}

std::vector<std::vector<int>> all_subsets(int m, int k)
{
    std::vector<std::vector<int>> out;
    std::vector<int> cur(k);
    for (int i = 0; i < k; ++i) cur[i] = i;
    while (true) {
        out.push_back(cur);
        int i = k - 1;
        while (i >= 0 && cur[i] == m - k + i) --i;
        if (i < 0) break;
        ++cur[i];
        for (int j = i + 1; j < k; ++j) cur[j] = cur[j - 1] + 1;
    }
    return out;
}

} // namespace

FarthestResult fc_brute_force(const Election& e, int k, CandidateMetric metric, std::uint64_t budget)
{
    check_k(e, k);
    const int m = e.num_candidates();
    const std::uint64_t count = binomial(m, k);
    if (saturating_mul(count, count) > budget) {
        throw ResourceError("brute-force farthest committees needs C(" + std::to_string(m) + "," +
                            std::to_string(k) + ")^2 matchings, over the budget of " + std::to_string(budget) +
                            "; try the typed algorithm or a smaller instance");
    }
    const auto d = distance_table(e, metric);
    const auto subsets = all_subsets(m, k);
    FarthestResult best{Committee(subsets[0]), Committee(subsets[0]), Rational(0), 0};
    for (std::size_t i = 0; i < subsets.size(); ++i) {
        for (std::size_t j = i + 1; j < subsets.size(); ++j) {
            Rational dist = matched_distance(d, subsets[i], subsets[j]);
            ++best.evaluations;
            if (dist > best.distance) {
                best.x = Committee(subsets[i]);
                best.y = Committee(subsets[j]);
                best.distance = dist;
            }
        }
    }
    return best;
}

FarthestResult fc_discrete(const Election& e, int k)
{
    check_k(e, k);
    const int m = e.num_candidates();
    std::vector<int> x, y;
    for (int c = 0; c < k; ++c) x.push_back(c);
    const int shared = std::max(0, 2 * k - m);
    for (int c = 0; c < shared; ++c) y.push_back(c);
    for (int c = k; c < std::min(m, 2 * k); ++c) y.push_back(c);
    return {Committee(std::move(x)), Committee(std::move(y)), Rational(std::min(k, m - k)), 0};
}

std::vector<CandidateType> candidate_types(const Election& e)
{
    std::vector<CandidateType> types;
    std::map<VoterSet, int> index;
    for (int c = 0; c < e.num_candidates(); ++c) {
        const auto& set = e.approvers(c);
        auto [it, inserted] = index.emplace(set, static_cast<int>(types.size()));
        if (inserted) types.push_back({set, {}});
        types[it->second].members.push_back(c);
    }
    return types;
}

FarthestResult fc_type_compressed(const Election& e, int k, CandidateMetric metric, std::uint64_t budget)
{
    check_k(e, k);
    if (metric == CandidateMetric::Discrete) {
        return fc_discrete(e, k);
    }
    const auto types = candidate_types(e);
    const int t = static_cast<int>(types.size());

    std::vector<std::vector<int>> vectors;
    std::vector<int> cur(t, 0);
    const std::uint64_t cap = budget;
    auto rec = [&](auto&& self, int i, int left) -> void {
        if (vectors.size() > cap) return;
        if (i == t) {
            if (left == 0) vectors.push_back(cur);
            return;
        }
        for (int c = std::min(left, types[i].count()); c >= 0; --c) {
            cur[i] = c;
            self(self, i + 1, left - c);
        }
        cur[i] = 0;
    };
    rec(rec, 0, k);
    if (saturating_mul(vectors.size(), vectors.size()) > budget) {
        throw ResourceError("typed farthest committees needs more than " + std::to_string(budget) +
                            " matchings; reduce the number of candidate types or k");
    }

    // Same-type candidates are at distance zero from each other under the
    // remaining metrics, so any representative stands for its type.
    std::vector<std::vector<Rational>> d(t, std::vector<Rational>(t));
    for (int a = 0; a < t; ++a) {
        for (int b = a + 1; b < t; ++b) {
            d[a][b] = d[b][a] = candidate_distance(e, metric, types[a].members[0], types[b].members[0]);
        }
    }
    auto expand = [&](const std::vector<int>& counts) {
        std::vector<int> slots;
        for (int i = 0; i < t; ++i) slots.insert(slots.end(), counts[i], i);
        return slots;
    };
    std::vector<std::vector<int>> expanded;
    for (const auto& v : vectors) expanded.push_back(expand(v));

    FarthestResult best;
    best.distance = Rational(0);
    std::size_t bi = 0, bj = 0;
    for (std::size_t i = 0; i < expanded.size(); ++i) {
        for (std::size_t j = i + 1; j < expanded.size(); ++j) {
            Rational dist = matched_distance(d, expanded[i], expanded[j]);
            ++best.evaluations;
            if (dist > best.distance) {
                best.distance = dist;
                bi = i;
                bj = j;
            }
        }
    }
    auto rebuild = [&](const std::vector<int>& counts) {
        std::vector<int> members;
        for (int i = 0; i < t; ++i) {
            members.insert(members.end(), types[i].members.begin(), types[i].members.begin() + counts[i]);
        }
        return Committee::from_unsorted(std::move(members));
    };
    Committee x = rebuild(vectors[bi]);
    Committee y = rebuild(vectors[bj]);
    if (y < x) std::swap(x, y);
    best.x = std::move(x);
    best.y = std::move(y);
    return best;
}

} // namespace atlas
