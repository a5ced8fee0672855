#include <stdexcept>

#include "atlas/metrics.hpp"

namespace atlas {

MatchingInstance::MatchingInstance(std::vector<std::vector<Rational>> weights) : weights_(std::move(weights))
{
    for (const auto& row : weights_) {
        if (row.size() != weights_.size()) {
            throw std::invalid_argument("matching instance must be square");
        }
        for (const auto& w : row) {
            if (w < 0) {
                throw std::invalid_argument("matching weights must be nonnegative");
            }
        }
    }
}

MatchingResult min_weight_perfect_matching(const MatchingInstance& instance)
{
    const int n = instance.size();
    MatchingResult result;
    result.weight = 0;
    if (n == 0) {
        return result;
    }
    // Shortest augmenting paths with row/column potentials (1-based; column
    // 0 is the virtual source).
    std::vector<Rational> u(n + 1, Rational(0)), v(n + 1, Rational(0)), minv(n + 1);
    std::vector<int> match(n + 1, 0), way(n + 1, 0);
    std::vector<char> used(n + 1), seen(n + 1);
    for (int i = 1; i <= n; ++i) {
        match[0] = i;
        int j0 = 0;
        std::fill(used.begin(), used.end(), 0);
        std::fill(seen.begin(), seen.end(), 0);
        do {
            used[j0] = 1;
            const int i0 = match[j0];
            int j1 = -1;
            Rational delta;
            for (int j = 1; j <= n; ++j) {
                if (used[j]) continue;
                Rational cur = instance.weight(i0 - 1, j - 1) - u[i0] - v[j];
                if (!seen[j] || cur < minv[j]) {
                    minv[j] = cur;
                    way[j] = j0;
                    seen[j] = 1;
                }
                if (j1 < 0 || minv[j] < delta) {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for (int j = 0; j <= n; ++j) {
                if (used[j]) {
                    u[match[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
        } while (match[j0] != 0);
        do {
            const int j1 = way[j0];
            match[j0] = match[j1];
            j0 = j1;
        } while (j0 != 0);
    }
    result.assignment.assign(n, -1);
    for (int j = 1; j <= n; ++j) {
        result.assignment[match[j] - 1] = j - 1;
    }
    for (int i = 0; i < n; ++i) {
        result.weight += instance.weight(i, result.assignment[i]);
    }
    return result;
}

} // namespace atlas
