#include <algorithm>
#include <cmath>
#include <numeric>

#include <Eigen/Dense>

#include "atlas/map.hpp"
#include "atlas/rng.hpp"

namespace atlas {

double embedding_stress(const std::vector<std::array<double, 2>>& coords,
                        const std::vector<std::vector<double>>& target)
{
    double total = 0.0;
    const std::size_t n = coords.size();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double dist = std::hypot(coords[i][0] - coords[j][0], coords[i][1] - coords[j][1]);
            const double d = target[i][j];
            const double denom = std::max(d, kStressEpsilon);
            total += (dist - d) * (dist - d) / (denom * denom);
        }
    }
    return total;
}

namespace {

// Rules whose target distance is at most eps end up in one group.
std::vector<int> zero_distance_groups(const std::vector<std::vector<double>>& d, int& groups)
{
    const int n = static_cast<int>(d.size());
    std::vector<int> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            if (d[i][j] <= kStressEpsilon) {
                int a = find(i), b = find(j);
                if (a != b) parent[std::max(a, b)] = std::min(a, b);
            }
        }
    }
    std::vector<int> group(n, -1), label(n, -1);
    groups = 0;
    for (int i = 0; i < n; ++i) {
        int root = find(i);
        if (label[root] < 0) label[root] = groups++;
        group[i] = label[root];
    }
    return group;
}

} // namespace

Embedding embed_stress_min(const DistanceMatrix& mat, std::uint64_t seed, int max_iters)
{
    const int n = mat.size();
    Embedding emb;
    emb.rules = mat.rules;
    emb.coordinates.assign(n, {0.0, 0.0});
    if (n <= 1) {
        emb.trace.push_back(0.0);
        return emb;
    }

    std::vector<std::vector<double>> d(n, std::vector<double>(n, 0.0));
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (i != j) d[i][j] = 0.5 * (mat.values[i][j] + mat.values[j][i]);
        }
    }

    // Collapsing coincident rules keeps the weights bounded. Within the
    // reduced problem, each group pair carries the summed weight and the
    // weighted mean target of its member pairs; this changes the stress
    // only by a constant.
    int g = 0;
    const auto group = zero_distance_groups(d, g);
    Eigen::MatrixXd weight = Eigen::MatrixXd::Zero(g, g);
    Eigen::MatrixXd target = Eigen::MatrixXd::Zero(g, g);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const int a = group[i], b = group[j];
            if (a == b) continue;
            const double denom = std::max(d[i][j], kStressEpsilon);
            const double w = 1.0 / (denom * denom);
            weight(a, b) += w;
            target(a, b) += w * d[i][j];
        }
    }
    for (int a = 0; a < g; ++a) {
        for (int b = 0; b < g; ++b) {
            if (a != b) target(a, b) /= weight(a, b);
        }
    }

    auto expand = [&](const Eigen::MatrixXd& x) {
        std::vector<std::array<double, 2>> out(n);
        for (int i = 0; i < n; ++i) out[i] = {x(group[i], 0), x(group[i], 1)};
        return out;
    };

    Eigen::MatrixXd x(g, 2);
    if (g == 1) {
        x.setZero();
    } else {
        double scale = 0.0;
        for (int a = 0; a < g; ++a) {
            for (int b = a + 1; b < g; ++b) scale += target(a, b);
        }
        scale /= 0.5 * g * (g - 1);
        Rng rng(seed);
        for (int a = 0; a < g; ++a) {
            for (int t = 0; t < 2; ++t) x(a, t) = scale * rng.uniform01();
        }
    }

    double stress = embedding_stress(expand(x), d);
    emb.trace.push_back(stress);

    if (g > 1) {
        // Pseudo-inverse of the weighted Laplacian through the all-ones shift.
        Eigen::MatrixXd lap = -weight;
        for (int a = 0; a < g; ++a) lap(a, a) = weight.row(a).sum();
        const Eigen::MatrixXd ones = Eigen::MatrixXd::Ones(g, g);
        const Eigen::MatrixXd lap_pinv =
            (lap + ones).ldlt().solve(Eigen::MatrixXd::Identity(g, g)) - ones / (double(g) * g);

        for (int it = 0; it < max_iters && stress > 0.0; ++it) {
            Eigen::MatrixXd b = Eigen::MatrixXd::Zero(g, g);
            for (int a = 0; a < g; ++a) {
                for (int c = 0; c < g; ++c) {
                    if (a == c) continue;
                    const double dist = (x.row(a) - x.row(c)).norm();
                    if (dist > 0) b(a, c) = -weight(a, c) * target(a, c) / dist;
                }
                b(a, a) = -b.row(a).sum();
            }
            const Eigen::MatrixXd step = lap_pinv * (b * x) - x;

            // Backtrack along the majorization step if round-off makes
            // the full step non-improving.
            double t = 1.0;
            double next_stress = stress;
            Eigen::MatrixXd next;
            bool improved = false;
            for (int tries = 0; tries < 30; ++tries, t *= 0.5) {
                next = x + t * step;
                next_stress = embedding_stress(expand(next), d);
                if (next_stress <= stress) {
                    improved = true;
                    break;
                }
            }
            if (!improved) break;
            const double change = (stress - next_stress) / stress;
            x = next;
            stress = next_stress;
            emb.trace.push_back(stress);
            emb.iterations = it + 1;
            if (change < 1e-10) break;
        }
    }

    emb.coordinates = expand(x);
    double cx = 0.0, cy = 0.0;
    for (const auto& p : emb.coordinates) {
        cx += p[0];
        cy += p[1];
    }
    cx /= n;
    cy /= n;
    for (auto& p : emb.coordinates) {
        p[0] -= cx;
        p[1] -= cy;
    }
    emb.stress = stress;
    return emb;
}

} // namespace atlas
