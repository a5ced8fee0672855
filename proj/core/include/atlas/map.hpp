#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "atlas/metrics.hpp"

namespace atlas {

struct Embedding {
    std::vector<RuleId> rules;
    std::vector<std::array<double, 2>> coordinates; // one per rule, centroid at the origin
    double stress = 0.0;
    int iterations = 0;
    std::vector<double> trace; // stress after initialization and after each iteration
};

// Target distances below this are treated as this value in the stress
// weights, and rules this close are placed on one point.
inline constexpr double kStressEpsilon = 1e-9;

// sum over i<j of (|x_i - x_j| - d_ij)^2 / max(d_ij, eps)^2.
double embedding_stress(const std::vector<std::array<double, 2>>& coords,
                        const std::vector<std::vector<double>>& target);

// Weighted stress majorization from a seeded uniform start. Every step
// is accepted only if it does not raise the stress, so the trace is
// non-increasing. Stops after max_iters or once the relative change
// drops below 1e-10.
Embedding embed_stress_min(const DistanceMatrix& mat, std::uint64_t seed, int max_iters = 1000);

struct MapStyle {
    std::string title;
    int size = 640;                  // width and height in px
    std::vector<int> highlight;      // rule positions enclosed by the shaded hull
};

// Standalone SVG 1.1 document with one labelled marker per rule. The
// bytes depend only on the inputs.
std::string render_map(const Embedding& emb, std::span<const std::string> labels, const MapStyle& style = {});

} // namespace atlas
