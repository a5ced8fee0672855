#pragma once

#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

namespace atlas {

// The generator is std::mt19937_64 seeded with a single 64-bit value; its
// output sequence is fixed by the C++ standard. All derived quantities
// (uniform reals, bounded integers, shuffles) are computed here from raw
// 64-bit outputs, never through <random> distributions, so sampled
// elections are identical across standard libraries.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    // Uniform on [0, 1) with 53 random bits.
    double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    // Uniform on {0, ..., bound-1} by rejection; bound == 1 consumes nothing.
    std::uint64_t below(std::uint64_t bound);

    bool bernoulli(double p) { return uniform01() < p; }

    // `count` distinct values from {0..population-1} in draw order, by a
    // partial Fisher-Yates pass.
    std::vector<int> sample_without_replacement(int population, int count);

private:
    std::mt19937_64 engine_;
};

// SplitMix64 finalizer.
std::uint64_t mix64(std::uint64_t x);

// FNV-1a over the bytes of `text`.
std::uint64_t fnv1a64(std::string_view text);

// Seed of a named culture when the config does not pin one.
std::uint64_t culture_seed(std::uint64_t master_seed, std::string_view culture_name);

// Seed of instance `index` within a culture stream.
std::uint64_t instance_seed(std::uint64_t culture_seed, std::uint64_t index);

} // namespace atlas
