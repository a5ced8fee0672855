#include "atlas/rng.hpp"

#include <numeric>
#include <stdexcept>

namespace atlas {

std::uint64_t Rng::below(std::uint64_t bound)
{
    if (bound == 0) {
        throw std::invalid_argument("Rng::below needs a positive bound");
    }
    if (bound == 1) {
        return 0;
    }
    // Accept x only from the largest multiple of bound that fits in 2^64.
    const std::uint64_t threshold = (0 - bound) % bound;
    while (true) {
        std::uint64_t x = next();
        if (x >= threshold) {
            return x % bound;
        }
    }
}

std::vector<int> Rng::sample_without_replacement(int population, int count)
{
    if (count < 0 || count > population) {
        throw std::invalid_argument("cannot draw " + std::to_string(count) + " of " + std::to_string(population));
    }
    std::vector<int> pool(population);
    std::iota(pool.begin(), pool.end(), 0);
    for (int i = 0; i < count; ++i) {
        auto j = i + static_cast<int>(below(static_cast<std::uint64_t>(population - i)));
        std::swap(pool[i], pool[j]);
    }
    pool.resize(count);
    return pool;
}

std::uint64_t mix64(std::uint64_t x)
{
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

std::uint64_t fnv1a64(std::string_view text)
{
    std::uint64_t h = 0xCBF29CE484222325ULL;
    for (unsigned char ch : text) {
        h ^= ch;
        h *= 0x100000001B3ULL;
    }
    return h;
}

std::uint64_t culture_seed(std::uint64_t master_seed, std::string_view culture_name)
{
    return mix64(master_seed ^ fnv1a64(culture_name));
}

std::uint64_t instance_seed(std::uint64_t culture_seed, std::uint64_t index)
{
    return mix64(culture_seed + 0x9E3779B97F4A7C15ULL * (index + 1));
}

} // namespace atlas
