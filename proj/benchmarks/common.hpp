#pragma once

#include "atlas/pipeline.hpp"

namespace bench {

// Instance `index` of a reduced-profile culture.
inline atlas::Election reduced_instance(const char* culture, int index)
{
    for (const auto& spec : atlas::reduced_profile().cultures) {
        if (spec.name == culture) {
            auto pinned = spec;
            pinned.seed = atlas::culture_seed(2023, spec.name);
            return atlas::sample_instance(pinned, index);
        }
    }
    throw std::invalid_argument(culture);
}

} // namespace bench
