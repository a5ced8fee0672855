#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "atlas/election.hpp"
#include "atlas/pabulib.hpp"
#include "atlas/rng.hpp"

namespace atlas {

enum class CultureKind { Resampling, Disjoint, Euclidean, PartyList, Pabulib };

std::string_view to_string(CultureKind kind);
CultureKind parse_culture_kind(std::string_view name);

// A named statistical culture and how many instances to draw from it.
// Only the fields relevant to `kind` are read.
struct CultureSpec {
    std::string name;
    CultureKind kind = CultureKind::Resampling;
    int m = 30;
    int n = 50;
    double p = 0.1;
    double phi = 0.5;
    // Instance i of `count` uses phi = i / (count - 1) instead of `phi`.
    bool phi_sweep = false;
    int g = 10;
    double r = 0.05;
    int dim = 1;
    double alpha = 1.0;
    // Unset: derived from the experiment master seed and `name`.
    std::optional<std::uint64_t> seed;
    std::vector<std::string> sources; // Pabulib files
    int count = 1;

    // Throws std::invalid_argument on out-of-range parameters.
    void validate() const;
    double phi_for(int index) const;
};

std::string culture_to_json(const CultureSpec& spec);
CultureSpec culture_from_json(std::string_view json);

// floor(p*m), tolerant of binary round-off just below an integer.
int central_size(double p, int m);

struct ResamplingSample {
    Election election;
    std::vector<std::vector<int>> central_ballots;
};

// Central ballot: uniform floor(pm)-subset. Each vote, per candidate: with
// probability phi the approval is redrawn as Bernoulli(p), else it copies
// the central ballot.
Election sample_resampling(int m, int n, double p, double phi, Rng& rng);
ResamplingSample sample_resampling_detailed(int m, int n, double p, double phi, Rng& rng);

// g disjoint central ballots; each vote perturbs a uniformly chosen one.
// Throws std::invalid_argument if g*floor(pm) > m. With g == 1 the draws
// coincide with sample_resampling.
Election sample_disjoint(int m, int n, double p, double phi, int g, Rng& rng);
ResamplingSample sample_disjoint_detailed(int m, int n, double p, double phi, int g, Rng& rng);

// Voter and candidate points uniform in [0,1]^dim (voters drawn first);
// a voter approves every candidate within distance r.
Election sample_euclidean(int m, int n, int dim, double r, Rng& rng);

// g parties of floor(m/g) consecutive candidates; Polya urn over party
// ballots, each draw returned with floor(alpha*g) extra copies.
Election sample_party_list(int m, int n, int g, double alpha, Rng& rng);

// Uniform instance, uniform m_target projects and n_target voters, ballots
// restricted to the chosen projects; voters left with empty ballots are
// dropped. Projects are reindexed in file order and labelled by id.
Election sample_pabulib(std::span<const PabulibInstance> pool, int m_target, int n_target, Rng& rng);

// Instance `index` of the culture, drawn from its own derived seed. An
// unset culture seed counts as culture_seed(0, name).
Election sample_instance(const CultureSpec& spec, int index, std::span<const PabulibInstance> pool = {});

} // namespace atlas
