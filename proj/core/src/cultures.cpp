#include "atlas/cultures.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_map>

#include <json.hpp>

namespace atlas {

std::string_view to_string(CultureKind kind)
{
    switch (kind) {
    case CultureKind::Resampling: return "resampling";
    case CultureKind::Disjoint: return "disjoint";
    case CultureKind::Euclidean: return "euclidean";
    case CultureKind::PartyList: return "party_list";
    case CultureKind::Pabulib: return "pabulib";
    }
    return "?";
}

CultureKind parse_culture_kind(std::string_view name)
{
    for (auto k : {CultureKind::Resampling, CultureKind::Disjoint, CultureKind::Euclidean, CultureKind::PartyList,
                   CultureKind::Pabulib}) {
        if (to_string(k) == name) return k;
    }
    throw std::invalid_argument("unknown culture kind: " + std::string(name));
}

int central_size(double p, int m) { return static_cast<int>(std::floor(p * m + 1e-9)); }

void CultureSpec::validate() const
{
    auto fail = [&](const std::string& what) {
        throw std::invalid_argument("culture '" + name + "': " + what);
    };
    if (count < 1) fail("count must be >= 1");
    if (kind != CultureKind::Pabulib && (m < 1 || n < 1)) fail("m and n must be positive");
    switch (kind) {
    case CultureKind::Disjoint:
        if (g < 1) fail("g must be >= 1");
        if (static_cast<long>(g) * central_size(p, m) > m) fail("g * floor(pm) exceeds m");
        [[fallthrough]];
    case CultureKind::Resampling:
        if (!(p >= 0 && p <= 1)) fail("p must lie in [0,1]");
        if (!(phi >= 0 && phi <= 1)) fail("phi must lie in [0,1]");
        break;
    case CultureKind::Euclidean:
        if (dim != 1 && dim != 2) fail("dim must be 1 or 2");
        if (!(r > 0)) fail("r must be positive");
        break;
    case CultureKind::PartyList:
        if (g < 1 || g > m) fail("g must lie in [1, m]");
        if (!(alpha >= 0)) fail("alpha must be nonnegative");
        break;
    case CultureKind::Pabulib:
        if (sources.empty()) fail("pabulib culture needs source files");
        break;
    }
}

double CultureSpec::phi_for(int index) const
{
    if (!phi_sweep) return phi;
    if (count <= 1) return 0.0;
    return static_cast<double>(index) / static_cast<double>(count - 1);
}

std::string culture_to_json(const CultureSpec& s)
{
    nlohmann::json j;
    j["name"] = s.name;
    j["kind"] = std::string(to_string(s.kind));
    j["m"] = s.m;
    j["n"] = s.n;
    j["p"] = s.p;
    j["phi"] = s.phi;
    j["phi_sweep"] = s.phi_sweep;
    j["g"] = s.g;
    j["r"] = s.r;
    j["dim"] = s.dim;
    j["alpha"] = s.alpha;
    if (s.seed) j["seed"] = *s.seed;
    j["count"] = s.count;
    if (!s.sources.empty()) j["sources"] = s.sources;
    return j.dump();
}

CultureSpec culture_from_json(std::string_view text)
{
    auto j = nlohmann::json::parse(text);
    CultureSpec s;
    s.kind = parse_culture_kind(j.at("kind").get<std::string>());
    s.name = j.value("name", std::string(to_string(s.kind)));
    s.m = j.value("m", s.m);
    s.n = j.value("n", s.n);
    s.p = j.value("p", s.p);
    s.phi = j.value("phi", s.phi);
    s.phi_sweep = j.value("phi_sweep", s.phi_sweep);
    s.g = j.value("g", s.g);
    s.r = j.value("r", s.r);
    s.dim = j.value("dim", s.dim);
    s.alpha = j.value("alpha", s.alpha);
    if (j.contains("seed")) s.seed = j["seed"].get<std::uint64_t>();
    s.count = j.value("count", s.count);
    s.sources = j.value("sources", s.sources);
    return s;
}

namespace {

void perturb_into(std::vector<int>& ballot, const std::vector<char>& central, double p, double phi, Rng& rng)
{
    const int m = static_cast<int>(central.size());
    for (int c = 0; c < m; ++c) {
        bool approve = rng.uniform01() < phi ? rng.bernoulli(p) : central[c] != 0;
        if (approve) ballot.push_back(c);
    }
}

} // namespace

ResamplingSample sample_disjoint_detailed(int m, int n, double p, double phi, int g, Rng& rng)
{
    const int size = central_size(p, m);
    if (g < 1 || static_cast<long>(g) * size > m) {
        throw std::invalid_argument("disjoint culture: g * floor(pm) must not exceed m");
    }
    auto drawn = rng.sample_without_replacement(m, g * size);
    ResamplingSample out{Election(1, std::vector<std::vector<int>>(1)), {}};
    std::vector<std::vector<char>> masks(g, std::vector<char>(m, 0));
    for (int i = 0; i < g; ++i) {
        std::vector<int> ballot(drawn.begin() + i * size, drawn.begin() + (i + 1) * size);
        for (int c : ballot) masks[i][c] = 1;
        std::sort(ballot.begin(), ballot.end());
        out.central_ballots.push_back(std::move(ballot));
    }
    std::vector<std::vector<int>> votes(n);
    for (int v = 0; v < n; ++v) {
        const auto which = rng.below(static_cast<std::uint64_t>(g));
        perturb_into(votes[v], masks[which], p, phi, rng);
    }
    out.election = Election(m, std::move(votes));
    return out;
}

ResamplingSample sample_resampling_detailed(int m, int n, double p, double phi, Rng& rng)
{
    return sample_disjoint_detailed(m, n, p, phi, 1, rng);
}

Election sample_resampling(int m, int n, double p, double phi, Rng& rng)
{
    return sample_resampling_detailed(m, n, p, phi, rng).election;
}

Election sample_disjoint(int m, int n, double p, double phi, int g, Rng& rng)
{
    return sample_disjoint_detailed(m, n, p, phi, g, rng).election;
}

Election sample_euclidean(int m, int n, int dim, double r, Rng& rng)
{
    if (dim != 1 && dim != 2) {
        throw std::invalid_argument("euclidean culture supports dim 1 or 2");
    }
    if (!(r > 0)) {
        throw std::invalid_argument("euclidean culture needs r > 0");
    }
    auto draw_points = [&](int count) {
        std::vector<double> pts(static_cast<std::size_t>(count) * dim);
        for (auto& x : pts) x = rng.uniform01();
        return pts;
    };
    auto voters = draw_points(n);
    auto cands = draw_points(m);
    const double r2 = r * r;
    std::vector<std::vector<int>> votes(n);
    for (int v = 0; v < n; ++v) {
        for (int c = 0; c < m; ++c) {
            double d2 = 0;
            for (int t = 0; t < dim; ++t) {
                double diff = voters[v * dim + t] - cands[c * dim + t];
                d2 += diff * diff;
            }
            if (d2 <= r2) votes[v].push_back(c);
        }
    }
    return Election(m, std::move(votes));
}

Election sample_party_list(int m, int n, int g, double alpha, Rng& rng)
{
    if (g < 1 || g > m) {
        throw std::invalid_argument("party-list culture needs 1 <= g <= m");
    }
    if (!(alpha >= 0)) {
        throw std::invalid_argument("party-list culture needs alpha >= 0");
    }
    const int party_size = m / g;
    const auto reinforce = static_cast<std::uint64_t>(std::floor(alpha * g + 1e-9));
    std::vector<std::uint64_t> urn(g, 1);
    std::uint64_t total = g;
    std::vector<std::vector<int>> votes(n);
    for (int v = 0; v < n; ++v) {
        auto ticket = rng.below(total);
        int party = 0;
        while (ticket >= urn[party]) {
            ticket -= urn[party];
            ++party;
        }
        for (int c = party * party_size; c < (party + 1) * party_size; ++c) votes[v].push_back(c);
        urn[party] += reinforce;
        total += reinforce;
    }
    return Election(m, std::move(votes));
}

Election sample_pabulib(std::span<const PabulibInstance> pool, int m_target, int n_target, Rng& rng)
{
    if (pool.empty()) {
        throw std::invalid_argument("pabulib culture: empty instance pool");
    }
    const auto& inst = pool[rng.below(pool.size())];
    const int projects = static_cast<int>(inst.project_ids.size());
    const int voters = static_cast<int>(inst.ballots.size());
    if (projects < m_target || voters < n_target) {
        throw std::invalid_argument("pabulib instance smaller than the sampling target");
    }
    auto chosen = rng.sample_without_replacement(projects, m_target);
    std::sort(chosen.begin(), chosen.end());
    auto sampled_voters = rng.sample_without_replacement(voters, n_target);

    std::unordered_map<std::string, int> new_index;
    std::vector<std::string> labels;
    for (int i = 0; i < m_target; ++i) {
        new_index.emplace(inst.project_ids[chosen[i]], i);
        labels.push_back(inst.project_ids[chosen[i]]);
    }
    std::vector<std::vector<int>> votes;
    for (int v : sampled_voters) {
        std::vector<int> ballot;
        for (const auto& id : inst.ballots[v]) {
            if (auto it = new_index.find(id); it != new_index.end()) ballot.push_back(it->second);
        }
        if (!ballot.empty()) votes.push_back(std::move(ballot));
    }
    if (votes.empty()) {
        throw std::runtime_error("pabulib sample left no voter with a nonempty ballot");
    }
    return Election(m_target, std::move(votes), std::move(labels));
}

Election sample_instance(const CultureSpec& spec, int index, std::span<const PabulibInstance> pool)
{
    const auto base = spec.seed ? *spec.seed : culture_seed(0, spec.name);
    Rng rng(instance_seed(base, static_cast<std::uint64_t>(index)));
    switch (spec.kind) {
    case CultureKind::Resampling: return sample_resampling(spec.m, spec.n, spec.p, spec.phi_for(index), rng);
    case CultureKind::Disjoint: return sample_disjoint(spec.m, spec.n, spec.p, spec.phi_for(index), spec.g, rng);
    case CultureKind::Euclidean: return sample_euclidean(spec.m, spec.n, spec.dim, spec.r, rng);
    case CultureKind::PartyList: return sample_party_list(spec.m, spec.n, spec.g, spec.alpha, rng);
    case CultureKind::Pabulib: return sample_pabulib(pool, spec.m, spec.n, rng);
    }
    throw std::logic_error("unhandled culture kind");
}

} // namespace atlas
