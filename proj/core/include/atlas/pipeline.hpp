#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "atlas/axioms.hpp"
#include "atlas/cultures.hpp"
#include "atlas/map.hpp"
#include "atlas/metrics.hpp"
#include "atlas/rules.hpp"

namespace atlas {

struct ExperimentConfig {
    std::vector<CultureSpec> cultures;
    std::vector<RuleId> rules{kAllRules.begin(), kAllRules.end()};
    int k = 5;
    CandidateMetric metric = CandidateMetric::Jaccard;
    std::uint64_t master_seed = 2023;
    std::filesystem::path output_dir = "results";
    int jobs = 1;
    // Rules enclosed by the shaded region on the maps; those not in
    // `rules` are ignored.
    std::vector<RuleId> highlight;
    int embedding_iterations = 1000;

    // Throws std::invalid_argument when a culture is invalid, k exceeds some
    // culture's m, no rules are given or jobs < 1.
    void validate() const;

    // Seed used for the culture at `index`: its own if pinned, otherwise
    // culture_seed(master_seed, name).
    std::uint64_t seed_for(std::size_t index) const;
};

// The proportional cluster drawn on the maps.
std::vector<RuleId> proportional_rules();

// m=30, n=50, k=5, 200 instances per synthetic culture, all 16 rules.
ExperimentConfig reduced_profile();
// m=n=100, k=10, 1000 instances per synthetic culture, only the rules that
// avoid exhaustive search.
ExperimentConfig full_profile();
ExperimentConfig profile_by_name(std::string_view name); // "reduced" or "full"

// JSON object; absent keys keep the reduced-profile defaults, and
// "profile" selects the base profile.
ExperimentConfig config_from_json(std::string_view text);
ExperimentConfig load_config(const std::filesystem::path& path);
std::string config_to_json(const ExperimentConfig& cfg);

enum class Stage { Generate, Solve, Distances, Axioms, Map, Report };

struct InstanceResult {
    Election election;
    std::vector<Committee> committees;  // parallel to config rules
    RuleMatrix distances;               // normalized by the largest entry
    // Per rule: priceability, EJR, PJR, JR.
    std::vector<std::array<bool, 4>> axioms;
    bool cohesive_pair = false;         // some 2-cohesive group exists
};

struct AxiomRow {
    RuleId rule;
    std::array<int, 4> satisfied{};     // priceability, EJR, PJR, JR
    int instances = 0;

    double fraction(int column) const;
};

struct CultureResult {
    CultureSpec spec;                   // with the seed resolved
    std::vector<InstanceResult> instances;
    DistanceMatrix averaged;
    std::vector<AxiomRow> axiom_table;
    int cohesive_pair_count = 0;
    Embedding embedding;
    std::string svg;
};

struct ExperimentResults {
    ExperimentConfig config;
    Stage stage = Stage::Report;
    std::vector<CultureResult> cultures;
};

// Rows in rule order. Throws std::invalid_argument on an empty input.
std::vector<AxiomRow> axiom_fraction_table(std::span<const RuleId> rules,
                                           std::span<const std::vector<std::array<bool, 4>>> verdicts);
std::string axiom_table_csv(std::span<const AxiomRow> rows);
std::string axiom_table_markdown(std::span<const AxiomRow> rows);

using ProgressFn = std::function<void(const std::string& culture, int done, int total)>;

// Runs every step up to and including `stage`. Instances are processed by
// cfg.jobs workers; results do not depend on the worker count. A failing
// instance aborts the run with its seed and serialized election.
ExperimentResults run_experiment(const ExperimentConfig& cfg, Stage stage = Stage::Report,
                                 const ProgressFn& progress = {});

// elections.jsonl, committees.jsonl, matrices/, axioms/, map/, report.md,
// config.json, as far as the stage reached.
void write_results(const ExperimentResults& results, const std::filesystem::path& dir);

std::string render_report(const ExperimentResults& results);

} // namespace atlas
