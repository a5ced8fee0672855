#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "atlas/farthest.hpp"
#include "atlas/pipeline.hpp"

using namespace atlas;

namespace {

struct RunOptions {
    std::string config;
    std::string profile;
    std::optional<std::uint64_t> seed;
    std::string out;
    std::optional<int> jobs;
    std::optional<int> instances;
    bool quiet = false;
};

void add_run_options(CLI::App* cmd, RunOptions& o)
{
    cmd->add_option("--config", o.config, "JSON experiment config")->check(CLI::ExistingFile);
    cmd->add_option("--profile", o.profile, "Base profile when no config is given")
        ->check(CLI::IsMember({"reduced", "full"}));
    cmd->add_option("--seed", o.seed, "Master seed");
    cmd->add_option("--out", o.out, "Output directory");
    cmd->add_option("--jobs", o.jobs, "Worker threads")->check(CLI::PositiveNumber);
    cmd->add_option("--instances", o.instances, "Instances per culture")->check(CLI::PositiveNumber);
    cmd->add_flag("-q,--quiet", o.quiet, "No progress output");
}

ExperimentConfig resolve(const RunOptions& o)
{
    ExperimentConfig cfg = !o.config.empty()    ? load_config(o.config)
                           : !o.profile.empty() ? profile_by_name(o.profile)
                                                : reduced_profile();
    if (o.seed) cfg.master_seed = *o.seed;
    if (!o.out.empty()) cfg.output_dir = o.out;
    if (o.jobs) cfg.jobs = *o.jobs;
    if (o.instances) {
        for (auto& c : cfg.cultures) c.count = *o.instances;
    }
    cfg.validate();
    return cfg;
}

int run_stage(const RunOptions& o, Stage stage)
{
    const auto cfg = resolve(o);
    ProgressFn progress;
    if (!o.quiet) {
        progress = [](const std::string& culture, int done, int total) {
            std::fprintf(stderr, "\r%s: %d/%d", culture.c_str(), done, total);
            if (done == total) std::fputc('\n', stderr);
        };
    }
    const auto results = run_experiment(cfg, stage, progress);
    write_results(results, cfg.output_dir);
    if (!o.quiet) std::fprintf(stderr, "wrote %s\n", cfg.output_dir.string().c_str());
    return 0;
}

struct FarthestOptions {
    std::string input;
    int k = 0;
    std::string metric = "jaccard";
    std::string algorithm = "typed";
    std::uint64_t budget = kDefaultFarthestBudget;
};

int run_farthest(const FarthestOptions& o)
{
    std::ifstream in(o.input);
    if (!in) throw std::runtime_error("cannot open " + o.input);
    const auto elections = read_elections_jsonl(in);
    const auto metric = parse_metric(o.metric);
    for (std::size_t i = 0; i < elections.size(); ++i) {
        const auto& e = elections[i];
        FarthestResult r;
        if (o.algorithm == "brute") {
            r = fc_brute_force(e, o.k, metric, o.budget);
        } else if (o.algorithm == "discrete") {
            if (metric != CandidateMetric::Discrete) throw std::invalid_argument("--algorithm discrete needs --metric discrete");
            r = fc_discrete(e, o.k);
        } else {
            r = fc_type_compressed(e, o.k, metric, o.budget);
        }
        std::ostringstream dist;
        dist << r.distance;
        nlohmann::ordered_json j;
        j["election"] = i;
        j["x"] = r.x.members();
        j["y"] = r.y.members();
        j["distance"] = dist.str();
        j["distance_approx"] = r.distance.convert_to<double>();
        j["evaluations"] = r.evaluations;
        std::cout << j.dump() << "\n";
    }
    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Compute, compare and map approval-based committee voting rules"};
    app.require_subcommand(1);

    struct StageCommand {
        const char* name;
        const char* help;
        Stage stage;
    };
    const StageCommand stages[] = {
        {"generate", "Sample elections", Stage::Generate},
        {"solve", "Sample elections and compute every rule's committee", Stage::Solve},
        {"distances", "Add per-culture averaged rule distance matrices", Stage::Distances},
        {"axioms", "Audit committees for priceability, EJR, PJR and JR", Stage::Axioms},
        {"map", "Distances plus 2D maps of the rules", Stage::Map},
        {"report", "Full pipeline with report.md", Stage::Report},
    };
    RunOptions run_opts;
    std::optional<Stage> chosen;
    for (const auto& s : stages) {
        auto* cmd = app.add_subcommand(s.name, s.help);
        add_run_options(cmd, run_opts);
        cmd->callback([&chosen, stage = s.stage] { chosen = stage; });
    }

    FarthestOptions far;
    auto* fc = app.add_subcommand("farthest", "Find two committees at maximum distance");
    fc->add_option("--input", far.input, "Elections in JSON lines")->required()->check(CLI::ExistingFile);
    fc->add_option("--k", far.k, "Committee size")->required()->check(CLI::NonNegativeNumber);
    fc->add_option("--metric", far.metric, "Candidate metric")
        ->check(CLI::IsMember({"discrete", "hamming", "normalized_hamming", "jaccard"}));
    fc->add_option("--algorithm", far.algorithm, "Search method")->check(CLI::IsMember({"brute", "typed", "discrete"}));
    fc->add_option("--budget", far.budget, "Work limit for exact search");

    CLI11_PARSE(app, argc, argv);
    try {
        if (chosen) return run_stage(run_opts, *chosen);
        return run_farthest(far);
    } catch (const ResourceError& ex) {
        std::fprintf(stderr, "atlas: resource limit: %s\n", ex.what());
        return 3;
    } catch (const std::exception& ex) {
        std::fprintf(stderr, "atlas: %s\n", ex.what());
        return 2;
    }
}
