#include "atlas/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <exception>
#include <fstream>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "json_io.hpp"

namespace atlas {

namespace fs = std::filesystem;

std::vector<RuleId> proportional_rules()
{
    return {RuleId::PAV,    RuleId::SeqPAV,  RuleId::SeqPhragmen, RuleId::EqualShares,
            RuleId::SLAV,   RuleId::SeqSLAV, RuleId::GreedyMonroe};
}

void ExperimentConfig::validate() const
{
    if (cultures.empty()) throw std::invalid_argument("config: no cultures");
    if (rules.empty()) throw std::invalid_argument("config: no rules");
    if (jobs < 1) throw std::invalid_argument("config: jobs must be >= 1");
    if (k < 1) throw std::invalid_argument("config: k must be >= 1");
    if (embedding_iterations < 0) throw std::invalid_argument("config: embedding_iterations must be >= 0");
    for (std::size_t i = 0; i < rules.size(); ++i) {
        for (std::size_t j = i + 1; j < rules.size(); ++j) {
            if (rules[i] == rules[j]) throw std::invalid_argument("config: duplicate rule " + std::string(to_string(rules[i])));
        }
    }
    for (std::size_t i = 0; i < cultures.size(); ++i) {
        const auto& c = cultures[i];
        c.validate();
        if (k > c.m) {
            throw std::invalid_argument("config: k exceeds m in culture '" + c.name + "'");
        }
        for (std::size_t j = 0; j < i; ++j) {
            if (cultures[j].name == c.name) throw std::invalid_argument("config: duplicate culture name " + c.name);
        }
    }
}

std::uint64_t ExperimentConfig::seed_for(std::size_t index) const
{
    const auto& c = cultures.at(index);
    return c.seed ? *c.seed : culture_seed(master_seed, c.name);
}

namespace {

CultureSpec synthetic(std::string name, CultureKind kind, int m, int n, int count)
{
    CultureSpec c;
    c.name = std::move(name);
    c.kind = kind;
    c.m = m;
    c.n = n;
    c.count = count;
    return c;
}

// The central ballot and each party hold exactly k candidates, and the
// disjoint central ballots partition the candidates.
std::vector<CultureSpec> synthetic_cultures(int m, int n, int k, int count)
{
    std::vector<CultureSpec> out;
    auto resampling = synthetic("resampling", CultureKind::Resampling, m, n, count);
    resampling.p = static_cast<double>(k) / m;
    resampling.phi_sweep = true;
    out.push_back(resampling);
    auto disjoint = synthetic("disjoint", CultureKind::Disjoint, m, n, count);
    disjoint.p = 0.1;
    disjoint.phi_sweep = true;
    disjoint.g = 10;
    out.push_back(disjoint);
    auto e1 = synthetic("euclidean_1d", CultureKind::Euclidean, m, n, count);
    e1.dim = 1;
    e1.r = 0.05;
    out.push_back(e1);
    auto e2 = synthetic("euclidean_2d", CultureKind::Euclidean, m, n, count);
    e2.dim = 2;
    e2.r = 0.2;
    out.push_back(e2);
    auto party = synthetic("party_list", CultureKind::PartyList, m, n, count);
    party.g = m / k;
    // Reproduces the published party-list AV and seq-CC rows at m = n = 100.
    party.alpha = 0.5;
    out.push_back(party);
    return out;
}

} // namespace

ExperimentConfig reduced_profile()
{
    ExperimentConfig cfg;
    cfg.cultures = synthetic_cultures(30, 50, 5, 200);
    cfg.k = 5;
    cfg.highlight = proportional_rules();
    return cfg;
}

ExperimentConfig full_profile()
{
    ExperimentConfig cfg;
    cfg.cultures = synthetic_cultures(100, 100, 10, 1000);
    cfg.k = 10;
    cfg.rules.clear();
    for (auto id : kAllRules) {
        if (!is_optimization_rule(id)) cfg.rules.push_back(id);
    }
    cfg.highlight = proportional_rules();
    return cfg;
}

ExperimentConfig profile_by_name(std::string_view name)
{
    if (name == "reduced") return reduced_profile();
    if (name == "full") return full_profile();
    throw std::invalid_argument("unknown profile: " + std::string(name));
}

namespace {

std::vector<RuleId> rules_from_json(const nlohmann::json& j)
{
    if (j.is_string() && j.get<std::string>() == "all") {
        return {kAllRules.begin(), kAllRules.end()};
    }
    std::vector<RuleId> out;
    for (const auto& r : j) out.push_back(parse_rule(r.get<std::string>()));
    return out;
}

nlohmann::json rules_to_json(const std::vector<RuleId>& rules)
{
    auto out = nlohmann::json::array();
    for (auto id : rules) out.push_back(std::string(to_string(id)));
    return out;
}

} // namespace

ExperimentConfig config_from_json(std::string_view text)
{
    const auto j = nlohmann::json::parse(text);
    if (!j.is_object()) throw std::invalid_argument("config must be a JSON object");
    ExperimentConfig cfg = profile_by_name(j.value("profile", std::string("reduced")));
    if (j.contains("cultures")) {
        cfg.cultures.clear();
        for (const auto& c : j["cultures"]) cfg.cultures.push_back(culture_from_json(c.dump()));
    }
    if (j.contains("rules")) cfg.rules = rules_from_json(j["rules"]);
    if (j.contains("highlight")) cfg.highlight = rules_from_json(j["highlight"]);
    cfg.k = j.value("k", cfg.k);
    if (j.contains("metric")) cfg.metric = parse_metric(j["metric"].get<std::string>());
    cfg.master_seed = j.value("master_seed", cfg.master_seed);
    if (j.contains("output_dir")) cfg.output_dir = j["output_dir"].get<std::string>();
    cfg.jobs = j.value("jobs", cfg.jobs);
    cfg.embedding_iterations = j.value("embedding_iterations", cfg.embedding_iterations);
    return cfg;
}

ExperimentConfig load_config(const fs::path& path)
{
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config " + path.string());
    std::stringstream ss;
    ss << in.rdbuf();
    return config_from_json(ss.str());
}

std::string config_to_json(const ExperimentConfig& cfg)
{
    nlohmann::ordered_json j;
    j["master_seed"] = cfg.master_seed;
    j["k"] = cfg.k;
    j["metric"] = std::string(to_string(cfg.metric));
    j["rules"] = rules_to_json(cfg.rules);
    j["highlight"] = rules_to_json(cfg.highlight);
    j["embedding_iterations"] = cfg.embedding_iterations;
    auto cultures = nlohmann::ordered_json::array();
    for (const auto& c : cfg.cultures) cultures.push_back(nlohmann::ordered_json::parse(culture_to_json(c)));
    j["cultures"] = cultures;
    return j.dump(2) + "\n";
}

double AxiomRow::fraction(int column) const
{
    return instances == 0 ? 0.0 : static_cast<double>(satisfied.at(column)) / instances;
}

std::vector<AxiomRow> axiom_fraction_table(std::span<const RuleId> rules,
                                           std::span<const std::vector<std::array<bool, 4>>> verdicts)
{
    if (verdicts.empty()) throw std::invalid_argument("axiom_fraction_table: no instances");
    std::vector<AxiomRow> rows;
    for (std::size_t r = 0; r < rules.size(); ++r) {
        AxiomRow row{rules[r], {}, static_cast<int>(verdicts.size())};
        for (const auto& inst : verdicts) {
            if (inst.size() != rules.size()) throw std::invalid_argument("axiom_fraction_table: ragged input");
            for (int a = 0; a < 4; ++a) row.satisfied[a] += inst[r][a] ? 1 : 0;
        }
        rows.push_back(row);
    }
    return rows;
}

namespace {

std::string fixed(double v, int digits)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, v);
    return buf;
}

} // namespace

std::string axiom_table_csv(std::span<const AxiomRow> rows)
{
    std::string out = "rule,priceability,ejr,pjr,jr,instances\n";
    for (const auto& row : rows) {
        out += to_string(row.rule);
        for (int a = 0; a < 4; ++a) out += "," + fixed(row.fraction(a), 4);
        out += "," + std::to_string(row.instances) + "\n";
    }
    return out;
}

std::string axiom_table_markdown(std::span<const AxiomRow> rows)
{
    std::vector<std::vector<std::string>> cells;
    cells.push_back({"rule", "priceability", "EJR", "PJR", "JR"});
    for (const auto& row : rows) {
        std::vector<std::string> line{std::string(display_name(row.rule))};
        for (int a = 0; a < 4; ++a) line.push_back(fixed(row.fraction(a), 3));
        cells.push_back(std::move(line));
    }
    std::vector<std::size_t> width(5, 0);
    for (const auto& line : cells) {
        for (std::size_t c = 0; c < line.size(); ++c) width[c] = std::max(width[c], line[c].size());
    }
    std::string out;
    auto emit = [&](const std::vector<std::string>& line) {
        out += "|";
        for (std::size_t c = 0; c < line.size(); ++c) {
            const std::string pad(width[c] - line[c].size(), ' ');
            out += " " + (c == 0 ? line[c] + pad : pad + line[c]) + " |";
        }
        out += "\n";
    };
    emit(cells[0]);
    out += "|";
    for (std::size_t c = 0; c < width.size(); ++c) {
        out += c == 0 ? " " + std::string(width[c], '-') + " |" : " " + std::string(width[c] - 1, '-') + ": |";
    }
    out += "\n";
    for (std::size_t i = 1; i < cells.size(); ++i) emit(cells[i]);
    return out;
}

namespace {

bool at_least(Stage stage, Stage want) { return static_cast<int>(stage) >= static_cast<int>(want); }

bool wants_axioms(Stage stage) { return stage == Stage::Axioms || stage == Stage::Report; }

bool wants_distances(Stage stage) { return at_least(stage, Stage::Distances) && stage != Stage::Axioms; }

std::vector<PabulibInstance> load_pool(const CultureSpec& spec)
{
    std::vector<PabulibInstance> pool;
    for (const auto& src : spec.sources) {
        auto inst = load_pabulib(src);
        if (meets_sampling_filter(inst) && static_cast<int>(inst.project_ids.size()) >= spec.m &&
            static_cast<int>(inst.ballots.size()) >= spec.n) {
            pool.push_back(std::move(inst));
        }
    }
    if (pool.empty()) {
        throw std::runtime_error("culture '" + spec.name + "': no Pabulib file passes the sampling filter");
    }
    return pool;
}

InstanceResult process_instance(const ExperimentConfig& cfg, const CultureSpec& spec, int index,
                                std::span<const PabulibInstance> pool, Stage stage)
{
    InstanceResult res{sample_instance(spec, index, pool), {}, {}, {}, false};
    if (!at_least(stage, Stage::Solve)) return res;
    const Election& e = res.election;
    RuleCommittees named;
    for (auto id : cfg.rules) {
        res.committees.push_back(run_rule(id, e, cfg.k));
        named.emplace_back(id, res.committees.back());
    }
    if (wants_distances(stage)) {
        res.distances = normalize_by_observed_max(pairwise_rule_distances(e, named, cfg.metric));
    }
    if (wants_axioms(stage)) {
        for (const auto& w : res.committees) {
            const auto p = axiom_profile(e, w);
            res.axioms.push_back({p.priceable.holds, p.ejr.holds, p.pjr.holds, p.jr.holds});
        }
        res.cohesive_pair = cfg.k >= 2 && has_cohesive_group(e, cfg.k, 2);
    }
    return res;
}

} // namespace

ExperimentResults run_experiment(const ExperimentConfig& cfg, Stage stage, const ProgressFn& progress)
{
    cfg.validate();
    ExperimentResults results;
    results.config = cfg;
    results.stage = stage;

    std::vector<std::vector<PabulibInstance>> pools(cfg.cultures.size());
    struct Task {
        std::size_t culture;
        int index;
    };
    std::vector<Task> tasks;
    for (std::size_t c = 0; c < cfg.cultures.size(); ++c) {
        CultureResult cr;
        cr.spec = cfg.cultures[c];
        cr.spec.seed = cfg.seed_for(c);
        cr.instances.resize(cr.spec.count, InstanceResult{Election(1, std::vector<std::vector<int>>(1)), {}, {}, {}, false});
        results.cultures.push_back(std::move(cr));
        if (cfg.cultures[c].kind == CultureKind::Pabulib) pools[c] = load_pool(cfg.cultures[c]);
        for (int i = 0; i < cfg.cultures[c].count; ++i) tasks.push_back({c, i});
    }

    std::vector<std::exception_ptr> errors(tasks.size());
    std::vector<int> done(cfg.cultures.size(), 0);
    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::mutex progress_mutex;
    auto worker = [&] {
        while (!failed.load()) {
            const std::size_t t = next.fetch_add(1);
            if (t >= tasks.size()) return;
            auto& cr = results.cultures[tasks[t].culture];
            try {
                cr.instances[tasks[t].index] =
                    process_instance(cfg, cr.spec, tasks[t].index, pools[tasks[t].culture], stage);
            } catch (...) {
                errors[t] = std::current_exception();
                failed.store(true);
                return;
            }
            if (progress) {
                std::lock_guard lock(progress_mutex);
                progress(cr.spec.name, ++done[tasks[t].culture], cr.spec.count);
            }
        }
    };
    const int workers = std::min<int>(cfg.jobs, static_cast<int>(std::max<std::size_t>(tasks.size(), 1)));
    if (workers <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    for (std::size_t t = 0; t < tasks.size(); ++t) {
        if (!errors[t]) continue;
        const auto& spec = results.cultures[tasks[t].culture].spec;
        const auto seed = instance_seed(*spec.seed, static_cast<std::uint64_t>(tasks[t].index));
        std::string replay;
        try {
            replay = election_to_json(sample_instance(spec, tasks[t].index, pools[tasks[t].culture]));
        } catch (...) {
            replay = "(sampling failed)";
        }
        std::string what = "unknown error";
        try {
            std::rethrow_exception(errors[t]);
        } catch (const std::exception& ex) {
            what = ex.what();
        } catch (...) {
        }
        throw std::runtime_error("culture '" + spec.name + "' instance " + std::to_string(tasks[t].index) +
                                 " (seed " + std::to_string(seed) + ") failed: " + what + "\nelection: " + replay);
    }

    // Aggregation runs on one thread in instance order.
    std::vector<int> highlight;
    for (auto id : cfg.highlight) {
        for (std::size_t r = 0; r < cfg.rules.size(); ++r) {
            if (cfg.rules[r] == id) highlight.push_back(static_cast<int>(r));
        }
    }
    std::vector<std::string> labels;
    for (auto id : cfg.rules) labels.emplace_back(display_name(id));
    for (auto& cr : results.cultures) {
        if (wants_distances(stage)) {
            std::vector<RuleMatrix> mats;
            for (const auto& inst : cr.instances) mats.push_back(inst.distances);
            cr.averaged = average_matrices(mats);
        }
        if (wants_axioms(stage)) {
            std::vector<std::vector<std::array<bool, 4>>> verdicts;
            for (const auto& inst : cr.instances) {
                verdicts.push_back(inst.axioms);
                cr.cohesive_pair_count += inst.cohesive_pair ? 1 : 0;
            }
            cr.axiom_table = axiom_fraction_table(cfg.rules, verdicts);
        }
        if (at_least(stage, Stage::Map) && wants_distances(stage)) {
            cr.embedding = embed_stress_min(cr.averaged, mix64(*cr.spec.seed), cfg.embedding_iterations);
            MapStyle style;
            style.title = cr.spec.name;
            style.highlight = highlight;
            cr.svg = render_map(cr.embedding, labels, style);
        }
    }
    return results;
}

namespace {

void write_file(const fs::path& path, const std::string& content)
{
    fs::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << content;
}

} // namespace

std::string render_report(const ExperimentResults& results)
{
    const auto& cfg = results.config;
    std::ostringstream out;
    out << "# Rule atlas report\n\n";
    out << "- master seed: " << cfg.master_seed << "\n";
    out << "- committee size k: " << cfg.k << "\n";
    out << "- candidate metric: " << to_string(cfg.metric) << "\n";
    out << "- rules: " << cfg.rules.size() << "\n\n";
    for (const auto& cr : results.cultures) {
        const auto& s = cr.spec;
        out << "## " << s.name << "\n\n";
        out << "- kind: " << to_string(s.kind) << ", m = " << s.m << ", n = " << s.n << ", instances = " << s.count
            << ", seed = " << *s.seed << "\n";
        if (wants_axioms(results.stage)) {
            out << "- instances with a 2-cohesive group: " << cr.cohesive_pair_count << " of " << s.count << "\n\n";
            out << "Fraction of instances satisfying each axiom:\n\n" << axiom_table_markdown(cr.axiom_table) << "\n";
        }
        if (at_least(results.stage, Stage::Map) && wants_distances(results.stage)) {
            out << "Map: `map/" << s.name << ".svg` (stress " << fixed(cr.embedding.stress, 6) << " after "
                << cr.embedding.iterations << " iterations). Distance matrix: `matrices/" << s.name << ".csv`.\n\n";
        }
    }
    return out.str();
}

void write_results(const ExperimentResults& results, const fs::path& dir)
{
    const auto& cfg = results.config;
    fs::create_directories(dir);
    write_file(dir / "config.json", config_to_json(cfg));
    {
        std::ostringstream el;
        for (const auto& cr : results.cultures) {
            for (std::size_t i = 0; i < cr.instances.size(); ++i) {
                nlohmann::ordered_json j;
                j["culture"] = cr.spec.name;
                j["instance"] = i;
                const auto body = detail::election_to_json_object(cr.instances[i].election);
                for (auto& [key, value] : body.items()) {
                    j[key] = value;
                }
                el << j.dump() << "\n";
            }
        }
        write_file(dir / "elections.jsonl", el.str());
    }
    if (at_least(results.stage, Stage::Solve)) {
        std::ostringstream cm;
        for (const auto& cr : results.cultures) {
            for (std::size_t i = 0; i < cr.instances.size(); ++i) {
                for (std::size_t r = 0; r < cfg.rules.size(); ++r) {
                    nlohmann::ordered_json j;
                    j["culture"] = cr.spec.name;
                    j["instance"] = i;
                    j["rule"] = std::string(to_string(cfg.rules[r]));
                    j["members"] = cr.instances[i].committees[r].members();
                    cm << j.dump() << "\n";
                }
            }
        }
        write_file(dir / "committees.jsonl", cm.str());
    }
    for (const auto& cr : results.cultures) {
        if (wants_distances(results.stage)) {
            std::ostringstream csv;
            write_distance_csv(csv, cr.averaged);
            write_file(dir / "matrices" / (cr.spec.name + ".csv"), csv.str());
        }
        if (wants_axioms(results.stage)) {
            write_file(dir / "axioms" / (cr.spec.name + ".csv"), axiom_table_csv(cr.axiom_table));
            write_file(dir / "axioms" / (cr.spec.name + ".md"), axiom_table_markdown(cr.axiom_table));
        }
        if (at_least(results.stage, Stage::Map) && wants_distances(results.stage)) {
            write_file(dir / "map" / (cr.spec.name + ".svg"), cr.svg);
            std::string coords = "rule,x,y\n";
            for (std::size_t r = 0; r < cr.embedding.rules.size(); ++r) {
                coords += std::string(to_string(cr.embedding.rules[r])) + "," +
                          fixed(cr.embedding.coordinates[r][0], 6) + "," + fixed(cr.embedding.coordinates[r][1], 6) +
                          "\n";
            }
            write_file(dir / "map" / (cr.spec.name + ".csv"), coords);
        }
    }
    if (results.stage == Stage::Report) write_file(dir / "report.md", render_report(results));
}

} // namespace atlas
