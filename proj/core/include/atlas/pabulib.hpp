#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace atlas {

class PabulibParseError : public std::runtime_error {
public:
    PabulibParseError(int line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line)
    {
    }
    int line() const noexcept { return line_; }

private:
    int line_;
};

// One semicolon-separated table: a header row and data rows, kept verbatim.
struct PabulibTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    int column(std::string_view name) const; // -1 if absent

    friend bool operator==(const PabulibTable&, const PabulibTable&) = default;
};

struct PabulibInstance {
    PabulibTable meta;
    PabulibTable projects;
    PabulibTable votes;

    std::vector<std::string> project_ids; // in PROJECTS order
    // Per voter, approved project ids in file order. Ordinal ballots count
    // every ranked project as approved.
    std::vector<std::vector<std::string>> ballots;

    std::string meta_value(std::string_view key) const; // "" if absent
    double mean_approvals() const;

    friend bool operator==(const PabulibInstance&, const PabulibInstance&) = default;
};

// Throws PabulibParseError on unknown sections, missing required columns
// (project_id; voter_id and vote) or votes naming undeclared projects.
PabulibInstance parse_pabulib(std::string_view text);
PabulibInstance load_pabulib(const std::filesystem::path& path);

// Inverse of parse_pabulib up to quoting.
std::string serialize_pabulib(const PabulibInstance& instance);

// At least `min_projects` projects and `min_voters` voters, and at least
// `min_mean` approvals per voter on average.
bool meets_sampling_filter(const PabulibInstance& instance, int min_projects = 100, int min_voters = 100,
                           double min_mean = 3.0);

} // namespace atlas
