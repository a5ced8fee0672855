#include "atlas/pabulib.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <unordered_set>

namespace atlas {

int PabulibTable::column(std::string_view name) const
{
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (header[i] == name) return static_cast<int>(i);
    }
    return -1;
}

std::string PabulibInstance::meta_value(std::string_view key) const
{
    for (const auto& row : meta.rows) {
        if (!row.empty() && row[0] == key) return row.size() > 1 ? row[1] : "";
    }
    return "";
}

double PabulibInstance::mean_approvals() const
{
    if (ballots.empty()) return 0.0;
    std::size_t total = 0;
    for (const auto& b : ballots) total += b.size();
    return static_cast<double>(total) / static_cast<double>(ballots.size());
}

namespace {

std::string trim(std::string_view s)
{
    auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string_view::npos) return "";
    auto e = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(b, e - b + 1));
}

// Semicolon-separated fields with optional double quoting ("" escapes ").
std::vector<std::string> split_fields(std::string_view line, int line_no)
{
    std::vector<std::string> out;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        char ch = line[i];
        if (quoted) {
            if (ch == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    cur += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                cur += ch;
            }
        } else if (ch == '"') {
            quoted = true;
        } else if (ch == ';') {
            out.push_back(std::move(cur));
            cur.clear();
        } else {
            cur += ch;
        }
    }
    if (quoted) {
        throw PabulibParseError(line_no, "unterminated quoted field");
    }
    if (!cur.empty() && cur.back() == '\r') cur.pop_back();
    out.push_back(std::move(cur));
    return out;
}

std::string quote_field(const std::string& field)
{
    if (field.find_first_of(";\"\n") == std::string::npos) return field;
    std::string out = "\"";
    for (char ch : field) {
        if (ch == '"') out += '"';
        out += ch;
    }
    return out + '"';
}

std::vector<std::string> split_vote(const std::string& field)
{
    std::vector<std::string> ids;
    std::stringstream ss(field);
    std::string id;
    while (std::getline(ss, id, ',')) {
        id = trim(id);
        if (!id.empty()) ids.push_back(id);
    }
    return ids;
}

enum class Section { None, Meta, Projects, Votes };

} // namespace

PabulibInstance parse_pabulib(std::string_view text)
{
    PabulibInstance inst;
    Section section = Section::None;
    PabulibTable* table = nullptr;
    bool expect_header = false;
    std::vector<int> vote_lines;

    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        auto nl = text.find('\n', pos);
        auto raw = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
        pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        ++line_no;
        std::string line = trim(raw);
        if (line.empty()) continue;

        std::string upper = line;
        std::transform(upper.begin(), upper.end(), upper.begin(), [](unsigned char ch) { return std::toupper(ch); });
        if (upper == "META" || upper == "PROJECTS" || upper == "VOTES") {
            section = upper == "META" ? Section::Meta : upper == "PROJECTS" ? Section::Projects : Section::Votes;
            table = section == Section::Meta ? &inst.meta : section == Section::Projects ? &inst.projects : &inst.votes;
            if (!table->header.empty()) {
                throw PabulibParseError(line_no, "duplicate section " + upper);
            }
            expect_header = true;
            continue;
        }
        const bool looks_like_section = line.find(';') == std::string::npos &&
            std::all_of(line.begin(), line.end(), [](unsigned char ch) { return std::isupper(ch) || ch == '_'; });
        if (looks_like_section) {
            throw PabulibParseError(line_no, "unknown section " + line);
        }
        if (section == Section::None) {
            throw PabulibParseError(line_no, "content before the first section: " + line);
        }
        auto fields = split_fields(line, line_no);
        if (expect_header) {
            for (auto& f : fields) f = trim(f);
            table->header = std::move(fields);
            expect_header = false;
            if (section == Section::Projects && table->column("project_id") < 0) {
                throw PabulibParseError(line_no, "PROJECTS header lacks project_id");
            }
            if (section == Section::Votes && (table->column("voter_id") < 0 || table->column("vote") < 0)) {
                throw PabulibParseError(line_no, "VOTES header lacks voter_id or vote");
            }
            continue;
        }
        if (fields.size() != table->header.size()) {
            // A lone unknown word in place of a row usually means a bad section name.
            if (fields.size() == 1 && table->header.size() > 1) {
                throw PabulibParseError(line_no, "unknown section or malformed row: " + line);
            }
            throw PabulibParseError(line_no, "expected " + std::to_string(table->header.size()) +
                                                 " fields, found " + std::to_string(fields.size()));
        }
        table->rows.push_back(std::move(fields));
        if (section == Section::Votes) vote_lines.push_back(line_no);
    }
    if (inst.projects.header.empty()) {
        throw PabulibParseError(line_no, "missing PROJECTS section");
    }
    if (inst.votes.header.empty()) {
        throw PabulibParseError(line_no, "missing VOTES section");
    }

    const int id_col = inst.projects.column("project_id");
    std::unordered_set<std::string> declared;
    for (const auto& row : inst.projects.rows) {
        inst.project_ids.push_back(trim(row[id_col]));
        declared.insert(inst.project_ids.back());
    }
    const int vote_col = inst.votes.column("vote");
    for (std::size_t i = 0; i < inst.votes.rows.size(); ++i) {
        auto ids = split_vote(inst.votes.rows[i][vote_col]);
        std::unordered_set<std::string> seen;
        std::vector<std::string> ballot;
        for (auto& id : ids) {
            if (!declared.count(id)) {
                throw PabulibParseError(vote_lines[i], "vote references undeclared project " + id);
            }
            if (seen.insert(id).second) ballot.push_back(std::move(id));
        }
        inst.ballots.push_back(std::move(ballot));
    }
    return inst;
}

PabulibInstance load_pabulib(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot open " + path.string());
    }
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_pabulib(ss.str());
}

std::string serialize_pabulib(const PabulibInstance& instance)
{
    std::ostringstream out;
    auto emit = [&](const char* name, const PabulibTable& t) {
        out << name << '\n';
        auto row_out = [&](const std::vector<std::string>& row) {
            for (std::size_t i = 0; i < row.size(); ++i) out << (i ? ";" : "") << quote_field(row[i]);
            out << '\n';
        };
        row_out(t.header);
        for (const auto& r : t.rows) row_out(r);
    };
    if (!instance.meta.header.empty()) emit("META", instance.meta);
    emit("PROJECTS", instance.projects);
    emit("VOTES", instance.votes);
    return out.str();
}

bool meets_sampling_filter(const PabulibInstance& instance, int min_projects, int min_voters, double min_mean)
{
    return static_cast<int>(instance.project_ids.size()) >= min_projects &&
           static_cast<int>(instance.ballots.size()) >= min_voters && instance.mean_approvals() >= min_mean;
}

} // namespace atlas
