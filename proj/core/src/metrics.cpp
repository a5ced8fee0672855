#include "atlas/metrics.hpp"

#include <algorithm>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace atlas {

Rational committee_distance(const Election& e, CandidateMetric metric, const Committee& x, const Committee& y)
{
    if (x.size() != y.size()) {
        throw std::invalid_argument("committee_distance needs equal-size committees");
    }
    x.validate_for(e);
    y.validate_for(e);
    if (x == y) {
        return Rational(0);
    }
    const int k = x.size();
    std::vector<std::vector<Rational>> w(k, std::vector<Rational>(k));
    for (int i = 0; i < k; ++i) {
        for (int j = 0; j < k; ++j) {
            w[i][j] = candidate_distance(e, metric, x.members()[i], y.members()[j]);
        }
    }
    return min_weight_perfect_matching(MatchingInstance(std::move(w))).weight;
}

RuleMatrix pairwise_rule_distances(const Election& e, const RuleCommittees& committees, CandidateMetric metric)
{
    RuleMatrix out;
    const int r = static_cast<int>(committees.size());
    for (const auto& [id, w] : committees) {
        out.rules.push_back(id);
        if (w.size() != committees.front().second.size()) {
            throw std::invalid_argument("pairwise_rule_distances: committees differ in size");
        }
    }
    out.values.assign(r, std::vector<Rational>(r, Rational(0)));
    for (int a = 0; a < r; ++a) {
        for (int b = a + 1; b < r; ++b) {
            Rational d = committee_distance(e, metric, committees[a].second, committees[b].second);
            out.values[a][b] = d;
            out.values[b][a] = d;
        }
    }
    return out;
}

RuleMatrix normalize_by_observed_max(RuleMatrix mat)
{
    Rational top(0);
    for (const auto& row : mat.values) {
        for (const auto& v : row) top = std::max(top, v);
    }
    if (top == 0) {
        return mat;
    }
    for (auto& row : mat.values) {
        for (auto& v : row) v /= top;
    }
    return mat;
}

int DistanceMatrix::index_of(RuleId id) const
{
    auto it = std::find(rules.begin(), rules.end(), id);
    if (it == rules.end()) {
        throw std::out_of_range("rule not present in matrix: " + std::string(to_string(id)));
    }
    return static_cast<int>(it - rules.begin());
}

DistanceMatrix average_matrices(std::span<const RuleMatrix> mats)
{
    if (mats.empty()) {
        throw std::invalid_argument("average_matrices needs at least one matrix");
    }
    const auto& rules = mats.front().rules;
    const int r = static_cast<int>(rules.size());
    std::vector<std::vector<Rational>> sum(r, std::vector<Rational>(r, Rational(0)));
    for (const auto& m : mats) {
        if (m.rules != rules) {
            throw std::invalid_argument("average_matrices: rule orderings differ");
        }
        for (int a = 0; a < r; ++a) {
            for (int b = 0; b < r; ++b) sum[a][b] += m.values[a][b];
        }
    }
    DistanceMatrix out;
    out.rules = rules;
    out.values.assign(r, std::vector<double>(r, 0.0));
    const auto count = static_cast<long>(mats.size());
    for (int a = 0; a < r; ++a) {
        for (int b = 0; b < r; ++b) out.values[a][b] = to_double(sum[a][b] / count);
    }
    return out;
}

void write_distance_csv(std::ostream& out, const DistanceMatrix& mat)
{
    out << "rule";
    for (RuleId id : mat.rules) out << ',' << to_string(id);
    out << '\n';
    char buf[64];
    for (int a = 0; a < mat.size(); ++a) {
        out << to_string(mat.rules[a]);
        for (int b = 0; b < mat.size(); ++b) {
            std::snprintf(buf, sizeof buf, "%.6f", mat.values[a][b]);
            out << ',' << buf;
        }
        out << '\n';
    }
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line)
{
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
        if (!cell.empty() && cell.back() == '\r') cell.pop_back();
        cells.push_back(cell);
    }
    return cells;
}

} // namespace

DistanceMatrix read_distance_csv(std::istream& in)
{
    std::string line;
    if (!std::getline(in, line)) {
        throw std::invalid_argument("distance CSV: missing header");
    }
    auto header = split_csv_line(line);
    if (header.empty() || header.front() != "rule") {
        throw std::invalid_argument("distance CSV: header must start with \"rule\"");
    }
    DistanceMatrix mat;
    for (std::size_t i = 1; i < header.size(); ++i) mat.rules.push_back(parse_rule(header[i]));
    const auto r = mat.rules.size();
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        auto cells = split_csv_line(line);
        if (cells.size() != r + 1) {
            throw std::invalid_argument("distance CSV: row width mismatch");
        }
        if (parse_rule(cells[0]) != mat.rules[mat.values.size()]) {
            throw std::invalid_argument("distance CSV: row order differs from header");
        }
        std::vector<double> row;
        for (std::size_t i = 1; i < cells.size(); ++i) row.push_back(std::stod(cells[i]));
        mat.values.push_back(std::move(row));
    }
    if (mat.values.size() != r) {
        throw std::invalid_argument("distance CSV: row count mismatch");
    }
    return mat;
}

} // namespace atlas
