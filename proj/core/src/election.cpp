#include "atlas/election.hpp"

#include <algorithm>
#include <iostream>
#include <mutex>
#include <sstream>
#include <stdexcept>

#include "json_io.hpp"

namespace atlas {

std::string to_string(const Rational& r) { return r.str(); }

Rational parse_rational(std::string_view text)
{
    std::string s(text);
    if (s.empty()) {
        throw std::invalid_argument("empty rational literal");
    }
    auto dot = s.find('.');
    if (dot == std::string::npos) {
        auto slash = s.find('/');
        auto is_int = [](const std::string& t) {
            std::size_t i = (!t.empty() && (t[0] == '-' || t[0] == '+')) ? 1 : 0;
            return i < t.size() && t.find_first_not_of("0123456789", i) == std::string::npos;
        };
        std::string num = s.substr(0, slash);
        std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
        if (!is_int(num) || !is_int(den)) {
            throw std::invalid_argument("malformed rational literal: " + s);
        }
        if (num[0] == '+') num.erase(0, 1);
        if (den[0] == '+') den.erase(0, 1);
        for (auto* t : {&num, &den}) {
            const std::size_t first = (*t)[0] == '-' ? 1 : 0;
            while (t->size() > first + 1 && (*t)[first] == '0') t->erase(first, 1);
        }
        BigInt d(den);
        if (d == 0) {
            throw std::invalid_argument("zero denominator: " + s);
        }
        return Rational(BigInt(num), d);
    }
    // Finite decimal: scale by the matching power of ten.
    std::string digits = s.substr(0, dot) + s.substr(dot + 1);
    auto frac_len = s.size() - dot - 1;
    if (digits.empty() || digits == "-" || digits == "+") {
        throw std::invalid_argument("malformed decimal literal: " + s);
    }
    for (std::size_t i = 0; i < digits.size(); ++i) {
        char ch = digits[i];
        bool sign = i == 0 && (ch == '-' || ch == '+');
        if (!sign && (ch < '0' || ch > '9')) {
            throw std::invalid_argument("malformed decimal literal: " + s);
        }
    }
    if (digits.front() == '+') {
        digits.erase(0, 1);
    }
    // GMP reads a leading zero as an octal prefix.
    const std::size_t first = digits.front() == '-' ? 1 : 0;
    const auto nonzero = digits.find_first_not_of('0', first);
    digits.erase(first, (nonzero == std::string::npos ? digits.size() - 1 : nonzero) - first);
    BigInt num(digits);
    BigInt den = 1;
    for (std::size_t i = 0; i < frac_len; ++i) {
        den *= 10;
    }
    return Rational(num, den);
}

BigInt ceil(const Rational& r)
{
    BigInt num = boost::multiprecision::numerator(r);
    BigInt den = boost::multiprecision::denominator(r);
    BigInt q = num / den; // truncates toward zero
    if (q * den < num) {
        q += 1;
    }
    return q;
}

Election::Election(int m, std::vector<std::vector<int>> ballots, std::vector<std::string> labels)
    : m_(m), ballots_(std::move(ballots)), labels_(std::move(labels))
{
    if (m_ < 1) {
        throw std::invalid_argument("election needs at least one candidate");
    }
    if (ballots_.empty()) {
        throw std::invalid_argument("election needs at least one voter");
    }
    if (!labels_.empty() && static_cast<int>(labels_.size()) != m_) {
        throw std::invalid_argument("label table size must equal the candidate count");
    }
    const auto n = ballots_.size();
    supporters_.assign(m_, {});
    ballot_sets_.assign(n, CandidateSet(m_));
    approver_sets_.assign(m_, VoterSet(n));
    for (std::size_t v = 0; v < n; ++v) {
        auto& b = ballots_[v];
        std::sort(b.begin(), b.end());
        if (std::adjacent_find(b.begin(), b.end()) != b.end()) {
            throw std::invalid_argument("duplicate approval in ballot of voter " + std::to_string(v));
        }
        for (int c : b) {
            if (c < 0 || c >= m_) {
                throw std::invalid_argument("approval index " + std::to_string(c) +
                                            " out of range for m=" + std::to_string(m_));
            }
            ballot_sets_[v].set(c);
            approver_sets_[c].set(v);
            supporters_[c].push_back(static_cast<int>(v));
        }
    }
}

const VoterSet& Election::approvers(int candidate) const
{
    if (candidate < 0 || candidate >= m_) {
        throw std::invalid_argument("candidate index out of range: " + std::to_string(candidate));
    }
    return approver_sets_[candidate];
}

std::string Election::label(int candidate) const
{
    if (!labels_.empty()) {
        return labels_.at(candidate);
    }
    return "c" + std::to_string(candidate);
}

Committee::Committee(std::vector<int> members) : members_(std::move(members))
{
    for (std::size_t i = 0; i < members_.size(); ++i) {
        if (members_[i] < 0) {
            throw std::invalid_argument("negative committee member");
        }
        if (i > 0 && members_[i - 1] >= members_[i]) {
            throw std::invalid_argument("committee members must be strictly increasing");
        }
    }
}

Committee Committee::from_unsorted(std::vector<int> members)
{
    std::sort(members.begin(), members.end());
    return Committee(std::move(members));
}

bool Committee::contains(int candidate) const
{
    return std::binary_search(members_.begin(), members_.end(), candidate);
}

void Committee::validate_for(const Election& e) const
{
    if (!members_.empty() && members_.back() >= e.num_candidates()) {
        throw std::invalid_argument("committee member out of range for election");
    }
}

CandidateSet Committee::as_set(int m) const
{
    CandidateSet s(m);
    for (int c : members_) {
        s.set(c);
    }
    return s;
}

std::ostream& operator<<(std::ostream& os, const Committee& w)
{
    os << '{';
    for (std::size_t i = 0; i < w.members().size(); ++i) {
        os << (i ? "," : "") << w.members()[i];
    }
    return os << '}';
}

std::string_view to_string(CandidateMetric metric)
{
    switch (metric) {
    case CandidateMetric::Discrete: return "discrete";
    case CandidateMetric::Hamming: return "hamming";
    case CandidateMetric::NormalizedHamming: return "nham";
    case CandidateMetric::Jaccard: return "jaccard";
    }
    return "?";
}

CandidateMetric parse_metric(std::string_view name)
{
    if (name == "discrete" || name == "disc") return CandidateMetric::Discrete;
    if (name == "hamming" || name == "ham") return CandidateMetric::Hamming;
    if (name == "nham" || name == "normalized_hamming") return CandidateMetric::NormalizedHamming;
    if (name == "jaccard" || name == "jac") return CandidateMetric::Jaccard;
    throw std::invalid_argument("unknown candidate metric: " + std::string(name));
}

VoterSet approvers(const Election& e, int c) { return e.approvers(c); }

namespace {

void warn_empty_jaccard()
{
    static std::once_flag once;
    std::call_once(once, [] {
        std::clog << "atlas: warning: Jaccard distance between two candidates with no "
                     "approvers taken as 0\n";
    });
}

} // namespace

Rational candidate_distance(const Election& e, CandidateMetric metric, int c, int d)
{
    const auto& ac = e.approvers(c);
    const auto& ad = e.approvers(d);
    if (c == d) {
        return Rational(0);
    }
    switch (metric) {
    case CandidateMetric::Discrete:
        return Rational(1);
    case CandidateMetric::Hamming:
        return Rational(static_cast<long>((ac ^ ad).count()));
    case CandidateMetric::NormalizedHamming:
        return make_rational(static_cast<std::int64_t>((ac ^ ad).count()), e.num_voters());
    case CandidateMetric::Jaccard: {
        auto uni = (ac | ad).count();
        if (uni == 0) {
            warn_empty_jaccard();
            return Rational(0);
        }
        return make_rational(static_cast<std::int64_t>((ac ^ ad).count()),
                             static_cast<std::int64_t>(uni));
    }
    }
    throw std::logic_error("unhandled metric");
}

namespace detail {

nlohmann::json election_to_json_object(const Election& e)
{
    nlohmann::json j;
    j["m"] = e.num_candidates();
    j["n"] = e.num_voters();
    auto approvals = nlohmann::json::array();
    for (int v = 0; v < e.num_voters(); ++v) {
        auto b = e.ballot(v);
        approvals.push_back(std::vector<int>(b.begin(), b.end()));
    }
    j["approvals"] = std::move(approvals);
    if (!e.labels().empty()) {
        j["labels"] = e.labels();
    }
    return j;
}

Election election_from_json_object(const nlohmann::json& j)
{
    if (!j.is_object() || !j.contains("m") || !j.contains("approvals")) {
        throw std::invalid_argument("election JSON needs \"m\" and \"approvals\"");
    }
    int m = j.at("m").get<int>();
    auto ballots = j.at("approvals").get<std::vector<std::vector<int>>>();
    if (j.contains("n") && j.at("n").get<std::size_t>() != ballots.size()) {
        throw std::invalid_argument("election JSON: \"n\" disagrees with approvals length");
    }
    std::vector<std::string> labels;
    if (j.contains("labels") && !j.at("labels").is_null()) {
        labels = j.at("labels").get<std::vector<std::string>>();
    }
    return Election(m, std::move(ballots), std::move(labels));
}

} // namespace detail

std::string election_to_json(const Election& e) { return detail::election_to_json_object(e).dump(); }

Election election_from_json(std::string_view line)
{
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& err) {
        throw std::invalid_argument(std::string("malformed election JSON: ") + err.what());
    }
    return detail::election_from_json_object(j);
}

std::vector<Election> read_elections_jsonl(std::istream& in)
{
    std::vector<Election> out;
    std::string line;
    while (std::getline(in, line)) {
        if (line.find_first_not_of(" \t\r") == std::string::npos) {
            continue;
        }
        out.push_back(election_from_json(line));
    }
    return out;
}

void write_elections_jsonl(std::ostream& out, std::span<const Election> elections)
{
    for (const auto& e : elections) {
        out << election_to_json(e) << '\n';
    }
}

} // namespace atlas
