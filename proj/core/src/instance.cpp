#include "binweaver/instance.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

#include "binweaver/errors.hpp"
#include "json.hpp"

namespace binweaver {

namespace {

std::uint64_t checked_sum(const std::vector<std::uint64_t>& xs, const char* what, int line) {
    std::uint64_t total = 0;
    for (std::uint64_t x : xs) {
        if (__builtin_add_overflow(total, x, &total))
            throw parse_error(line, std::string("sum of ") + what + " overflows 64 bits");
    }
    return total;
}

void validate(Instance& inst, int line) {
    if (inst.n < 1 || inst.n > kMaxItems)
        throw parse_error(line, "item count must be in [1, " + std::to_string(kMaxItems) + "], got " +
                                    std::to_string(inst.n));
    if (inst.m < 1 || inst.m > kMaxBins)
        throw parse_error(line, "bin count must be in [1, " + std::to_string(kMaxBins) + "], got " +
                                    std::to_string(inst.m));
    if (static_cast<int>(inst.weights.size()) != inst.n)
        throw parse_error(line, "expected " + std::to_string(inst.n) + " weights, found " +
                                    std::to_string(inst.weights.size()));
    if (static_cast<int>(inst.capacities.size()) != inst.m)
        throw parse_error(line, "expected " + std::to_string(inst.m) + " capacities, found " +
                                    std::to_string(inst.capacities.size()));
    checked_sum(inst.weights, "weights", line);
    checked_sum(inst.capacities, "capacities", line);
}

std::vector<std::uint64_t> parse_u64_line(const std::string& line, int line_no) {
    std::vector<std::uint64_t> out;
    const char* p = line.data();
    const char* end = p + line.size();
    while (p != end) {
        while (p != end && (*p == ' ' || *p == '\t' || *p == '\r')) ++p;
        if (p == end) break;
        std::uint64_t v = 0;
        auto [next, ec] = std::from_chars(p, end, v);
        if (ec != std::errc{} || (next != end && *next != ' ' && *next != '\t' && *next != '\r'))
            throw parse_error(line_no, "expected a non-negative integer near '" +
                                           std::string(p, std::min<std::size_t>(end - p, 16)) + "'");
        out.push_back(v);
        p = next;
    }
    return out;
}

Instance parse_json_instance(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw parse_error(0, std::string("invalid JSON: ") + e.what());
    }
    if (!j.contains("weights") || !j.contains("capacities"))
        throw parse_error(0, "JSON instance needs 'weights' and 'capacities' arrays");
    Instance inst;
    for (const auto& field : {"weights", "capacities"}) {
        const auto& arr = j.at(field);
        if (!arr.is_array()) throw parse_error(0, std::string("'") + field + "' must be an array");
        for (const auto& v : arr) {
            if (!v.is_number_unsigned())
                throw parse_error(0, std::string("'") + field + "' entries must be non-negative integers");
            (field == std::string("weights") ? inst.weights : inst.capacities)
                .push_back(v.get<std::uint64_t>());
        }
    }
    inst.n = static_cast<int>(inst.weights.size());
    inst.m = static_cast<int>(inst.capacities.size());
    validate(inst, 0);
    return inst;
}

}  // namespace

std::uint64_t Instance::total_weight() const {
    std::uint64_t t = 0;
    for (auto w : weights) t += w;
    return t;
}

std::uint64_t Instance::total_capacity() const {
    std::uint64_t t = 0;
    for (auto c : capacities) t += c;
    return t;
}

std::uint64_t Instance::weight_of(item_set x) const {
    std::uint64_t t = 0;
    while (x) {
        int i = std::countr_zero(x);
        t += weights[i];
        x &= x - 1;
    }
    return t;
}

Instance parse_instance(const std::string& text) {
    auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '{') return parse_json_instance(text);

    Instance inst;
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    int stage = 0;  // 0: header, 1: weights, 2: capacities, 3: done
    while (std::getline(in, line)) {
        ++line_no;
        auto pos = line.find_first_not_of(" \t\r");
        if (pos == std::string::npos || line[pos] == '#') continue;
        auto fields = parse_u64_line(line, line_no);
        switch (stage) {
            case 0: {
                if (fields.size() != 2)
                    throw parse_error(line_no, "header must be 'n m', found " +
                                                   std::to_string(fields.size()) + " fields");
                if (fields[0] > kMaxItems)
                    throw parse_error(line_no, "item count out of range");
                if (fields[1] > kMaxBins)
                    throw parse_error(line_no, "bin count out of range");
                inst.n = static_cast<int>(fields[0]);
                inst.m = static_cast<int>(fields[1]);
                break;
            }
            case 1:
                if (static_cast<int>(fields.size()) != inst.n)
                    throw parse_error(line_no, "expected " + std::to_string(inst.n) +
                                                   " weights, found " + std::to_string(fields.size()));
                inst.weights = std::move(fields);
                break;
            case 2:
                if (static_cast<int>(fields.size()) != inst.m)
                    throw parse_error(line_no, "expected " + std::to_string(inst.m) +
                                                   " capacities, found " + std::to_string(fields.size()));
                inst.capacities = std::move(fields);
                break;
            default:
                throw parse_error(line_no, "unexpected extra line");
        }
        ++stage;
    }
    if (stage < 3) throw parse_error(line_no, "incomplete instance (need header, weights, capacities)");
    validate(inst, line_no);
    return inst;
}

std::string serialize_instance(const Instance& inst) {
    std::ostringstream out;
    out << inst.n << ' ' << inst.m << '\n';
    for (int i = 0; i < inst.n; ++i) out << inst.weights[i] << (i + 1 == inst.n ? '\n' : ' ');
    for (int j = 0; j < inst.m; ++j) out << inst.capacities[j] << (j + 1 == inst.m ? '\n' : ' ');
    return out.str();
}

item_set Solution::bin_items(int bin) const {
    item_set x = 0;
    for (std::size_t i = 0; i < assignment.size(); ++i)
        if (assignment[i] == bin) x |= item_set{1} << i;
    return x;
}

bool verify_solution(const Instance& inst, const Solution& sol) {
    if (static_cast<int>(sol.assignment.size()) != inst.n)
        throw contract_error("assignment length does not match item count");
    std::vector<std::uint64_t> load(inst.m, 0);
    for (int i = 0; i < inst.n; ++i) {
        int j = sol.assignment[i];
        if (j < 0 || j >= inst.m) throw contract_error("bin index out of range");
        load[j] += inst.weights[i];
    }
    for (int j = 0; j < inst.m; ++j)
        if (load[j] > inst.capacities[j]) return false;
    return true;
}

bool is_alpha_balanced(const Instance& inst, const Solution& sol, const Rational& alpha) {
    if (2 * alpha.num > alpha.den) throw contract_error("alpha must be in [0, 1/2]");
    std::vector<int> size(inst.m, 0);
    for (int i = 0; i < inst.n; ++i) ++size[sol.assignment[i]];

    // Unbalanced iff some bin set T and bin j not in T satisfy
    // |S^T| < (1/2 - alpha) n  and  |S^T| + |S_j| > (1/2 + alpha) n.
    for (std::uint32_t t = 0; t < (1u << inst.m); ++t) {
        int prefix = 0;
        for (int j = 0; j < inst.m; ++j)
            if (t & (1u << j)) prefix += size[j];
        if (cmp_half_minus(prefix, alpha, inst.n) >= 0) continue;
        for (int j = 0; j < inst.m; ++j) {
            if (t & (1u << j)) continue;
            if (cmp_half_plus(prefix + size[j], alpha, inst.n) > 0) return false;
        }
    }
    return true;
}

SlackReport classify_slack(const Instance& inst, const Solution& sol, int theta, int l) {
    if (theta < 0 || theta > l) throw contract_error("theta must be in [0, l]");
    std::vector<std::uint64_t> load(inst.m, 0);
    for (int i = 0; i < inst.n; ++i) load[sol.assignment[i]] += inst.weights[i];

    const unsigned __int128 threshold =
        static_cast<unsigned __int128>(inst.n) << (l - theta);
    SlackReport report;
    report.bins.resize(inst.m);
    for (int j = 0; j < inst.m; ++j) {
        if (load[j] > inst.capacities[j])
            throw contract_error("solution infeasible at bin " + std::to_string(j));
        report.bins[j].slack = inst.capacities[j] - load[j];
        report.bins[j].large = static_cast<unsigned __int128>(report.bins[j].slack) >= threshold;
    }
    for (int i = 0; i < inst.n; ++i) {
        if (report.bins[sol.assignment[i]].large)
            ++report.large_slack_items;
        else
            ++report.small_slack_items;
    }
    return report;
}

const char* algo_name(Algo a) {
    switch (a) {
        case Algo::bruteforce: return "bruteforce";
        case Algo::zeta_mobius: return "zeta";
        case Algo::distinct_sums_dp: return "dp";
        case Algo::unbalanced_sampler: return "caseA";
        case Algo::balanced_small_slack: return "caseB";
        case Algo::balanced_large_slack: return "caseC";
        case Algo::master: return "master";
    }
    return "?";
}

const char* answer_name(Answer a) {
    switch (a) {
        case Answer::yes: return "yes";
        case Answer::no: return "no";
        case Answer::unknown: return "unknown";
    }
    return "?";
}

Rational parse_rational(const std::string& text) {
    auto slash = text.find('/');
    try {
        if (slash != std::string::npos) {
            std::int64_t p = std::stoll(text.substr(0, slash));
            std::int64_t q = std::stoll(text.substr(slash + 1));
            return Rational(p, q);
        }
        auto dot = text.find('.');
        if (dot == std::string::npos) return Rational(std::stoll(text), 1);
        std::string digits = text.substr(0, dot) + text.substr(dot + 1);
        int frac_len = static_cast<int>(text.size() - dot - 1);
        if (frac_len > 18) throw contract_error("too many decimal places in '" + text + "'");
        std::int64_t den = 1;
        for (int i = 0; i < frac_len; ++i) den *= 10;
        return Rational(digits.empty() ? 0 : std::stoll(digits), den);
    } catch (const std::invalid_argument&) {
        throw contract_error("cannot parse rational '" + text + "'");
    } catch (const std::out_of_range&) {
        throw contract_error("rational out of range '" + text + "'");
    }
}

}  // namespace binweaver
