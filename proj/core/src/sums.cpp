#include "binweaver/sums.hpp"

#include <algorithm>
#include <bit>
#include <unordered_map>

#include <boost/multiprecision/cpp_int.hpp>

#include "binweaver/bits.hpp"

namespace binweaver {

namespace {

// One merge step: out = sums union (sums + x), both inputs sorted.
std::vector<std::uint64_t> merge_shifted(const std::vector<std::uint64_t>& sums, std::uint64_t x,
                                         std::uint64_t max_count) {
    if (x == 0) return sums;
    std::vector<std::uint64_t> out;
    out.reserve(std::min<std::uint64_t>(sums.size() * 2, max_count + 1));
    std::size_t a = 0, b = 0;
    while (a < sums.size() || b < sums.size()) {
        std::uint64_t va = a < sums.size() ? sums[a] : ~std::uint64_t{0};
        std::uint64_t vb = b < sums.size() ? sums[b] + x : ~std::uint64_t{0};
        std::uint64_t v = std::min(va, vb);
        if (a < sums.size() && sums[a] == v) ++a;
        if (b < sums.size() && sums[b] + x == v) ++b;
        out.push_back(v);
        if (out.size() > max_count) throw budget_error("distinct sums exceed the configured budget");
    }
    return out;
}

}  // namespace

std::vector<std::uint64_t> distinct_sums(std::span<const std::uint64_t> w,
                                         std::uint64_t max_count) {
    std::vector<std::uint64_t> sums{0};
    for (std::uint64_t x : w) sums = merge_shifted(sums, x, max_count);
    return sums;
}

std::uint64_t distinct_sums_count_capped(std::span<const std::uint64_t> w,
                                         std::uint64_t threshold) {
    if (threshold <= 1) return threshold;
    try {
        return distinct_sums(w, threshold).size();
    } catch (const budget_error&) {
        return threshold;
    }
}

BetaResult beta_exact(std::span<const std::uint64_t> w, std::uint64_t pair_budget) {
    if (w.size() > 30) throw budget_error("beta_exact is limited to n <= 30");
    std::unordered_map<std::uint64_t, std::uint64_t> count;
    count.reserve(1024);
    count[0] = 1;
    for (std::uint64_t x : w) {
        if (x == 0) {
            for (auto& kv : count) kv.second *= 2;
            continue;
        }
        // Merge via a snapshot: new[v] = old[v] + old[v - x].
        std::vector<std::pair<std::uint64_t, std::uint64_t>> snapshot(count.begin(), count.end());
        if (snapshot.size() * 2 > pair_budget) throw budget_error("beta map exceeds memory budget");
        for (const auto& [v, c] : snapshot) count[v + x] += c;
    }
    BetaResult best;
    for (const auto& [v, c] : count) {
        if (c > best.beta || (c == best.beta && v < best.witness_value)) {
            best.beta = c;
            best.witness_value = v;
        }
    }
    return best;
}

BetaResult beta_mitm(std::span<const std::uint64_t> w, std::uint64_t pair_budget) {
    if (w.size() > 42) throw budget_error("beta_mitm is limited to n <= 42");
    auto half_counts = [](std::span<const std::uint64_t> part) {
        std::unordered_map<std::uint64_t, std::uint64_t> count;
        count[0] = 1;
        for (std::uint64_t x : part) {
            if (x == 0) {
                for (auto& kv : count) kv.second *= 2;
                continue;
            }
            std::vector<std::pair<std::uint64_t, std::uint64_t>> snapshot(count.begin(), count.end());
            for (const auto& [v, c] : snapshot) count[v + x] += c;
        }
        return count;
    };
    auto left = half_counts(w.subspan(0, w.size() / 2));
    auto right = half_counts(w.subspan(w.size() / 2));
    if (static_cast<std::uint64_t>(left.size()) * right.size() > pair_budget)
        throw budget_error("beta_mitm half products exceed the pair budget");
    std::unordered_map<std::uint64_t, std::uint64_t> total;
    total.reserve(left.size() * 2);
    for (const auto& [va, ca] : left)
        for (const auto& [vb, cb] : right) total[va + vb] += ca * cb;
    BetaResult best;
    for (const auto& [v, c] : total) {
        if (c > best.beta || (c == best.beta && v < best.witness_value)) {
            best.beta = c;
            best.witness_value = v;
        }
    }
    return best;
}

BetaResult beta(std::span<const std::uint64_t> w, std::uint64_t pair_budget) {
    if (w.size() <= 30) return beta_exact(w, pair_budget);
    return beta_mitm(w, pair_budget);
}

int bit_length(std::span<const std::uint64_t> w) {
    std::uint64_t max = 0;
    for (std::uint64_t x : w) max = std::max(max, x);
    if (max == 0) return 1;  // log of zero has no value; all pruned levels are zero anyway
    return 1 + static_cast<int>(std::bit_width(max - 1));
}

PrunedWeights pruned(std::span<const std::uint64_t> w, int s) {
    PrunedWeights out;
    out.l = bit_length(w);
    if (s < 0 || s > out.l) throw contract_error("pruning level must be in [0, l]");
    out.s = s;
    out.values.reserve(w.size());
    const int shift = out.l - s;
    for (std::uint64_t x : w) out.values.push_back(shift >= 64 ? 0 : (x >> shift));
    return out;
}

std::uint64_t pow2_threshold(const Rational& delta, int n) {
    // ceil(2^(p*n/q)) without floating point: exact power when q | p*n, else
    // floor(the q-th root of 2^(p*n)) + 1 by binary search over uint64.
    const std::int64_t p = delta.num, q = delta.den;
    const std::int64_t e = p * n;
    if (e / q > 62) throw contract_error("2^(delta n) exceeds the uint64 range");
    if (e % q == 0) return std::uint64_t{1} << (e / q);
    const boost::multiprecision::cpp_int target = boost::multiprecision::cpp_int(1) << e;
    std::uint64_t lo = std::uint64_t{1} << (e / q);       // floor bound
    std::uint64_t hi = std::uint64_t{1} << (e / q + 1);   // strict upper bound
    while (lo + 1 < hi) {
        std::uint64_t mid = lo + (hi - lo) / 2;
        if (boost::multiprecision::pow(boost::multiprecision::cpp_int(mid), static_cast<unsigned>(q)) <= target)
            lo = mid;
        else
            hi = mid;
    }
    return lo + 1;
}

CriticalPruner critical_pruner(std::span<const std::uint64_t> w, std::uint64_t threshold) {
    const int l = bit_length(w);
    for (int s = 0; s <= l; ++s) {
        auto ws = pruned(w, s);
        std::uint64_t count = distinct_sums_count_capped(ws.values, threshold);
        if (count >= threshold) {
            // The cap makes `count` a lower bound; report the exact size.
            return CriticalPruner{s, static_cast<std::uint64_t>(distinct_sums(ws.values).size()),
                                  threshold};
        }
    }
    throw contract_error("no critical pruner: |w(2^[n])| is below the threshold");
}

CriticalPruner critical_pruner(std::span<const std::uint64_t> w, const Rational& delta) {
    if (delta.num == 0 || delta.num >= delta.den)
        throw contract_error("delta must lie in (0, 1)");
    return critical_pruner(w, pow2_threshold(delta, static_cast<int>(w.size())));
}

SmoothnessReport smoothness_check(std::span<const std::uint64_t> w) {
    if (w.size() > 24) throw budget_error("smoothness_check enumerates all levels, n <= 24");
    const int l = bit_length(w);
    const std::uint64_t n = w.size();
    SmoothnessReport report;
    report.level_counts.reserve(l + 1);
    for (int s = 0; s <= l; ++s)
        report.level_counts.push_back(distinct_sums(pruned(w, s).values).size());
    for (int s = 1; s <= l; ++s) {
        const std::uint64_t cur = report.level_counts[s];
        const std::uint64_t prev = report.level_counts[s - 1];
        // (1/3n) |w_s| <= |w_{s-1}|  and  |w_{s-1}| <= (3n/2) |w_s|, in integers.
        const bool lower_ok = 3 * n * prev >= cur;
        const bool upper_ok = 2 * prev <= 3 * n * cur;
        if (!lower_ok || !upper_ok) {
            report.ok = false;
            report.violations.push_back(s);
        }
    }
    return report;
}

}  // namespace binweaver
