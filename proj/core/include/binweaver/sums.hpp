#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "binweaver/rational.hpp"

namespace binweaver {

// Exact set of achievable subset sums, ascending. Incremental
// W_i = W_{i-1} union (W_{i-1} + w(i)); throws budget_error when the result
// would exceed max_count entries.
std::vector<std::uint64_t> distinct_sums(std::span<const std::uint64_t> w,
                                         std::uint64_t max_count = ~std::uint64_t{0});

// min(|w(2^[n])|, threshold), aborting the enumeration once threshold sums
// have been seen.
std::uint64_t distinct_sums_count_capped(std::span<const std::uint64_t> w,
                                         std::uint64_t threshold);

// beta(w) = max over v of #{X : w(X) = v}, with one witnessing value.
struct BetaResult {
    std::uint64_t beta = 0;
    std::uint64_t witness_value = 0;
};
// Hash-map DP over sums, memory O(|sums|); n <= 30.
BetaResult beta_exact(std::span<const std::uint64_t> w, std::uint64_t pair_budget = 100'000'000);
// Meet-in-the-middle variant for larger n (<= 42): convolves the two halves'
// (sum, count) maps; needs |A|*|B| within the pair budget.
BetaResult beta_mitm(std::span<const std::uint64_t> w, std::uint64_t pair_budget = 100'000'000);
BetaResult beta(std::span<const std::uint64_t> w, std::uint64_t pair_budget = 100'000'000);

// l = 1 + ceil(log2(max_i w(i))), and 1 for the all-zero vector.
int bit_length(std::span<const std::uint64_t> w);

// w_s(i) = floor(w(i) / 2^(l-s)): the s most significant of the l bits.
struct PrunedWeights {
    int l = 1;
    int s = 0;
    std::vector<std::uint64_t> values;
};
PrunedWeights pruned(std::span<const std::uint64_t> w, int s);

// Smallest integer >= 2^(delta * n), delta exact rational.
std::uint64_t pow2_threshold(const Rational& delta, int n);

// theta = min { s : |w_s(2^[n])| >= threshold }. Requires
// |w(2^[n])| >= threshold (otherwise no level qualifies); per-level
// enumeration aborts early at the threshold.
struct CriticalPruner {
    int theta = 0;
    std::uint64_t count_at_theta = 0;
    std::uint64_t threshold = 0;
};
CriticalPruner critical_pruner(std::span<const std::uint64_t> w, std::uint64_t threshold);
CriticalPruner critical_pruner(std::span<const std::uint64_t> w, const Rational& delta);

// Verifies (1/3n) |w_s| <= |w_{s-1}| <= (3n/2) |w_s| for every s in [l].
struct SmoothnessReport {
    bool ok = true;
    std::vector<std::uint64_t> level_counts;  // |w_s(2^[n])| for s = 0..l
    std::vector<int> violations;
};
SmoothnessReport smoothness_check(std::span<const std::uint64_t> w);

}  // namespace binweaver
