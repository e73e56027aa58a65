#pragma once

#include <cstdint>
#include <vector>

#include "binweaver/instance.hpp"
#include "binweaver/lattice.hpp"
#include "binweaver/rational.hpp"

namespace binweaver {

// Shared knobs of the witness-sampling solvers and the master dispatcher.
// The paper-formula family sizes 2^((1-2a)n) and 2^((1-g(m))n) are capped at
// family_size_cap; reports record which bound was binding.
struct WitnessSearchConfig {
    Rational alpha{1, 5};
    Rational delta{1, 4};
    std::uint64_t family_size_cap = 2048;
    std::uint64_t seed = 1;
    std::uint64_t budget_nodes = std::uint64_t{1} << 26;
    std::uint64_t budget_dp_states = 8'000'000;
    std::uint64_t budget_guess_tuples = 2048;
    double budget_secs = 0.0;  // 0 = unlimited; checked between dispatcher stages
    bool use_paper_defaults = false;
    Arith arith = Arith::automatic;

    void validate() const;
};

// Exact backtracking oracle (items in decreasing weight, equal-residual bins
// skipped). Throws budget_error past node_budget search nodes.
SolveReport solve_bruteforce(const Instance& inst, std::uint64_t node_budget = 100'000'000);

// Positivity of (f_1 *c ... *c f_m)([n]) via mobius of the product of zeta
// transforms over the full lattice; certificate by greedy peeling.
SolveReport solve_zeta_mobius(const Instance& inst, Arith mode = Arith::automatic,
                              std::uint64_t node_budget = std::uint64_t{1} << 26,
                              std::uint64_t prime_seed = 1);

// DP over (item prefix, per-bin residual capacity floored into w(2^[n])).
SolveReport solve_distinct_sums_dp(const Instance& inst,
                                   std::uint64_t state_budget = 8'000'000);

// One-sided samplers: yes answers carry verified certificates, no means
// inconclusive.
SolveReport solve_unbalanced_sampler(const Instance& inst, const WitnessSearchConfig& cfg);
SolveReport solve_balanced_small_slack(const Instance& inst, const WitnessSearchConfig& cfg);
SolveReport solve_balanced_large_slack(const Instance& inst, const WitnessSearchConfig& cfg);

// Dispatcher: distinct-sums DP when the sum count is below 2^(delta n), then
// the three samplers, then a deterministic fallback (zeta/Mobius or brute
// force) so the final answer is exact. Budget exhaustion yields an explicit
// unknown report, never a silent wrong answer.
SolveReport solve_master(const Instance& inst, const WitnessSearchConfig& cfg);

// Uniform i.i.d. floor(n/2)-subsets with replacement. Hierarchical seeding:
// (seed, task_index) fixes the stream, so results do not depend on how tasks
// are scheduled.
std::vector<item_set> sample_half_sets(int n, std::uint64_t count, std::uint64_t seed,
                                       std::uint64_t task_index = 0);

// Rate functions reported as diagnostics.
double g_of_m(int m);             // h(1/(2m)) / 2
double f_C_rate(int m);           // g^2 / (8 ln2 log2(12/g)^2)
double f_A_rate(double alpha);    // a^2 / (8 ln2 log2(6/a)^2)
double eps_of_delta(double d);    // 2^(-1/d^3)
double f_B_rate(double delta);    // eps^2 / (32 ln2 log2(6/eps)^2)

}  // namespace binweaver
