#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "binweaver/bits.hpp"
#include "binweaver/rational.hpp"

namespace binweaver {

// A Bin Packing decision instance: n items with non-negative integer weights,
// m bins with non-negative integer capacities. Total weight and total
// capacity must each fit in 64 bits (checked at parse time).
struct Instance {
    int n = 0;
    int m = 0;
    std::vector<std::uint64_t> weights;
    std::vector<std::uint64_t> capacities;

    std::uint64_t total_weight() const;
    std::uint64_t total_capacity() const;
    std::uint64_t weight_of(item_set x) const;
};

// Text format: `n m` on line 1, n weights on line 2, m capacities on line 3,
// `#` comment lines ignored. A JSON object {"weights": [...],
// "capacities": [...]} is accepted interchangeably.
Instance parse_instance(const std::string& text);
std::string serialize_instance(const Instance& inst);

// Total assignment of items to bins; assignment[i] is the bin of item i.
struct Solution {
    std::vector<int> assignment;

    item_set bin_items(int bin) const;
};

// True iff every bin's assigned weight is within its capacity.
bool verify_solution(const Instance& inst, const Solution& sol);

// Definition: for every permutation of the bins some prefix of cumulative
// item counts lands in [n/2 - alpha*n, n/2 + alpha*n]. Checked through the
// equivalent subset criterion (the solution is unbalanced iff some bin set T
// and extra bin j jump over the window), which needs 2^m * m pairs instead of
// m! permutations.
bool is_alpha_balanced(const Instance& inst, const Solution& sol, const Rational& alpha);

// Per-bin slack against the threshold n * 2^(l - theta).
struct SlackReport {
    struct Bin {
        std::uint64_t slack = 0;
        bool large = false;
    };
    std::vector<Bin> bins;
    int small_slack_items = 0;
    int large_slack_items = 0;
};
SlackReport classify_slack(const Instance& inst, const Solution& sol, int theta, int l);

// Which algorithm produced a report.
enum class Algo {
    bruteforce,
    zeta_mobius,
    distinct_sums_dp,
    unbalanced_sampler,
    balanced_small_slack,
    balanced_large_slack,
    master,
};
const char* algo_name(Algo a);

enum class Answer { yes, no, unknown };
const char* answer_name(Answer a);

struct SolveStats {
    std::uint64_t families_enumerated = 0;
    std::uint64_t samples_drawn = 0;
    std::uint64_t table_entries = 0;
    double wall_ms = 0.0;
};

// One stage of the master dispatcher's path.
struct TraceEntry {
    std::string stage;
    std::string outcome;
    SolveStats stats;
};

struct SolveReport {
    Answer answer = Answer::unknown;
    std::optional<Solution> certificate;  // present iff answer == yes
    Algo algorithm = Algo::bruteforce;
    SolveStats stats;
    std::vector<TraceEntry> trace;
    // Logged run parameters (f_A, f_B, f_C, g, eps, binding caps, ...).
    std::vector<std::pair<std::string, double>> diagnostics;
};

}  // namespace binweaver
