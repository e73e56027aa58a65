#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "binweaver/bits.hpp"
#include "binweaver/errors.hpp"
#include "binweaver/instance.hpp"

namespace binweaver {

using bigint = boost::multiprecision::cpp_int;

// ---------------------------------------------------------------------------
// Set families
// ---------------------------------------------------------------------------

// Deduplicated ascending list of item subsets over a universe of n items.
struct SetFamily {
    int n = 0;
    std::vector<item_set> members;

    std::size_t size() const { return members.size(); }
};

SetFamily make_family(int n, std::vector<item_set> members);
bool is_down_closed(const SetFamily& fam);
bool is_up_closed(const SetFamily& fam);

// All subsets (resp. supersets within [n]) of the members. Throws budget_error
// when the closure would exceed node_budget sets.
SetFamily down_closure(const SetFamily& fam, std::uint64_t node_budget);
SetFamily up_closure(const SetFamily& fam, std::uint64_t node_budget);

// Member-wise complement within [n]. Maps down-closed to up-closed and back.
SetFamily complement_family(const SetFamily& fam);

// Open-addressing index mask -> position in a sorted member list. Sweep-style
// transforms need the position of X \ {i} for every member X and bit i.
class MaskIndex {
public:
    static constexpr std::uint32_t npos = ~std::uint32_t{0};

    MaskIndex() = default;
    explicit MaskIndex(const std::vector<item_set>& sorted_masks);

    std::uint32_t find(item_set mask) const {
        std::size_t slot = static_cast<std::size_t>(splitmix64(mask)) & mask_;
        while (true) {
            if (keys_[slot] == kEmpty) return npos;
            if (keys_[slot] == mask) return vals_[slot];
            slot = (slot + 1) & mask_;
        }
    }

private:
    static constexpr item_set kEmpty = ~item_set{0};
    std::vector<item_set> keys_;
    std::vector<std::uint32_t> vals_;
    std::size_t mask_ = 0;
};

// ---------------------------------------------------------------------------
// Ring policies: transforms are generic over the value arithmetic.
// ---------------------------------------------------------------------------

// Plain wrapping uint64 arithmetic. Results are exact whenever the true
// (non-negative) value fits 64 bits; intermediate wraparound is harmless
// because Z -> Z/2^64 is a ring homomorphism.
struct U64Ring {
    using V = std::uint64_t;
    V add(V a, V b) const { return a + b; }
    V sub(V a, V b) const { return a - b; }
    V mul(V a, V b) const { return a * b; }
    bool is_zero(V a) const { return a == 0; }
};

// Arbitrary precision integers.
struct BigRing {
    using V = bigint;
    V add(const V& a, const V& b) const { return a + b; }
    V sub(const V& a, const V& b) const { return a - b; }
    V mul(const V& a, const V& b) const { return a * b; }
    bool is_zero(const V& a) const { return a.is_zero(); }
};

// Arithmetic modulo a fixed prime near 2^61.
struct ModRing {
    std::uint64_t p = 0;
    using V = std::uint64_t;
    V add(V a, V b) const { V s = a + b; return s >= p ? s - p : s; }
    V sub(V a, V b) const { return a >= b ? a - b : a + p - b; }
    V mul(V a, V b) const {
        return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % p);
    }
    bool is_zero(V a) const { return a == 0; }
};

// Deterministic primes in [2^60, 2^61) derived from a seed.
std::vector<std::uint64_t> random_primes(int count, std::uint64_t seed);

// ---------------------------------------------------------------------------
// Full-lattice transforms: tables indexed by mask, size 2^n.
// ---------------------------------------------------------------------------

// (zeta f)(X) = sum over Y subset of X of f(Y), by the n-pass in-place sweep.
template <class Ring>
void zeta_in_place(std::vector<typename Ring::V>& f, int n, const Ring& ring = {}) {
    for (int i = 0; i < n; ++i) {
        const std::size_t bit = std::size_t{1} << i;
        for (std::size_t x = 0; x < f.size(); ++x)
            if (x & bit) f[x] = ring.add(f[x], f[x ^ bit]);
    }
}

// Inverse of zeta on the full lattice: mobius(zeta(f)) = f.
template <class Ring>
void mobius_in_place(std::vector<typename Ring::V>& f, int n, const Ring& ring = {}) {
    for (int i = 0; i < n; ++i) {
        const std::size_t bit = std::size_t{1} << i;
        for (std::size_t x = 0; x < f.size(); ++x)
            if (x & bit) f[x] = ring.sub(f[x], f[x ^ bit]);
    }
}

template <class Ring>
std::vector<typename Ring::V> zeta_full(std::vector<typename Ring::V> f, int n,
                                        const Ring& ring = {}) {
    zeta_in_place(f, n, ring);
    return f;
}

template <class Ring>
std::vector<typename Ring::V> mobius_full(std::vector<typename Ring::V> f, int n,
                                          const Ring& ring = {}) {
    mobius_in_place(f, n, ring);
    return f;
}

// h(Z) = sum over X union Y = Z of f(X) g(Y), via mobius((zeta f) . (zeta g)).
template <class Ring>
std::vector<typename Ring::V> cover_product(std::vector<typename Ring::V> f,
                                            std::vector<typename Ring::V> g, int n,
                                            const Ring& ring = {}) {
    if (f.size() != g.size() || f.size() != (std::size_t{1} << n))
        throw contract_error("cover_product needs two tables over the same full lattice");
    zeta_in_place(f, n, ring);
    zeta_in_place(g, n, ring);
    for (std::size_t x = 0; x < f.size(); ++x) f[x] = ring.mul(f[x], g[x]);
    mobius_in_place(f, n, ring);
    return f;
}

// ---------------------------------------------------------------------------
// Closure-restricted transforms: tables aligned with fam.members. Valid
// because X \ {i} stays in a down-closed family whenever X does.
// ---------------------------------------------------------------------------

template <class Ring>
void zeta_on_closure_in_place(std::vector<typename Ring::V>& vals, const SetFamily& fam,
                              const MaskIndex& index, const Ring& ring = {}) {
    for (int i = 0; i < fam.n; ++i) {
        const item_set bit = item_set{1} << i;
        for (std::size_t k = 0; k < fam.members.size(); ++k) {
            if (fam.members[k] & bit) {
                std::uint32_t pred = index.find(fam.members[k] ^ bit);
                if (pred == MaskIndex::npos) throw contract_error("family is not down-closed");
                vals[k] = ring.add(vals[k], vals[pred]);
            }
        }
    }
}

template <class Ring>
void mobius_on_closure_in_place(std::vector<typename Ring::V>& vals, const SetFamily& fam,
                                const MaskIndex& index, const Ring& ring = {}) {
    for (int i = 0; i < fam.n; ++i) {
        const item_set bit = item_set{1} << i;
        for (std::size_t k = 0; k < fam.members.size(); ++k) {
            if (fam.members[k] & bit) {
                std::uint32_t pred = index.find(fam.members[k] ^ bit);
                if (pred == MaskIndex::npos) throw contract_error("family is not down-closed");
                vals[k] = ring.sub(vals[k], vals[pred]);
            }
        }
    }
}

// (zeta f)(X) for every X in a down-closed family, from an evaluator for f.
std::vector<bigint> zeta_on_closure(const std::function<bigint(item_set)>& f,
                                    const SetFamily& fam);

// s(X) = sum of item_values over X for every member of a down-closed family,
// one predecessor lookup per member.
std::vector<std::uint64_t> family_value_sums(const SetFamily& fam, const MaskIndex& index,
                                             const std::vector<std::uint64_t>& item_values);

// ---------------------------------------------------------------------------
// Divide feasibility: can X be partitioned into parts acceptable to a list of
// indicators (one per bin)? Positivity of the iterated cover product of the
// indicators, evaluated in exact or double-modular arithmetic.
// ---------------------------------------------------------------------------

enum class Arith {
    automatic,  // uint64 when provably exact, otherwise two-prime modular
    exact,      // uint64 when provably exact, otherwise arbitrary precision
    modular,    // two independent random primes; "positive" iff nonzero mod either
};

// A bin-acceptance predicate of the form sum_{i in X} item_values[i] <=
// threshold. Covers true capacities (w) and pruned capacities (w_theta), and
// is monotone under taking subsets, which cover products require.
struct AdditiveIndicator {
    const std::vector<std::uint64_t>* item_values;
    std::uint64_t threshold;
};

// prefix[k][i] != 0 iff member i can be divided among the first k indicators;
// prefix[0] marks the empty set.
struct FeasTables {
    std::vector<std::vector<std::uint8_t>> prefix;
};

FeasTables cover_feasibility(const SetFamily& fam, const MaskIndex& index,
                             const std::vector<AdditiveIndicator>& fs, Arith mode,
                             std::uint64_t prime_seed, SolveStats* stats = nullptr);

// Full-lattice variant; prefix tables are bit-packed (2^n bits per level).
struct FullFeasTables {
    int n = 0;
    std::vector<std::vector<std::uint64_t>> prefix;

    bool get(int level, item_set x) const {
        return (prefix[level][x >> 6] >> (x & 63)) & 1;
    }
};

FullFeasTables cover_feasibility_full(int n, const std::vector<AdditiveIndicator>& fs, Arith mode,
                                      std::uint64_t prime_seed, std::uint64_t node_budget,
                                      SolveStats* stats = nullptr);

// Recover one part per indicator from feasibility tables by greedy peeling:
// for the last indicator scan all submasks of the remainder, keep a maximum-
// weight one whose removal leaves the prefix feasible, recurse.
std::vector<item_set> peel_parts(const SetFamily& fam, const MaskIndex& index,
                                 const std::vector<AdditiveIndicator>& fs, const FeasTables& tables,
                                 item_set target, const Instance& inst);
std::vector<item_set> peel_parts_full(const FullFeasTables& tables,
                                      const std::vector<AdditiveIndicator>& fs, item_set target,
                                      const Instance& inst);

// Spec-level wrappers with capacity indicators w(X) <= c_j.
// For each X in a down-closed family: can X be divided over `bins`?
std::vector<std::uint8_t> divide_feasibility_down(const Instance& inst,
                                                  const std::vector<int>& bins,
                                                  const SetFamily& fam, Arith mode = Arith::automatic,
                                                  std::uint64_t prime_seed = 1);
// For each X in an up-closed family: can [n] \ X be divided over `bins`?
std::vector<std::uint8_t> divide_feasibility_up(const Instance& inst, const std::vector<int>& bins,
                                                const SetFamily& fam, Arith mode = Arith::automatic,
                                                std::uint64_t prime_seed = 1);

}  // namespace binweaver
