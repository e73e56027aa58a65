#include "binweaver/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

namespace binweaver {

namespace {

bool within_universe(const SetFamily& fam) {
    const item_set full = full_set(fam.n);
    for (item_set x : fam.members)
        if (x & ~full) return false;
    return true;
}

}  // namespace

SetFamily make_family(int n, std::vector<item_set> members) {
    if (n < 0 || n > kMaxItems) throw contract_error("universe size out of range");
    std::sort(members.begin(), members.end());
    members.erase(std::unique(members.begin(), members.end()), members.end());
    SetFamily fam{n, std::move(members)};
    if (!within_universe(fam)) throw contract_error("family member outside universe");
    return fam;
}

bool is_down_closed(const SetFamily& fam) {
    MaskIndex index(fam.members);
    for (item_set x : fam.members) {
        for (item_set rest = x; rest;) {
            int i = std::countr_zero(rest);
            rest &= rest - 1;
            if (index.find(x ^ (item_set{1} << i)) == MaskIndex::npos) return false;
        }
    }
    return true;
}

bool is_up_closed(const SetFamily& fam) {
    MaskIndex index(fam.members);
    const item_set full = full_set(fam.n);
    for (item_set x : fam.members) {
        for (item_set rest = full & ~x; rest;) {
            int i = std::countr_zero(rest);
            rest &= rest - 1;
            if (index.find(x | (item_set{1} << i)) == MaskIndex::npos) return false;
        }
    }
    return true;
}

namespace {

// Breadth-first single-element removal (or insertion) with a visited set.
SetFamily closure_bfs(const SetFamily& fam, std::uint64_t node_budget, bool down) {
    const item_set full = full_set(fam.n);
    std::unordered_set<item_set> seen;
    seen.reserve(fam.members.size() * 4);
    std::vector<item_set> queue = fam.members;
    for (item_set x : fam.members) seen.insert(x);
    if (seen.size() > node_budget) throw budget_error("closure exceeds node budget");
    for (std::size_t head = 0; head < queue.size(); ++head) {
        item_set x = queue[head];
        item_set candidates = down ? x : (full & ~x);
        while (candidates) {
            int i = std::countr_zero(candidates);
            candidates &= candidates - 1;
            item_set next = x ^ (item_set{1} << i);
            if (seen.insert(next).second) {
                if (seen.size() > node_budget) throw budget_error("closure exceeds node budget");
                queue.push_back(next);
            }
        }
    }
    std::sort(queue.begin(), queue.end());
    return SetFamily{fam.n, std::move(queue)};
}

}  // namespace

SetFamily down_closure(const SetFamily& fam, std::uint64_t node_budget) {
    if (fam.members.empty()) return fam;
    return closure_bfs(fam, node_budget, true);
}

SetFamily up_closure(const SetFamily& fam, std::uint64_t node_budget) {
    if (fam.members.empty()) return fam;
    return closure_bfs(fam, node_budget, false);
}

SetFamily complement_family(const SetFamily& fam) {
    const item_set full = full_set(fam.n);
    std::vector<item_set> comp;
    comp.reserve(fam.members.size());
    for (item_set x : fam.members) comp.push_back(full & ~x);
    std::sort(comp.begin(), comp.end());
    return SetFamily{fam.n, std::move(comp)};
}

MaskIndex::MaskIndex(const std::vector<item_set>& sorted_masks) {
    std::size_t cap = 16;
    while (cap < sorted_masks.size() * 2) cap <<= 1;
    keys_.assign(cap, kEmpty);
    vals_.assign(cap, 0);
    mask_ = cap - 1;
    for (std::size_t i = 0; i < sorted_masks.size(); ++i) {
        std::size_t slot = static_cast<std::size_t>(splitmix64(sorted_masks[i])) & mask_;
        while (keys_[slot] != kEmpty) slot = (slot + 1) & mask_;
        keys_[slot] = sorted_masks[i];
        vals_[slot] = static_cast<std::uint32_t>(i);
    }
}

namespace {

bool miller_rabin(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        if (n % p == 0) return n == p;
    }
    std::uint64_t d = n - 1;
    int r = 0;
    while ((d & 1) == 0) { d >>= 1; ++r; }
    auto mulmod = [n](std::uint64_t a, std::uint64_t b) {
        return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % n);
    };
    auto powmod = [&](std::uint64_t a, std::uint64_t e) {
        std::uint64_t acc = 1;
        while (e) {
            if (e & 1) acc = mulmod(acc, a);
            a = mulmod(a, a);
            e >>= 1;
        }
        return acc;
    };
    for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        std::uint64_t x = powmod(a % n, d);
        if (x == 1 || x == n - 1) continue;
        bool witness = true;
        for (int i = 1; i < r; ++i) {
            x = mulmod(x, x);
            if (x == n - 1) { witness = false; break; }
        }
        if (witness) return false;
    }
    return true;
}

}  // namespace

std::vector<std::uint64_t> random_primes(int count, std::uint64_t seed) {
    std::vector<std::uint64_t> primes;
    std::uint64_t state = seed;
    while (static_cast<int>(primes.size()) < count) {
        state = splitmix64(state);
        std::uint64_t candidate = (state >> 4) | (1ULL << 60) | 1ULL;  // odd, in [2^60, 2^61)
        candidate &= (1ULL << 61) - 1;
        if (miller_rabin(candidate) &&
            std::find(primes.begin(), primes.end(), candidate) == primes.end())
            primes.push_back(candidate);
    }
    return primes;
}

std::vector<bigint> zeta_on_closure(const std::function<bigint(item_set)>& f,
                                    const SetFamily& fam) {
    MaskIndex index(fam.members);
    std::vector<bigint> vals;
    vals.reserve(fam.members.size());
    for (item_set x : fam.members) vals.push_back(f(x));
    zeta_on_closure_in_place(vals, fam, index, BigRing{});
    return vals;
}

std::vector<std::uint64_t> family_value_sums(const SetFamily& fam, const MaskIndex& index,
                                             const std::vector<std::uint64_t>& item_values) {
    std::vector<std::uint64_t> sums(fam.members.size(), 0);
    for (std::size_t k = 0; k < fam.members.size(); ++k) {
        item_set x = fam.members[k];
        if (x == 0) continue;
        int i = std::countr_zero(x);
        std::uint32_t pred = index.find(x & (x - 1));
        if (pred == MaskIndex::npos) throw contract_error("family is not down-closed");
        sums[k] = sums[pred] + item_values[i];
    }
    return sums;
}

namespace {

int max_popcount(const SetFamily& fam) {
    int best = 0;
    for (item_set x : fam.members) best = std::max(best, popcount(x));
    return best;
}

// True when the final cover-product counts provably fit in uint64: the number
// of ordered d-tuples covering X is at most (2^d - 1)^popcount(X).
bool u64_exact_ok(int max_pc, int d) {
    double bits = max_pc * std::log2(std::pow(2.0, d) - 1.0);
    return bits <= 62.0;
}

template <class Ring>
void feasibility_sweeps(const SetFamily& fam, const MaskIndex& index,
                        const std::vector<const std::vector<std::uint64_t>*>& sums_per_indicator,
                        const std::vector<std::uint64_t>& thresholds, const Ring& ring,
                        std::vector<std::vector<typename Ring::V>>& mobius_out) {
    using V = typename Ring::V;
    const std::size_t sz = fam.members.size();
    const int d = static_cast<int>(thresholds.size());
    std::vector<V> product;
    for (int k = 0; k < d; ++k) {
        std::vector<V> zf(sz);
        const auto& sums = *sums_per_indicator[k];
        for (std::size_t i = 0; i < sz; ++i) zf[i] = V(sums[i] <= thresholds[k] ? 1 : 0);
        zeta_on_closure_in_place(zf, fam, index, ring);
        if (k == 0) {
            product = std::move(zf);
        } else {
            for (std::size_t i = 0; i < sz; ++i) product[i] = ring.mul(product[i], zf[i]);
        }
        if (k >= 1) {
            std::vector<V> mob = product;
            mobius_on_closure_in_place(mob, fam, index, ring);
            mobius_out[k] = std::move(mob);
        }
    }
}

}  // namespace

FeasTables cover_feasibility(const SetFamily& fam, const MaskIndex& index,
                             const std::vector<AdditiveIndicator>& fs, Arith mode,
                             std::uint64_t prime_seed, SolveStats* stats) {
    const std::size_t sz = fam.members.size();
    const int d = static_cast<int>(fs.size());
    FeasTables tables;
    tables.prefix.assign(d + 1, {});
    tables.prefix[0].resize(sz);
    for (std::size_t i = 0; i < sz; ++i) tables.prefix[0][i] = fam.members[i] == 0 ? 1 : 0;
    if (d == 0) return tables;

    // Cache the per-member value sums, one array per distinct item-value vector.
    std::vector<const std::vector<std::uint64_t>*> distinct;
    std::vector<std::vector<std::uint64_t>> cached;
    for (int k = 0; k < d; ++k) {
        if (std::find(distinct.begin(), distinct.end(), fs[k].item_values) == distinct.end()) {
            distinct.push_back(fs[k].item_values);
            cached.push_back(family_value_sums(fam, index, *fs[k].item_values));
        }
    }
    std::vector<const std::vector<std::uint64_t>*> sums_for(d);
    for (int k = 0; k < d; ++k) {
        auto it = std::find(distinct.begin(), distinct.end(), fs[k].item_values);
        sums_for[k] = &cached[it - distinct.begin()];
    }

    std::vector<std::uint64_t> thresholds(d);
    for (int k = 0; k < d; ++k) thresholds[k] = fs[k].threshold;

    tables.prefix[1].resize(sz);
    for (std::size_t i = 0; i < sz; ++i)
        tables.prefix[1][i] = (*sums_for[0])[i] <= thresholds[0] ? 1 : 0;
    if (stats) stats->table_entries += sz * static_cast<std::uint64_t>(d);
    if (d == 1) return tables;

    const bool fits_u64 = u64_exact_ok(max_popcount(fam), d);
    if (fits_u64 || mode == Arith::exact) {
        if (fits_u64) {
            std::vector<std::vector<std::uint64_t>> mob(d + 1);
            feasibility_sweeps(fam, index, sums_for, thresholds, U64Ring{}, mob);
            for (int k = 2; k <= d; ++k) {
                tables.prefix[k].resize(sz);
                for (std::size_t i = 0; i < sz; ++i) tables.prefix[k][i] = mob[k - 1][i] != 0;
            }
        } else {
            std::vector<std::vector<bigint>> mob(d + 1);
            feasibility_sweeps(fam, index, sums_for, thresholds, BigRing{}, mob);
            for (int k = 2; k <= d; ++k) {
                tables.prefix[k].resize(sz);
                for (std::size_t i = 0; i < sz; ++i) tables.prefix[k][i] = !mob[k - 1][i].is_zero();
            }
        }
    } else {
        auto primes = random_primes(2, prime_seed);
        std::vector<std::vector<std::uint64_t>> mob_a(d + 1), mob_b(d + 1);
        feasibility_sweeps(fam, index, sums_for, thresholds, ModRing{primes[0]}, mob_a);
        feasibility_sweeps(fam, index, sums_for, thresholds, ModRing{primes[1]}, mob_b);
        for (int k = 2; k <= d; ++k) {
            tables.prefix[k].resize(sz);
            for (std::size_t i = 0; i < sz; ++i)
                tables.prefix[k][i] = (mob_a[k - 1][i] != 0 || mob_b[k - 1][i] != 0) ? 1 : 0;
        }
    }
    return tables;
}

namespace {

std::vector<std::uint64_t> full_value_table(int n, const std::vector<std::uint64_t>& item_values) {
    std::vector<std::uint64_t> table(std::size_t{1} << n, 0);
    for (std::size_t x = 1; x < table.size(); ++x)
        table[x] = table[x & (x - 1)] + item_values[std::countr_zero(x)];
    return table;
}

template <class Ring>
void feasibility_sweeps_full(int n, const std::vector<const std::vector<std::uint64_t>*>& tables,
                             const std::vector<std::uint64_t>& thresholds, const Ring& ring,
                             FullFeasTables& out) {
    using V = typename Ring::V;
    const std::size_t sz = std::size_t{1} << n;
    const int d = static_cast<int>(thresholds.size());
    std::vector<V> product;
    for (int k = 0; k < d; ++k) {
        std::vector<V> zf(sz);
        const auto& vals = *tables[k];
        for (std::size_t x = 0; x < sz; ++x) zf[x] = V(vals[x] <= thresholds[k] ? 1 : 0);
        zeta_in_place(zf, n, ring);
        if (k == 0) {
            product = std::move(zf);
        } else {
            for (std::size_t x = 0; x < sz; ++x) product[x] = ring.mul(product[x], zf[x]);
        }
        if (k >= 1) {
            std::vector<V> mob = product;
            mobius_in_place(mob, n, ring);
            auto& bits = out.prefix[k + 1];
            for (std::size_t x = 0; x < sz; ++x)
                if (!ring.is_zero(mob[x])) bits[x >> 6] |= std::uint64_t{1} << (x & 63);
        }
    }
}

void or_into_bits(std::vector<std::uint64_t>& dst, const std::vector<std::uint64_t>& src) {
    for (std::size_t i = 0; i < dst.size(); ++i) dst[i] |= src[i];
}

}  // namespace

FullFeasTables cover_feasibility_full(int n, const std::vector<AdditiveIndicator>& fs, Arith mode,
                                      std::uint64_t prime_seed, std::uint64_t node_budget,
                                      SolveStats* stats) {
    if ((std::uint64_t{1} << n) > node_budget)
        throw budget_error("full lattice of 2^" + std::to_string(n) + " sets exceeds node budget");
    const std::size_t sz = std::size_t{1} << n;
    const std::size_t words = (sz + 63) / 64;
    const int d = static_cast<int>(fs.size());

    FullFeasTables out;
    out.n = n;
    out.prefix.assign(d + 1, std::vector<std::uint64_t>(words, 0));
    out.prefix[0][0] = 1;  // empty set only
    if (d == 0) return out;

    std::vector<const std::vector<std::uint64_t>*> distinct;
    std::vector<std::vector<std::uint64_t>> cached;
    for (int k = 0; k < d; ++k) {
        if (std::find(distinct.begin(), distinct.end(), fs[k].item_values) == distinct.end()) {
            distinct.push_back(fs[k].item_values);
            cached.push_back(full_value_table(n, *fs[k].item_values));
        }
    }
    std::vector<const std::vector<std::uint64_t>*> value_table(d);
    std::vector<std::uint64_t> thresholds(d);
    for (int k = 0; k < d; ++k) {
        auto it = std::find(distinct.begin(), distinct.end(), fs[k].item_values);
        value_table[k] = &cached[it - distinct.begin()];
        thresholds[k] = fs[k].threshold;
    }

    {
        auto& bits = out.prefix[1];
        const auto& vals = *value_table[0];
        for (std::size_t x = 0; x < sz; ++x)
            if (vals[x] <= thresholds[0]) bits[x >> 6] |= std::uint64_t{1} << (x & 63);
    }
    if (stats) stats->table_entries += sz * static_cast<std::uint64_t>(d);
    if (d == 1) return out;

    const bool fits_u64 = u64_exact_ok(n, d);
    if (fits_u64 || mode == Arith::exact) {
        if (fits_u64) {
            feasibility_sweeps_full(n, value_table, thresholds, U64Ring{}, out);
        } else {
            feasibility_sweeps_full(n, value_table, thresholds, BigRing{}, out);
        }
    } else {
        auto primes = random_primes(2, prime_seed);
        feasibility_sweeps_full(n, value_table, thresholds, ModRing{primes[0]}, out);
        FullFeasTables second;
        second.n = n;
        second.prefix.assign(d + 1, std::vector<std::uint64_t>(words, 0));
        feasibility_sweeps_full(n, value_table, thresholds, ModRing{primes[1]}, second);
        for (int k = 2; k <= d; ++k) or_into_bits(out.prefix[k], second.prefix[k]);
    }
    return out;
}

namespace {

std::uint64_t sum_over(const std::vector<std::uint64_t>& item_values, item_set x) {
    std::uint64_t t = 0;
    while (x) {
        t += item_values[std::countr_zero(x)];
        x &= x - 1;
    }
    return t;
}

}  // namespace

std::vector<item_set> peel_parts(const SetFamily& fam, const MaskIndex& index,
                                 const std::vector<AdditiveIndicator>& fs,
                                 const FeasTables& tables, item_set target, const Instance& inst) {
    const int d = static_cast<int>(fs.size());
    std::vector<item_set> parts(d, 0);
    item_set rest = target;
    for (int k = d; k >= 2; --k) {
        bool found = false;
        item_set best = 0;
        std::uint64_t best_w = 0;
        for (item_set s = rest;; s = (s - 1) & rest) {
            if (sum_over(*fs[k - 1].item_values, s) <= fs[k - 1].threshold) {
                std::uint32_t rem = index.find(rest ^ s);
                if (rem != MaskIndex::npos && tables.prefix[k - 1][rem]) {
                    std::uint64_t w = inst.weight_of(s);
                    if (!found || w > best_w) {
                        found = true;
                        best = s;
                        best_w = w;
                    }
                }
            }
            if (s == 0) break;
        }
        if (!found) throw contract_error("peeling failed: feasibility tables inconsistent");
        parts[k - 1] = best;
        rest ^= best;
    }
    if (d >= 1) {
        if (sum_over(*fs[0].item_values, rest) > fs[0].threshold)
            throw contract_error("peeling failed at the first indicator");
        parts[0] = rest;
    } else if (rest != 0) {
        throw contract_error("cannot peel a non-empty set over zero bins");
    }
    return parts;
}

std::vector<item_set> peel_parts_full(const FullFeasTables& tables,
                                      const std::vector<AdditiveIndicator>& fs, item_set target,
                                      const Instance& inst) {
    const int d = static_cast<int>(fs.size());
    std::vector<item_set> parts(d, 0);
    item_set rest = target;
    for (int k = d; k >= 2; --k) {
        bool found = false;
        item_set best = 0;
        std::uint64_t best_w = 0;
        for (item_set s = rest;; s = (s - 1) & rest) {
            if (sum_over(*fs[k - 1].item_values, s) <= fs[k - 1].threshold &&
                tables.get(k - 1, rest ^ s)) {
                std::uint64_t w = inst.weight_of(s);
                if (!found || w > best_w) {
                    found = true;
                    best = s;
                    best_w = w;
                }
            }
            if (s == 0) break;
        }
        if (!found) throw contract_error("peeling failed: feasibility tables inconsistent");
        parts[k - 1] = best;
        rest ^= best;
    }
    if (d >= 1) {
        if (sum_over(*fs[0].item_values, rest) > fs[0].threshold)
            throw contract_error("peeling failed at the first indicator");
        parts[0] = rest;
    } else if (rest != 0) {
        throw contract_error("cannot peel a non-empty set over zero bins");
    }
    return parts;
}

std::vector<std::uint8_t> divide_feasibility_down(const Instance& inst,
                                                  const std::vector<int>& bins,
                                                  const SetFamily& fam, Arith mode,
                                                  std::uint64_t prime_seed) {
    MaskIndex index(fam.members);
    std::vector<AdditiveIndicator> fs;
    fs.reserve(bins.size());
    for (int j : bins) fs.push_back({&inst.weights, inst.capacities[j]});
    FeasTables tables = cover_feasibility(fam, index, fs, mode, prime_seed);
    return tables.prefix.back();
}

std::vector<std::uint8_t> divide_feasibility_up(const Instance& inst, const std::vector<int>& bins,
                                                const SetFamily& fam, Arith mode,
                                                std::uint64_t prime_seed) {
    SetFamily comp = complement_family(fam);
    MaskIndex comp_index(comp.members);
    std::vector<AdditiveIndicator> fs;
    fs.reserve(bins.size());
    for (int j : bins) fs.push_back({&inst.weights, inst.capacities[j]});
    FeasTables tables = cover_feasibility(comp, comp_index, fs, mode, prime_seed);
    const item_set full = full_set(fam.n);
    std::vector<std::uint8_t> flags(fam.members.size());
    for (std::size_t i = 0; i < fam.members.size(); ++i) {
        std::uint32_t at = comp_index.find(full & ~fam.members[i]);
        flags[i] = tables.prefix.back()[at];
    }
    return flags;
}

}  // namespace binweaver
