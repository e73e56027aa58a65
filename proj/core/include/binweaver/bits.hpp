#pragma once

#include <bit>
#include <cstdint>

namespace binweaver {

// Item subsets are bitmasks over positions 0..n-1 (bit i set <=> item i+1 in
// the set). n is capped at 62 so a set always fits one machine word.
using item_set = std::uint64_t;

inline constexpr int kMaxItems = 62;
inline constexpr int kMaxBins = 16;

inline constexpr item_set full_set(int n) {
    return n == 0 ? 0 : (~item_set{0} >> (64 - n));
}

inline int popcount(item_set x) { return std::popcount(x); }

// Mixer used for mask hashing and for deriving per-task RNG streams.
inline constexpr std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

}  // namespace binweaver
