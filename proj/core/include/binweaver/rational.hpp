#pragma once

#include <cstdint>
#include <numeric>
#include <string>

#include "binweaver/errors.hpp"

namespace binweaver {

// Exact non-negative rational. Window and threshold comparisons must not go
// through floating point (boundary cases like alpha = 1/6 are routinely hit
// with equality), so parameters of this kind are carried as num/den pairs.
struct Rational {
    std::int64_t num = 0;
    std::int64_t den = 1;

    constexpr Rational() = default;
    Rational(std::int64_t n, std::int64_t d) : num(n), den(d) {
        if (d <= 0 || n < 0) throw contract_error("rational must be non-negative with positive denominator");
        std::int64_t g = std::gcd(num, den);
        if (g > 1) { num /= g; den /= g; }
    }

    double value() const { return static_cast<double>(num) / static_cast<double>(den); }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num == b.num && a.den == b.den;
    }
};

// "p/q" or a plain decimal such as "0.25" (parsed exactly, base 10).
Rational parse_rational(const std::string& text);

// k <=> (1/2 - r) * n   and   k <=> (1/2 + r) * n, exact in integers.
// Returns sign of lhs - rhs.
inline int cmp_half_minus(std::int64_t k, const Rational& r, std::int64_t n) {
    __int128 lhs = static_cast<__int128>(2) * k * r.den;
    __int128 rhs = static_cast<__int128>(n) * (r.den - 2 * r.num);
    return lhs < rhs ? -1 : (lhs > rhs ? 1 : 0);
}
inline int cmp_half_plus(std::int64_t k, const Rational& r, std::int64_t n) {
    __int128 lhs = static_cast<__int128>(2) * k * r.den;
    __int128 rhs = static_cast<__int128>(n) * (r.den + 2 * r.num);
    return lhs < rhs ? -1 : (lhs > rhs ? 1 : 0);
}

}  // namespace binweaver
