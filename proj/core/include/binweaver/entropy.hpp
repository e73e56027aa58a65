#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace binweaver {

// Probability vector with non-negative entries summing to 1 within 1e-12.
struct ProbabilityVector {
    std::vector<double> p;

    void validate() const;
    std::size_t support() const { return p.size(); }
};

// Shannon entropy in bits, with 0 log(1/0) = 0.
double entropy_bits(const ProbabilityVector& p);

// Binary entropy h(x) and its inverse on [0, 1/2] (bisection to 1e-12).
double binary_entropy(double x);
double binary_entropy_inverse(double y);

// Bin(k): masses C(k,i)/2^k on {0..k}. Bin(k, alpha): the one-step mixture
// (1-alpha) C(k,i)/2^k + alpha C(k,i-1)/2^k on {0..k+1}; Bin(k,1/2) equals
// Bin(k+1) by Pascal's rule. Masses are exact binomials over a power of two,
// converted to floating point only inside the final logarithm.
std::vector<double> binomial_masses(int k);
std::vector<double> altered_binomial_masses(int k, double alpha);
double binomial_entropy(int k);
double altered_binomial_entropy(int k, double alpha);

// Result of one inequality checker: pass/fail, the smallest margin observed
// (rhs - lhs of the asserted inequality), and any violating grid points.
struct CheckReport {
    std::string name;
    bool pass = true;
    double min_margin = 0.0;
    std::uint64_t points = 0;
    std::vector<std::string> failures;

    void record(double margin, const std::string& where, double tolerance = 0.0);
};

// h(Bin(k)) - h(Bin(k-1)) <= log2(k)/sqrt(k) for each k in [k_lo, k_hi],
// k_lo >= 9, k_hi <= 512.
CheckReport binomial_entropy_gap_check(int k_lo, int k_hi);

// h(Bin(k, alpha)) <= h(Bin(k+1)) on a grid of alphas, with equality at 1/2
// to 1e-12.
CheckReport altered_vs_next_check(int k, std::span<const double> alphas);

// 1 - 4(x - 1/2)^2 <= h(x) <= 1 - (2/ln2)(x - 1/2)^2, and
// x / (2 log2(6/x)) <= h^{-1}(x) <= x / log2(1/x) (upper bound void at x=1).
CheckReport entropy_sandwich_check(std::span<const double> xs);

// h(1/2 - g) >= 1 - x + b h(c g) for g on [0, x / (4bc log2(12b/x))].
CheckReport gamma_entropy_check(double x, double b, double c, int grid_points = 1000);

// Entropy-level form: beta h(a - r/beta) + (1-beta) h(a + r/(1-beta))
// <= h(a) - r^2 inside the regime |r| < a(1-a) min(beta, 1-beta).
CheckReport binom_inequality_check(int trials, std::uint64_t seed);

// Exact multinomial against 2^(h(p) n) and the C(n+s-1, s-1)^{-1} lower
// factor; p*n must be integral.
CheckReport multinomial_bounds_check(const ProbabilityVector& p, int n);

// |h(p) - h(q)| <= ln(2) k eps log2(1/eps) for random coordinate-wise
// eps-close pairs; needs eps <= 1/e.
CheckReport entropy_lipschitz_check(int k, double eps, int trials, std::uint64_t seed);

}  // namespace binweaver
