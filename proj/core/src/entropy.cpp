#include "binweaver/entropy.hpp"

#include <cmath>
#include <random>
#include <sstream>

#include <boost/multiprecision/cpp_int.hpp>

#include "binweaver/bits.hpp"
#include "binweaver/errors.hpp"

namespace binweaver {

using boost::multiprecision::cpp_int;

namespace {

constexpr double kSumTolerance = 1e-12;

long double entropy_of_masses(const std::vector<long double>& p) {
    long double h = 0.0L;
    for (long double x : p)
        if (x > 0.0L) h -= x * std::log2(x);
    return h;
}

std::vector<cpp_int> binomial_row(int k) {
    std::vector<cpp_int> row(k + 1);
    row[0] = 1;
    for (int i = 1; i <= k; ++i) row[i] = row[i - 1] * (k - i + 1) / i;
    return row;
}

std::vector<long double> binomial_masses_ld(int k) {
    auto row = binomial_row(k);
    std::vector<long double> p(k + 1);
    const long double scale = std::ldexp(1.0L, -k);
    for (int i = 0; i <= k; ++i) p[i] = static_cast<long double>(row[i]) * scale;
    return p;
}

std::vector<long double> altered_masses_ld(int k, double alpha) {
    auto row = binomial_row(k);
    std::vector<long double> p(k + 2);
    const long double scale = std::ldexp(1.0L, -k);
    for (int i = 0; i <= k + 1; ++i) {
        long double top = i <= k ? static_cast<long double>(row[i]) : 0.0L;
        long double prev = i >= 1 ? static_cast<long double>(row[i - 1]) : 0.0L;
        p[i] = ((1.0L - static_cast<long double>(alpha)) * top +
                static_cast<long double>(alpha) * prev) *
               scale;
    }
    return p;
}

double log2_of(const cpp_int& v) {
    if (v <= 1) return 0.0;
    const unsigned bits = boost::multiprecision::msb(v);
    if (bits <= 62) return std::log2(static_cast<double>(v.convert_to<std::uint64_t>()));
    const cpp_int top = v >> (bits - 52);
    return static_cast<double>(bits - 52) + std::log2(top.convert_to<double>());
}

}  // namespace

void ProbabilityVector::validate() const {
    double total = 0.0;
    for (double x : p) {
        if (x < 0.0) throw contract_error("probability entries must be non-negative");
        total += x;
    }
    if (std::abs(total - 1.0) > kSumTolerance)
        throw contract_error("probability entries must sum to 1 within 1e-12");
}

double entropy_bits(const ProbabilityVector& pv) {
    pv.validate();
    long double h = 0.0L;
    for (double x : pv.p)
        if (x > 0.0) h -= static_cast<long double>(x) * std::log2(static_cast<long double>(x));
    return static_cast<double>(h);
}

double binary_entropy(double x) {
    if (x < 0.0 || x > 1.0) throw contract_error("binary entropy argument must be in [0, 1]");
    if (x == 0.0 || x == 1.0) return 0.0;
    return static_cast<double>(-static_cast<long double>(x) * std::log2(static_cast<long double>(x)) -
                               (1.0L - x) * std::log2(1.0L - static_cast<long double>(x)));
}

double binary_entropy_inverse(double y) {
    if (y < 0.0 || y > 1.0) throw contract_error("binary entropy inverse argument must be in [0, 1]");
    double lo = 0.0, hi = 0.5;
    while (hi - lo > 1e-12) {
        double mid = 0.5 * (lo + hi);
        (binary_entropy(mid) < y ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

std::vector<double> binomial_masses(int k) {
    auto p = binomial_masses_ld(k);
    return std::vector<double>(p.begin(), p.end());
}

std::vector<double> altered_binomial_masses(int k, double alpha) {
    if (alpha < 0.0 || alpha > 1.0) throw contract_error("alpha must be in [0, 1]");
    auto p = altered_masses_ld(k, alpha);
    return std::vector<double>(p.begin(), p.end());
}

double binomial_entropy(int k) { return static_cast<double>(entropy_of_masses(binomial_masses_ld(k))); }

double altered_binomial_entropy(int k, double alpha) {
    if (alpha < 0.0 || alpha > 1.0) throw contract_error("alpha must be in [0, 1]");
    return static_cast<double>(entropy_of_masses(altered_masses_ld(k, alpha)));
}

void CheckReport::record(double margin, const std::string& where, double tolerance) {
    if (points == 0 || margin < min_margin) min_margin = margin;
    ++points;
    if (margin < -tolerance) {
        pass = false;
        if (failures.size() < 16) failures.push_back(where + " margin=" + std::to_string(margin));
    }
}

CheckReport binomial_entropy_gap_check(int k_lo, int k_hi) {
    if (k_lo < 9 || k_hi > 512 || k_lo > k_hi)
        throw contract_error("gap check needs 9 <= k_lo <= k_hi <= 512");
    CheckReport report{.name = "binomial-gap"};
    double prev = binomial_entropy(k_lo - 1);
    for (int k = k_lo; k <= k_hi; ++k) {
        double cur = binomial_entropy(k);
        double bound = std::log2(static_cast<double>(k)) / std::sqrt(static_cast<double>(k));
        std::ostringstream where;
        where << "k=" << k << " gap=" << (cur - prev) << " bound=" << bound;
        report.record(bound - (cur - prev), where.str());
        prev = cur;
    }
    return report;
}

CheckReport altered_vs_next_check(int k, std::span<const double> alphas) {
    CheckReport report{.name = "altered-vs-next"};
    const double next = binomial_entropy(k + 1);
    for (double alpha : alphas) {
        double val = altered_binomial_entropy(k, alpha);
        std::ostringstream where;
        where << "k=" << k << " alpha=" << alpha;
        report.record(next - val, where.str(), 1e-12);
        if (alpha == 0.5) {
            // Pascal's rule: this is an exact coincidence of distributions.
            report.record(1e-12 - std::abs(next - val), where.str() + " (equality)");
        }
    }
    return report;
}

CheckReport entropy_sandwich_check(std::span<const double> xs) {
    CheckReport report{.name = "entropy-sandwich"};
    for (double x : xs) {
        if (x < 0.0 || x > 1.0) throw contract_error("sandwich grid must lie in [0, 1]");
        const double h = binary_entropy(x);
        const double centered = (x - 0.5) * (x - 0.5);
        std::ostringstream where;
        where << "x=" << x;
        report.record(h - (1.0 - 4.0 * centered), where.str() + " lower");
        report.record(1.0 - 2.0 / std::log(2.0) * centered - h, where.str() + " upper", 1e-12);
        if (x > 0.0) {
            const double inv = binary_entropy_inverse(x);
            report.record(inv - x / (2.0 * std::log2(6.0 / x)), where.str() + " inv-lower", 1e-9);
            if (x < 1.0)
                report.record(x / std::log2(1.0 / x) - inv, where.str() + " inv-upper", 1e-9);
        }
    }
    return report;
}

CheckReport gamma_entropy_check(double x, double b, double c, int grid_points) {
    if (c < 1.0 || b < 0.5 || x <= 0.0 || x >= 1.0)
        throw contract_error("gamma entropy check needs c >= 1, b >= 1/2, x in (0, 1)");
    CheckReport report{.name = "gamma-entropy"};
    const double gamma_max = x / (4.0 * b * c * std::log2(12.0 * b / x));
    for (int i = 0; i <= grid_points; ++i) {
        double gamma = gamma_max * static_cast<double>(i) / grid_points;
        double lhs = binary_entropy(0.5 - gamma);
        double rhs = 1.0 - x + b * binary_entropy(std::min(1.0, c * gamma));
        std::ostringstream where;
        where << "gamma=" << gamma;
        report.record(lhs - rhs, where.str(), 1e-12);
    }
    return report;
}

CheckReport binom_inequality_check(int trials, std::uint64_t seed) {
    CheckReport report{.name = "binom-inequality"};
    std::mt19937_64 rng(splitmix64(seed));
    std::uniform_real_distribution<double> unit(1e-6, 0.5);
    std::uniform_real_distribution<double> sym(-1.0, 1.0);
    for (int t = 0; t < trials; ++t) {
        double a = unit(rng);
        double beta = unit(rng);
        double limit = a * (1.0 - a) * std::min(beta, 1.0 - beta);
        double rho = sym(rng) * limit * 0.999;
        double lhs = beta * binary_entropy(a - rho / beta) +
                     (1.0 - beta) * binary_entropy(a + rho / (1.0 - beta));
        double rhs = binary_entropy(a) - rho * rho;
        std::ostringstream where;
        where << "a=" << a << " beta=" << beta << " rho=" << rho;
        report.record(rhs - lhs, where.str(), 1e-12);
    }
    return report;
}

CheckReport multinomial_bounds_check(const ProbabilityVector& pv, int n) {
    pv.validate();
    const int s = static_cast<int>(pv.p.size());
    std::vector<int> counts(s);
    for (int i = 0; i < s; ++i) {
        double scaled = pv.p[i] * n;
        counts[i] = static_cast<int>(std::llround(scaled));
        if (std::abs(scaled - counts[i]) > 1e-9)
            throw contract_error("p * n must be integral for the multinomial check");
    }
    cpp_int multinomial = 1;
    int used = 0;
    for (int i = 0; i < s; ++i) {
        for (int j = 1; j <= counts[i]; ++j) {
            ++used;
            multinomial = multinomial * used / j;
        }
    }
    const double log2_multi = log2_of(multinomial);
    const double hn = entropy_bits(pv) * n;

    cpp_int lower_factor = 1;  // C(n + s - 1, s - 1)
    for (int j = 1; j <= s - 1; ++j) lower_factor = lower_factor * (n + j) / j;
    const double log2_lower = log2_of(lower_factor);

    CheckReport report{.name = "multinomial-bounds"};
    report.record(hn - log2_multi, "upper", 1e-9);
    report.record(log2_multi - (hn - log2_lower), "lower", 1e-9);
    return report;
}

CheckReport entropy_lipschitz_check(int k, double eps, int trials, std::uint64_t seed) {
    if (eps <= 0.0 || eps > 1.0 / std::exp(1.0))
        throw contract_error("lipschitz check needs eps in (0, 1/e]");
    if (k < 2) throw contract_error("lipschitz check needs support k >= 2");
    CheckReport report{.name = "entropy-lipschitz"};
    const double bound = std::log(2.0) * k * eps * std::log2(1.0 / eps);
    std::mt19937_64 rng(splitmix64(seed));
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_int_distribution<int> pick(0, k - 1);
    for (int t = 0; t < trials; ++t) {
        // Random p, then q = p with mass <= eps moved between two coordinates.
        std::vector<double> p(k);
        double total = 0.0;
        for (double& x : p) total += (x = -std::log(std::max(unit(rng), 1e-300)));
        for (double& x : p) x /= total;
        int a = pick(rng), b = pick(rng);
        std::vector<double> q = p;
        if (a != b) {
            double t_move = std::min({unit(rng) * eps, p[a], 1.0 - p[b]});
            q[a] -= t_move;
            q[b] += t_move;
        }
        double dh = std::abs(entropy_bits({p}) - entropy_bits({q}));
        std::ostringstream where;
        where << "trial=" << t;
        report.record(bound - dh, where.str(), 1e-12);
    }
    // Boundary pair (eps, 1-eps) vs (0, 1) padded to support k.
    std::vector<double> p(k, 0.0), q(k, 0.0);
    p[0] = eps;
    p[1] = 1.0 - eps;
    q[1] = 1.0;
    double dh = std::abs(entropy_bits({p}) - entropy_bits({q}));
    report.record(bound - dh, "boundary", 1e-12);
    return report;
}

}  // namespace binweaver
