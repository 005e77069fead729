#pragma once

// Independent oracles used by the unit and acceptance suites. These
// deliberately avoid the code paths they check: the chi-square tail is
// integrated numerically instead of using the incomplete-gamma kernel,
// and orbits are measured with a hash map instead of Brent's algorithm.

#include <cmath>
#include <cstdint>
#include <functional>
#include <unordered_map>
#include <vector>

namespace oracles {

// Chi-square upper tail P(X > x) by adaptive Simpson quadrature of the
// density over [x, cutoff]; the cutoff is pushed out until the remaining
// mass is negligible.
inline double chisq_density(double t, double k) {
    if (t <= 0.0)
        return 0.0;
    const double half = k / 2.0;
    return std::exp((half - 1.0) * std::log(t) - t / 2.0 - half * std::log(2.0) -
                    std::lgamma(half));
}

inline double simpson(const std::function<double(double)>& f, double a, double b) {
    const double c = 0.5 * (a + b);
    return (b - a) / 6.0 * (f(a) + 4.0 * f(c) + f(b));
}

inline double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                               double whole, double eps, int depth) {
    const double c = 0.5 * (a + b);
    const double left = simpson(f, a, c);
    const double right = simpson(f, c, b);
    if (depth <= 0 || std::fabs(left + right - whole) < 15.0 * eps)
        return left + right + (left + right - whole) / 15.0;
    return adaptive_simpson(f, a, c, left, eps / 2.0, depth - 1) +
           adaptive_simpson(f, c, b, right, eps / 2.0, depth - 1);
}

inline double chisq_upper_tail_quadrature(double x, int df) {
    if (x <= 0.0)
        return 1.0;
    const auto f = [df](double t) { return chisq_density(t, df); };
    // Well past the bulk: the tail beyond mean + 60 sd + x is below 1e-15.
    const double cutoff = x + df + 60.0 * std::sqrt(2.0 * df) + 60.0;
    // Fixed panels keep the density's bulk sampled no matter where the
    // peak lies; each panel is then refined adaptively.
    const int panels = 256;
    const double width = (cutoff - x) / panels;
    double integral = 0.0;
    for (int i = 0; i < panels; ++i) {
        const double a = x + i * width;
        const double b = a + width;
        const double whole = simpson(f, a, b);
        integral += adaptive_simpson(f, a, b, whole, 1e-13 / panels, 40);
    }
    return std::min(1.0, std::max(0.0, integral));
}

// Orbit structure of x -> (a x + b) mod m by explicit visit bookkeeping.
struct Orbit {
    std::uint64_t period;
    std::uint64_t tail;
};

inline Orbit brute_force_orbit(std::uint64_t a, std::uint64_t b, std::uint64_t m,
                               std::uint64_t r0) {
    std::unordered_map<std::uint64_t, std::uint64_t> first_seen;
    std::uint64_t state = r0;
    std::uint64_t index = 0;
    while (!first_seen.contains(state)) {
        first_seen[state] = index++;
        state = static_cast<std::uint64_t>(
            (static_cast<unsigned __int128>(a) * state + b) % m);
    }
    const std::uint64_t entry = first_seen[state];
    return Orbit{index - entry, entry};
}

// Distribution of the number of runs over all arrangements of n0 lows
// and n1 highs (exhaustive; keep n0+n1 small).
inline std::vector<std::uint64_t> runs_distribution(int n0, int n1) {
    const int n = n0 + n1;
    std::vector<std::uint64_t> counts(static_cast<std::size_t>(n) + 1, 0);
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
        if (__builtin_popcount(mask) != n1)
            continue;
        int runs = 1;
        for (int i = 1; i < n; ++i) {
            if (((mask >> i) & 1u) != ((mask >> (i - 1)) & 1u))
                ++runs;
        }
        ++counts[static_cast<std::size_t>(runs)];
    }
    return counts;
}

} // namespace oracles
