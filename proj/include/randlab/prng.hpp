#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace randlab::prng {

// Parameters of the linear congruential generator
//
//     r_{i+1} = (a * r_i + b) mod m
//
// with 0 <= a,b,r0 < m and 0 < m <= 2^63. A generator is called
// multiplicative when b == 0 and mixed otherwise.
class LcgParams {
public:
    LcgParams(std::uint64_t a, std::uint64_t b, std::uint64_t m, std::uint64_t r0);

    std::uint64_t a() const { return a_; }
    std::uint64_t b() const { return b_; }
    std::uint64_t m() const { return m_; }
    std::uint64_t r0() const { return r0_; }

    bool multiplicative() const { return b_ == 0; }

private:
    std::uint64_t a_, b_, m_, r0_;
};

// One LCG step. Intermediates are 128-bit so the result is exact for any
// m up to 2^63.
std::uint64_t lcg_next(std::uint64_t state, const LcgParams& params);

// The first `count` iterates r_1 .. r_count (the seed itself is not part
// of the output).
std::vector<std::uint64_t> generate(const LcgParams& params, std::uint64_t count);

// Elementwise r/m, mapping residues into [0, 1). Throws if any element
// is >= m.
std::vector<double> normalize(std::span<const std::uint64_t> seq, std::uint64_t m);

struct PeriodReport {
    std::uint64_t period = 0;   // cycle length reached from r0
    std::uint64_t tail = 0;     // steps before entering the cycle
    bool full_period = false;   // period == m
};

// Cycle structure of the orbit of r0 under the LCG map, found with
// Brent's algorithm: O(tail + period) time, O(1) memory.
PeriodReport find_period(const LcgParams& params);

struct FullPeriodCheck {
    bool coprime_ok = false;      // gcd(b, m) == 1
    bool prime_factor_ok = false; // a-1 divisible by every prime factor of m
    bool four_ok = false;         // 4 | m implies 4 | a-1
    bool predicted_full = false;  // all three
};

// The three-condition full-period test, evaluated exactly (m factored by
// trial division).
FullPeriodCheck check_full_period_conditions(const LcgParams& params);

// Distinct prime factors of m in increasing order (trial division).
std::vector<std::uint64_t> distinct_prime_factors(std::uint64_t m);

// Fibonacci-style linear feedback shift register. Tap positions are
// numbered 1..width from the feedback end; the output bit is the one
// shifted out. taps = {width, width-k} realizes the trinomial
// x^width + x^k + 1.
class LfsrParams {
public:
    LfsrParams(int width, std::vector<int> taps, std::uint64_t seed);

    int width() const { return width_; }
    const std::vector<int>& taps() const { return taps_; }
    std::uint64_t seed() const { return seed_; }

private:
    int width_;
    std::vector<int> taps_;
    std::uint64_t seed_;
};

// `count` output bits; deterministic in the seed.
std::vector<std::uint8_t> lfsr_generate(const LfsrParams& params, std::uint64_t count);

} // namespace randlab::prng
