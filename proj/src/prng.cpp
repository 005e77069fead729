#include "randlab/prng.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "randlab/errors.hpp"

namespace randlab::prng {

namespace {

constexpr std::uint64_t kMaxModulus = std::uint64_t(1) << 63;

} // namespace

LcgParams::LcgParams(std::uint64_t a, std::uint64_t b, std::uint64_t m, std::uint64_t r0)
    : a_(a), b_(b), m_(m), r0_(r0) {
    if (m == 0)
        throw std::invalid_argument("LcgParams: m must be positive");
    if (m > kMaxModulus)
        throw std::invalid_argument("LcgParams: m exceeds 2^63");
    if (a >= m || b >= m || r0 >= m)
        throw std::invalid_argument("LcgParams: a, b, r0 must lie in [0, m)");
}

std::uint64_t lcg_next(std::uint64_t state, const LcgParams& params) {
    unsigned __int128 acc = static_cast<unsigned __int128>(params.a()) * state + params.b();
    return static_cast<std::uint64_t>(acc % params.m());
}

std::vector<std::uint64_t> generate(const LcgParams& params, std::uint64_t count) {
    if (count == 0)
        throw std::invalid_argument("generate: count must be >= 1");
    std::vector<std::uint64_t> out;
    out.reserve(count);
    std::uint64_t state = params.r0();
    for (std::uint64_t i = 0; i < count; ++i) {
        state = lcg_next(state, params);
        out.push_back(state);
    }
    return out;
}

std::vector<double> normalize(std::span<const std::uint64_t> seq, std::uint64_t m) {
    if (m == 0)
        throw std::invalid_argument("normalize: m must be positive");
    std::vector<double> out;
    out.reserve(seq.size());
    for (std::uint64_t r : seq) {
        if (r >= m)
            throw std::invalid_argument("normalize: element " + std::to_string(r) +
                                        " not below modulus " + std::to_string(m));
        double v = static_cast<double>(r) / static_cast<double>(m);
        // r/m < 1 mathematically; the division may still round up to 1.0
        // when m is within a few ulps of 2^63.
        if (v >= 1.0)
            v = std::nextafter(1.0, 0.0);
        out.push_back(v);
    }
    return out;
}

PeriodReport find_period(const LcgParams& params) {
    const auto f = [&](std::uint64_t x) { return lcg_next(x, params); };

    // Brent: teleport the tortoise to the hare at powers of two until the
    // hare laps it, giving the cycle length lambda.
    std::uint64_t power = 1, lambda = 1;
    std::uint64_t tortoise = params.r0();
    std::uint64_t hare = f(tortoise);
    while (tortoise != hare) {
        if (power == lambda) {
            tortoise = hare;
            power *= 2;
            lambda = 0;
        }
        hare = f(hare);
        ++lambda;
    }

    // Tail length: advance one pointer lambda steps, then walk both until
    // they meet at the cycle entry.
    std::uint64_t mu = 0;
    tortoise = params.r0();
    hare = params.r0();
    for (std::uint64_t i = 0; i < lambda; ++i)
        hare = f(hare);
    while (tortoise != hare) {
        tortoise = f(tortoise);
        hare = f(hare);
        ++mu;
    }

    return PeriodReport{lambda, mu, lambda == params.m()};
}

std::vector<std::uint64_t> distinct_prime_factors(std::uint64_t m) {
    std::vector<std::uint64_t> factors;
    if (m % 2 == 0) {
        factors.push_back(2);
        while (m % 2 == 0)
            m /= 2;
    }
    for (std::uint64_t p = 3; p <= m / p; p += 2) {
        if (m % p == 0) {
            factors.push_back(p);
            while (m % p == 0)
                m /= p;
        }
    }
    if (m > 1)
        factors.push_back(m);
    return factors;
}

FullPeriodCheck check_full_period_conditions(const LcgParams& params) {
    const std::uint64_t a = params.a(), b = params.b(), m = params.m();

    FullPeriodCheck check;
    check.coprime_ok = std::gcd(b, m) == 1;

    // a == 0 means a-1 = -1, which no prime divides.
    if (a == 0) {
        check.prime_factor_ok = distinct_prime_factors(m).empty();
        check.four_ok = m % 4 != 0;
    } else {
        const std::uint64_t am1 = a - 1;
        check.prime_factor_ok = true;
        for (std::uint64_t p : distinct_prime_factors(m)) {
            if (am1 % p != 0) {
                check.prime_factor_ok = false;
                break;
            }
        }
        check.four_ok = (m % 4 != 0) || (am1 % 4 == 0);
    }

    check.predicted_full = check.coprime_ok && check.prime_factor_ok && check.four_ok;
    return check;
}

LfsrParams::LfsrParams(int width, std::vector<int> taps, std::uint64_t seed)
    : width_(width), taps_(std::move(taps)), seed_(seed) {
    if (width < 2 || width > 64)
        throw std::invalid_argument("LfsrParams: width must lie in [2, 64]");
    if (taps_.empty())
        throw std::invalid_argument("LfsrParams: taps must be nonempty");
    for (int t : taps_) {
        if (t < 1 || t > width)
            throw std::invalid_argument("LfsrParams: tap positions must lie in [1, width]");
    }
    std::sort(taps_.begin(), taps_.end());
    taps_.erase(std::unique(taps_.begin(), taps_.end()), taps_.end());
    if (seed == 0)
        throw std::invalid_argument("LfsrParams: seed must be nonzero (all-zero state is a fixed point)");
    if (width < 64 && seed >= (std::uint64_t(1) << width))
        throw std::invalid_argument("LfsrParams: seed must be below 2^width");
}

std::vector<std::uint8_t> lfsr_generate(const LfsrParams& params, std::uint64_t count) {
    if (count == 0)
        throw std::invalid_argument("lfsr_generate: count must be >= 1");
    const int width = params.width();
    std::uint64_t state = params.seed();
    std::vector<std::uint8_t> out;
    out.reserve(count);
    for (std::uint64_t i = 0; i < count; ++i) {
        std::uint64_t feedback = 0;
        for (int t : params.taps())
            feedback ^= (state >> (width - t)) & 1u;
        out.push_back(static_cast<std::uint8_t>(state & 1u));
        state = (state >> 1) | (feedback << (width - 1));
    }
    return out;
}

} // namespace randlab::prng
