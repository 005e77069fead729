#include "randlab/randtests.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <stdexcept>

#include "randlab/errors.hpp"

namespace randlab::randtests {

namespace {

// Regularized lower incomplete gamma P(s, x) by series expansion.
// Converges quickly for x < s + 1.
double gamma_p_series(double s, double x) {
    double ap = s;
    double sum = 1.0 / s;
    double del = sum;
    for (int i = 0; i < 1000; ++i) {
        ap += 1.0;
        del *= x / ap;
        sum += del;
        if (std::fabs(del) < std::fabs(sum) * 1e-16)
            break;
    }
    return sum * std::exp(-x + s * std::log(x) - std::lgamma(s));
}

// Regularized upper incomplete gamma Q(s, x) by modified Lentz continued
// fraction. Converges quickly for x >= s + 1.
double gamma_q_contfrac(double s, double x) {
    constexpr double kFpMin = 1e-300;
    double b = x + 1.0 - s;
    double c = 1.0 / kFpMin;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= 1000; ++i) {
        const double an = -static_cast<double>(i) * (i - s);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < kFpMin)
            d = kFpMin;
        c = b + an / c;
        if (std::fabs(c) < kFpMin)
            c = kFpMin;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < 1e-16)
            break;
    }
    return h * std::exp(-x + s * std::log(x) - std::lgamma(s));
}

double gamma_q(double s, double x) {
    if (x <= 0.0)
        return 1.0;
    if (x < s + 1.0)
        return 1.0 - gamma_p_series(s, x);
    return gamma_q_contfrac(s, x);
}

int bin_index(double v, int d) {
    int idx = static_cast<int>(v * d);
    return std::min(idx, d - 1);
}

struct ChiSquare {
    double statistic;
    int df;
};

ChiSquare chi_square_from_counts(const std::vector<std::uint64_t>& observed,
                                 const std::vector<double>& expected) {
    double stat = 0.0;
    for (std::size_t i = 0; i < observed.size(); ++i) {
        const double diff = static_cast<double>(observed[i]) - expected[i];
        stat += diff * diff / expected[i];
    }
    return {stat, static_cast<int>(observed.size()) - 1};
}

TestReport make_report(std::string name, double statistic, int df, double p) {
    return TestReport{std::move(name), statistic, df, p, verdict_for(p)};
}

// Collapse adjacent categories until every expected count is >= 5.
// A single left-to-right pass folds small cells into their right
// neighbor; the tail is then folded leftward if it is still small.
void merge_small_categories(std::vector<std::uint64_t>& observed,
                            std::vector<double>& expected,
                            const char* test_name) {
    std::vector<std::uint64_t> obs;
    std::vector<double> exp;
    std::uint64_t o_acc = 0;
    double e_acc = 0.0;
    for (std::size_t i = 0; i < observed.size(); ++i) {
        o_acc += observed[i];
        e_acc += expected[i];
        if (e_acc >= 5.0) {
            obs.push_back(o_acc);
            exp.push_back(e_acc);
            o_acc = 0;
            e_acc = 0.0;
        }
    }
    if (e_acc > 0.0 || o_acc > 0) {
        if (!exp.empty()) {
            obs.back() += o_acc;
            exp.back() += e_acc;
        } else {
            obs.push_back(o_acc);
            exp.push_back(e_acc);
        }
    }
    if (exp.size() < 2)
        throw insufficient_sample_error(std::string(test_name) +
                                        ": fewer than two categories reach expected count 5");
    observed = std::move(obs);
    expected = std::move(exp);
}

} // namespace

SampleSeq::SampleSeq(std::vector<double> values) : values_(std::move(values)) {
    if (values_.empty())
        throw std::invalid_argument("SampleSeq: sequence must be nonempty");
    for (double v : values_) {
        if (!(v >= 0.0 && v < 1.0))
            throw std::invalid_argument("SampleSeq: values must lie in [0, 1)");
    }
}

Verdict verdict_for(double p) {
    if (p < 0.001 || p > 0.999)
        return Verdict::Fail;
    if (p < 0.01 || p > 0.99)
        return Verdict::Suspect;
    return Verdict::Pass;
}

std::string to_string(Verdict v) {
    switch (v) {
    case Verdict::Pass: return "PASS";
    case Verdict::Suspect: return "SUSPECT";
    case Verdict::Fail: return "FAIL";
    }
    return "?";
}

std::string to_string(Overall o) {
    return o == Overall::LooksRandom ? "LOOKS_RANDOM" : "PATTERNED";
}

double chi_square_pvalue(double statistic, int df) {
    if (df <= 0)
        throw std::invalid_argument("chi_square_pvalue: df must be positive");
    if (statistic < 0.0)
        throw std::invalid_argument("chi_square_pvalue: statistic must be nonnegative");
    return gamma_q(df * 0.5, statistic * 0.5);
}

TestReport frequency_test(const SampleSeq& seq, int d) {
    if (d < 2)
        throw std::invalid_argument("frequency_test: d must be >= 2");
    const std::size_t n = seq.size();
    if (n < static_cast<std::size_t>(5 * d))
        throw insufficient_sample_error("frequency_test: need n >= 5*d");

    std::vector<std::uint64_t> observed(d, 0);
    for (double v : seq.values())
        ++observed[bin_index(v, d)];
    std::vector<double> expected(d, static_cast<double>(n) / d);

    const auto [stat, df] = chi_square_from_counts(observed, expected);
    return make_report("frequency", stat, df, chi_square_pvalue(stat, df));
}

TestReport serial_test(const SampleSeq& seq, int d) {
    if (d < 2)
        throw std::invalid_argument("serial_test: d must be >= 2");
    const std::size_t n = seq.size();
    if (n < 2 || n % 2 != 0)
        throw insufficient_sample_error("serial_test: need an even number of values");
    const std::size_t pairs = n / 2;
    if (pairs < static_cast<std::size_t>(5 * d * d))
        throw insufficient_sample_error("serial_test: need n/2 >= 5*d^2 pairs");

    std::vector<std::uint64_t> observed(static_cast<std::size_t>(d) * d, 0);
    const auto& v = seq.values();
    for (std::size_t i = 0; i < pairs; ++i) {
        const int c0 = bin_index(v[2 * i], d);
        const int c1 = bin_index(v[2 * i + 1], d);
        ++observed[static_cast<std::size_t>(c0) * d + c1];
    }
    std::vector<double> expected(observed.size(),
                                 static_cast<double>(pairs) / (static_cast<double>(d) * d));

    const auto [stat, df] = chi_square_from_counts(observed, expected);
    return make_report("serial", stat, df, chi_square_pvalue(stat, df));
}

std::vector<double> gap_category_probs(double p, int t) {
    std::vector<double> probs;
    probs.reserve(t + 1);
    double tail = 1.0; // (1-p)^r
    double cum = 0.0;
    for (int r = 0; r < t; ++r) {
        probs.push_back(p * tail);
        cum += probs.back();
        tail *= 1.0 - p;
    }
    // The >=t category is (1-p)^t; writing it as the complement keeps the
    // partition summing to 1 exactly.
    probs.push_back(1.0 - cum);
    return probs;
}

TestReport gap_test(const SampleSeq& seq, double alpha, double beta, int t) {
    if (!(alpha >= 0.0 && alpha < beta && beta <= 1.0))
        throw std::invalid_argument("gap_test: need 0 <= alpha < beta <= 1");
    if (t < 1)
        throw std::invalid_argument("gap_test: t must be >= 1");

    const auto hit = [&](double v) { return v >= alpha && v < beta; };

    // Gap lengths between consecutive hits.
    std::vector<std::uint64_t> observed(t + 1, 0);
    std::uint64_t gaps = 0;
    bool in_stream = false;
    std::uint64_t run = 0;
    for (double v : seq.values()) {
        if (hit(v)) {
            if (in_stream) {
                ++observed[std::min<std::uint64_t>(run, t)];
                ++gaps;
            }
            in_stream = true;
            run = 0;
        } else if (in_stream) {
            ++run;
        }
    }
    if (gaps < 30)
        throw insufficient_sample_error("gap_test: need at least 30 completed gaps");

    const double p = beta - alpha;
    const auto probs = gap_category_probs(p, t);
    std::vector<double> expected(probs.size());
    for (std::size_t i = 0; i < probs.size(); ++i)
        expected[i] = probs[i] * static_cast<double>(gaps);

    merge_small_categories(observed, expected, "gap_test");
    const auto [stat, df] = chi_square_from_counts(observed, expected);
    return make_report("gap", stat, df, chi_square_pvalue(stat, df));
}

std::vector<std::uint64_t> poker_category_numerators(int d) {
    if (d < 5 || d > 64)
        throw std::invalid_argument("poker probabilities: d must lie in [5, 64]");
    // Stirling set numbers S(5, r): ways to split 5 positions into r
    // nonempty unlabeled groups.
    static constexpr std::uint64_t kStirling5[5] = {1, 15, 25, 10, 1};
    std::vector<std::uint64_t> numerators(5);
    for (int r = 1; r <= 5; ++r) {
        std::uint64_t falling = 1;
        for (int i = 0; i < r; ++i)
            falling *= static_cast<std::uint64_t>(d - i);
        numerators[r - 1] = falling * kStirling5[r - 1];
    }
    return numerators;
}

std::vector<double> poker_category_probs(int d) {
    const auto numerators = poker_category_numerators(d);
    const double denom = std::pow(static_cast<double>(d), 5.0);
    std::vector<double> probs(5);
    for (int i = 0; i < 5; ++i)
        probs[i] = static_cast<double>(numerators[i]) / denom;
    return probs;
}

TestReport poker_test(const SampleSeq& seq, int d) {
    if (d < 5)
        throw std::invalid_argument("poker_test: d must be >= 5");
    if (d > 64)
        throw std::invalid_argument("poker_test: d must be <= 64");
    const std::size_t groups = seq.size() / 5;
    if (groups == 0)
        throw insufficient_sample_error("poker_test: need at least one group of 5 values");

    std::vector<std::uint64_t> observed(5, 0);
    const auto& v = seq.values();
    for (std::size_t g = 0; g < groups; ++g) {
        std::uint64_t seen = 0;
        int distinct = 0;
        for (int i = 0; i < 5; ++i) {
            const int digit = bin_index(v[5 * g + i], d);
            const std::uint64_t bit = std::uint64_t(1) << digit;
            if (!(seen & bit)) {
                seen |= bit;
                ++distinct;
            }
        }
        ++observed[distinct - 1];
    }

    const auto probs = poker_category_probs(d);
    std::vector<double> expected(5);
    for (int i = 0; i < 5; ++i)
        expected[i] = probs[i] * static_cast<double>(groups);

    merge_small_categories(observed, expected, "poker_test");
    const auto [stat, df] = chi_square_from_counts(observed, expected);
    return make_report("poker", stat, df, chi_square_pvalue(stat, df));
}

TestReport runs_test(const SampleSeq& seq) {
    const std::size_t n = seq.size();
    if (n < 20)
        throw insufficient_sample_error("runs_test: need n >= 20");

    std::vector<double> sorted(seq.values());
    std::sort(sorted.begin(), sorted.end());
    const double median = (n % 2 == 1)
                              ? sorted[n / 2]
                              : 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]);

    // Dichotomize in order; values equal to the median are dropped.
    std::uint64_t n_low = 0, n_high = 0, runs = 0;
    int prev = -1;
    for (double v : seq.values()) {
        if (v == median)
            continue;
        const int side = v > median ? 1 : 0;
        (side ? n_high : n_low) += 1;
        if (side != prev)
            ++runs;
        prev = side;
    }
    if (n_low == 0 || n_high == 0)
        throw insufficient_sample_error("runs_test: no dichotomy");

    const double n0 = static_cast<double>(n_low);
    const double n1 = static_cast<double>(n_high);
    const double total = n0 + n1;
    const double mu = 2.0 * n0 * n1 / total + 1.0;
    const double var =
        2.0 * n0 * n1 * (2.0 * n0 * n1 - total) / (total * total * (total - 1.0));
    if (var <= 0.0)
        throw insufficient_sample_error("runs_test: no dichotomy");

    const double z = (static_cast<double>(runs) - mu) / std::sqrt(var);
    const double p = std::erfc(std::fabs(z) / std::sqrt(2.0));
    return make_report("runs", z, 0, p);
}

BatteryReport battery(const SampleSeq& seq) {
    BatteryReport report;
    const auto run = [&](const char* name, auto&& test) {
        try {
            report.reports.push_back(test());
        } catch (const insufficient_sample_error& e) {
            report.skipped.push_back(SkippedTest{name, e.what()});
        }
    };

    run("frequency", [&] { return frequency_test(seq, 16); });
    run("serial", [&] { return serial_test(seq, 4); });
    run("gap", [&] { return gap_test(seq, 0.0, 0.5, 7); });
    run("poker", [&] { return poker_test(seq, 10); });
    run("runs", [&] { return runs_test(seq); });

    if (report.reports.empty())
        throw insufficient_sample_error("battery: no test could run on this sample");

    const bool any_fail = std::any_of(report.reports.begin(), report.reports.end(),
                                      [](const TestReport& r) { return r.verdict == Verdict::Fail; });
    report.overall = any_fail ? Overall::Patterned : Overall::LooksRandom;
    return report;
}

} // namespace randlab::randtests
