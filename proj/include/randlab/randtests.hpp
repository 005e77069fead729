#pragma once

#include <string>
#include <vector>

namespace randlab::randtests {

// A sequence of values in [0, 1), typically a normalized generator stream.
class SampleSeq {
public:
    explicit SampleSeq(std::vector<double> values);

    const std::vector<double>& values() const { return values_; }
    std::size_t size() const { return values_.size(); }

private:
    std::vector<double> values_;
};

enum class Verdict { Pass, Suspect, Fail };

// Two-sided verdict rule: both tails are flagged, so a too-regular
// sequence (p near 1) fails just like a too-irregular one (p near 0).
//   FAIL    iff p < 0.001 or p > 0.999
//   SUSPECT iff p in [0.001, 0.01) or (0.99, 0.999]
//   PASS    otherwise
Verdict verdict_for(double p_value);

std::string to_string(Verdict v);

struct TestReport {
    std::string test_name;
    double statistic = 0.0;
    int df = 0;          // 0 for z-tests
    double p_value = 0.0;
    Verdict verdict = Verdict::Pass;
};

struct SkippedTest {
    std::string test_name;
    std::string reason;
};

enum class Overall { LooksRandom, Patterned };

std::string to_string(Overall o);

struct BatteryReport {
    std::vector<TestReport> reports;
    std::vector<SkippedTest> skipped; // tests whose sample gate failed
    Overall overall = Overall::LooksRandom; // Patterned iff any report FAILs
};

// Upper-tail chi-square probability Q(df/2, statistic/2), computed from
// the regularized incomplete gamma function (series for x < s+1,
// continued fraction otherwise). Absolute error <= 1e-10.
double chi_square_pvalue(double statistic, int df);

// Equidistribution over d equal bins of [0,1). Needs n >= 5*d.
TestReport frequency_test(const SampleSeq& seq, int d);

// Non-overlapping pairs binned into d x d cells, df = d^2 - 1.
// Needs an even n with n/2 >= 5*d^2.
TestReport serial_test(const SampleSeq& seq, int d);

// Lengths of runs of values outside [alpha, beta) between consecutive
// hits, categories {0, .., t-1, >=t} with geometric null probabilities.
// Needs at least 30 completed gaps.
TestReport gap_test(const SampleSeq& seq, double alpha, double beta, int t);

// Values digitized as floor(v*d), scored in non-overlapping groups of 5
// by the number of distinct digits. Categories with expected count < 5
// are merged into their neighbors.
TestReport poker_test(const SampleSeq& seq, int d);

// Runs above/below the sample median (ties with the median dropped),
// z-scored against the exact permutation null moments. Needs n >= 20.
TestReport runs_test(const SampleSeq& seq);

// Null category probabilities P(r distinct digits in a 5-digit group),
// r = 1..5, as exact integer ratios rounded once to double.
std::vector<double> poker_category_probs(int d);

// Exact numerators of the poker probabilities over denominator d^5.
std::vector<std::uint64_t> poker_category_numerators(int d);

// Geometric gap-category probabilities {p(1-p)^r for r < t, (1-p)^t}.
std::vector<double> gap_category_probs(double p, int t);

// Runs every test with the battery defaults (frequency d=16, serial d=4,
// gap [0,0.5) t=7, poker d=10, runs). Tests whose sample gate fails are
// skipped and listed; if nothing can run the battery itself throws.
BatteryReport battery(const SampleSeq& seq);

} // namespace randlab::randtests
