#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace randlab::cexp {

// Exact operation counts observed during one instrumented run. Only the
// counters relevant to the algorithm are populated.
struct CounterSet {
    std::uint64_t comparisons = 0;
    std::uint64_t swaps = 0;
    std::uint64_t multiplications = 0;
    std::uint64_t additions = 0;
};

struct SortResult {
    std::vector<std::int64_t> output;
    CounterSet counters;
};

// Simplified replacement sort: scan j = i+1..n-1 and swap a[i] <-> a[j]
// whenever a[j] < a[i]. Comparisons are n(n-1)/2 no matter the input;
// interchanges depend on it.
SortResult replacement_sort_instrumented(std::vector<std::int64_t> input);

// Row-major square integer matrix.
struct Matrix {
    int n = 0;
    std::vector<std::int64_t> data;

    Matrix() = default;
    Matrix(int n_, std::int64_t fill = 0) : n(n_), data(static_cast<std::size_t>(n_) * n_, fill) {}

    std::int64_t& at(int i, int j) { return data[static_cast<std::size_t>(i) * n + j]; }
    std::int64_t at(int i, int j) const { return data[static_cast<std::size_t>(i) * n + j]; }

    bool operator==(const Matrix&) const = default;
};

struct MultiplyResult {
    Matrix c;
    CounterSet counters;
};

// Winograd's inner-product scheme: row/column pair-products are
// precomputed and each element needs only half the multiplications of
// the textbook loop. The operation counts depend on n alone.
MultiplyResult winograd_multiply_instrumented(const Matrix& a, const Matrix& b);

// Textbook triple loop; the correctness oracle for the Winograd path.
Matrix naive_multiply(const Matrix& a, const Matrix& b);

// Input sites and replication count of one experiment.
class Design {
public:
    Design(std::vector<std::uint64_t> points, int replications, std::uint64_t base_seed);

    const std::vector<std::uint64_t>& points() const { return points_; }
    int replications() const { return replications_; }
    std::uint64_t base_seed() const { return base_seed_; }

private:
    std::vector<std::uint64_t> points_;
    int replications_;
    std::uint64_t base_seed_;
};

struct TrialRow {
    std::uint64_t n = 0;
    int rep = 0;
    std::uint64_t seed = 0;
    CounterSet counters;
    std::optional<std::uint64_t> wall_ns;
};

struct TrialTable {
    std::string algorithm;
    std::vector<TrialRow> rows; // ordered by (point index, replication index)
};

enum class Algorithm { ReplacementSort, Winograd };

std::string to_string(Algorithm a);
Algorithm algorithm_from_string(std::string_view name);

// Per-trial seed: a fixed avalanche mix of (base_seed, n, r) so trials are
// independent streams and the table is reproducible bit-for-bit on any
// platform and worker count.
std::uint64_t mix64(std::uint64_t base, std::uint64_t n, std::uint64_t r);

// Deterministic splitmix64 stream used for input generation.
class SeededStream {
public:
    explicit SeededStream(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64();
    // Uniform in [0, bound), bound >= 1, by rejection (no modulo bias).
    std::uint64_t next_below(std::uint64_t bound);

private:
    std::uint64_t state_;
};

// Runs |points| x replications instrumented trials. Sort inputs are
// seeded Fisher-Yates permutations of 1..n; Winograd inputs have entries
// uniform in [-100, 100]. Counter columns are bit-identical across runs
// and across `jobs`; wall time (optional) is exempt.
TrialTable run_experiment(Algorithm algorithm, const Design& design,
                          bool measure_wall = false, int jobs = 1);

// Counter column selectors, named after the CSV header.
std::uint64_t response_value(const TrialRow& row, std::string_view response);

enum class Label { DeterministicDegenerate, NoisyRandomlike, NoisyPatterned };

std::string to_string(Label label);

struct PointStats {
    std::uint64_t n = 0;
    double mean = 0.0;
    double variance = 0.0; // unbiased, across replications
};

struct ClassificationReport {
    std::string response;
    std::vector<PointStats> per_point;
    Label label = Label::DeterministicDegenerate;
};

// Degenerate when every per-point variance is <= epsilon; otherwise the
// per-point standardized residuals are mapped through the empirical CDF
// and handed to the statistical battery.
ClassificationReport classify(const TrialTable& table, std::string_view response,
                              double epsilon);

struct SurrogateFit {
    std::vector<std::string> basis; // from {"1","n","n2","n3","nlogn"}
    std::vector<double> coefficients;
    double r_squared = 0.0;   // on per-point means
    double residual_sd = 0.0; // pooled across replications
};

// Ordinary least squares of the per-point mean response on basis
// functions of n, solved by Householder QR.
SurrogateFit fit_surrogate(const TrialTable& table, std::string_view response,
                           const std::vector<std::string>& basis);

struct Prediction {
    double mean = 0.0;
    double band = 0.0; // 2 * residual_sd, a reported spread, not a calibrated interval
};

Prediction predict(const SurrogateFit& fit, std::uint64_t n);

double basis_value(std::string_view name, std::uint64_t n);

} // namespace randlab::cexp
