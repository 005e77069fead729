#include "randlab/cexp.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <thread>

#include "randlab/errors.hpp"
#include "randlab/randtests.hpp"

namespace randlab::cexp {

namespace {

std::uint64_t splitmix64_next(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

std::vector<std::int64_t> random_permutation(std::uint64_t n, SeededStream& stream) {
    std::vector<std::int64_t> values(n);
    std::iota(values.begin(), values.end(), std::int64_t{1});
    for (std::uint64_t i = n; i > 1; --i) {
        const std::uint64_t j = stream.next_below(i);
        std::swap(values[i - 1], values[j]);
    }
    return values;
}

Matrix random_matrix(int n, SeededStream& stream) {
    Matrix m(n);
    for (auto& entry : m.data)
        entry = static_cast<std::int64_t>(stream.next_below(201)) - 100;
    return m;
}

TrialRow run_trial(Algorithm algorithm, std::uint64_t n, int rep, std::uint64_t seed,
                   bool measure_wall) {
    TrialRow row;
    row.n = n;
    row.rep = rep;
    row.seed = seed;

    SeededStream stream(seed);
    if (algorithm == Algorithm::ReplacementSort) {
        auto input = random_permutation(n, stream);
        const auto t0 = std::chrono::steady_clock::now();
        auto result = replacement_sort_instrumented(std::move(input));
        const auto t1 = std::chrono::steady_clock::now();
        row.counters = result.counters;
        if (measure_wall)
            row.wall_ns = static_cast<std::uint64_t>(
                std::chrono::duration_cast<std::chrono::nanoseconds>(t1 - t0).count());
    } else {
        const Matrix a = random_matrix(static_cast<int>(n), stream);
        const Matrix b = random_matrix(static_cast<int>(n), stream);
        const auto t0 = std::chrono::steady_clock::now();
        auto result = winograd_multiply_instrumented(a, b);
        const auto t1 = std::chrono::steady_clock::now();
        row.counters = result.counters;
        if (measure_wall)
            row.wall_ns = static_cast<std::uint64_t>(
                std::chrono::duration_cast<std::chrono::nanoseconds>(t1 - t0).count());
    }
    return row;
}

// Householder QR with column equilibration; throws on rank deficiency.
std::vector<double> qr_least_squares(std::vector<std::vector<double>> columns,
                                     std::vector<double> rhs) {
    const std::size_t rows = rhs.size();
    const std::size_t cols = columns.size();

    std::vector<double> scale(cols, 1.0);
    for (std::size_t j = 0; j < cols; ++j) {
        double norm = 0.0;
        for (double v : columns[j])
            norm += v * v;
        norm = std::sqrt(norm);
        if (norm > 0.0) {
            scale[j] = norm;
            for (double& v : columns[j])
                v /= norm;
        }
    }

    for (std::size_t k = 0; k < cols; ++k) {
        double norm = 0.0;
        for (std::size_t i = k; i < rows; ++i)
            norm += columns[k][i] * columns[k][i];
        norm = std::sqrt(norm);
        if (norm < 1e-12)
            throw std::invalid_argument("fit_surrogate: singular design (basis functions "
                                        "are linearly dependent on these points)");

        const double alpha = columns[k][k] >= 0.0 ? -norm : norm;
        std::vector<double> v(rows, 0.0);
        v[k] = columns[k][k] - alpha;
        for (std::size_t i = k + 1; i < rows; ++i)
            v[i] = columns[k][i];
        double vnorm2 = 0.0;
        for (std::size_t i = k; i < rows; ++i)
            vnorm2 += v[i] * v[i];
        if (vnorm2 == 0.0) {
            columns[k][k] = alpha;
            continue;
        }

        const auto reflect = [&](std::vector<double>& target) {
            double dot = 0.0;
            for (std::size_t i = k; i < rows; ++i)
                dot += v[i] * target[i];
            const double beta = 2.0 * dot / vnorm2;
            for (std::size_t i = k; i < rows; ++i)
                target[i] -= beta * v[i];
        };
        for (std::size_t j = k; j < cols; ++j)
            reflect(columns[j]);
        reflect(rhs);
    }

    // Back-substitute through the triangular factor.
    std::vector<double> solution(cols, 0.0);
    for (std::size_t k = cols; k-- > 0;) {
        double acc = rhs[k];
        for (std::size_t j = k + 1; j < cols; ++j)
            acc -= columns[j][k] * solution[j];
        solution[k] = acc / columns[k][k];
    }
    for (std::size_t j = 0; j < cols; ++j)
        solution[j] /= scale[j];
    return solution;
}

} // namespace

SortResult replacement_sort_instrumented(std::vector<std::int64_t> input) {
    if (input.empty())
        throw std::invalid_argument("replacement_sort: input must be nonempty");
    SortResult result;
    result.output = std::move(input);
    auto& a = result.output;
    const std::size_t n = a.size();
    for (std::size_t i = 0; i + 1 < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            ++result.counters.comparisons;
            if (a[j] < a[i]) {
                std::swap(a[i], a[j]);
                ++result.counters.swaps;
            }
        }
    }
    return result;
}

Matrix naive_multiply(const Matrix& a, const Matrix& b) {
    if (a.n != b.n || a.n < 1)
        throw std::invalid_argument("naive_multiply: need square matrices of equal order");
    const int n = a.n;
    Matrix c(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            std::int64_t acc = 0;
            for (int k = 0; k < n; ++k)
                acc += a.at(i, k) * b.at(k, j);
            c.at(i, j) = acc;
        }
    return c;
}

MultiplyResult winograd_multiply_instrumented(const Matrix& a, const Matrix& b) {
    if (a.n != b.n || a.n < 1)
        throw std::invalid_argument("winograd_multiply: need square matrices of equal order");
    const int n = a.n;
    const int half = n / 2;
    const bool odd = n % 2 != 0;

    MultiplyResult result;
    result.c = Matrix(n);
    auto& ops = result.counters;

    // Row pair-products u_i = sum_k a[i][2k] * a[i][2k+1].
    std::vector<std::int64_t> u(n, 0), v(n, 0);
    for (int i = 0; i < n; ++i) {
        std::int64_t acc = 0;
        for (int k = 0; k < half; ++k) {
            acc += a.at(i, 2 * k) * a.at(i, 2 * k + 1);
            ++ops.multiplications;
            ++ops.additions;
        }
        u[i] = acc;
    }
    // Column pair-products v_j = sum_k b[2k][j] * b[2k+1][j].
    for (int j = 0; j < n; ++j) {
        std::int64_t acc = 0;
        for (int k = 0; k < half; ++k) {
            acc += b.at(2 * k, j) * b.at(2 * k + 1, j);
            ++ops.multiplications;
            ++ops.additions;
        }
        v[j] = acc;
    }

    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            std::int64_t acc = 0;
            for (int k = 0; k < half; ++k) {
                acc += (a.at(i, 2 * k) + b.at(2 * k + 1, j)) *
                       (a.at(i, 2 * k + 1) + b.at(2 * k, j));
                ops.additions += 3;
                ++ops.multiplications;
            }
            acc -= u[i] + v[j];
            ops.additions += 2;
            if (odd) {
                acc += a.at(i, n - 1) * b.at(n - 1, j);
                ++ops.multiplications;
                ++ops.additions;
            }
            result.c.at(i, j) = acc;
        }
    }
    return result;
}

Design::Design(std::vector<std::uint64_t> points, int replications, std::uint64_t base_seed)
    : points_(std::move(points)), replications_(replications), base_seed_(base_seed) {
    if (points_.empty())
        throw std::invalid_argument("Design: points must be nonempty");
    for (std::size_t i = 0; i < points_.size(); ++i) {
        if (points_[i] == 0)
            throw std::invalid_argument("Design: points must be positive");
        if (i > 0 && points_[i] <= points_[i - 1])
            throw std::invalid_argument("Design: points must be strictly increasing");
    }
    if (replications < 1)
        throw std::invalid_argument("Design: replications must be >= 1");
}

std::string to_string(Algorithm a) {
    return a == Algorithm::ReplacementSort ? "replacement_sort" : "winograd";
}

Algorithm algorithm_from_string(std::string_view name) {
    if (name == "replacement_sort")
        return Algorithm::ReplacementSort;
    if (name == "winograd")
        return Algorithm::Winograd;
    throw std::invalid_argument("unknown algorithm: " + std::string(name));
}

std::uint64_t mix64(std::uint64_t base, std::uint64_t n, std::uint64_t r) {
    // Two splitmix64 finalizer rounds over the golden-ratio-spread inputs.
    std::uint64_t state = base ^ (n * 0x9E3779B97F4A7C15ULL);
    std::uint64_t h = splitmix64_next(state);
    state = h ^ (r * 0xC2B2AE3D27D4EB4FULL);
    return splitmix64_next(state);
}

std::uint64_t SeededStream::next_u64() {
    return splitmix64_next(state_);
}

std::uint64_t SeededStream::next_below(std::uint64_t bound) {
    if (bound == 0)
        throw std::invalid_argument("SeededStream: bound must be positive");
    // Reject the final partial block so every residue is equally likely.
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % bound;
    for (;;) {
        const std::uint64_t v = next_u64();
        if (v < limit)
            return v % bound;
    }
}

TrialTable run_experiment(Algorithm algorithm, const Design& design, bool measure_wall,
                          int jobs) {
    TrialTable table;
    table.algorithm = to_string(algorithm);
    const int reps = design.replications();
    table.rows.resize(design.points().size() * static_cast<std::size_t>(reps));

    const auto fill_row = [&](std::size_t index) {
        const std::size_t point_idx = index / static_cast<std::size_t>(reps);
        const int rep = static_cast<int>(index % static_cast<std::size_t>(reps));
        const std::uint64_t n = design.points()[point_idx];
        const std::uint64_t seed = mix64(design.base_seed(), n, static_cast<std::uint64_t>(rep));
        table.rows[index] = run_trial(algorithm, n, rep, seed, measure_wall);
    };

    if (jobs <= 1) {
        for (std::size_t i = 0; i < table.rows.size(); ++i)
            fill_row(i);
    } else {
        // Rows land in preassigned slots, so the table is identical for
        // any worker count.
        std::atomic<std::size_t> cursor{0};
        std::vector<std::thread> pool;
        const int workers = std::min<int>(jobs, static_cast<int>(table.rows.size()));
        pool.reserve(workers);
        for (int w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (;;) {
                    const std::size_t i = cursor.fetch_add(1);
                    if (i >= table.rows.size())
                        return;
                    fill_row(i);
                }
            });
        }
        for (auto& t : pool)
            t.join();
    }
    return table;
}

std::uint64_t response_value(const TrialRow& row, std::string_view response) {
    if (response == "comparisons")
        return row.counters.comparisons;
    if (response == "swaps")
        return row.counters.swaps;
    if (response == "mults")
        return row.counters.multiplications;
    if (response == "adds")
        return row.counters.additions;
    if (response == "wall_ns") {
        if (!row.wall_ns)
            throw std::invalid_argument("response_value: table has no wall-time column");
        return *row.wall_ns;
    }
    throw std::invalid_argument("unknown response: " + std::string(response));
}

std::string to_string(Label label) {
    switch (label) {
    case Label::DeterministicDegenerate: return "DETERMINISTIC_DEGENERATE";
    case Label::NoisyRandomlike: return "NOISY_RANDOMLIKE";
    case Label::NoisyPatterned: return "NOISY_PATTERNED";
    }
    return "?";
}

ClassificationReport classify(const TrialTable& table, std::string_view response,
                              double epsilon) {
    if (epsilon < 0.0)
        throw std::invalid_argument("classify: epsilon must be nonnegative");

    // Group rows by point, preserving table order.
    std::vector<std::uint64_t> points;
    std::vector<std::vector<double>> groups;
    for (const TrialRow& row : table.rows) {
        if (points.empty() || points.back() != row.n) {
            points.push_back(row.n);
            groups.emplace_back();
        }
        groups.back().push_back(static_cast<double>(response_value(row, response)));
    }

    ClassificationReport report;
    report.response = std::string(response);

    double max_variance = 0.0;
    std::vector<double> sds;
    for (std::size_t g = 0; g < groups.size(); ++g) {
        const auto& values = groups[g];
        if (values.size() < 2)
            throw insufficient_sample_error("classify: need at least 2 replications per point");
        const double mean =
            std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
        double ss = 0.0;
        for (double v : values)
            ss += (v - mean) * (v - mean);
        const double variance = ss / static_cast<double>(values.size() - 1);
        report.per_point.push_back(PointStats{points[g], mean, variance});
        sds.push_back(std::sqrt(variance));
        max_variance = std::max(max_variance, variance);
    }

    if (max_variance <= epsilon) {
        report.label = Label::DeterministicDegenerate;
        return report;
    }

    // Standardize within each point; points with zero spread carry no
    // information about the noise and are dropped.
    std::vector<double> residuals;
    for (std::size_t g = 0; g < groups.size(); ++g) {
        if (sds[g] == 0.0)
            continue;
        for (double v : groups[g])
            residuals.push_back((v - report.per_point[g].mean) / sds[g]);
    }
    if (residuals.size() < 20)
        throw insufficient_sample_error("classify: need at least 20 rows with spread "
                                        "for the residual battery");

    // Probability integral transform through the empirical CDF:
    // rank / (count + 1), ties broken by position.
    std::vector<std::size_t> order(residuals.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return residuals[a] < residuals[b];
    });
    std::vector<double> uniform(residuals.size());
    for (std::size_t rank = 0; rank < order.size(); ++rank)
        uniform[order[rank]] =
            static_cast<double>(rank + 1) / static_cast<double>(residuals.size() + 1);

    const auto battery_report = randtests::battery(randtests::SampleSeq(std::move(uniform)));
    report.label = battery_report.overall == randtests::Overall::LooksRandom
                       ? Label::NoisyRandomlike
                       : Label::NoisyPatterned;
    return report;
}

double basis_value(std::string_view name, std::uint64_t n) {
    const double x = static_cast<double>(n);
    if (name == "1")
        return 1.0;
    if (name == "n")
        return x;
    if (name == "n2")
        return x * x;
    if (name == "n3")
        return x * x * x;
    if (name == "nlogn")
        return x * std::log(x);
    throw std::invalid_argument("unknown basis function: " + std::string(name));
}

SurrogateFit fit_surrogate(const TrialTable& table, std::string_view response,
                           const std::vector<std::string>& basis) {
    if (basis.empty())
        throw std::invalid_argument("fit_surrogate: basis must be nonempty");

    // Per-point means in table order.
    std::vector<std::uint64_t> points;
    std::vector<double> sums;
    std::vector<std::size_t> counts;
    for (const TrialRow& row : table.rows) {
        if (points.empty() || points.back() != row.n) {
            points.push_back(row.n);
            sums.push_back(0.0);
            counts.push_back(0);
        }
        sums.back() += static_cast<double>(response_value(row, response));
        counts.back() += 1;
    }
    if (points.size() <= basis.size())
        throw std::invalid_argument("fit_surrogate: need more points than basis functions");

    std::vector<double> means(points.size());
    for (std::size_t i = 0; i < points.size(); ++i)
        means[i] = sums[i] / static_cast<double>(counts[i]);

    std::vector<std::vector<double>> columns(basis.size(),
                                             std::vector<double>(points.size()));
    for (std::size_t j = 0; j < basis.size(); ++j)
        for (std::size_t i = 0; i < points.size(); ++i)
            columns[j][i] = basis_value(basis[j], points[i]);

    SurrogateFit fit;
    fit.basis = basis;
    fit.coefficients = qr_least_squares(columns, means);

    const auto predict_at = [&](std::uint64_t n) {
        double acc = 0.0;
        for (std::size_t j = 0; j < basis.size(); ++j)
            acc += fit.coefficients[j] * basis_value(basis[j], n);
        return acc;
    };

    const double grand_mean =
        std::accumulate(means.begin(), means.end(), 0.0) / static_cast<double>(means.size());
    double ss_tot = 0.0, ss_res = 0.0;
    for (std::size_t i = 0; i < points.size(); ++i) {
        ss_tot += (means[i] - grand_mean) * (means[i] - grand_mean);
        const double r = means[i] - predict_at(points[i]);
        ss_res += r * r;
    }
    fit.r_squared = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 1.0;

    // Pooled residual spread: every replication against its point's fit.
    double pooled = 0.0;
    std::size_t rows = 0;
    for (const TrialRow& row : table.rows) {
        const double r = static_cast<double>(response_value(row, response)) - predict_at(row.n);
        pooled += r * r;
        ++rows;
    }
    const std::size_t dof = rows > basis.size() ? rows - basis.size() : 1;
    fit.residual_sd = std::sqrt(pooled / static_cast<double>(dof));
    return fit;
}

Prediction predict(const SurrogateFit& fit, std::uint64_t n) {
    if (n == 0)
        throw std::invalid_argument("predict: n must be positive");
    double mean = 0.0;
    for (std::size_t j = 0; j < fit.basis.size(); ++j)
        mean += fit.coefficients[j] * basis_value(fit.basis[j], n);
    return Prediction{mean, 2.0 * fit.residual_sd};
}

} // namespace randlab::cexp
