#include "randlab/kolmolab.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>
#include <unordered_set>

namespace randlab::kolmo {

namespace {

// Candidates are processed in bounded slices so the live VM states of a
// 2^25-candidate run never sit in memory at once. Programs are mutually
// independent, so slicing cannot change which of them halt.
constexpr std::uint64_t kSliceSize = std::uint64_t(1) << 15;

struct Slice {
    int len;
    std::uint64_t first;
    std::uint64_t last; // exclusive
};

std::vector<Slice> make_slices(int max_len) {
    std::vector<Slice> slices;
    for (int len = 1; len <= max_len; ++len) {
        const std::uint64_t count = std::uint64_t(1) << len;
        for (std::uint64_t first = 0; first < count; first += kSliceSize)
            slices.push_back({len, first, std::min(first + kSliceSize, count)});
    }
    return slices;
}

// The round schedule over one slice: every live candidate advances one
// step per round until it halts, faults, or the step bound runs out.
void run_slice(const Slice& slice, std::uint64_t max_steps, std::vector<CatalogEntry>& out) {
    std::vector<VmInterpreter> states;
    states.reserve(static_cast<std::size_t>(slice.last - slice.first));
    for (std::uint64_t value = slice.first; value < slice.last; ++value)
        states.emplace_back(ToyProgram::from_value(value, slice.len).bits());

    std::vector<std::uint32_t> live(states.size());
    for (std::uint32_t i = 0; i < live.size(); ++i)
        live[i] = i;

    std::vector<std::uint32_t> next;
    for (std::uint64_t round = 1; round <= max_steps && !live.empty(); ++round) {
        next.clear();
        for (std::uint32_t idx : live) {
            VmInterpreter& vm = states[idx];
            switch (vm.step()) {
            case VmStatus::Running:
                next.push_back(idx);
                break;
            case VmStatus::Halted:
                out.push_back(CatalogEntry{
                    ToyProgram::from_value(slice.first + idx, slice.len).bits(),
                    vm.output(), vm.steps()});
                break;
            case VmStatus::Invalid:
                break;
            }
        }
        live.swap(next);
    }
}

bool entry_less(const CatalogEntry& a, const CatalogEntry& b) {
    if (a.program.size() != b.program.size())
        return a.program.size() < b.program.size();
    return a.program < b.program;
}

void validate_bounds(int max_len, std::uint64_t max_steps) {
    if (max_len < 0)
        throw std::invalid_argument("max_len must be nonnegative");
    if (max_len > kMaxEnumLen)
        throw resource_bound_error("max_len exceeds the enumeration cap of " +
                                   std::to_string(kMaxEnumLen));
    if (max_steps == 0)
        throw std::invalid_argument("max_steps must be >= 1");
}

void validate_bits(std::string_view bits, const char* what) {
    for (char c : bits) {
        if (c != '0' && c != '1')
            throw std::invalid_argument(std::string(what) + ": bits must be '0' or '1'");
    }
}

} // namespace

std::vector<ToyProgram> enumerate_programs(int max_len) {
    if (max_len < 0)
        throw std::invalid_argument("enumerate_programs: max_len must be nonnegative");
    std::vector<ToyProgram> programs;
    if (max_len >= 1)
        programs.reserve((std::uint64_t(2) << max_len) - 2);
    for_each_program(max_len, [&](const ToyProgram& p) { programs.push_back(p); });
    return programs;
}

HaltingCatalog dovetail(int max_len, std::uint64_t max_steps, int jobs) {
    validate_bounds(max_len, max_steps);
    if (jobs < 1)
        jobs = 1;

    const std::vector<Slice> slices = make_slices(max_len);
    HaltingCatalog catalog{max_len, max_steps, {}};

    if (jobs == 1 || slices.size() <= 1) {
        for (const Slice& slice : slices)
            run_slice(slice, max_steps, catalog.entries);
    } else {
        const int workers = std::min<int>(jobs, static_cast<int>(slices.size()));
        std::vector<std::vector<CatalogEntry>> partial(workers);
        std::atomic<std::size_t> cursor{0};
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (int w = 0; w < workers; ++w) {
            pool.emplace_back([&, w] {
                for (;;) {
                    const std::size_t i = cursor.fetch_add(1);
                    if (i >= slices.size())
                        return;
                    run_slice(slices[i], max_steps, partial[w]);
                }
            });
        }
        for (auto& t : pool)
            t.join();
        for (auto& part : partial)
            catalog.entries.insert(catalog.entries.end(),
                                   std::make_move_iterator(part.begin()),
                                   std::make_move_iterator(part.end()));
    }

    std::sort(catalog.entries.begin(), catalog.entries.end(), entry_less);
    return catalog;
}

ComplexityRecord k_upper(const HaltingCatalog& catalog, std::string_view target) {
    validate_bits(target, "k_upper");
    if (target.size() > kOutputCapBits)
        throw resource_bound_error("k_upper: target exceeds the output cap");

    ComplexityRecord record;
    record.target = std::string(target);
    for (const CatalogEntry& entry : catalog.entries) {
        if (entry.output == target) {
            record.k_upper = static_cast<int>(entry.program.size());
            record.witness = entry.program;
            break; // entries are (length, lex) sorted: first hit is minimal
        }
    }
    return record;
}

ComplexityRecord k_upper(std::string_view target, int max_len, std::uint64_t max_steps) {
    return k_upper(dovetail(max_len, max_steps), target);
}

CensusResult census(int n, std::uint64_t max_steps) {
    if (n < 2)
        throw std::invalid_argument("census: n must be >= 2");
    if (n > 14)
        throw resource_bound_error("census: n capped at 14");

    CensusResult result;
    result.n = n;
    result.bound = (std::uint64_t(1) << (n - 1)) - 1;

    const HaltingCatalog catalog = dovetail(n - 2, max_steps);
    std::unordered_set<std::string> outputs;
    for (const CatalogEntry& entry : catalog.entries) {
        if (entry.output.size() == static_cast<std::size_t>(n))
            outputs.insert(entry.output);
    }
    result.producible = outputs.size();
    result.at_least_half_incompressible =
        (std::uint64_t(1) << n) - result.producible >= (std::uint64_t(1) << (n - 1));
    return result;
}

double OmegaEstimate::value() const {
    return std::ldexp(static_cast<double>(numerator), -scale);
}

std::string OmegaEstimate::binary_digits() const {
    std::string digits(static_cast<std::size_t>(scale), '0');
    for (int i = 0; i < scale; ++i) {
        if ((numerator >> (scale - 1 - i)) & 1u)
            digits[static_cast<std::size_t>(i)] = '1';
    }
    return digits;
}

OmegaEstimate omega_from_catalog(const HaltingCatalog& catalog) {
    OmegaEstimate estimate;
    estimate.scale = catalog.max_len;
    estimate.max_len = catalog.max_len;
    estimate.max_steps = catalog.max_steps;
    for (const CatalogEntry& entry : catalog.entries) {
        // 1/2^|p| == 2^(scale - |p|) / 2^scale, summed exactly in integers.
        estimate.numerator += std::uint64_t(1)
                              << (catalog.max_len - static_cast<int>(entry.program.size()));
    }
    return estimate;
}

OmegaEstimate omega_lower(int max_len, std::uint64_t max_steps) {
    return omega_from_catalog(dovetail(max_len, max_steps));
}

std::vector<CompressDemoRow> compress_demo(std::string_view pattern, int doublings) {
    validate_bits(pattern, "compress_demo");
    if (pattern.empty() || pattern.size() > 8)
        throw std::invalid_argument("compress_demo: pattern must hold 1..8 bits");
    if (doublings < 0 || doublings > 6)
        throw std::invalid_argument("compress_demo: doublings must lie in [0, 6]");

    std::string emits;
    for (char c : pattern)
        emits += (c == '0') ? "00" : "01";

    std::vector<CompressDemoRow> rows;
    std::string target(pattern);
    for (int j = 0; j <= doublings; ++j) {
        CompressDemoRow row;
        row.doublings = j;
        row.target_length = pattern.size() * (std::uint64_t(1) << (3 * j));
        row.program = emits;
        for (int r = 0; r < j; ++r)
            row.program += "10111"; // repeat with k = 7: output x8
        row.program += "11";
        row.k_upper_constructive = static_cast<int>(row.program.size());

        if (row.target_length > kOutputCapBits)
            throw resource_bound_error("compress_demo: target exceeds the output cap");

        const ExecOutcome outcome = vm_run(row.program, 1000);
        if (!outcome.valid_halting() || outcome.output != target)
            throw std::logic_error("compress_demo: constructed program failed verification");

        rows.push_back(std::move(row));
        if (j < doublings) {
            std::string eight;
            for (int r = 0; r < 8; ++r)
                eight += target;
            target = std::move(eight);
        }
    }
    return rows;
}

} // namespace randlab::kolmo
