#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "randlab/errors.hpp"
#include "randlab/toyvm.hpp"

namespace randlab::kolmo {

// Enumeration is desk-scale: 2^25 - 2 candidates at the cap.
inline constexpr int kMaxEnumLen = 24;

// Visits every bit string of length 1..max_len in (length, lexicographic)
// order: 2^(max_len+1) - 2 programs in total.
template <class F>
void for_each_program(int max_len, F&& visit) {
    if (max_len > kMaxEnumLen)
        throw resource_bound_error("enumerate_programs: max_len exceeds " +
                                   std::to_string(kMaxEnumLen));
    for (int len = 1; len <= max_len; ++len) {
        const std::uint64_t count = std::uint64_t(1) << len;
        for (std::uint64_t value = 0; value < count; ++value)
            visit(ToyProgram::from_value(value, len));
    }
}

std::vector<ToyProgram> enumerate_programs(int max_len);

struct CatalogEntry {
    std::string program; // '0'/'1' bits
    std::string output;
    std::uint64_t steps = 0;
};

// All valid halting programs of length <= max_len discovered within
// max_steps, sorted by (length, lexicographic).
struct HaltingCatalog {
    int max_len = 0;
    std::uint64_t max_steps = 0;
    std::vector<CatalogEntry> entries;
};

// Interleaved execution: every candidate runs one step, survivors run a
// second, then a third, ... up to max_steps, so non-halting programs
// cannot stall the search. Candidates may be partitioned across workers;
// the result is independent of `jobs`.
HaltingCatalog dovetail(int max_len, std::uint64_t max_steps, int jobs = 1);

struct ComplexityRecord {
    std::string target;
    std::optional<int> k_upper;          // an upper bound, never exact
    std::optional<std::string> witness;  // shortest, ties broken lexicographically
};

// Shortest (then lexicographically least) cataloged program that outputs
// `target`; empty record if none exists within the bounds.
ComplexityRecord k_upper(const HaltingCatalog& catalog, std::string_view target);
ComplexityRecord k_upper(std::string_view target, int max_len, std::uint64_t max_steps);

struct CensusResult {
    int n = 0;
    std::uint64_t producible = 0; // distinct length-n outputs of programs of length <= n-2
    std::uint64_t bound = 0;      // 2^(n-1) - 1
    bool at_least_half_incompressible = false;
};

// Counting-argument census at length n: at most 2^(n-1) - 1 programs are
// shorter than n-1, so at least half of the 2^n strings need longer ones.
CensusResult census(int n, std::uint64_t max_steps);

// Exact dyadic lower bound on the halting probability: the sum of
// 1/2^|p| over cataloged programs, kept in integer arithmetic as
// numerator / 2^scale with scale = max_len.
struct OmegaEstimate {
    std::uint64_t numerator = 0;
    int scale = 0;
    int max_len = 0;
    std::uint64_t max_steps = 0;

    double value() const;
    // The binary expansion after the point, to `scale` digits.
    std::string binary_digits() const;
};

OmegaEstimate omega_from_catalog(const HaltingCatalog& catalog);
OmegaEstimate omega_lower(int max_len, std::uint64_t max_steps);

struct CompressDemoRow {
    int doublings = 0;
    std::uint64_t target_length = 0;
    int k_upper_constructive = 0; // length of the constructed program
    std::string program;
};

// Builds "emit the pattern, then j repeat-x8 instructions, halt" for
// j = 0..doublings and verifies each program on the VM. Program length
// grows affinely in j while the target length grows as 8^j.
std::vector<CompressDemoRow> compress_demo(std::string_view pattern, int doublings);

} // namespace randlab::kolmo
