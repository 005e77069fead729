#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <map>
#include <set>

#include "randlab/errors.hpp"
#include "randlab/kolmolab.hpp"
#include "randlab/toyvm.hpp"

using namespace randlab;
using namespace randlab::kolmo;

namespace {

// Fuel-run reference: every candidate executed once with the whole step
// budget, no dovetailing.
std::vector<CatalogEntry> fuel_run_catalog(int max_len, std::uint64_t max_steps) {
    std::vector<CatalogEntry> entries;
    for_each_program(max_len, [&](const ToyProgram& p) {
        const auto outcome = vm_run(p, max_steps);
        if (outcome.valid_halting())
            entries.push_back(CatalogEntry{p.bits(), outcome.output, outcome.steps_used});
    });
    return entries;
}

} // namespace

TEST_CASE("ToyProgram validates and renders bits") {
    CHECK_THROWS_AS(ToyProgram("01x"), std::invalid_argument);
    CHECK(ToyProgram("0101").bits() == "0101");
    CHECK(ToyProgram::from_value(0b1011, 4).bits() == "1011");
    CHECK(ToyProgram::from_value(1, 4).bits() == "0001");
    CHECK(ToyProgram::from_value(0, 0).bits() == "");
}

TEST_CASE("vm_run: halt is the shortest valid program") {
    const auto outcome = vm_run(ToyProgram("11"), 10);
    CHECK(outcome.status == VmStatus::Halted);
    CHECK(outcome.output == "");
    CHECK(outcome.steps_used == 1);
    CHECK(outcome.bits_read == 2);
    CHECK(outcome.valid_halting());
}

TEST_CASE("vm_run: repeat with k=0 loops forever") {
    const auto outcome = vm_run(ToyProgram("10000"), 50);
    CHECK(outcome.status == VmStatus::Running);

    // Still running with a much larger budget; each iteration costs a step.
    CHECK(vm_run(ToyProgram("10000"), 100000).status == VmStatus::Running);
}

TEST_CASE("vm_run: emit-emit-repeat-halt doubles the output") {
    // 00 01 10[001] 11 : emit 0, emit 1, two copies, halt.
    const auto outcome = vm_run(ToyProgram("00011000111"), 10);
    CHECK(outcome.status == VmStatus::Halted);
    CHECK(outcome.output == "0101");
    CHECK(outcome.steps_used == 4);
    CHECK(outcome.bits_read == 11);
}

TEST_CASE("vm_run: emit-only spelling of 0101") {
    const auto outcome = vm_run(ToyProgram("0001000111"), 10);
    CHECK(outcome.status == VmStatus::Halted);
    CHECK(outcome.output == "0101");
    CHECK(outcome.steps_used == 5);
    CHECK(outcome.bits_read == 10);
}

TEST_CASE("vm_run: structural faults") {
    // Needing bits past the end.
    CHECK(vm_run(ToyProgram("0"), 10).fault == VmFault::Underrun);
    CHECK(vm_run(ToyProgram("00"), 10).fault == VmFault::Underrun);
    CHECK(vm_run(ToyProgram("10"), 10).fault == VmFault::Underrun);
    CHECK(vm_run(ToyProgram("1001"), 10).fault == VmFault::Underrun);

    // Halting with unread bits.
    CHECK(vm_run(ToyProgram("110"), 10).fault == VmFault::Unconsumed);
    CHECK(vm_run(ToyProgram("1100"), 10).fault == VmFault::Unconsumed);

    // A repeat reading k=3 leaves one dangling bit here.
    CHECK(vm_run(ToyProgram("0001100111"), 10).fault == VmFault::Underrun);
}

TEST_CASE("vm_run: output cap is a distinct fault") {
    // Emit one bit, then 7 repeat-x8 ops: 8^7 = 2^21 bits > 2^20 cap.
    std::string program = "01";
    for (int i = 0; i < 7; ++i)
        program += "10111";
    program += "11";
    const auto outcome = vm_run(ToyProgram(program), 100);
    CHECK(outcome.status == VmStatus::Invalid);
    CHECK(outcome.fault == VmFault::OutputOverflow);
}

TEST_CASE("vm_run is deterministic") {
    for (const char* bits : {"11", "0011", "10000", "00011000111", "0001100111"}) {
        const auto a = vm_run(ToyProgram(bits), 37);
        const auto b = vm_run(ToyProgram(bits), 37);
        CHECK(a.status == b.status);
        CHECK(a.fault == b.fault);
        CHECK(a.output == b.output);
        CHECK(a.steps_used == b.steps_used);
        CHECK(a.bits_read == b.bits_read);
    }
    CHECK_THROWS_AS(vm_run(ToyProgram("11"), 0), std::invalid_argument);
}

TEST_CASE("enumerate_programs: order and count") {
    const auto programs = enumerate_programs(2);
    REQUIRE(programs.size() == 6);
    const std::vector<std::string> expected{"0", "1", "00", "01", "10", "11"};
    for (std::size_t i = 0; i < programs.size(); ++i)
        CHECK(programs[i].bits() == expected[i]);

    CHECK(enumerate_programs(4).size() == 30); // 2^5 - 2

    CHECK_THROWS_AS(enumerate_programs(25), resource_bound_error);
    CHECK(enumerate_programs(0).empty());
}

TEST_CASE("dovetail at small bounds: exact catalogs") {
    const auto tiny = dovetail(2, 10);
    REQUIRE(tiny.entries.size() == 1);
    CHECK(tiny.entries[0].program == "11");
    CHECK(tiny.entries[0].output == "");
    CHECK(tiny.entries[0].steps == 1);

    const auto small = dovetail(4, 10);
    REQUIRE(small.entries.size() == 3);
    CHECK(small.entries[0].program == "11");
    CHECK(small.entries[1].program == "0011");
    CHECK(small.entries[1].output == "0");
    CHECK(small.entries[2].program == "0111");
    CHECK(small.entries[2].output == "1");
}

TEST_CASE("dovetail equals the fuel-run catalog (schedule equivalence)") {
    for (int max_len : {4, 6, 8}) {
        for (std::uint64_t max_steps : {1ull, 3ull, 50ull}) {
            const auto scheduled = dovetail(max_len, max_steps);
            const auto reference = fuel_run_catalog(max_len, max_steps);
            REQUIRE(scheduled.entries.size() == reference.size());
            for (std::size_t i = 0; i < reference.size(); ++i) {
                CHECK(scheduled.entries[i].program == reference[i].program);
                CHECK(scheduled.entries[i].output == reference[i].output);
                CHECK(scheduled.entries[i].steps == reference[i].steps);
            }
        }
    }
}

TEST_CASE("dovetail output is independent of the worker count") {
    const auto serial = dovetail(10, 100, 1);
    const auto parallel = dovetail(10, 100, 4);
    REQUIRE(serial.entries.size() == parallel.entries.size());
    for (std::size_t i = 0; i < serial.entries.size(); ++i) {
        CHECK(serial.entries[i].program == parallel.entries[i].program);
        CHECK(serial.entries[i].output == parallel.entries[i].output);
        CHECK(serial.entries[i].steps == parallel.entries[i].steps);
    }
}

TEST_CASE("valid halting programs are prefix-free") {
    const auto catalog = dovetail(8, 100);
    for (const auto& a : catalog.entries)
        for (const auto& b : catalog.entries) {
            if (a.program.size() < b.program.size())
                CHECK(b.program.compare(0, a.program.size(), a.program) != 0);
        }
}

TEST_CASE("k_upper: empty target is witnessed by the bare halt") {
    const auto record = k_upper("", 2, 10);
    REQUIRE(record.k_upper.has_value());
    CHECK(*record.k_upper == 2);
    CHECK(*record.witness == "11");
}

TEST_CASE("k_upper: 0101 needs all ten bits at these bounds") {
    const auto record = k_upper("0101", 10, 100);
    REQUIRE(record.k_upper.has_value());
    CHECK(*record.k_upper == 10);
    CHECK(*record.witness == "0001000111");

    // Exhaustive confirmation that nothing shorter emits it: scan the
    // catalog directly rather than trusting the scan order.
    const auto catalog = dovetail(10, 100);
    for (const auto& entry : catalog.entries) {
        if (entry.output == "0101")
            CHECK(entry.program.size() >= 10);
    }
}

TEST_CASE("k_upper: absent within bounds leaves the record empty") {
    const auto record = k_upper("000111000111", 6, 100);
    CHECK_FALSE(record.k_upper.has_value());
    CHECK_FALSE(record.witness.has_value());
}

TEST_CASE("k_upper: emit-each-bit gives the constructive 2|s|+2 bound") {
    for (const std::string target : {"0", "11", "010", "1100"}) {
        const int bound = 2 * static_cast<int>(target.size()) + 2;
        const auto record = k_upper(target, bound, 1000);
        REQUIRE(record.k_upper.has_value());
        CHECK(*record.k_upper <= bound);
    }
}

TEST_CASE("witness soundness: every witness replays to its target") {
    const auto catalog = dovetail(10, 100);
    for (const std::string target : {"", "0", "1", "01", "0101", "111"}) {
        const auto record = k_upper(catalog, target);
        if (!record.witness)
            continue;
        const auto outcome = vm_run(ToyProgram(*record.witness), 1000000);
        CHECK(outcome.valid_halting());
        CHECK(outcome.output == target);
        CHECK(outcome.bits_read == record.witness->size());
    }
}

TEST_CASE("census at small n: nothing of length n is producible yet") {
    const auto c3 = census(3, 100);
    CHECK(c3.producible == 0);
    CHECK(c3.bound == 3);
    CHECK(c3.at_least_half_incompressible);

    const auto c4 = census(4, 100);
    CHECK(c4.producible == 0); // only "11" is short enough, and it emits nothing
    CHECK(c4.bound == 7);
    CHECK(c4.at_least_half_incompressible);
}

TEST_CASE("census: producible never exceeds the counting bound") {
    for (int n = 2; n <= 12; ++n) {
        const auto result = census(n, 1000);
        CHECK(result.producible <= result.bound);
        CHECK(result.at_least_half_incompressible);
    }
    CHECK_THROWS_AS(census(1, 100), std::invalid_argument);
    CHECK_THROWS_AS(census(15, 100), resource_bound_error);
}

TEST_CASE("omega_lower: exact dyadic values at tiny bounds") {
    const auto quarter = omega_lower(2, 10);
    CHECK(quarter.numerator == 1);
    CHECK(quarter.scale == 2);
    CHECK(quarter.value() == 0.25);
    CHECK(quarter.binary_digits() == "01");

    const auto three_eighths = omega_lower(4, 10);
    CHECK(three_eighths.numerator == 6);
    CHECK(three_eighths.scale == 4);
    CHECK(three_eighths.value() == 0.375);
    CHECK(three_eighths.binary_digits() == "0110");
}

TEST_CASE("omega_lower agrees with a direct fuel-run sum") {
    for (int max_len : {4, 6, 8}) {
        std::uint64_t numerator = 0;
        for (const auto& entry : fuel_run_catalog(max_len, 100))
            numerator += std::uint64_t(1) << (max_len - entry.program.size());
        const auto estimate = omega_lower(max_len, 100);
        CHECK(estimate.numerator == numerator);
    }
}

TEST_CASE("omega_lower: Kraft bound and monotonicity") {
    double prev_len_value = 0.0;
    for (int max_len = 2; max_len <= 12; max_len += 2) {
        double prev_steps_value = 0.0;
        for (std::uint64_t steps : {10ull, 100ull, 1000ull}) {
            const auto estimate = omega_lower(max_len, steps);
            CHECK(estimate.value() <= 1.0);
            CHECK(estimate.value() >= prev_steps_value);
            prev_steps_value = estimate.value();
        }
        CHECK(omega_lower(max_len, 10).value() >= prev_len_value);
        prev_len_value = omega_lower(max_len, 10).value();
    }
}

TEST_CASE("compress_demo: affine program length vs exponential target") {
    const auto rows = compress_demo("01", 2);
    REQUIRE(rows.size() == 3);

    CHECK(rows[0].target_length == 2);
    CHECK(rows[0].k_upper_constructive == 6);
    CHECK(rows[0].program == "000111");

    CHECK(rows[1].target_length == 16);
    CHECK(rows[1].k_upper_constructive == 11);

    CHECK(rows[2].target_length == 128);
    CHECK(rows[2].k_upper_constructive == 16);
    CHECK(rows[2].program == "0001101111011111");

    // Affine in j while the target grows 8x per row.
    for (std::size_t i = 1; i < rows.size(); ++i) {
        CHECK(rows[i].k_upper_constructive - rows[i - 1].k_upper_constructive == 5);
        CHECK(rows[i].target_length == 8 * rows[i - 1].target_length);
    }
}

TEST_CASE("compress_demo rows replay on the VM") {
    for (const auto& row : compress_demo("110", 3)) {
        const auto outcome = vm_run(ToyProgram(row.program), 1000);
        CHECK(outcome.valid_halting());
        CHECK(outcome.output.size() == row.target_length);
    }
}

TEST_CASE("compress_demo: argument validation and the output cap") {
    CHECK_THROWS_AS(compress_demo("", 2), std::invalid_argument);
    CHECK_THROWS_AS(compress_demo("011011011", 0), std::invalid_argument);
    CHECK_THROWS_AS(compress_demo("01", 7), std::invalid_argument);
    CHECK_THROWS_AS(compress_demo("01x", 2), std::invalid_argument);
    // 8 * 8^6 = 2^21 exceeds the 2^20 output cap.
    CHECK_THROWS_AS(compress_demo("01010101", 6), resource_bound_error);
}
