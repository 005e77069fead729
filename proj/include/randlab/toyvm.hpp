#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace randlab::kolmo {

// Hard cap on VM output length; a runaway repeat chain becomes a reported
// fault instead of memory exhaustion.
inline constexpr std::uint64_t kOutputCapBits = std::uint64_t(1) << 20;

// An immutable machine-code program: a finite string of '0'/'1'.
class ToyProgram {
public:
    explicit ToyProgram(std::string bits);

    // Bits of `value` rendered MSB-first at width `len`. Enumerating
    // value = 0..2^len-1 yields the length-len programs in lexicographic
    // order.
    static ToyProgram from_value(std::uint64_t value, int len);

    const std::string& bits() const { return bits_; }
    std::size_t size() const { return bits_.size(); }

private:
    struct unchecked_tag {};
    ToyProgram(std::string bits, unchecked_tag) : bits_(std::move(bits)) {}

    std::string bits_;
};

enum class VmStatus {
    Running, // fuel exhausted before halting
    Halted,  // executed HALT having consumed exactly its bits
    Invalid, // structurally rejected; see VmFault
};

enum class VmFault {
    None,
    Underrun,       // needed bits past the end of the program
    Unconsumed,     // halted with unread bits (prefix-freeness rule)
    OutputOverflow, // output would exceed kOutputCapBits
};

struct ExecOutcome {
    VmStatus status = VmStatus::Running;
    VmFault fault = VmFault::None;
    std::string output;           // meaningful when Halted
    std::uint64_t steps_used = 0; // meaningful when Halted
    std::uint32_t bits_read = 0;  // meaningful when Halted

    bool valid_halting() const { return status == VmStatus::Halted; }
};

std::string to_string(VmStatus s);
std::string to_string(VmFault f);

// TOYVM-1: 2-bit opcodes fetched left to right on demand.
//   00        append bit 0 to the output
//   01        append bit 1
//   10 kkk    k = 0: loop forever (one step per iteration, output kept);
//             k >= 1: output becomes k+1 copies of itself
//   11        halt; must land exactly on the end of the program
// Every opcode execution costs one step, including each iteration of the
// k = 0 loop. Because halting runs consume exactly their own bits, no
// valid halting program can be a prefix of another.
class VmInterpreter {
public:
    explicit VmInterpreter(const ToyProgram& program) : VmInterpreter(program.bits()) {}
    explicit VmInterpreter(std::string program_bits);

    // Executes one step if still running; returns the status afterwards.
    VmStatus step();

    VmStatus status() const { return status_; }
    VmFault fault() const { return fault_; }
    const std::string& output() const { return output_; }
    std::uint64_t steps() const { return steps_; }
    std::uint32_t bits_read() const { return pos_; }

    ExecOutcome outcome() const;

private:
    bool fetch(int count, std::uint32_t& value);
    void fail(VmFault fault);

    std::string program_;
    std::string output_;
    std::uint32_t pos_ = 0;
    std::uint64_t steps_ = 0;
    bool looping_ = false;
    VmStatus status_ = VmStatus::Running;
    VmFault fault_ = VmFault::None;
};

// Runs the program for at most `fuel` steps (fuel >= 1).
ExecOutcome vm_run(const ToyProgram& program, std::uint64_t fuel);
ExecOutcome vm_run(std::string_view program_bits, std::uint64_t fuel);

} // namespace randlab::kolmo
