#include "randlab/toyvm.hpp"

#include <stdexcept>

namespace randlab::kolmo {

ToyProgram::ToyProgram(std::string bits) : bits_(std::move(bits)) {
    for (char c : bits_) {
        if (c != '0' && c != '1')
            throw std::invalid_argument("ToyProgram: bits must be '0' or '1'");
    }
}

ToyProgram ToyProgram::from_value(std::uint64_t value, int len) {
    if (len < 0 || len > 64)
        throw std::invalid_argument("ToyProgram: length must lie in [0, 64]");
    std::string bits(static_cast<std::size_t>(len), '0');
    for (int i = 0; i < len; ++i) {
        if ((value >> (len - 1 - i)) & 1u)
            bits[static_cast<std::size_t>(i)] = '1';
    }
    return ToyProgram(std::move(bits), unchecked_tag{});
}

std::string to_string(VmStatus s) {
    switch (s) {
    case VmStatus::Running: return "RUNNING";
    case VmStatus::Halted: return "HALTED";
    case VmStatus::Invalid: return "INVALID";
    }
    return "?";
}

std::string to_string(VmFault f) {
    switch (f) {
    case VmFault::None: return "NONE";
    case VmFault::Underrun: return "UNDERRUN";
    case VmFault::Unconsumed: return "UNCONSUMED";
    case VmFault::OutputOverflow: return "OUTPUT_OVERFLOW";
    }
    return "?";
}

VmInterpreter::VmInterpreter(std::string program_bits) : program_(std::move(program_bits)) {}

bool VmInterpreter::fetch(int count, std::uint32_t& value) {
    if (pos_ + static_cast<std::uint32_t>(count) > program_.size()) {
        fail(VmFault::Underrun);
        return false;
    }
    value = 0;
    for (int i = 0; i < count; ++i)
        value = (value << 1) | static_cast<std::uint32_t>(program_[pos_ + i] - '0');
    pos_ += static_cast<std::uint32_t>(count);
    return true;
}

void VmInterpreter::fail(VmFault fault) {
    status_ = VmStatus::Invalid;
    fault_ = fault;
}

VmStatus VmInterpreter::step() {
    if (status_ != VmStatus::Running)
        return status_;

    ++steps_;

    if (looping_)
        return status_; // k = 0 spin: one step per iteration, nothing changes

    std::uint32_t opcode = 0;
    if (!fetch(2, opcode))
        return status_;

    switch (opcode) {
    case 0b00:
    case 0b01:
        if (output_.size() + 1 > kOutputCapBits) {
            fail(VmFault::OutputOverflow);
            return status_;
        }
        output_.push_back(opcode == 0b00 ? '0' : '1');
        break;
    case 0b10: {
        std::uint32_t k = 0;
        if (!fetch(3, k))
            return status_;
        if (k == 0) {
            looping_ = true;
            break;
        }
        const std::uint64_t new_len = output_.size() * static_cast<std::uint64_t>(k + 1);
        if (new_len > kOutputCapBits) {
            fail(VmFault::OutputOverflow);
            return status_;
        }
        const std::string copy = output_;
        output_.reserve(new_len);
        for (std::uint32_t i = 0; i < k; ++i)
            output_ += copy;
        break;
    }
    case 0b11:
        if (pos_ != program_.size()) {
            fail(VmFault::Unconsumed);
            return status_;
        }
        status_ = VmStatus::Halted;
        break;
    }
    return status_;
}

ExecOutcome VmInterpreter::outcome() const {
    ExecOutcome out;
    out.status = status_;
    out.fault = fault_;
    if (status_ == VmStatus::Halted) {
        out.output = output_;
        out.steps_used = steps_;
        out.bits_read = pos_;
    }
    return out;
}

ExecOutcome vm_run(std::string_view program_bits, std::uint64_t fuel) {
    if (fuel == 0)
        throw std::invalid_argument("vm_run: fuel must be >= 1");
    VmInterpreter vm{std::string(program_bits)};
    for (std::uint64_t i = 0; i < fuel && vm.status() == VmStatus::Running; ++i)
        vm.step();
    return vm.outcome();
}

ExecOutcome vm_run(const ToyProgram& program, std::uint64_t fuel) {
    return vm_run(program.bits(), fuel);
}

} // namespace randlab::kolmo
