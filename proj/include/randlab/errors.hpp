#pragma once

#include <stdexcept>
#include <string>

namespace randlab {

// A statistical test or estimator cannot run on the sample it was given.
// The CLI maps this to exit code 3.
class insufficient_sample_error : public std::runtime_error {
public:
    explicit insufficient_sample_error(const std::string& what)
        : std::runtime_error(what) {}
};

// A desk-scale resource cap was exceeded (enumeration too large, output
// cap hit, ...). The CLI maps this to exit code 4.
class resource_bound_error : public std::runtime_error {
public:
    explicit resource_bound_error(const std::string& what)
        : std::runtime_error(what) {}
};

} // namespace randlab
