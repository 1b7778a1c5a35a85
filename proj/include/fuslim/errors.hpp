#pragma once

#include <stdexcept>
#include <string>

namespace fuslim {

// Thrown when an input file or user-supplied structure is malformed.
// The CLI maps this to exit code 2.
struct input_error : std::runtime_error {
    explicit input_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Thrown when a computation exceeds a configured size cap.
// The CLI maps this to exit code 3.
struct cap_exceeded : std::runtime_error {
    explicit cap_exceeded(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace fuslim
