#pragma once

#include <stdexcept>
#include <string>

namespace aoc {

// Error categories map 1:1 onto the C API status codes.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InvalidArgumentError : Error {
    using Error::Error;
};

// Instance data violates a structural invariant (Assumption-level defects).
struct ValidationError : Error {
    using Error::Error;
};

// A trajectory (or m-vector) fails feasibility; message names agent/time.
struct FeasibilityError : Error {
    using Error::Error;
};

struct IoError : Error {
    using Error::Error;
};

// Exhaustive enumeration refused: product of trajectory counts above cap.
struct CapExceededError : Error {
    CapExceededError(const std::string& msg, double combinations)
        : Error(msg), combinations(combinations) {}
    double combinations;
};

} // namespace aoc
