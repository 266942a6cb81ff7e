#pragma once

#include <stdexcept>
#include <string>

namespace sqz {

// Error taxonomy shared by all modules.  The CLI maps these to exit codes:
// everything user-correctable exits 2, an internal consistency failure
// (a violated mathematical identity, i.e. a bug or broken input data far
// beyond tolerances) exits 3.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Mismatched factors, dimensions, or malformed composite inputs.
struct StructuralError : Error {
    using Error::Error;
};

// A scalar or flag argument is out of its admissible range.
struct ArgumentError : Error {
    using Error::Error;
};

// A documented operation precondition does not hold for the given input.
struct PreconditionError : Error {
    using Error::Error;
};

// The requested computation is outside the supported class of inputs.
struct UnsupportedError : Error {
    using Error::Error;
};

// An identity that must hold (up to tolerance) failed; indicates either a
// defect in the algebraic kernels or inconsistent user-supplied data.
struct InternalError : Error {
    using Error::Error;
};

}  // namespace sqz
