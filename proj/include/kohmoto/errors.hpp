#pragma once

#include <stdexcept>
#include <string>

namespace kohmoto {

// Bad input: the caller asked for something outside an operation's domain.
struct PreconditionError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// A root of t -+ 2 with multiplicity > 1 (only possible for V = 0).
struct DegeneracyError : PreconditionError {
    using PreconditionError::PreconditionError;
};

// A certified decision could not be reached within the allowed refinement.
struct PrecisionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// The requested estimate is only known to hold in another parameter regime.
struct UnsupportedRegime : std::domain_error {
    using std::domain_error::domain_error;
};

}  // namespace kohmoto
