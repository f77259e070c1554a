#pragma once

#include <stdexcept>
#include <string>

namespace billiards {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Construction parameters violate a documented constraint.
struct InvalidParams : Error {
    using Error::Error;
};

/// A ray origin lies outside the ambient body.
struct OutsideAmbient : Error {
    using Error::Error;
};

/// An operation precondition was violated (entry point off the boundary, outgoing velocity, ...).
struct PreconditionViolation : Error {
    using Error::Error;
};

/// File read/write failure, reported with path context.
struct IoError : Error {
    using Error::Error;
};

}  // namespace billiards
