#pragma once

#include <stdexcept>
#include <string>

namespace acm {

/// Base class for all errors raised by the library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Malformed input data (bad line, unknown value, arity mismatch).
struct ParseError : Error {
    using Error::Error;
};

/// A constraint on already-parsed data is violated.
struct ValidationError : Error {
    using Error::Error;
};

/// Invalid configuration or parameters.
struct ConfigError : Error {
    using Error::Error;
};

/// Filesystem / stream failures.
struct IoError : Error {
    using Error::Error;
};

} // namespace acm
