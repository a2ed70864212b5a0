#pragma once

#include <stdexcept>
#include <string>

namespace pbs {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A precondition on an input value was violated (degenerate vector,
/// non-paraxial wavevector, invalid Gram matrix, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

/// Malformed configuration or data file.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// A numerical procedure did not reach its requested accuracy.
class ConvergenceError : public Error {
public:
    using Error::Error;
};

}  // namespace pbs
