#pragma once

#include <stdexcept>
#include <string>

namespace varcalc {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The input leaves the expression class an operation supports
/// (rational functions, third-order jets, transcendental integrands, ...).
class UnsupportedError : public Error {
public:
    using Error::Error;
};

/// A documented precondition of an operation was violated by the caller.
class PreconditionError : public Error {
public:
    using Error::Error;
};

/// An identity that must hold for every input failed. Always a bug.
class InternalError : public Error {
public:
    using Error::Error;
};

}  // namespace varcalc
