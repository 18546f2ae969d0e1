#pragma once

#include <stdexcept>
#include <string>

namespace sra {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A precondition or invariant on the inputs was violated.
class InvalidInputError : public Error {
public:
    using Error::Error;
};

/// A text document could not be parsed into the requested structure.
class ParseError : public Error {
public:
    using Error::Error;
};

/// The operation is not defined for this kind of input
/// (e.g. average overlap on censored lists).
class UnsupportedInputError : public Error {
public:
    using Error::Error;
};

}  // namespace sra
