#pragma once

#include <stdexcept>
#include <string>

namespace slink {

/// Base class for every error raised by this library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A file or string could not be parsed (malformed JSON, bad record shape).
class ParseError : public Error {
public:
    using Error::Error;
};

/// Structurally valid input violates a domain invariant (dangling FK,
/// duplicate names, unresolvable gold column).
class ValidationError : public Error {
public:
    using Error::Error;
};

/// A caller passed an argument outside an operation's precondition.
class ArgumentError : public Error {
public:
    using Error::Error;
};

/// A remote provider failed after the configured number of retries.
class TransportError : public Error {
public:
    using Error::Error;
};

/// The operation declines to run because it would exceed a configured cap.
class RefusalError : public Error {
public:
    using Error::Error;
};

} // namespace slink
