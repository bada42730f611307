#pragma once

#include <stdexcept>
#include <string>

namespace carbonscope {

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A value violates a domain invariant (negative energy, NaN, utilization
/// outside [0,1], shares not summing to one, ...).
class ValidationError : public Error {
public:
    using Error::Error;
};

/// A time series does not span the requested instant or interval.
class CoverageError : public Error {
public:
    using Error::Error;
};

/// A configuration is internally inconsistent (missing source coefficient,
/// unresolved device binding, dangling file reference).
class ConfigError : public Error {
public:
    using Error::Error;
};

/// An input document could not be parsed.
class ParseError : public Error {
public:
    using Error::Error;
};

} // namespace carbonscope
