#pragma once

#include <stdexcept>
#include <string>

namespace sparsens {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidFrequency : public Error {
public:
    using Error::Error;
};

/// A value does not fit the target representation (e.g. double).
class RangeError : public Error {
public:
    using Error::Error;
};

/// A generator spec violates one of its family conditions.
class SpecError : public Error {
public:
    using Error::Error;
};

class ConfigError : public Error {
public:
    using Error::Error;
};

class ScheduleError : public Error {
public:
    using Error::Error;
};

/// A difference of stage frequencies vanished while emitting ledger entries.
class DegeneracyError : public Error {
public:
    using Error::Error;
};

/// Time stepping produced a non-finite amplitude.
class DivergenceError : public Error {
public:
    DivergenceError(const std::string& what, double time) : Error(what), time_(time) {}
    double time() const { return time_; }

private:
    double time_;
};

/// Malformed input file or document.
class FormatError : public Error {
public:
    using Error::Error;
};

}  // namespace sparsens
