#pragma once

#include <stdexcept>
#include <string>

namespace rankdep {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// A rank-based operation received tied values under the Error tie policy.
class TiesError : public Error {
public:
    explicit TiesError(const std::string& msg) : Error(msg) {}
};

/// Precondition violation on an input value (sample size, probability
/// vector, parameter range, block size, ...).
class InvalidInput : public Error {
public:
    explicit InvalidInput(const std::string& msg) : Error(msg) {}
};

/// A numeric routine could not produce a result (no sign bracket, no
/// convergence within the iteration budget, degenerate variance).
class NumericError : public Error {
public:
    explicit NumericError(const std::string& msg) : Error(msg) {}
};

/// A quantile table does not match the requested statistic, sample size
/// or probability level.
class TableMismatch : public Error {
public:
    explicit TableMismatch(const std::string& msg) : Error(msg) {}
};

/// A copula model lacks a density where one is required.
class DensityUnavailable : public Error {
public:
    explicit DensityUnavailable(const std::string& msg) : Error(msg) {}
};

/// Malformed input file. `line` is 1-based; 0 means not line-specific.
class ParseError : public Error {
public:
    ParseError(const std::string& msg, std::size_t line = 0)
        : Error(line ? msg + " (line " + std::to_string(line) + ")" : msg),
          line_(line) {}
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

} // namespace rankdep
