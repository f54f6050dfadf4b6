#pragma once

#include <stdexcept>
#include <string>

namespace lls {

/// Error categories, matching the CLI exit codes.
enum class ErrorCode {
    other = 1,
    format = 2,    // unreadable/malformed input, bad parameters
    geometry = 3,  // crossing curves, inconsistent nesting
    numerical = 4, // flow failed to keep the curve simple
    timeout = 5    // step budget exhausted
};

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& msg)
        : std::runtime_error(msg), code_(code) {}
    ErrorCode code() const { return code_; }

private:
    ErrorCode code_;
};

struct FormatError : Error {
    explicit FormatError(const std::string& m) : Error(ErrorCode::format, m) {}
};

struct GeometryError : Error {
    explicit GeometryError(const std::string& m) : Error(ErrorCode::geometry, m) {}
};

struct NumericalError : Error {
    explicit NumericalError(const std::string& m) : Error(ErrorCode::numerical, m) {}
};

struct TimeoutError : Error {
    explicit TimeoutError(const std::string& m) : Error(ErrorCode::timeout, m) {}
};

/// Bad argument values (epsilon gaps, CFL violations, non-monotone LUTs...).
/// Reported with the same exit code as malformed input.
struct ParamError : Error {
    explicit ParamError(const std::string& m) : Error(ErrorCode::format, m) {}
};

} // namespace lls
