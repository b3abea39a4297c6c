#pragma once

#include <stdexcept>
#include <string>

namespace polling {

// Error categories, aligned with the CLI exit codes.
enum class ErrorCode {
    InvalidInput = 2,   // bad config, moment violations, empty batch support
    Unstable = 3,       // total load at or above 1
    Numerical = 4,      // fixed-point or series iteration cap reached
};

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(what), code_(code) {}

    ErrorCode code() const { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void fail_invalid(const std::string& what) {
    throw Error(ErrorCode::InvalidInput, what);
}

[[noreturn]] inline void fail_unstable(const std::string& what) {
    throw Error(ErrorCode::Unstable, what);
}

[[noreturn]] inline void fail_numerical(const std::string& what) {
    throw Error(ErrorCode::Numerical, what);
}

}  // namespace polling
