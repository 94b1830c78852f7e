#pragma once

#include <stdexcept>
#include <string>

namespace interfero {

/// Error classes. The numeric values double as CLI exit codes and C API
/// status codes.
enum class ErrorKind : int {
    InvalidArgument = 1,
    Malformed = 2,
    Admissibility = 3,
    Numerical = 4,
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
    throw Error(kind, what);
}

const char* to_string(ErrorKind kind) noexcept;

}  // namespace interfero
