#include "interfero/error.hpp"

namespace interfero {

const char* to_string(ErrorKind kind) noexcept {
    switch (kind) {
    case ErrorKind::InvalidArgument: return "invalid argument";
    case ErrorKind::Malformed: return "malformed input";
    case ErrorKind::Admissibility: return "admissibility violation";
    case ErrorKind::Numerical: return "numerical failure";
    }
    return "unknown error";
}

}  // namespace interfero
