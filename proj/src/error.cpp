#include "predprey/error.hpp"

namespace predprey {

const char* to_string(ErrorKind kind) noexcept {
    switch (kind) {
    case ErrorKind::invalid_input: return "invalid-input";
    case ErrorKind::invalid_parameter: return "invalid-parameter";
    case ErrorKind::singular_scaling: return "singular-scaling";
    case ErrorKind::prey_degenerate: return "prey-degenerate";
    case ErrorKind::predator_degenerate: return "predator-degenerate";
    case ErrorKind::configuration: return "configuration";
    case ErrorKind::parse: return "parse";
    case ErrorKind::stiffness: return "stiffness";
    case ErrorKind::cfl: return "cfl";
    case ErrorKind::insufficient_data: return "insufficient-data";
    case ErrorKind::io: return "io";
    }
    return "unknown";
}

bool is_numerical(ErrorKind kind) noexcept {
    switch (kind) {
    case ErrorKind::prey_degenerate:
    case ErrorKind::predator_degenerate:
    case ErrorKind::stiffness:
    case ErrorKind::cfl:
        return true;
    default:
        return false;
    }
}

} // namespace predprey
