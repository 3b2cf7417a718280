#pragma once

#include <stdexcept>
#include <string>

namespace predprey {

/// Category of a failure. Usage/config categories map to exit code 1 in the
/// CLI, numerical categories to exit code 2.
enum class ErrorKind {
    invalid_input,
    invalid_parameter,
    singular_scaling,
    prey_degenerate,
    predator_degenerate,
    configuration,
    parse,
    stiffness,
    cfl,
    insufficient_data,
    io,
};

const char* to_string(ErrorKind kind) noexcept;

/// True for failures that come from the numerics rather than from the user's input.
bool is_numerical(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

} // namespace predprey
