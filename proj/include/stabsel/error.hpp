#pragma once

#include <stdexcept>
#include <string>

namespace stabsel {

// Precondition and parameter violations are reported as std::invalid_argument.
// The two classes below cover the remaining failure families the CLI maps to
// distinct exit codes.

/// Malformed or unusable input data (unreadable CSV, non-finite values, unknown columns).
class DataError : public std::runtime_error {
public:
    explicit DataError(const std::string& what) : std::runtime_error(what) {}
};

/// A numerical procedure could not produce a valid answer (solver did not
/// converge, requested sparsity unreachable on the lambda path, ...).
class NumericalError : public std::runtime_error {
public:
    explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace stabsel
