#pragma once

#include <stdexcept>
#include <string>

namespace minksum {

/// Raised when a body, term, problem or parameter set violates its invariants.
class InvalidInput : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Raised by iterative routines that must converge (the verification oracle).
class ConvergenceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Problem-file errors. `where` is a JSON pointer or "line:col" context.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& where, const std::string& what)
        : std::runtime_error(where.empty() ? what : where + ": " + what), where_(where) {}

    const std::string& where() const noexcept { return where_; }

private:
    std::string where_;
};

} // namespace minksum
