#pragma once

#include <stdexcept>
#include <string>

namespace degedit {

/// A documented precondition of an operation does not hold.
class PreconditionError : public std::invalid_argument
{
public:
    using std::invalid_argument::invalid_argument;
};

/// The input is larger than a configured capacity (oracle caps, exact treewidth cap, ...).
class CapacityError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

/// Malformed instance text. `line()` is 1-based, 0 when not tied to a line.
class ParseError : public std::runtime_error
{
public:
    ParseError(std::size_t line, const std::string& what)
        : std::runtime_error(line == 0 ? what : "line " + std::to_string(line) + ": " + what)
        , line_(line)
    {
    }

    auto line() const -> std::size_t { return line_; }

private:
    std::size_t line_;
};

} // namespace degedit
