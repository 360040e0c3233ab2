#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace troptree {

// Bad user input: malformed files, mismatched taxa, invalid flags.
// The CLI maps this to exit status 1.
class InputError : public std::runtime_error {
public:
    explicit InputError(const std::string& msg) : std::runtime_error(msg) {}
};

// Parse failure with a position inside the offending text.
class ParseError : public InputError {
public:
    ParseError(const std::string& msg, std::size_t pos)
        : InputError(msg + " (at position " + std::to_string(pos) + ")"), position_(pos) {}

    std::size_t position() const { return position_; }

private:
    std::size_t position_;
};

// A state the underlying theory rules out (e.g. an empty Fermat-Weber set).
// Reaching this is a bug, not a user error; the CLI maps it to exit status 2.
class InternalError : public std::logic_error {
public:
    explicit InternalError(const std::string& msg) : std::logic_error(msg) {}
};

// Raised by the shortest-path closure when the constraint system has a
// negative cycle.  The witness lists the coordinate nodes of one such cycle.
class InfeasibleCell : public std::runtime_error {
public:
    InfeasibleCell(const std::string& msg, std::vector<int> cycle)
        : std::runtime_error(msg), cycle_(std::move(cycle)) {}

    const std::vector<int>& cycle() const { return cycle_; }

private:
    std::vector<int> cycle_;
};

} // namespace troptree
