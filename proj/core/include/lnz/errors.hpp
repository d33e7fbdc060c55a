#pragma once

#include <stdexcept>
#include <string>

namespace lnz {

// Bad user input: invalid base, alphabet mismatch, wrong mode for a base.
struct usage_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// A bounded search ran out of budget (d_max, c_max, state budget).
struct exhausted_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A construction exceeded its state budget.
struct budget_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed automaton file. Carries the 1-based line number of the offence.
struct parse_error : std::runtime_error {
    parse_error(const std::string& msg, std::size_t line)
        : std::runtime_error("line " + std::to_string(line) + ": " + msg), line_number(line) {}
    std::size_t line_number;
};

} // namespace lnz
