#pragma once

#include <stdexcept>
#include <string>

namespace postscope {

// Runtime failures attributable to input data or numerical procedures.
// Precondition violations use std::invalid_argument directly.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// A malformed input file; carries the 1-based line number.
class ParseError : public Error {
public:
    ParseError(std::size_t line, const std::string& what)
        : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

}  // namespace postscope
