#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace adrsig {

/// Caller violated an operation's documented precondition.
class PreconditionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Input data could not be parsed or failed validation.
class DataError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A malformed row in an input file. Carries the file name and 1-based line.
class ParseError : public DataError {
public:
    ParseError(std::string file, std::size_t line, const std::string& what)
        : DataError(file + ":" + std::to_string(line) + ": " + what),
          file_(std::move(file)),
          line_(line) {}

    const std::string& file() const noexcept { return file_; }
    std::size_t line() const noexcept { return line_; }

private:
    std::string file_;
    std::size_t line_;
};

}  // namespace adrsig
