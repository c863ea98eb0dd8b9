#pragma once

#include <stdexcept>
#include <string>

namespace dacalign {

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A file could not be opened, read or written.
class IoError : public Error {
public:
    using Error::Error;
};

/// Inputs are well-formed but inconsistent or out of range.
class ValidationError : public Error {
public:
    using Error::Error;
};

/// An embedding file whose size does not match the declared dimension.
class SizeMismatchError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

/// Malformed text input. `line()` is 1-based, 0 when not applicable.
class ParseError : public ValidationError {
public:
    ParseError(const std::string& what, std::size_t line)
        : ValidationError(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}

    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

}  // namespace dacalign
