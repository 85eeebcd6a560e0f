#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace wmethod {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Inputs that do not fit together: alphabet or kind mismatch, symbols out of range.
class MismatchError : public Error {
public:
    using Error::Error;
};

/// An operation's precondition does not hold (e.g. the machine is not minimal).
class PreconditionError : public Error {
public:
    using Error::Error;
};

/// A malformed input file. `what()` renders as `file:line: message`.
class ParseError : public Error {
public:
    ParseError(std::string file, std::size_t line, std::string message)
        : Error(render(file, line, message)),
          file_(std::move(file)), line_(line), message_(std::move(message)) {}

    const std::string& file() const noexcept { return file_; }
    std::size_t line() const noexcept { return line_; }
    const std::string& message() const noexcept { return message_; }

private:
    static std::string render(const std::string& file, std::size_t line, const std::string& message) {
        return (file.empty() ? std::string("<input>") : file) + ":" + std::to_string(line) + ": " + message;
    }

    std::string file_;
    std::size_t line_;
    std::string message_;
};

} // namespace wmethod
