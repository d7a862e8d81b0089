#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace wad {

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed input: unknown letters, dangling ids, ill-formed configurations.
class InputError : public Error {
public:
    using Error::Error;
};

/// Two objects that must share an alphabet do not.
class AlphabetMismatch : public Error {
public:
    using Error::Error;
};

/// Syntax error with a 1-based line and column (column 0 when unknown).
class ParseError : public Error {
public:
    ParseError(const std::string& msg, std::size_t line, std::size_t column)
        : Error(format(msg, line, column)), line_(line), column_(column) {}

    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    static std::string format(const std::string& msg, std::size_t line, std::size_t column) {
        std::string out = std::to_string(line);
        if (column != 0) {
            out += ':' + std::to_string(column);
        }
        return out + ": " + msg;
    }

    std::size_t line_;
    std::size_t column_;
};

/// A node table grew beyond its configured cap.
class TableLimitExceeded : public Error {
public:
    using Error::Error;
};

/// A deadline passed while an operation was running.
class DeadlineExceeded : public Error {
public:
    using Error::Error;
};

}  // namespace wad
