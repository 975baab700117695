#pragma once

#include <stdexcept>
#include <string>

namespace hinv {

/// Bad or inconsistent run configuration (CLI exit code 2).
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed or invalid input data, e.g. a broken CSV cell (CLI exit code 3).
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t row, std::size_t column)
        : std::runtime_error(what + " (row " + std::to_string(row) + ", column " +
                             std::to_string(column) + ")"),
          row_(row), column_(column) {}
    explicit ParseError(const std::string& what) : std::runtime_error(what), row_(0), column_(0) {}

    std::size_t row() const { return row_; }
    std::size_t column() const { return column_; }

private:
    std::size_t row_;
    std::size_t column_;
};

/// Precondition violation on otherwise well-formed data (CLI exit code 4).
class DomainError : public std::runtime_error {
public:
    explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

/// A numerical procedure failed to converge or produced an impossible value
/// (CLI exit code 4).
class NumericalError : public std::runtime_error {
public:
    explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

/// Filesystem failure (CLI exit code 5).
class IoError : public std::runtime_error {
public:
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace hinv
