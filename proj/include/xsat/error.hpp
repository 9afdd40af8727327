#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace xsat {

enum class ErrorKind {
    dimension,
    empty_formula,
    parse,
    encoding,
    degenerate_clause,
    width,
    capacity,
    spec,
    contract,
    internal,
};

inline const char* to_string(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::dimension: return "dimension";
    case ErrorKind::empty_formula: return "empty-formula";
    case ErrorKind::parse: return "parse";
    case ErrorKind::encoding: return "encoding";
    case ErrorKind::degenerate_clause: return "degenerate-clause";
    case ErrorKind::width: return "width";
    case ErrorKind::capacity: return "capacity";
    case ErrorKind::spec: return "spec";
    case ErrorKind::contract: return "contract";
    case ErrorKind::internal: return "internal";
    }
    return "unknown";
}

/// Every failure raised by the library. `line()` is nonzero only for parse
/// errors that can be attributed to an input line.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message, std::size_t line = 0)
        : std::runtime_error(decorate(kind, message, line)), kind_(kind), line_(line) {}

    ErrorKind kind() const noexcept { return kind_; }
    std::size_t line() const noexcept { return line_; }

private:
    static std::string decorate(ErrorKind kind, const std::string& message, std::size_t line) {
        std::string out = std::string(to_string(kind)) + " error";
        if (line != 0) out += " (line " + std::to_string(line) + ")";
        return out + ": " + message;
    }

    ErrorKind kind_;
    std::size_t line_;
};

} // namespace xsat
