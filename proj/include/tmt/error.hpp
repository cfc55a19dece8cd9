#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace tmt {

enum class ErrorCode {
    DuplicateSource,
    DuplicateDestination,
    SelfLoop,
    NodeOutOfRange,
    LengthMismatch,
    ReconfigInProgress,
    StaticSwitchImmutable,
    NotARotor,
    InvalidSpec,
    InvalidConfig,
    TraceMismatch,
    ParseError,
};

inline std::string_view to_string(ErrorCode code) {
    switch (code) {
    case ErrorCode::DuplicateSource: return "DuplicateSource";
    case ErrorCode::DuplicateDestination: return "DuplicateDestination";
    case ErrorCode::SelfLoop: return "SelfLoop";
    case ErrorCode::NodeOutOfRange: return "NodeOutOfRange";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::ReconfigInProgress: return "ReconfigInProgress";
    case ErrorCode::StaticSwitchImmutable: return "StaticSwitchImmutable";
    case ErrorCode::NotARotor: return "NotARotor";
    case ErrorCode::InvalidSpec: return "InvalidSpec";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
    case ErrorCode::TraceMismatch: return "TraceMismatch";
    case ErrorCode::ParseError: return "ParseError";
    }
    return "Unknown";
}

/// Every failure raised by the library carries a machine-checkable code.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

/// Trace-file syntax error; `line()` is the 1-based physical line.
class ParseError : public Error {
public:
    ParseError(std::size_t line, const std::string& reason)
        : Error(ErrorCode::ParseError, "line " + std::to_string(line) + ": " + reason),
          line_(line), reason_(reason) {}

    std::size_t line() const noexcept { return line_; }
    const std::string& reason() const noexcept { return reason_; }

private:
    std::size_t line_;
    std::string reason_;
};

} // namespace tmt
