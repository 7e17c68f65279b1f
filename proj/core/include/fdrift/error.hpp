#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace fdrift {

/// Failure categories reported by the library. The CLI prints the name of the
/// kind verbatim, so names are part of the external interface.
enum class ErrorKind {
    DegenerateDesign,
    EmptyWindow,
    ShapeMismatch,
    EmptyPrefix,
    InvalidBlocks,
    EmptyExtremalSet,
    SeriesTooShort,
    InvalidConfig,
    TooFewCurves,
    ParseError,
    TooFewRows,
    NonMonotoneGrid,
    InvalidArgument,
    IoError,
};

[[nodiscard]] std::string_view to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(message), kind_(kind) {}

    [[nodiscard]] ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace fdrift
