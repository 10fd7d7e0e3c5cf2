#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace specmult {

enum class ErrorKind {
    Parse,
    LoopEdge,
    DuplicateEdge,
    IndexOutOfRange,
    MissingEdge,
    NotConnected,
    NotApplicable,
    DimensionMismatch,
    PatternMismatch,
    AlphaOutOfRange,
    NotACycle,
    NotAPath,
    NotATree,
    NotUnicyclic,
    NotCStarShape,
    ParameterOutOfRange,
    ConvergenceFailure,
    AmbiguousCluster,
    SideConditionUnmet,
    CapExceeded,
    TimeBudgetExceeded,
    Overflow,
    InvalidArgument,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Every domain failure in the library is reported as an Error carrying a
/// machine-readable kind; the CLI turns it into JSON on stderr.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(message), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

class ParseError : public Error {
public:
    ParseError(std::size_t line, const std::string& reason)
        : Error(ErrorKind::Parse, "line " + std::to_string(line) + ": " + reason),
          line_(line), reason_(reason) {}

    std::size_t line() const noexcept { return line_; }
    const std::string& reason() const noexcept { return reason_; }

private:
    std::size_t line_;
    std::string reason_;
};

} // namespace specmult
