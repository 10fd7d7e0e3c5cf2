#include "specmult/errors.hpp"

namespace specmult {

std::string_view to_string(ErrorKind kind) noexcept {
    switch (kind) {
    case ErrorKind::Parse: return "ParseError";
    case ErrorKind::LoopEdge: return "LoopEdge";
    case ErrorKind::DuplicateEdge: return "DuplicateEdge";
    case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorKind::MissingEdge: return "MissingEdge";
    case ErrorKind::NotConnected: return "NotConnected";
    case ErrorKind::NotApplicable: return "NotApplicable";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::PatternMismatch: return "PatternMismatch";
    case ErrorKind::AlphaOutOfRange: return "AlphaOutOfRange";
    case ErrorKind::NotACycle: return "NotACycle";
    case ErrorKind::NotAPath: return "NotAPath";
    case ErrorKind::NotATree: return "NotATree";
    case ErrorKind::NotUnicyclic: return "NotUnicyclic";
    case ErrorKind::NotCStarShape: return "NotCStarShape";
    case ErrorKind::ParameterOutOfRange: return "ParameterOutOfRange";
    case ErrorKind::ConvergenceFailure: return "ConvergenceFailure";
    case ErrorKind::AmbiguousCluster: return "AmbiguousCluster";
    case ErrorKind::SideConditionUnmet: return "SideConditionUnmet";
    case ErrorKind::CapExceeded: return "CapExceeded";
    case ErrorKind::TimeBudgetExceeded: return "TimeBudgetExceeded";
    case ErrorKind::Overflow: return "Overflow";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    }
    return "Unknown";
}

} // namespace specmult
