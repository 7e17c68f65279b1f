#include "fdrift/error.hpp"

namespace fdrift {

std::string_view to_string(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::DegenerateDesign: return "DegenerateDesign";
        case ErrorKind::EmptyWindow: return "EmptyWindow";
        case ErrorKind::ShapeMismatch: return "ShapeMismatch";
        case ErrorKind::EmptyPrefix: return "EmptyPrefix";
        case ErrorKind::InvalidBlocks: return "InvalidBlocks";
        case ErrorKind::EmptyExtremalSet: return "EmptyExtremalSet";
        case ErrorKind::SeriesTooShort: return "SeriesTooShort";
        case ErrorKind::InvalidConfig: return "InvalidConfig";
        case ErrorKind::TooFewCurves: return "TooFewCurves";
        case ErrorKind::ParseError: return "ParseError";
        case ErrorKind::TooFewRows: return "TooFewRows";
        case ErrorKind::NonMonotoneGrid: return "NonMonotoneGrid";
        case ErrorKind::InvalidArgument: return "InvalidArgument";
        case ErrorKind::IoError: return "IoError";
    }
    return "Unknown";
}

}  // namespace fdrift
