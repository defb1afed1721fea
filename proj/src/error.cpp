#include "subrepro/error.hpp"

namespace subrepro {

std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::SingularMatrix: return "SingularMatrix";
        case ErrorCode::NotExpanding: return "NotExpanding";
        case ErrorCode::DimensionMismatch: return "DimensionMismatch";
        case ErrorCode::AffineWeightsInvalid: return "AffineWeightsInvalid";
        case ErrorCode::NotARepresentative: return "NotARepresentative";
        case ErrorCode::DuplicateIndex: return "DuplicateIndex";
        case ErrorCode::NotNormalized: return "NotNormalized";
        case ErrorCode::WindowTooSmall: return "WindowTooSmall";
        case ErrorCode::Infeasible: return "Infeasible";
        case ErrorCode::UnknownName: return "UnknownName";
        case ErrorCode::ParseError: return "ParseError";
        case ErrorCode::IoError: return "IoError";
        case ErrorCode::Overflow: return "Overflow";
        case ErrorCode::SelfCheckFailed: return "SelfCheckFailed";
    }
    return "Unknown";
}

}  // namespace subrepro
