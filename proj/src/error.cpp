#include "triadic/error.hpp"

namespace triadic {

std::string_view to_string(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::NonNormalized: return "NonNormalized";
        case ErrorKind::ImpossibleObservation: return "ImpossibleObservation";
        case ErrorKind::DimensionMismatch: return "DimensionMismatch";
        case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
        case ErrorKind::InvalidCounts: return "InvalidCounts";
        case ErrorKind::TooLarge: return "TooLarge";
        case ErrorKind::InvalidLoss: return "InvalidLoss";
        case ErrorKind::ImproperLoss: return "ImproperLoss";
        case ErrorKind::EmptyRegion: return "EmptyRegion";
        case ErrorKind::NotRegionBased: return "NotRegionBased";
        case ErrorKind::NotCoherent: return "NotCoherent";
        case ErrorKind::ReplayFailed: return "ReplayFailed";
        case ErrorKind::SizeTooSmall: return "SizeTooSmall";
        case ErrorKind::ParseError: return "ParseError";
        case ErrorKind::ValidationError: return "ValidationError";
    }
    return "Unknown";
}

}  // namespace triadic
