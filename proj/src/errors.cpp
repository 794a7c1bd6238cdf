#include "steklov/errors.hpp"

namespace steklov {

std::string_view to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::InvalidGeometry: return "InvalidGeometry";
        case ErrorKind::InvalidArgument: return "InvalidArgument";
        case ErrorKind::DisconnectedUnion: return "DisconnectedUnion";
        case ErrorKind::HoleDetected: return "HoleDetected";
        case ErrorKind::MalformedDecomposition: return "MalformedDecomposition";
        case ErrorKind::NotOnAxis: return "NotOnAxis";
        case ErrorKind::NonOrthogonalJunction: return "NonOrthogonalJunction";
        case ErrorKind::ParameterOutOfRange: return "ParameterOutOfRange";
        case ErrorKind::OverlapViolation: return "OverlapViolation";
        case ErrorKind::EmptySteklovBoundary: return "EmptySteklovBoundary";
        case ErrorKind::RecoveryFailed: return "RecoveryFailed";
        case ErrorKind::AmbiguousTail: return "AmbiguousTail";
        case ErrorKind::TooFewNodes: return "TooFewNodes";
        case ErrorKind::IllConditioned: return "IllConditioned";
        case ErrorKind::UnsupportedTopology: return "UnsupportedTopology";
        case ErrorKind::EigensolveFailed: return "EigensolveFailed";
        case ErrorKind::NotSymmetric: return "NotSymmetric";
        case ErrorKind::NotApplicable: return "NotApplicable";
        case ErrorKind::SteklovMismatch: return "SteklovMismatch";
        case ErrorKind::NotProper: return "NotProper";
        case ErrorKind::HypothesisViolated: return "HypothesisViolated";
        case ErrorKind::UnresolvedRange: return "UnresolvedRange";
    }
    return "UnknownError";
}

bool is_numerical(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::TooFewNodes:
        case ErrorKind::IllConditioned:
        case ErrorKind::EigensolveFailed:
        case ErrorKind::UnresolvedRange:
        case ErrorKind::RecoveryFailed:
        case ErrorKind::AmbiguousTail:
            return true;
        default:
            return false;
    }
}

}  // namespace steklov
