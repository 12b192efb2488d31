#include "gies/error.hpp"

namespace gies {

std::string_view to_string(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::InvalidArgument: return "InvalidArgument";
        case ErrorKind::DirectedCycle: return "DirectedCycle";
        case ErrorKind::NotDirected: return "NotDirected";
        case ErrorKind::NotUndirected: return "NotUndirected";
        case ErrorKind::NotAnArrow: return "NotAnArrow";
        case ErrorKind::NotALine: return "NotALine";
        case ErrorKind::NotAnEdge: return "NotAnEdge";
        case ErrorKind::VerticesAdjacent: return "VerticesAdjacent";
        case ErrorKind::InvalidMove: return "InvalidMove";
        case ErrorKind::NonConservativeFamily: return "NonConservativeFamily";
        case ErrorKind::TooManyRepresentatives: return "TooManyRepresentatives";
        case ErrorKind::InsufficientSamples: return "InsufficientSamples";
        case ErrorKind::SingularDesign: return "SingularDesign";
        case ErrorKind::TooLarge: return "TooLarge";
        case ErrorKind::InfeasibleTargets: return "InfeasibleTargets";
        case ErrorKind::SizeMismatch: return "SizeMismatch";
        case ErrorKind::ParseError: return "ParseError";
        case ErrorKind::IoError: return "IoError";
    }
    return "Unknown";
}

}  // namespace gies
