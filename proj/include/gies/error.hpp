#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace gies {

enum class ErrorKind {
    InvalidArgument,
    DirectedCycle,
    NotDirected,
    NotUndirected,
    NotAnArrow,
    NotALine,
    NotAnEdge,
    VerticesAdjacent,
    InvalidMove,
    NonConservativeFamily,
    TooManyRepresentatives,
    InsufficientSamples,
    SingularDesign,
    TooLarge,
    InfeasibleTargets,
    SizeMismatch,
    ParseError,
    IoError,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Single exception type for the library; `kind()` lets callers (and the CLI's
/// JSON error output) branch on the failure without parsing messages.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(message), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace gies
