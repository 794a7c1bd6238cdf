#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace steklov {

enum class ErrorKind {
    InvalidGeometry,
    InvalidArgument,
    DisconnectedUnion,
    HoleDetected,
    MalformedDecomposition,
    NotOnAxis,
    NonOrthogonalJunction,
    ParameterOutOfRange,
    OverlapViolation,
    EmptySteklovBoundary,
    RecoveryFailed,
    AmbiguousTail,
    TooFewNodes,
    IllConditioned,
    UnsupportedTopology,
    EigensolveFailed,
    NotSymmetric,
    NotApplicable,
    SteklovMismatch,
    NotProper,
    HypothesisViolated,
    UnresolvedRange,
};

std::string_view to_string(ErrorKind kind);

/// True for failures of the numerics rather than of the input.
bool is_numerical(ErrorKind kind);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

}  // namespace steklov
