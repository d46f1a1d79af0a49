#ifndef EPISOURCE_ERROR_HPP
#define EPISOURCE_ERROR_HPP

#include <stdexcept>
#include <string>

namespace episource {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Bad caller-supplied value (out-of-range node, k > n, ...).
struct ArgumentError : Error {
    using Error::Error;
};

// Input violates a structural precondition (non-tree, disconnected, ...).
struct StructureError : Error {
    using Error::Error;
};

// Malformed text input; message carries the line number.
struct ParseError : Error {
    using Error::Error;
};

// Rejection sampling of source placements exhausted its attempt budget.
struct PlacementError : Error {
    using Error::Error;
};

// Graph generator could not satisfy its own constraints.
struct GenerationError : Error {
    using Error::Error;
};

// Requested parameter regime is provably empty (e.g. delta interval).
struct InfeasibleError : Error {
    using Error::Error;
};

// Exact enumeration refused: instance exceeds the size guard.
struct RefusalError : Error {
    using Error::Error;
};

}  // namespace episource

#endif
