#pragma once

#include <stdexcept>
#include <string>

namespace reconf {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Malformed input text (graph, instance, sequence or decomposition files).
struct ParseError : Error {
    using Error::Error;
};

/// Structurally invalid arguments (vertex out of range, non-clique set, ...).
struct InputError : Error {
    using Error::Error;
};

/// A configured enumeration budget was exceeded.
struct ResourceError : Error {
    using Error::Error;
};

/// A solver reached a state that violates one of its own invariants.
struct InternalError : Error {
    using Error::Error;
};

/// The chordal pipeline was handed a graph with a long induced cycle.
struct NotChordalError : Error {
    using Error::Error;
};

}  // namespace reconf
