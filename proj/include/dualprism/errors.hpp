#pragma once

#include <stdexcept>
#include <string>

namespace dualprism {

/// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// The iterative eigensolver exhausted its iteration budget.
struct NonConvergence : Error {
    using Error::Error;
};

/// Two objects that must share a dimension do not.
struct DimensionMismatch : Error {
    using Error::Error;
};

/// An edge flip was requested that contradicts the edge's current state.
struct EdgeStateMismatch : Error {
    using Error::Error;
};

/// Operation applied to an empty (0-node) graph.
struct DegenerateGraph : Error {
    using Error::Error;
};

/// Operation needs a larger matrix/graph than was given.
struct DimensionTooSmall : Error {
    using Error::Error;
};

/// Operation requires a connected graph.
struct DisconnectedGraph : Error {
    using Error::Error;
};

/// A data file failed to parse; the message carries file and line.
struct MalformedFile : Error {
    using Error::Error;
};

/// An edge connects nodes assigned to different graphs.
struct InconsistentIndicator : Error {
    using Error::Error;
};

/// A required input file is absent.
struct MissingFile : Error {
    using Error::Error;
};

/// Writing an output file failed.
struct IoFailure : Error {
    using Error::Error;
};

} // namespace dualprism
