#pragma once

#include <stdexcept>
#include <string>

namespace mirrorsim {

/// Base class for all simulator errors.
struct SimulatorError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Fock cutoff too small for the requested displacement (|alpha|^2 + 6|alpha| > n_max).
struct CutoffTooSmall : SimulatorError {
    using SimulatorError::SimulatorError;
};

/// Subsystem dimensions or vector/matrix sizes do not match.
struct DimensionMismatch : SimulatorError {
    using SimulatorError::SimulatorError;
};

/// An operator required to be Hermitian is not.
struct NotHermitian : SimulatorError {
    using SimulatorError::SimulatorError;
};

/// A state vector, coefficient list or weight list is not normalized.
struct NotNormalized : SimulatorError {
    using SimulatorError::SimulatorError;
};

/// A list of states required to be orthonormal is not.
struct BasisNotOrthonormal : SimulatorError {
    using SimulatorError::SimulatorError;
};

/// Pointer packets fail the weak-interference gate, so no branch can be selected.
struct PacketsInterfere : SimulatorError {
    using SimulatorError::SimulatorError;
};

/// The requested visibility threshold is never reached.
struct ThresholdUnreachable : SimulatorError {
    using SimulatorError::SimulatorError;
};

/// An operation-level precondition is violated.
struct PreconditionFailed : SimulatorError {
    using SimulatorError::SimulatorError;
};

} // namespace mirrorsim
