#pragma once

#include <vector>

#include "mirrorsim/hilbert.hpp"

namespace mirrorsim {

/// Parameters of the single-photon + oscillating-mirror Hamiltonian.
struct HamiltonianSpec {
    double omega_p = 0.0;  ///< photon angular frequency (enters as a global phase)
    double omega_m = 1.0;  ///< mirror angular frequency, > 0
    double k = 0.0;        ///< dimensionless displacement parameter, >= 0
    Index n_max = 1;       ///< Fock cutoff, >= 1

    void validate() const;
};

/// Dense Hamiltonian on the (photon qubit) x (truncated Fock) space:
///   H = omega_p * I  +  omega_m * I (x) b†b  -  k * omega_m * P_A (x) (b + b†)
/// with P_A the projector onto interferometer arm A (photon index 1).
/// The photon energy is a multiple of the identity on the single-photon
/// subspace, so it contributes exactly the global phase of the analytic
/// closed form.
Operator build_hamiltonian(const HamiltonianSpec& spec);

/// psi(t) = exp(-iHt) psi0 via spectral decomposition of the hermitian H.
StateVector evolve(const Operator& hamiltonian, double t, const StateVector& psi0);

/// Dense propagator matrix exp(-iHt).
Eigen::MatrixXcd evolution_operator(const Operator& hamiltonian, double t);

/// ||U†U - I||_max for U = exp(-iHt).
double unitarity_defect(const Operator& hamiltonian, double t);

/// Max over n of | |(U psi_n, U psi_0)| - |(psi_n, psi_0)| | for an
/// orthonormal basis co-evolved with the state: evolution preserves all
/// expansion-coefficient magnitudes.
double coefficient_conservation(const Operator& hamiltonian,
                                const std::vector<StateVector>& basis,
                                const StateVector& psi0, double t);

} // namespace mirrorsim
