#pragma once

#include <cstdint>
#include <vector>

#include "mirrorsim/hilbert.hpp"

namespace mirrorsim {

/// Overlap magnitude of two unit-width packets separated by exactly one
/// width, exp(-1/2). Default bound for the weak-interference test.
inline constexpr double default_overlap_tol = 0.61;

/// Default reading of "mean many times greater than the deviation".
inline constexpr double default_packet_threshold = 10.0;

/// Ordered set of pointer packets with phase-space metadata. Packets are
/// unit-norm states on the pointer (mirror) space; centers are complex
/// displacements; width is the common packet width in units of the ground
/// state width (1 by convention).
struct PointerBasis {
    PointerBasis(std::vector<StateVector> packets_, std::vector<Complex> centers_,
                 double width_ = 1.0);

    std::vector<StateVector> packets;
    std::vector<Complex> centers;
    double width = 1.0;
};

/// Result of breaking a correlated state into a single branch.
struct BranchOutcome {
    Index index;              ///< selected branch
    StateVector object_state;
    StateVector pointer_state;
    double weight;            ///< Born probability of the branch
};

/// Diagnostics for the weak-interference test: the first failing pair, or
/// ok = true when every pair passes.
struct PacketPairReport {
    bool ok = true;
    std::size_t first = 0;
    std::size_t second = 0;
    double separation = 0.0;
    double overlap_magnitude = 0.0;
};

/// Von Neumann premeasurement: correlates each object basis state with its
/// pointer packet, sum_n c_n |object_n> (x) |packet_n>. The coefficients are
/// carried over unchanged; with exactly one nonzero c_n the result is the
/// noncorrelated product. ready_index names the device's pre-measurement
/// packet (validated for range; the correlated output does not depend on it).
StateVector premeasure(const std::vector<Complex>& coeffs,
                       const std::vector<StateVector>& object_basis,
                       const PointerBasis& pointer_basis, std::size_t ready_index);

/// Trace distance between the correlated pure state and the Born-weighted
/// mixture of its product branches. Strictly positive whenever at least two
/// weights are nonzero and the pointers are orthogonal.
double differs_from_mixture(const StateVector& correlated,
                            const std::vector<StateVector>& branches,
                            const std::vector<double>& weights);

/// |<A>| / dA. Returns 0 when the mean vanishes and +infinity when the
/// deviation is below 1e-12 with a nonzero mean (eigenstate case).
double wave_packet_ratio(const StateVector& psi, const Operator& observable);

/// True iff wave_packet_ratio >= threshold for every supplied observable.
/// The comparison admits a 1e-6 relative slack so states sitting exactly on
/// the threshold evaluate consistently under Fock truncation.
bool is_wave_packet(const StateVector& psi, const std::vector<Operator>& observables,
                    double threshold);

/// Pairwise test behind is_weakly_interfering, reporting the first failing
/// packet pair for diagnostics.
PacketPairReport check_weak_interference(const PointerBasis& basis, double overlap_tol);

/// True iff every packet pair satisfies both the geometric condition
/// |center_i - center_j| >= width and |<packet_i|packet_j>| <= overlap_tol.
bool is_weakly_interfering(const PointerBasis& basis, double overlap_tol);

/// Born weights w_n: squared norm of the pointer-space component paired with
/// object_basis[n] in the correlated state.
std::vector<double> born_weights(const StateVector& correlated,
                                 const std::vector<StateVector>& object_basis);

/// Spontaneous superposition breaking: samples branch n with probability w_n
/// using a deterministic seeded generator and returns the normalized product
/// outcome. Requires the pointer basis to pass the weak-interference gate
/// (throws PacketsInterfere otherwise, naming the failing pair). Calls with
/// identical inputs and seed are bit-identical.
BranchOutcome selfdecohere(const StateVector& correlated,
                           const std::vector<StateVector>& object_basis,
                           const PointerBasis& pointer_basis, double overlap_tol,
                           std::uint64_t seed);

} // namespace mirrorsim
