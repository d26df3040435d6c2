#pragma once

#include <string>
#include <vector>

#include "mirrorsim/measurement.hpp"

namespace mirrorsim {

/// Parameters of the photon + movable-mirror interferometer model.
struct ModelParams {
    double k = 1.0;        ///< dimensionless mirror displacement per photon
    double omega_m = 1.0;  ///< mirror angular frequency, > 0
    double omega_p = 0.0;  ///< photon angular frequency (global phase only)
    Index n_max = 0;       ///< Fock cutoff; 0 selects the default cutoff rule
    double gamma = 0.0;    ///< environmental dephasing rate (1/time), >= 0

    /// Mirror period T_m = 2 pi / omega_m.
    double period() const;

    /// Effective Fock cutoff: n_max when set, else default_cutoff(2k).
    Index fock_cutoff() const;

    /// Throws PreconditionFailed on invalid ranges and CutoffTooSmall when
    /// an explicit n_max cannot hold displacements up to 2k.
    void validate() const;
};

/// Time grid with the observable record of one interferometer sweep.
struct VisibilityCurve {
    std::vector<double> times;
    std::vector<double> visibility;     ///< fringe contrast, in [0, 1]
    std::vector<double> phase;          ///< argument of the Kerr-like factor (unwrapped)
    std::vector<double> mirror_purity;  ///< Tr(rho_m^2) of the reduced mirror state
    std::vector<Complex> overlap;       ///< <0|beta(t)> packet overlap
};

enum class VerdictLabel { RelativeDecoherence, AbsoluteDecoherence, Inconclusive };

std::string to_string(VerdictLabel label);

/// Outcome of the absolute-vs-relative decoherence discrimination protocol.
struct Verdict {
    VerdictLabel label;
    double mid_visibility;      ///< visibility at T_m / 2
    double revival_visibility;  ///< visibility at T_m
};

/// (|B> + |A>)/sqrt(2) (x) |0_m>: photon in an equal arm superposition,
/// mirror at rest in its ground packet.
StateVector initial_state(const ModelParams& params);

/// Kerr-like unit-modulus factor exp(i k^2 (omega_m t - sin omega_m t))
/// acquired by the arm-A branch.
Complex kerr_phase(const ModelParams& params, double t);

/// Coherent displacement of the arm-A mirror packet,
/// beta(t) = k (1 - exp(-i omega_m t)); |beta| = 2k |sin(omega_m t / 2)|.
/// Zero at integer periods, maximal (2k) at half periods.
Complex mirror_displacement(const ModelParams& params, double t);

/// Entangled photon+mirror state at time t:
/// (1/sqrt(2)) e^{-i omega_p t} (|B>(x)|0> + f(t) |A>(x)|beta(t)>).
StateVector joint_state(const ModelParams& params, double t);

/// Interference fringe contrast: twice the magnitude of the off-diagonal
/// element of the reduced photon state, times the dephasing factor
/// exp(-gamma t). Equals exp(-k^2 (1 - cos omega_m t)) exp(-gamma t).
double visibility(const ModelParams& params, double t);

/// Uniform sweep over [t_start, t_end] inclusive; samples >= 2.
VisibilityCurve visibility_curve(const ModelParams& params, double t_start,
                                 double t_end, std::size_t samples);

/// Smallest t > 0 with visibility(t) = threshold, by bisection to
/// 1e-10 * T_m; half the effective correlation window. threshold = 1 is the
/// degenerate case and returns 0. Throws ThresholdUnreachable when the
/// coupling-induced dip exp(-2k^2) never reaches the threshold.
double correlation_window(const ModelParams& params, double threshold);

/// Distinguishability gate k^2 >= 1: the momentum kick exceeds the mirror's
/// initial momentum uncertainty, so the branch packets separate by at least
/// one ground-state width.
bool distinguishability_ok(const ModelParams& params);

/// The two dynamically occupied branch packets {|0>, |beta(t)>} with their
/// phase-space centers, width 1.
PointerBasis pointer_set(const ModelParams& params, double t);

/// Parametric dephasing channel on a curve: multiplies the visibility column
/// by exp(-gamma t) row by row.
VisibilityCurve apply_dephasing(VisibilityCurve curve, double gamma);

/// Same channel on a composite (photon (x) mirror) density matrix: scales the
/// off-diagonal photon blocks by exp(-gamma t).
DensityMatrix apply_dephasing(const DensityMatrix& rho, double gamma, double t);

/// Discrimination protocol: measures visibility at T_m/2 and T_m.
/// RelativeDecoherence when the mid-period visibility is suppressed below
/// suppression_tol and the revival reaches 1 - revival_tol;
/// AbsoluteDecoherence when suppression holds but the revival fails;
/// Inconclusive otherwise. Requires the distinguishability gate.
Verdict discriminate(const ModelParams& params, double revival_tol = 0.01,
                     double suppression_tol = 0.2);

} // namespace mirrorsim
