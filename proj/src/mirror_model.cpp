#include "mirrorsim/mirror_model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace mirrorsim {

namespace {

constexpr double pi = std::numbers::pi;

double kerr_argument(const ModelParams& params, double t) {
    const double wt = params.omega_m * t;
    return params.k * params.k * (wt - std::sin(wt));
}

} // namespace

double ModelParams::period() const {
    return 2.0 * pi / omega_m;
}

Index ModelParams::fock_cutoff() const {
    return n_max > 0 ? n_max : default_cutoff(2.0 * k);
}

void ModelParams::validate() const {
    if (!(omega_m > 0.0))
        throw PreconditionFailed("omega_m must be > 0");
    if (k < 0.0)
        throw PreconditionFailed("k must be >= 0");
    if (gamma < 0.0)
        throw PreconditionFailed("gamma must be >= 0");
    if (n_max < 0)
        throw PreconditionFailed("n_max must be >= 0 (0 selects the default cutoff)");
    const Index cutoff = fock_cutoff();
    if (cutoff < 1)
        throw PreconditionFailed("Fock cutoff must be >= 1");
    if (!cutoff_adequate(2.0 * k, cutoff)) {
        const double a = 2.0 * k;
        throw CutoffTooSmall("cutoff " + std::to_string(cutoff) +
                             " too small for displacements up to 2k = " + std::to_string(a) +
                             " (need >= " + std::to_string(a * a + 6.0 * a) + ")");
    }
}

std::string to_string(VerdictLabel label) {
    switch (label) {
    case VerdictLabel::RelativeDecoherence: return "RelativeDecoherence";
    case VerdictLabel::AbsoluteDecoherence: return "AbsoluteDecoherence";
    case VerdictLabel::Inconclusive: return "Inconclusive";
    }
    return "Inconclusive";
}

StateVector initial_state(const ModelParams& params) {
    params.validate();
    const Index n = params.fock_cutoff() + 1;
    Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(2 * n);
    const double r = 1.0 / std::sqrt(2.0);
    amps(0) = r;  // |B> (x) |0>
    amps(n) = r;  // |A> (x) |0>
    return StateVector({2, n}, std::move(amps));
}

Complex kerr_phase(const ModelParams& params, double t) {
    return std::polar(1.0, kerr_argument(params, t));
}

Complex mirror_displacement(const ModelParams& params, double t) {
    return params.k * (1.0 - std::polar(1.0, -params.omega_m * t));
}

StateVector joint_state(const ModelParams& params, double t) {
    params.validate();
    const Index cutoff = params.fock_cutoff();
    const Index n = cutoff + 1;
    const StateVector packet = coherent_state(mirror_displacement(params, t), cutoff);
    const Complex global = std::polar(1.0 / std::sqrt(2.0), -params.omega_p * t);
    const Complex branch_a = global * kerr_phase(params, t);
    Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(2 * n);
    amps(0) = global;
    amps.segment(n, n) = branch_a * packet.amps();
    return StateVector({2, n}, std::move(amps));
}

double visibility(const ModelParams& params, double t) {
    const DensityMatrix photon = partial_trace(joint_state(params, t), 0);
    const double v = 2.0 * std::abs(photon.entries()(0, 1)) * std::exp(-params.gamma * t);
    return std::clamp(v, 0.0, 1.0);
}

VisibilityCurve visibility_curve(const ModelParams& params, double t_start, double t_end,
                                 std::size_t samples) {
    params.validate();
    if (samples < 2)
        throw PreconditionFailed("need at least 2 samples");
    if (!(t_end > t_start))
        throw PreconditionFailed("t_end must exceed t_start");
    const Index cutoff = params.fock_cutoff();
    const StateVector ground = StateVector::fock(cutoff, 0);
    VisibilityCurve curve;
    curve.times.reserve(samples);
    curve.visibility.reserve(samples);
    curve.phase.reserve(samples);
    curve.mirror_purity.reserve(samples);
    curve.overlap.reserve(samples);
    const double step = (t_end - t_start) / static_cast<double>(samples - 1);
    for (std::size_t i = 0; i < samples; ++i) {
        const double t = i + 1 == samples ? t_end : t_start + step * static_cast<double>(i);
        const StateVector joint = joint_state(params, t);
        const StateVector packet = coherent_state(mirror_displacement(params, t), cutoff);
        curve.times.push_back(t);
        curve.visibility.push_back(visibility(params, t));
        curve.phase.push_back(kerr_argument(params, t));
        curve.mirror_purity.push_back(purity(partial_trace(joint, 1)));
        curve.overlap.push_back(overlap(ground, packet));
    }
    return curve;
}

double correlation_window(const ModelParams& params, double threshold) {
    params.validate();
    if (!(threshold > 0.0) || threshold > 1.0)
        throw PreconditionFailed("threshold must lie in (0, 1]");
    if (threshold == 1.0)
        return 0.0; // degenerate: the curve starts at the threshold
    const double min_visibility = std::exp(-2.0 * params.k * params.k);
    if (min_visibility > threshold)
        throw ThresholdUnreachable("visibility never drops below " +
                                   std::to_string(min_visibility) + ", threshold " +
                                   std::to_string(threshold) + " unreachable");
    // Visibility decreases strictly on (0, T_m/2], so the first crossing is
    // bracketed there; bisect to 1e-10 * T_m.
    double lo = 0.0;
    double hi = 0.5 * params.period();
    const double tol = 1e-10 * params.period();
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        if (visibility(params, mid) > threshold)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

bool distinguishability_ok(const ModelParams& params) {
    return params.k * params.k >= 1.0;
}

PointerBasis pointer_set(const ModelParams& params, double t) {
    params.validate();
    const Index cutoff = params.fock_cutoff();
    const Complex beta = mirror_displacement(params, t);
    std::vector<StateVector> packets{StateVector::fock(cutoff, 0),
                                     coherent_state(beta, cutoff)};
    return PointerBasis(std::move(packets), {Complex(0.0, 0.0), beta}, 1.0);
}

VisibilityCurve apply_dephasing(VisibilityCurve curve, double gamma) {
    if (gamma < 0.0)
        throw PreconditionFailed("gamma must be >= 0");
    for (std::size_t i = 0; i < curve.times.size(); ++i)
        curve.visibility[i] =
            std::clamp(curve.visibility[i] * std::exp(-gamma * curve.times[i]), 0.0, 1.0);
    return curve;
}

DensityMatrix apply_dephasing(const DensityMatrix& rho, double gamma, double t) {
    if (gamma < 0.0)
        throw PreconditionFailed("gamma must be >= 0");
    if (t < 0.0)
        throw PreconditionFailed("t must be >= 0");
    if (rho.dim() % 2 != 0)
        throw DimensionMismatch("expected a (photon x mirror) density matrix of even dim");
    const Index m = rho.dim() / 2;
    const double factor = std::exp(-gamma * t);
    Eigen::MatrixXcd entries = rho.entries();
    entries.block(0, m, m, m) *= factor;
    entries.block(m, 0, m, m) *= factor;
    return DensityMatrix(std::move(entries));
}

Verdict discriminate(const ModelParams& params, double revival_tol, double suppression_tol) {
    params.validate();
    if (!distinguishability_ok(params))
        throw PreconditionFailed("distinguishability gate requires k^2 >= 1, got k = " +
                                 std::to_string(params.k));
    if (!(revival_tol > 0.0) || !(revival_tol < 1.0) || !(suppression_tol > 0.0) ||
        !(suppression_tol < 1.0))
        throw PreconditionFailed("tolerances must lie in (0, 1)");
    const double t_m = params.period();
    const double v_mid = visibility(params, 0.5 * t_m);
    const double v_rev = visibility(params, t_m);
    VerdictLabel label = VerdictLabel::Inconclusive;
    if (v_mid <= suppression_tol)
        label = v_rev >= 1.0 - revival_tol ? VerdictLabel::RelativeDecoherence
                                           : VerdictLabel::AbsoluteDecoherence;
    return {label, v_mid, v_rev};
}

} // namespace mirrorsim
