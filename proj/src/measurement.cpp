#include "mirrorsim/measurement.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <string>

#include <Eigen/Eigenvalues>

namespace mirrorsim {

namespace {

void require_orthonormal(const std::vector<StateVector>& basis) {
    for (std::size_t i = 0; i < basis.size(); ++i)
        for (std::size_t j = i; j < basis.size(); ++j) {
            const double expected = i == j ? 1.0 : 0.0;
            if (std::abs(std::abs(basis[i].amps().dot(basis[j].amps())) - expected) >
                orthonormality_tol)
                throw BasisNotOrthonormal("object basis states " + std::to_string(i) + " and " +
                                          std::to_string(j) + " are not orthonormal");
        }
}

std::uint64_t splitmix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

// One uniform draw in [0, 1) from a scrambled seed. Every step is pinned by
// the standard, so identical seeds give identical draws on any platform.
double unit_draw(std::uint64_t seed) {
    std::mt19937_64 gen(splitmix64(seed));
    return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

} // namespace

PointerBasis::PointerBasis(std::vector<StateVector> packets_, std::vector<Complex> centers_,
                           double width_)
    : packets(std::move(packets_)), centers(std::move(centers_)), width(width_) {
    if (packets.empty() || packets.size() != centers.size())
        throw DimensionMismatch("pointer basis needs one center per packet");
    for (const StateVector& p : packets)
        if (p.dims() != packets.front().dims())
            throw DimensionMismatch("pointer packets must share one space");
    if (!(width > 0.0))
        throw PreconditionFailed("packet width must be > 0");
}

StateVector premeasure(const std::vector<Complex>& coeffs,
                       const std::vector<StateVector>& object_basis,
                       const PointerBasis& pointer_basis, std::size_t ready_index) {
    if (coeffs.empty() || coeffs.size() != object_basis.size() ||
        coeffs.size() != pointer_basis.packets.size())
        throw DimensionMismatch("coefficients, object basis and packets must match in length");
    if (ready_index >= pointer_basis.packets.size())
        throw PreconditionFailed("ready_index out of range");
    double total = 0.0;
    for (const Complex& c : coeffs)
        total += std::norm(c);
    if (std::abs(total - 1.0) > norm_tol)
        throw NotNormalized("coefficient weights sum to " + std::to_string(total));
    for (const StateVector& b : object_basis)
        if (b.dims() != object_basis.front().dims())
            throw DimensionMismatch("object basis states must share one space");
    require_orthonormal(object_basis);

    const Index obj_dim = object_basis.front().size();
    const Index ptr_dim = pointer_basis.packets.front().size();
    Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(obj_dim * ptr_dim);
    for (std::size_t n = 0; n < coeffs.size(); ++n) {
        const auto& obj = object_basis[n].amps();
        const auto& ptr = pointer_basis.packets[n].amps();
        for (Index i = 0; i < obj_dim; ++i)
            amps.segment(i * ptr_dim, ptr_dim) += coeffs[n] * obj(i) * ptr;
    }
    return StateVector({obj_dim, ptr_dim}, std::move(amps));
}

double differs_from_mixture(const StateVector& correlated,
                            const std::vector<StateVector>& branches,
                            const std::vector<double>& weights) {
    if (branches.empty() || branches.size() != weights.size())
        throw DimensionMismatch("one weight per branch required");
    double total = 0.0;
    for (double w : weights) {
        if (w < 0.0)
            throw PreconditionFailed("weights must be nonnegative");
        total += w;
    }
    if (std::abs(total - 1.0) > norm_tol)
        throw NotNormalized("weights sum to " + std::to_string(total));
    Eigen::MatrixXcd diff = correlated.amps() * correlated.amps().adjoint();
    for (std::size_t n = 0; n < branches.size(); ++n) {
        if (branches[n].size() != correlated.size())
            throw DimensionMismatch("branch dim does not match correlated state");
        diff -= weights[n] * (branches[n].amps() * branches[n].amps().adjoint());
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(diff, Eigen::EigenvaluesOnly);
    return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

double wave_packet_ratio(const StateVector& psi, const Operator& observable) {
    const Moments m = moments(psi, observable);
    if (m.deviation <= 1e-12)
        return std::abs(m.mean) > 1e-12 ? std::numeric_limits<double>::infinity() : 0.0;
    return std::abs(m.mean) / m.deviation;
}

bool is_wave_packet(const StateVector& psi, const std::vector<Operator>& observables,
                    double threshold) {
    if (!(threshold > 1.0))
        throw PreconditionFailed("threshold must be > 1");
    if (observables.empty())
        throw PreconditionFailed("at least one observable required");
    for (const Operator& a : observables)
        if (wave_packet_ratio(psi, a) < threshold * (1.0 - 1e-6))
            return false;
    return true;
}

PacketPairReport check_weak_interference(const PointerBasis& basis, double overlap_tol) {
    if (!(overlap_tol > 0.0) || !(overlap_tol < 1.0))
        throw PreconditionFailed("overlap_tol must lie in (0, 1)");
    for (std::size_t i = 0; i < basis.packets.size(); ++i)
        for (std::size_t j = i + 1; j < basis.packets.size(); ++j) {
            const double separation = std::abs(basis.centers[i] - basis.centers[j]);
            const double ov = std::abs(overlap(basis.packets[i], basis.packets[j]));
            if (separation < basis.width || ov > overlap_tol)
                return {false, i, j, separation, ov};
        }
    return {};
}

bool is_weakly_interfering(const PointerBasis& basis, double overlap_tol) {
    return check_weak_interference(basis, overlap_tol).ok;
}

std::vector<double> born_weights(const StateVector& correlated,
                                 const std::vector<StateVector>& object_basis) {
    if (correlated.dims().size() != 2)
        throw DimensionMismatch("correlated state needs two declared subsystems");
    if (object_basis.empty())
        throw PreconditionFailed("object basis must not be empty");
    const Index d0 = correlated.dims()[0];
    const Index d1 = correlated.dims()[1];
    for (const StateVector& b : object_basis)
        if (b.size() != d0)
            throw DimensionMismatch("object basis dim does not match object subsystem");
    require_orthonormal(object_basis);
    Eigen::Map<const Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> m(
        correlated.amps().data(), d0, d1);
    std::vector<double> weights;
    weights.reserve(object_basis.size());
    for (const StateVector& b : object_basis)
        weights.push_back((b.amps().adjoint() * m).squaredNorm());
    return weights;
}

BranchOutcome selfdecohere(const StateVector& correlated,
                           const std::vector<StateVector>& object_basis,
                           const PointerBasis& pointer_basis, double overlap_tol,
                           std::uint64_t seed) {
    if (pointer_basis.packets.size() < 2)
        throw PreconditionFailed("selfdecoherence needs at least two pointer packets");
    if (object_basis.size() != pointer_basis.packets.size())
        throw DimensionMismatch("one pointer packet per object basis state required");
    if (correlated.dims().size() != 2 ||
        pointer_basis.packets.front().size() != correlated.dims()[1])
        throw DimensionMismatch("pointer packets do not match the pointer subsystem");
    const PacketPairReport report = check_weak_interference(pointer_basis, overlap_tol);
    if (!report.ok)
        throw PacketsInterfere("packets " + std::to_string(report.first) + " and " +
                               std::to_string(report.second) + " interfere: separation " +
                               std::to_string(report.separation) + ", |overlap| " +
                               std::to_string(report.overlap_magnitude));

    const std::vector<double> weights = born_weights(correlated, object_basis);
    double total = 0.0;
    for (double w : weights)
        total += w;
    if (std::abs(total - 1.0) > 1e-9)
        throw NotNormalized("Born weights sum to " + std::to_string(total) +
                            "; object basis does not span the correlated state");

    const double u = unit_draw(seed);
    std::size_t selected = weights.size();
    double cumulative = 0.0;
    for (std::size_t n = 0; n < weights.size(); ++n) {
        cumulative += weights[n];
        if (u < cumulative) {
            selected = n;
            break;
        }
    }
    if (selected == weights.size()) {
        // u landed in the rounding sliver past the final cumulative weight.
        for (std::size_t n = weights.size(); n-- > 0;)
            if (weights[n] > 0.0) {
                selected = n;
                break;
            }
    }

    const Index d1 = correlated.dims()[1];
    Eigen::Map<const Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> m(
        correlated.amps().data(), correlated.dims()[0], d1);
    Eigen::VectorXcd component =
        (object_basis[selected].amps().adjoint() * m).transpose();
    return {static_cast<Index>(selected), object_basis[selected],
            StateVector::normalized({d1}, std::move(component)), weights[selected]};
}

} // namespace mirrorsim
