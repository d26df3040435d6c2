#include "mirrorsim/propagator.hpp"

#include <cmath>
#include <complex>
#include <string>

#include <Eigen/Eigenvalues>

namespace mirrorsim {

namespace {

Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> decompose(const Operator& hamiltonian) {
    if (hamiltonian.tag() != OperatorTag::hermitian)
        throw NotHermitian("evolution requires a hermitian Hamiltonian");
    return Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd>(hamiltonian.entries());
}

Eigen::VectorXcd phase_factors(const Eigen::VectorXd& eigenvalues, double t) {
    Eigen::VectorXcd ph(eigenvalues.size());
    for (Index i = 0; i < eigenvalues.size(); ++i)
        ph(i) = std::polar(1.0, -eigenvalues(i) * t);
    return ph;
}

} // namespace

void HamiltonianSpec::validate() const {
    if (!(omega_m > 0.0))
        throw PreconditionFailed("omega_m must be > 0");
    if (k < 0.0)
        throw PreconditionFailed("k must be >= 0");
    if (n_max < 1)
        throw PreconditionFailed("n_max must be >= 1");
}

Operator build_hamiltonian(const HamiltonianSpec& spec) {
    spec.validate();
    const Index n = spec.n_max + 1;
    Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(2 * n, 2 * n);
    // Photon energy on the single-photon subspace: a global offset.
    h.diagonal().array() += spec.omega_p;
    // Free mirror term on both arms.
    for (Index m = 0; m < n; ++m) {
        h(m, m) += spec.omega_m * static_cast<double>(m);
        h(n + m, n + m) += spec.omega_m * static_cast<double>(m);
    }
    // Radiation-pressure displacement on arm A (photon index 1).
    for (Index m = 1; m < n; ++m) {
        const double g = -spec.k * spec.omega_m * std::sqrt(static_cast<double>(m));
        h(n + m - 1, n + m) += g;
        h(n + m, n + m - 1) += g;
    }
    return Operator::hermitian(std::move(h));
}

StateVector evolve(const Operator& hamiltonian, double t, const StateVector& psi0) {
    if (hamiltonian.dim() != psi0.size())
        throw DimensionMismatch("Hamiltonian dim does not match state");
    const auto es = decompose(hamiltonian);
    Eigen::VectorXcd coeffs = es.eigenvectors().adjoint() * psi0.amps();
    coeffs.array() *= phase_factors(es.eigenvalues(), t).array();
    return StateVector(psi0.dims(), es.eigenvectors() * coeffs);
}

Eigen::MatrixXcd evolution_operator(const Operator& hamiltonian, double t) {
    const auto es = decompose(hamiltonian);
    return es.eigenvectors() * phase_factors(es.eigenvalues(), t).asDiagonal() *
           es.eigenvectors().adjoint();
}

double unitarity_defect(const Operator& hamiltonian, double t) {
    const Eigen::MatrixXcd u = evolution_operator(hamiltonian, t);
    const Index d = u.rows();
    return (u.adjoint() * u - Eigen::MatrixXcd::Identity(d, d)).cwiseAbs().maxCoeff();
}

double coefficient_conservation(const Operator& hamiltonian,
                                const std::vector<StateVector>& basis,
                                const StateVector& psi0, double t) {
    if (basis.empty())
        throw PreconditionFailed("basis must not be empty");
    for (const StateVector& b : basis)
        if (b.size() != psi0.size() || b.size() != hamiltonian.dim())
            throw DimensionMismatch("basis state dim does not match");
    for (std::size_t i = 0; i < basis.size(); ++i)
        for (std::size_t j = i; j < basis.size(); ++j) {
            const double expected = i == j ? 1.0 : 0.0;
            if (std::abs(std::abs(basis[i].amps().dot(basis[j].amps())) - expected) >
                orthonormality_tol)
                throw BasisNotOrthonormal("basis states " + std::to_string(i) + " and " +
                                          std::to_string(j) + " are not orthonormal");
        }
    const Eigen::MatrixXcd u = evolution_operator(hamiltonian, t);
    const Eigen::VectorXcd evolved0 = u * psi0.amps();
    double worst = 0.0;
    for (const StateVector& b : basis) {
        const double before = std::abs(b.amps().dot(psi0.amps()));
        const double after = std::abs((u * b.amps()).dot(evolved0));
        worst = std::max(worst, std::abs(after - before));
    }
    return worst;
}

} // namespace mirrorsim
