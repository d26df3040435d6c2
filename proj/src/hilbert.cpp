#include "mirrorsim/hilbert.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include <Eigen/Eigenvalues>

namespace mirrorsim {

namespace {

Index checked_total_dim(const std::vector<Index>& dims) {
    if (dims.empty())
        throw DimensionMismatch("state needs at least one subsystem dimension");
    Index total = 1;
    for (Index d : dims) {
        if (d < 1)
            throw DimensionMismatch("subsystem dimension must be >= 1, got " + std::to_string(d));
        total *= d;
    }
    return total;
}

double hermiticity_defect(const Eigen::MatrixXcd& m) {
    return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

} // namespace

Index default_cutoff(double alpha_max) {
    if (alpha_max < 0.0)
        throw PreconditionFailed("alpha_max must be >= 0");
    return static_cast<Index>(std::ceil(alpha_max * alpha_max + 6.0 * alpha_max + 10.0));
}

bool cutoff_adequate(Complex alpha, Index n_max) {
    const double a = std::abs(alpha);
    return a * a + 6.0 * a <= static_cast<double>(n_max);
}

StateVector::StateVector(std::vector<Index> dims, Eigen::VectorXcd amps)
    : dims_(std::move(dims)), amps_(std::move(amps)) {
    const Index total = checked_total_dim(dims_);
    if (total != amps_.size())
        throw DimensionMismatch("amplitude count " + std::to_string(amps_.size()) +
                                " does not match product of dims " + std::to_string(total));
    const double norm = amps_.norm();
    if (std::abs(norm - 1.0) > 1e-6)
        throw NotNormalized("state norm is " + std::to_string(norm) + ", expected 1");
    amps_ /= norm;
}

StateVector StateVector::normalized(std::vector<Index> dims, Eigen::VectorXcd amps) {
    const double norm = amps.norm();
    if (!(norm > 0.0))
        throw NotNormalized("cannot normalize a zero amplitude vector");
    amps /= norm;
    return StateVector(std::move(dims), std::move(amps));
}

StateVector StateVector::basis(std::vector<Index> dims, Index index) {
    const Index total = checked_total_dim(dims);
    if (index < 0 || index >= total)
        throw DimensionMismatch("basis index out of range");
    Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(total);
    amps(index) = 1.0;
    return StateVector(std::move(dims), std::move(amps));
}

StateVector StateVector::fock(Index n_max, Index n) {
    if (n_max < 0 || n < 0 || n > n_max)
        throw DimensionMismatch("Fock index out of range");
    return basis({n_max + 1}, n);
}

DensityMatrix::DensityMatrix(Eigen::MatrixXcd entries) : entries_(std::move(entries)) {
    if (entries_.rows() != entries_.cols() || entries_.rows() < 1)
        throw DimensionMismatch("density matrix must be square");
    if (hermiticity_defect(entries_) > hermiticity_tol)
        throw NotHermitian("density matrix is not Hermitian");
    const Complex tr = entries_.trace();
    if (std::abs(tr - 1.0) > trace_tol)
        throw NotNormalized("density matrix trace differs from 1 by " +
                            std::to_string(std::abs(tr - 1.0)));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(entries_, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -psd_tol)
        throw PreconditionFailed("density matrix has eigenvalue " +
                                 std::to_string(es.eigenvalues().minCoeff()));
}

DensityMatrix DensityMatrix::pure(const StateVector& psi) {
    return DensityMatrix(psi.amps() * psi.amps().adjoint());
}

DensityMatrix DensityMatrix::mixture(const std::vector<StateVector>& states,
                                     const std::vector<double>& weights) {
    if (states.empty() || states.size() != weights.size())
        throw DimensionMismatch("mixture needs one weight per state");
    const Index dim = states.front().size();
    double total = 0.0;
    for (double w : weights) {
        if (w < 0.0)
            throw PreconditionFailed("mixture weights must be nonnegative");
        total += w;
    }
    if (std::abs(total - 1.0) > norm_tol)
        throw NotNormalized("mixture weights sum to " + std::to_string(total));
    Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(dim, dim);
    for (std::size_t n = 0; n < states.size(); ++n) {
        if (states[n].size() != dim)
            throw DimensionMismatch("mixture states must share one dimension");
        acc += weights[n] * (states[n].amps() * states[n].amps().adjoint());
    }
    return DensityMatrix(std::move(acc));
}

Operator::Operator(Eigen::MatrixXcd entries, OperatorTag tag)
    : entries_(std::move(entries)), tag_(tag) {
    if (entries_.rows() != entries_.cols() || entries_.rows() < 1)
        throw DimensionMismatch("operator must be square");
}

Operator Operator::hermitian(Eigen::MatrixXcd entries) {
    Operator op(std::move(entries), OperatorTag::hermitian);
    if (hermiticity_defect(op.entries_) > hermiticity_tol)
        throw NotHermitian("operator tagged hermitian has defect > 1e-10");
    return op;
}

Operator Operator::unitary(Eigen::MatrixXcd entries) {
    Operator op(std::move(entries), OperatorTag::unitary);
    const Index d = op.dim();
    const double defect =
        (op.entries_.adjoint() * op.entries_ - Eigen::MatrixXcd::Identity(d, d))
            .cwiseAbs()
            .maxCoeff();
    if (defect > hermiticity_tol)
        throw PreconditionFailed("operator tagged unitary has defect > 1e-10");
    return op;
}

Operator Operator::general(Eigen::MatrixXcd entries) {
    return Operator(std::move(entries), OperatorTag::general);
}

StateVector coherent_state(Complex alpha, Index n_max) {
    if (n_max < 1)
        throw PreconditionFailed("coherent state needs n_max >= 1");
    if (!cutoff_adequate(alpha, n_max)) {
        const double a = std::abs(alpha);
        throw CutoffTooSmall("cutoff " + std::to_string(n_max) + " too small for |alpha| = " +
                             std::to_string(a) + " (need >= " + std::to_string(a * a + 6.0 * a) +
                             ")");
    }
    Eigen::VectorXcd amps(n_max + 1);
    Complex term = std::exp(-std::norm(alpha) / 2.0);
    for (Index n = 0; n <= n_max; ++n) {
        amps(n) = term;
        term *= alpha / std::sqrt(static_cast<double>(n + 1));
    }
    return StateVector::normalized({n_max + 1}, std::move(amps));
}

Complex overlap(const StateVector& a, const StateVector& b) {
    if (a.dims() != b.dims())
        throw DimensionMismatch("overlap requires matching dims");
    return a.amps().dot(b.amps()); // Eigen's dot conjugates the left argument
}

double fidelity(const StateVector& a, const StateVector& b) {
    return std::norm(overlap(a, b));
}

StateVector tensor_product(const StateVector& a, const StateVector& b) {
    std::vector<Index> dims = a.dims();
    dims.insert(dims.end(), b.dims().begin(), b.dims().end());
    Eigen::VectorXcd amps(a.size() * b.size());
    for (Index i = 0; i < a.size(); ++i)
        amps.segment(i * b.size(), b.size()) = a.amps()(i) * b.amps();
    return StateVector(std::move(dims), std::move(amps));
}

DensityMatrix partial_trace(const StateVector& psi, int keep) {
    if (psi.dims().size() != 2)
        throw DimensionMismatch("partial trace needs exactly two declared subsystems");
    if (keep != 0 && keep != 1)
        throw PreconditionFailed("keep must be 0 or 1");
    const Index d0 = psi.dims()[0];
    const Index d1 = psi.dims()[1];
    // Row-major amplitudes as a d0 x d1 matrix M(i, j) = psi(i * d1 + j).
    Eigen::Map<const Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> m(
        psi.amps().data(), d0, d1);
    if (keep == 0)
        return DensityMatrix(m * m.adjoint());
    return DensityMatrix(m.transpose() * m.conjugate());
}

DensityMatrix partial_trace(const DensityMatrix& rho,
                            const std::array<Index, 2>& subsystem_dims, int keep) {
    const Index d0 = subsystem_dims[0];
    const Index d1 = subsystem_dims[1];
    if (d0 < 1 || d1 < 1 || d0 * d1 != rho.dim())
        throw DimensionMismatch("subsystem dims do not factor the density matrix");
    if (keep != 0 && keep != 1)
        throw PreconditionFailed("keep must be 0 or 1");
    if (keep == 0) {
        Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(d0, d0);
        for (Index i = 0; i < d0; ++i)
            for (Index ip = 0; ip < d0; ++ip)
                for (Index j = 0; j < d1; ++j)
                    out(i, ip) += rho.entries()(i * d1 + j, ip * d1 + j);
        return DensityMatrix(std::move(out));
    }
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(d1, d1);
    for (Index j = 0; j < d1; ++j)
        for (Index jp = 0; jp < d1; ++jp)
            for (Index i = 0; i < d0; ++i)
                out(j, jp) += rho.entries()(i * d1 + j, i * d1 + jp);
    return DensityMatrix(std::move(out));
}

double purity(const DensityMatrix& rho) {
    // Tr(rho^2) = sum |rho_ij|^2 for Hermitian rho.
    return rho.entries().squaredNorm();
}

double trace_distance(const DensityMatrix& a, const DensityMatrix& b) {
    if (a.dim() != b.dim())
        throw DimensionMismatch("trace distance requires equal dims");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(a.entries() - b.entries(),
                                                       Eigen::EigenvaluesOnly);
    return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

std::pair<Operator, Operator> quadrature_observables(Index n_max) {
    if (n_max < 1)
        throw PreconditionFailed("quadratures need n_max >= 1");
    const Index dim = n_max + 1;
    Eigen::MatrixXcd x = Eigen::MatrixXcd::Zero(dim, dim);
    Eigen::MatrixXcd p = Eigen::MatrixXcd::Zero(dim, dim);
    for (Index n = 1; n < dim; ++n) {
        const double s = std::sqrt(static_cast<double>(n) / 2.0);
        x(n - 1, n) = s;
        x(n, n - 1) = s;
        p(n - 1, n) = Complex(0.0, -s);
        p(n, n - 1) = Complex(0.0, s);
    }
    return {Operator::hermitian(std::move(x)), Operator::hermitian(std::move(p))};
}

Moments moments(const StateVector& psi, const Operator& observable) {
    if (observable.tag() != OperatorTag::hermitian)
        throw NotHermitian("moments require a hermitian observable");
    if (observable.dim() != psi.size())
        throw DimensionMismatch("observable dim does not match state");
    const Eigen::VectorXcd apsi = observable.entries() * psi.amps();
    const double mean = psi.amps().dot(apsi).real();
    const double second = apsi.squaredNorm(); // <A^2> since A is Hermitian
    return {mean, std::sqrt(std::max(0.0, second - mean * mean))};
}

} // namespace mirrorsim
