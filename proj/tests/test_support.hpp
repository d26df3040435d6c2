#pragma once

// Shared generators and brute-force oracles for the test suites. The oracles
// are plain loops over raw amplitudes, kept independent of the library code
// paths they cross-check.

#include <complex>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "mirrorsim/hilbert.hpp"

namespace test_support {

using mirrorsim::Complex;
using mirrorsim::Index;

inline Eigen::VectorXcd random_complex_vector(std::mt19937_64& gen, Index dim) {
    std::normal_distribution<double> normal(0.0, 1.0);
    Eigen::VectorXcd v(dim);
    for (Index i = 0; i < dim; ++i)
        v(i) = Complex(normal(gen), normal(gen));
    return v;
}

inline mirrorsim::StateVector random_state(std::mt19937_64& gen, std::vector<Index> dims) {
    Index total = 1;
    for (Index d : dims)
        total *= d;
    return mirrorsim::StateVector::normalized(std::move(dims),
                                              random_complex_vector(gen, total));
}

inline mirrorsim::Operator random_hermitian(std::mt19937_64& gen, Index dim) {
    const Eigen::MatrixXcd m = [&] {
        Eigen::MatrixXcd raw(dim, dim);
        for (Index i = 0; i < dim; ++i)
            raw.col(i) = random_complex_vector(gen, dim);
        return raw;
    }();
    return mirrorsim::Operator::hermitian(0.5 * (m + m.adjoint()));
}

inline std::vector<mirrorsim::StateVector> random_orthonormal_basis(std::mt19937_64& gen,
                                                                    Index dim, Index count) {
    Eigen::MatrixXcd raw(dim, count);
    for (Index i = 0; i < count; ++i)
        raw.col(i) = random_complex_vector(gen, dim);
    const Eigen::MatrixXcd q =
        Eigen::HouseholderQR<Eigen::MatrixXcd>(raw).householderQ() *
        Eigen::MatrixXcd::Identity(dim, count);
    std::vector<mirrorsim::StateVector> basis;
    basis.reserve(count);
    for (Index i = 0; i < count; ++i)
        basis.emplace_back(std::vector<Index>{dim}, q.col(i));
    return basis;
}

// Reduced density matrix of a bipartite pure state by raw index loops.
inline Eigen::MatrixXcd brute_force_reduction(const Eigen::VectorXcd& amps, Index d0, Index d1,
                                              int keep) {
    if (keep == 0) {
        Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(d0, d0);
        for (Index i = 0; i < d0; ++i)
            for (Index ip = 0; ip < d0; ++ip)
                for (Index j = 0; j < d1; ++j)
                    out(i, ip) += amps(i * d1 + j) * std::conj(amps(ip * d1 + j));
        return out;
    }
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(d1, d1);
    for (Index j = 0; j < d1; ++j)
        for (Index jp = 0; jp < d1; ++jp)
            for (Index i = 0; i < d0; ++i)
                out(j, jp) += amps(i * d1 + j) * std::conj(amps(i * d1 + jp));
    return out;
}

// Mean of a matrix observable by explicit double loop.
inline double brute_force_mean(const Eigen::VectorXcd& amps, const Eigen::MatrixXcd& a) {
    Complex acc = 0.0;
    for (Index i = 0; i < amps.size(); ++i)
        for (Index j = 0; j < amps.size(); ++j)
            acc += std::conj(amps(i)) * a(i, j) * amps(j);
    return acc.real();
}

} // namespace test_support
