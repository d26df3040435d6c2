#pragma once

#include <array>
#include <complex>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "mirrorsim/errors.hpp"

namespace mirrorsim {

using Complex = std::complex<double>;
using Index = Eigen::Index;

// Default numeric tolerances for type invariants.
inline constexpr double norm_tol = 1e-10;
inline constexpr double hermiticity_tol = 1e-10;
inline constexpr double trace_tol = 1e-10;
inline constexpr double psd_tol = 1e-10;
inline constexpr double orthonormality_tol = 1e-10;

/// Fock cutoff adequate for displacements up to |alpha| = alpha_max:
/// ceil(alpha_max^2 + 6*alpha_max + 10), Poisson mean plus six standard
/// deviations plus slack. Keeps the truncated tail below 1e-10.
Index default_cutoff(double alpha_max);

/// True when |alpha|^2 + 6|alpha| <= n_max.
bool cutoff_adequate(Complex alpha, Index n_max);

/// Unit-norm complex amplitude vector over a list of subsystem dimensions.
/// Amplitudes are stored row-major in subsystem order (first subsystem
/// slowest). Construction renormalizes, so the norm is exactly 1 afterwards;
/// inputs further than 1e-6 from unit norm are rejected.
class StateVector {
  public:
    StateVector(std::vector<Index> dims, Eigen::VectorXcd amps);

    /// Scales an arbitrary nonzero amplitude vector to unit norm.
    static StateVector normalized(std::vector<Index> dims, Eigen::VectorXcd amps);

    /// Computational basis vector |index> over the given dimensions.
    static StateVector basis(std::vector<Index> dims, Index index);

    /// Single-mode Fock state |n> on a space truncated at n_max.
    static StateVector fock(Index n_max, Index n);

    const std::vector<Index>& dims() const { return dims_; }
    const Eigen::VectorXcd& amps() const { return amps_; }
    Index size() const { return amps_.size(); }

  private:
    std::vector<Index> dims_;
    Eigen::VectorXcd amps_;
};

/// Hermitian, unit-trace, positive-semidefinite matrix. All three invariants
/// are checked on construction (PSD via eigenvalues >= -1e-10).
class DensityMatrix {
  public:
    explicit DensityMatrix(Eigen::MatrixXcd entries);

    static DensityMatrix pure(const StateVector& psi);

    /// Convex mixture sum_n w_n |psi_n><psi_n|; weights must sum to 1.
    static DensityMatrix mixture(const std::vector<StateVector>& states,
                                 const std::vector<double>& weights);

    Index dim() const { return entries_.rows(); }
    const Eigen::MatrixXcd& entries() const { return entries_; }

  private:
    Eigen::MatrixXcd entries_;
};

enum class OperatorTag { hermitian, unitary, general };

/// Square complex matrix with a validity tag. The hermitian and unitary tags
/// are enforced on construction (max-norm defect <= 1e-10).
class Operator {
  public:
    static Operator hermitian(Eigen::MatrixXcd entries);
    static Operator unitary(Eigen::MatrixXcd entries);
    static Operator general(Eigen::MatrixXcd entries);

    Index dim() const { return entries_.rows(); }
    const Eigen::MatrixXcd& entries() const { return entries_; }
    OperatorTag tag() const { return tag_; }

  private:
    Operator(Eigen::MatrixXcd entries, OperatorTag tag);

    Eigen::MatrixXcd entries_;
    OperatorTag tag_;
};

/// Truncated coherent state |alpha>: amplitudes proportional to
/// alpha^n / sqrt(n!), renormalized on the truncated space. Requires
/// |alpha|^2 + 6|alpha| <= n_max (throws CutoffTooSmall otherwise).
StateVector coherent_state(Complex alpha, Index n_max);

/// Hermitian inner product <a|b>.
Complex overlap(const StateVector& a, const StateVector& b);

/// Squared overlap |<a|b>|^2.
double fidelity(const StateVector& a, const StateVector& b);

/// Kronecker composition; dims are concatenated, amp(i,j) = a_i * b_j.
StateVector tensor_product(const StateVector& a, const StateVector& b);

/// Reduced state of one subsystem of a bipartite pure state.
/// keep = 0 keeps the first (slow) subsystem, keep = 1 the second.
DensityMatrix partial_trace(const StateVector& psi, int keep);

/// Same reduction for a density matrix over two declared subsystems.
DensityMatrix partial_trace(const DensityMatrix& rho,
                            const std::array<Index, 2>& subsystem_dims, int keep);

/// Tr(rho^2), in [1/dim, 1].
double purity(const DensityMatrix& rho);

/// Half the sum of absolute eigenvalues of a - b, in [0, 1].
double trace_distance(const DensityMatrix& a, const DensityMatrix& b);

/// Quadrature pair X = (b + b†)/sqrt(2), P = i(b† - b)/sqrt(2) on the
/// truncated Fock space, both tagged hermitian.
std::pair<Operator, Operator> quadrature_observables(Index n_max);

struct Moments {
    double mean;       ///< <psi|A|psi> (real part; imaginary part <= 1e-10 discarded)
    double deviation;  ///< sqrt(max(0, <A^2> - <A>^2))
};

/// Mean and standard deviation of a hermitian observable in a state.
Moments moments(const StateVector& psi, const Operator& observable);

} // namespace mirrorsim
