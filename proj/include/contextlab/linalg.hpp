#ifndef CONTEXTLAB_LINALG_HPP
#define CONTEXTLAB_LINALG_HPP

#include <cstdint>
#include <random>
#include <vector>

#include "contextlab/matrix.hpp"
#include "contextlab/types.hpp"

namespace contextlab {

/// Square matrix certified unitary at construction time.
class UnitaryOperator {
public:
    /// Certifies ||m'm - 1||_max <= tol and stores the residual.
    /// Throws std::invalid_argument when the certificate fails.
    static UnitaryOperator certify(Matrix m, double tol = Tolerances().unitarity);

    const Matrix& matrix() const { return matrix_; }
    std::size_t dim() const { return matrix_.rows(); }
    double unitarity_residual() const { return residual_; }

private:
    UnitaryOperator(Matrix m, double residual)
        : matrix_(std::move(m)), residual_(residual) {}
    Matrix matrix_;
    double residual_;
};

/// Normalized pure state.
struct StateVector {
    std::vector<cd> amplitudes;
    std::size_t dim() const { return amplitudes.size(); }
};

/// Hermitian, unit-trace, positive-semidefinite (up to tolerance) state.
struct DensityMatrix {
    Matrix matrix;
    std::size_t dim() const { return matrix.rows(); }

    static DensityMatrix from_pure(const StateVector& psi);
};

/// Eigen-decomposition U = V diag(lambda) V' of a unitary matrix.
/// Eigenvalues are sorted by phase in [0, 2pi); columns of V are orthonormal.
struct SpectralDecomposition {
    std::vector<cd> eigenvalues;
    Matrix eigenvectors;
};

/// Kronecker product; entry ((ia,ib),(ja,jb)) = a(ia,ja) * b(ib,jb).
Matrix tensor(const Matrix& a, const Matrix& b);

/// Block-diagonal matrix from square blocks; off-block entries exactly zero.
Matrix direct_sum(const std::vector<Matrix>& blocks);

/// exp(i t h) for Hermitian h, via diagonalization of h.
UnitaryOperator expm_i_hermitian(const Matrix& h, double t,
                                 double hermiticity_tol = 1e-10);

/// Full spectral decomposition of a unitary matrix. Uses the commuting
/// Hermitian pair B = (U+U')/2, C = (U-U')/(2i): diagonalize B, then refine
/// within near-degenerate eigenspaces using C. Reconstruction residual is
/// checked against tol.reconstruction.
SpectralDecomposition eig_unitary(const UnitaryOperator& u,
                                  const Tolerances& tol = Tolerances());

/// Diagonalize a Hermitian matrix by cyclic Jacobi sweeps.
/// Returns ascending eigenvalues; columns of `vectors` are orthonormal.
struct HermitianEig {
    std::vector<double> eigenvalues;
    Matrix vectors;
};
HermitianEig eig_hermitian(const Matrix& h);

/// Deterministic random source: all randomness in the library flows through
/// explicit seeds, never global state.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}
    /// Uniform in [0, 1).
    double uniform();
    /// Standard normal via Box-Muller (implementation-independent stream).
    double gaussian();
    cd complex_gaussian();

private:
    std::mt19937_64 engine_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

/// Pure state from the unitarily invariant distribution.
StateVector haar_state(std::size_t dim, std::uint64_t seed);

/// rho = G G' / tr(G G') with G a dim x rank seeded Gaussian matrix.
DensityMatrix random_density(std::size_t dim, std::size_t rank, std::uint64_t seed);

/// Haar-distributed random unitary (Gram-Schmidt of a Gaussian matrix with
/// phase-fixed diagonal).
UnitaryOperator random_unitary(std::size_t dim, std::uint64_t seed);

} // namespace contextlab

#endif
