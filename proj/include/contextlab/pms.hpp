#ifndef CONTEXTLAB_PMS_HPP
#define CONTEXTLAB_PMS_HPP

#include <array>
#include <cstdint>
#include <string>

#include "contextlab/spectral.hpp"

namespace contextlab {

/// Reference values the violation is compared against.
inline constexpr double kQuantumMax = 6.0;
inline const double kPhaseBound = 3.0 * 1.7320508075688772935;  // 3 sqrt(3)
inline constexpr double kDichotomicBound = 4.0;

/// The nine bipartite operators of the generalized square:
///   row 1: U1'(x)1   1(x)U1'   U1(x)U1
///   row 2: 1(x)U2'   U2'(x)1   U2(x)U2
///   row 3: U1(x)U2   U2(x)U1   U3(x)U3
struct PmsSquare {
    std::array<std::array<Matrix, 3>, 3> entries;
    std::size_t local_dim = 0;       // d; entries act on dimension d*d
    int sign = +1;                   // branch the source triple was built with
    std::size_t dim() const { return local_dim * local_dim; }
};

/// Max commutator residual inside each measurement context.
struct CompatibilityReport {
    std::array<double, 3> row_residuals{};
    std::array<double, 3> col_residuals{};
    double tolerance = 0.0;
    bool pass = false;
};

/// Ordered products of each context against their target (+1, or -1 for the
/// last column).
struct ProductReport {
    std::array<double, 3> row_residuals{};  // vs +1
    std::array<double, 3> col_residuals{};  // vs +1, +1, -1
    double max_residual = 0.0;
};

/// Per-term expectations and the combined violation value.
struct ViolationReport {
    std::array<double, 3> rows{};   // <R1>,<R2>,<R3>
    std::array<double, 3> cols{};   // <C1>,<C2>,<C3>
    double total = 0.0;             // R1+R2+R3+C1+C2-C3
    double imag_total = 0.0;        // same combination of imaginary parts
    std::string evaluation_path;    // "direct" | "hermitian"
    std::string state_kind;         // "pure" | "mixed" | caller-supplied
    std::uint64_t state_seed = 0;
    double bound_noncontextual = kPhaseBound;
    double bound_quantum_max = kQuantumMax;
};

/// Precomputed context operators, so state scans cost one trace per context.
/// The direct path stores the plain products; the hermitian path stores the
/// cosine and sine expansions separately, evaluated as printed.
struct ContextOperators {
    std::array<Matrix, 3> rows;
    std::array<Matrix, 3> cols;
    bool split = false;              // hermitian path: sine parts present
    std::array<Matrix, 3> rows_sin;
    std::array<Matrix, 3> cols_sin;
};

struct ScanRow {
    std::size_t index = 0;
    std::string kind;
    std::uint64_t seed = 0;
    double total_direct = 0.0;
    double total_hermitian = 0.0;
};

struct ScanSummary {
    std::size_t n_pure = 0;
    std::size_t n_mixed = 0;
    std::uint64_t seed = 0;
    double min_direct = 0.0, max_direct = 0.0, mean_direct = 0.0;
    double min_hermitian = 0.0, max_hermitian = 0.0, mean_hermitian = 0.0;
    double spread() const { return max_direct - min_direct; }
    std::vector<ScanRow> rows;
};

PmsSquare build_square(const PmsTriple& triple);

/// Builds the square from raw operators without validating triple invariants
/// (used to inspect broken or approximate triples).
PmsSquare build_square_unchecked(const Matrix& u1, const Matrix& u2, const Matrix& u3,
                                 int sign);

CompatibilityReport verify_compatibility(const PmsSquare& square, double tol = 1e-9);

ProductReport row_col_products(const PmsSquare& square);

ContextOperators direct_contexts(const PmsSquare& square);
ContextOperators hermitian_contexts(const PmsSquare& square);

/// <Re X> by direct row/column operator products.
ViolationReport expectation_re_x(const PmsSquare& square, const DensityMatrix& state);

/// <Re X> through the Hermitian-part expansion of every entry,
/// A = A_R + i A_I with A_R = (A+A')/2, A_I = (A-A')/(2i).
ViolationReport expectation_re_x_hermitian(const PmsSquare& square, const DensityMatrix& state);

ViolationReport evaluate_contexts(const ContextOperators& ctx, const DensityMatrix& state,
                                  const std::string& path);

/// <Re X> of a (possibly truncated) triple on a product state psiA (x) psiB,
/// computed factor-by-factor so large local dimensions never materialize the
/// bipartite operators. `path` selects the direct products or the
/// Hermitian-part route (cosine part = (M + M~)/2 with M~ the slot-wise
/// adjoint product, which is what the printed expansion collapses to).
ViolationReport expectation_re_x_product(const Matrix& u1, const Matrix& u2,
                                         const Matrix& u3, const StateVector& psi_a,
                                         const StateVector& psi_b,
                                         const std::string& path = "direct");

/// Evaluates both paths over seeded Haar-pure and random mixed states.
ScanSummary scan_states(const PmsSquare& square, std::size_t n_pure, std::size_t n_mixed,
                        std::uint64_t seed);

} // namespace contextlab

#endif
