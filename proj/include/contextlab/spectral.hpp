#ifndef CONTEXTLAB_SPECTRAL_HPP
#define CONTEXTLAB_SPECTRAL_HPP

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "contextlab/linalg.hpp"

namespace contextlab {

/// One cluster of nearby unit-circle eigenvalues.
struct EigenCluster {
    cd representative;    // unit modulus, multiplicity-weighted circular mean
    std::size_t multiplicity = 0;
    Matrix vectors;       // dim x multiplicity, orthonormal columns
};

/// Clustered spectrum of a unitary operator.
struct EigenClusters {
    std::vector<EigenCluster> clusters;
    double clustering_tol = 0.0;
    std::size_t dim = 0;
};

/// Outcome of the lambda <-> -lambda matching test. When `paired` is false,
/// `defect` names the first violated condition.
struct PairingVerdict {
    bool paired = false;
    /// (index of +lambda cluster, index of -lambda cluster); the + member is
    /// the one whose phase lies in [0, pi).
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    std::string defect;
};

/// Three mutually anti-commuting unitaries with u1*u2*u3 = sign * i * 1.
struct TripleResiduals {
    double anticommutator_12 = 0.0;
    double anticommutator_13 = 0.0;
    double anticommutator_23 = 0.0;
    double product_identity = 0.0;
    double max_unitarity = 0.0;
};

struct PmsTriple {
    UnitaryOperator u1;
    UnitaryOperator u2;
    UnitaryOperator u3;
    int sign = +1;   // branch of u3 = sign * i * u2' * u1'
    TripleResiduals residuals;
    std::size_t dim() const { return u1.dim(); }
};

/// Block data putting a triple into direct sums of weighted Pauli blocks:
/// u1 = (+) lambda_i sz, u2 = (+) lambda'_i sx, u3 = sign (+) (lambda_i lambda'_i)* sy.
struct CanonicalForm {
    UnitaryOperator basis;                 // change-of-basis V
    std::vector<cd> lambdas;               // per block
    std::vector<cd> lambda_primes;         // per block
    std::vector<std::size_t> block_multiplicities;
    std::size_t block_count() const { return lambdas.size(); }
    int sign = +1;
};

/// Residuals of the commutation/anti-commutation algebra of a triple.
struct AlgebraReport {
    int commutator_branch = +1;      // sign branch in [Ui,Uj] = branch * 2i e_ijk Uk'
    double max_commutator = 0.0;     // worst of the three cyclic pairs, chosen branch
    double max_anticommutator = 0.0; // worst off-diagonal {Ui,Uj}, plus the i=j identities
    double product_identity = 0.0;   // ||u1 u2 u3 - sign*i*1||_max
    double tolerance = 0.0;
    bool pass = false;
};

/// Greedy angular clustering of a unitary spectrum. Throws ConvergenceError
/// when two resulting clusters sit closer than 2*tol (ambiguous merge).
EigenClusters cluster_spectrum(const SpectralDecomposition& decomp, double tol);

/// Negation-pairing test: every cluster (lambda, K) must match a distinct
/// cluster (-lambda, K). Defects are data, not errors.
PairingVerdict check_pairing(const EigenClusters& clusters, double pairing_tol = 1e-8);

/// Builds an anti-commuting partner for u1 by swapping each paired eigenbasis,
/// weighted by one unit-modulus lambda' per pair ("default": all 1). Refuses
/// with RefusalError when the spectrum does not pair.
UnitaryOperator construct_partner(const UnitaryOperator& u1,
                                  const std::optional<std::vector<cd>>& lambda_primes = std::nullopt,
                                  const Tolerances& tol = Tolerances());

/// Completes an anti-commuting pair to a triple via u3 = sign * i * u2' * u1'.
/// Refuses when ||{u1,u2}||_max exceeds tol.commutator.
PmsTriple complete_triple(const UnitaryOperator& u1, const UnitaryOperator& u2,
                          int sign = +1, const Tolerances& tol = Tolerances());

/// Validates a pre-assembled triple (e.g. loaded from disk) and records its
/// residuals. Refuses when any invariant fails.
PmsTriple make_triple(const UnitaryOperator& u1, const UnitaryOperator& u2,
                      const UnitaryOperator& u3, int sign,
                      const Tolerances& tol = Tolerances());

/// Raw-matrix validation for operators loaded from disk: computes all triple
/// residuals without throwing. When `sign` is absent it is detected from the
/// product identity (the branch with the smaller residual).
struct TripleCheckResult {
    TripleResiduals residuals;
    int sign = +1;
    double worst = 0.0;
    bool dim_even = false;
    bool pass = false;
};
TripleCheckResult check_triple(const Matrix& u1, const Matrix& u2, const Matrix& u3,
                               std::optional<int> sign = std::nullopt,
                               const Tolerances& tol = Tolerances());

/// Reports commutator/anti-commutator residuals of a triple against the
/// cyclic algebra, picking the consistent sign branch they match best.
AlgebraReport verify_algebra(const PmsTriple& triple, double tol = 1e-9);

/// Extracts the direct-sum canonical form of a valid triple. The partner
/// column of each +lambda eigenvector is u2|e+>/lambda', which locks the
/// relative phases; blocks are split further where u2^2 acts with distinct
/// eigenvalues inside a degenerate cluster.
CanonicalForm canonical_form(const PmsTriple& triple, const Tolerances& tol = Tolerances());

/// Rebuilds the three direct-sum operators of a canonical form (before basis
/// rotation): {u1, u2, u3} as block matrices.
std::array<Matrix, 3> canonical_blocks(const CanonicalForm& form);

} // namespace contextlab

#endif
