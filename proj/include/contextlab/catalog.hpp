#ifndef CONTEXTLAB_CATALOG_HPP
#define CONTEXTLAB_CATALOG_HPP

#include <array>
#include <optional>
#include <string>

#include "contextlab/spectral.hpp"

namespace contextlab {

/// Rotation angles of the spin construction; only t1 = t2 = t3 = pi yields
/// the binary spectra a valid triple needs.
struct SpinParams {
    unsigned two_s = 1;  // 2S; dimension d = 2S+1
    double t1 = 3.14159265358979323846;
    double t2 = 3.14159265358979323846;
    double t3 = 3.14159265358979323846;
};

struct FockParams {
    std::size_t cutoff = 64;
    cd alpha1;
    cd alpha2;
};

struct WeylParams {
    std::size_t d = 2;
};

/// Truncated operators whose algebra holds only on low-energy states. The
/// matrices themselves stay unitary (the truncated generator is still
/// anti-Hermitian); the residuals live in the commutation relations.
struct TruncationQuality {
    double max_unitarity_residual = 0.0;
    // max over low-energy test states of ||{Di,Dj} psi||
    double anticommutator_12 = 0.0;
    double anticommutator_13 = 0.0;
    double anticommutator_23 = 0.0;
    // max over test states of ||(D1 D2 D3 - sign*i) psi||
    double product_identity = 0.0;
    std::size_t n_test_states = 0;
    double max_anticommutator() const;
};

struct ApproxTriple {
    Matrix u1;
    Matrix u2;
    Matrix u3;
    int sign = +1;
    std::array<cd, 3> alphas{};
    std::size_t cutoff = 0;
    TruncationQuality quality;
    std::string warning;  // set when the cutoff looks too small for |alpha|
};

struct AsadianVerdict {
    bool ok = false;
    std::array<double, 3> pairwise_im{};  // Im(a1 a2*), Im(a1 a3*), Im(a2 a3*)
    double sum_abs = 0.0;                 // |a1 + a2 + a3|
};

/// Spin component matrices in the |S,m> basis, m = S..-S.
Matrix spin_sx(unsigned two_s);
Matrix spin_sy(unsigned two_s);
Matrix spin_sz(unsigned two_s);

/// Qudit clock Z|k> = w^k |k> and shift X|k> = |k+1 mod d>, w = e^{2 pi i/d}.
Matrix weyl_clock(std::size_t d);
Matrix weyl_shift(std::size_t d);

/// Truncated annihilation operator on `cutoff` Fock states.
Matrix annihilation(std::size_t cutoff);

/// Truncated displacement exp(alpha a' - alpha* a); exactly unitary because
/// the truncated generator remains anti-Hermitian.
UnitaryOperator displacement_operator(cd alpha, std::size_t cutoff);

/// Coherent state truncated to the cutoff and renormalized.
StateVector coherent_state(cd alpha, std::size_t cutoff);

/// (sigma_x, sigma_z, sigma_y): the qubit square.
PmsTriple pauli_triple();

/// exp(i pi Sx), exp(i pi Sy) completed to a triple. Refuses integer spins
/// with the multiplicity defect of exp(i pi Sz), and any angles other than pi.
PmsTriple spin_rotation_triple(const SpinParams& p);

/// Measured phase between exp(i pi Sz) and the completed third operator,
/// tr(u3' R3)/d. Unit modulus when the two agree up to a global phase.
cd spin_r3_phase(const SpinParams& p);

/// Block parity operators (+)sz, (+)sx, (+)sy over pairs |2n>,|2n+1>;
/// dimension 2*num_blocks, residuals exactly zero.
PmsTriple parity_pseudospin_triple(std::size_t num_blocks);

/// Z^{d/2}, X completed to a triple; refuses odd d with the pairing defect
/// of the d-th roots of unity.
PmsTriple weyl_triple(const WeylParams& p);

/// Three truncated displacements with alpha3 = -alpha1 - alpha2. Requires
/// Im(alpha1 * conj(alpha2)) = +-pi/2 within 1e-10 and cutoff >= 8.
ApproxTriple fock_displacement_triple(const FockParams& p);

/// Phase-space triangle test: all pairwise Im(ai aj*) = +-pi/2 within 1e-10
/// and a1 + a2 + a3 = 0 within 1e-10.
AsadianVerdict asadian_check(cd a1, cd a2, cd a3);

/// Labeled low-energy states the truncation quality is judged on: the first
/// five Fock states and a fixed set of coherent states with |alpha| <= 1.5.
std::vector<std::pair<std::string, StateVector>> fock_test_states(std::size_t cutoff);

/// Parsed catalog request: finite triples fill `triple`, truncated
/// displacement families fill `approx`.
struct CatalogEntry {
    std::string name;
    std::optional<PmsTriple> triple;
    std::optional<ApproxTriple> approx;
};

/// Names: "pauli", "spin:<two_s>", "parity:<blocks>", "weyl:<d>",
/// "fock:<re1>,<im1>,<re2>,<im2>,<cutoff>".
CatalogEntry make_catalog_entry(const std::string& name);

} // namespace contextlab

#endif
