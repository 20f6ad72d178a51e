#ifndef CONTEXTLAB_TEST_HELPERS_HPP
#define CONTEXTLAB_TEST_HELPERS_HPP

#include <vector>

#include "contextlab/linalg.hpp"
#include "contextlab/spectral.hpp"

namespace test_helpers {

using contextlab::cd;
using contextlab::Matrix;

inline Matrix sigma_x() { return Matrix{{cd(0, 0), cd(1, 0)}, {cd(1, 0), cd(0, 0)}}; }
inline Matrix sigma_y() { return Matrix{{cd(0, 0), cd(0, -1)}, {cd(0, 1), cd(0, 0)}}; }
inline Matrix sigma_z() { return Matrix{{cd(1, 0), cd(0, 0)}, {cd(0, 0), cd(-1, 0)}}; }

/// Diagonal matrix from explicit entries.
inline Matrix diag(const std::vector<cd>& entries) {
    Matrix m(entries.size(), entries.size());
    for (std::size_t i = 0; i < entries.size(); ++i) {
        m(i, i) = entries[i];
    }
    return m;
}

/// Polar projection onto the unitary group: m (m'm)^{-1/2}.
inline Matrix closest_unitary(const Matrix& m) {
    const contextlab::HermitianEig eh = contextlab::eig_hermitian(m.dagger() * m);
    Matrix inv_sqrt(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) {
            cd s = 0.0;
            for (std::size_t k = 0; k < m.rows(); ++k) {
                s += eh.vectors(i, k) * (1.0 / std::sqrt(eh.eigenvalues[k])) *
                     std::conj(eh.vectors(j, k));
            }
            inv_sqrt(i, j) = s;
        }
    }
    return m * inv_sqrt;
}

struct PairedSpectrum {
    std::vector<cd> lambdas;                 // one per pair
    std::vector<std::size_t> multiplicities; // one per pair
    Matrix diagonal;                         // the full diag(lambda..-lambda..)
};

/// Negation-paired spectrum with random unit-modulus representatives and
/// random multiplicities summing to dim/2. Phases are kept > 1e-2 apart (and
/// away from each other's negations) so clustering is unambiguous.
inline PairedSpectrum random_paired_spectrum(std::size_t dim, contextlab::Rng& rng) {
    PairedSpectrum out;
    std::size_t remaining = dim / 2;
    std::vector<double> phases;
    while (remaining > 0) {
        const std::size_t k = 1 + std::size_t(rng.uniform() * double(remaining));
        const std::size_t mult = std::min(k, remaining);
        double phase = 0.0;
        bool ok = false;
        for (int attempt = 0; attempt < 1000 && !ok; ++attempt) {
            phase = rng.uniform() * 2.0 * 3.14159265358979323846;
            ok = true;
            for (double p : phases) {
                for (double cand : {phase, phase + 3.14159265358979323846}) {
                    double diff = std::abs(std::remainder(cand - p, 2.0 * 3.14159265358979323846));
                    if (diff < 1e-2) {
                        ok = false;
                    }
                }
            }
        }
        phases.push_back(phase);
        phases.push_back(phase + 3.14159265358979323846);
        out.lambdas.push_back(std::polar(1.0, phase));
        out.multiplicities.push_back(mult);
        remaining -= mult;
    }
    std::vector<cd> entries;
    for (std::size_t i = 0; i < out.lambdas.size(); ++i) {
        for (std::size_t j = 0; j < out.multiplicities[i]; ++j) {
            entries.push_back(out.lambdas[i]);
        }
        for (std::size_t j = 0; j < out.multiplicities[i]; ++j) {
            entries.push_back(-out.lambdas[i]);
        }
    }
    out.diagonal = diag(entries);
    return out;
}

/// Random unitary with a negation-paired spectrum in a random basis.
inline contextlab::UnitaryOperator random_paired_unitary(std::size_t dim, std::uint64_t seed) {
    contextlab::Rng rng(seed);
    const PairedSpectrum spec = random_paired_spectrum(dim, rng);
    const contextlab::UnitaryOperator q = contextlab::random_unitary(dim, seed ^ 0x9e3779b97f4a7c15ULL);
    return contextlab::UnitaryOperator::certify(
        q.matrix() * spec.diagonal * q.matrix().dagger(), 1e-9);
}

/// Valid triple at even dimension with nontrivial intra-block structure:
/// u2 gets independent random unitary blocks between the paired eigenspaces.
inline contextlab::PmsTriple random_valid_triple(std::size_t dim, std::uint64_t seed, int sign) {
    using namespace contextlab;
    Rng rng(seed);
    const PairedSpectrum spec = random_paired_spectrum(dim, rng);
    const UnitaryOperator q = random_unitary(dim, seed ^ 0xc2b2ae3d27d4eb4fULL);

    Matrix u2_block(dim, dim);
    std::size_t offset = 0;
    std::uint64_t block_seed = seed;
    for (std::size_t i = 0; i < spec.lambdas.size(); ++i) {
        const std::size_t k = spec.multiplicities[i];
        const Matrix b = random_unitary(k, ++block_seed).matrix();  // plus -> minus
        const Matrix c = random_unitary(k, ++block_seed).matrix();  // minus -> plus
        for (std::size_t r = 0; r < k; ++r) {
            for (std::size_t s = 0; s < k; ++s) {
                u2_block(offset + k + r, offset + s) = b(r, s);
                u2_block(offset + r, offset + k + s) = c(r, s);
            }
        }
        offset += 2 * k;
    }

    const Matrix u1 = q.matrix() * spec.diagonal * q.matrix().dagger();
    const Matrix u2 = q.matrix() * u2_block * q.matrix().dagger();
    return complete_triple(UnitaryOperator::certify(u1, 1e-9),
                           UnitaryOperator::certify(u2, 1e-9), sign);
}

} // namespace test_helpers

#endif
