#ifndef CONTEXTLAB_BOUNDS_HPP
#define CONTEXTLAB_BOUNDS_HPP

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "contextlab/types.hpp"

namespace contextlab {

/// Classical witness objective: nine complex numbers in the closed unit
/// disc, combined as the sum of the row products plus the first two column
/// products minus the last, real part.
double classical_objective(const std::array<cd, 9>& assignment);

struct AscentStart {
    std::uint64_t seed = 0;
    double value = 0.0;
    double projected_gradient_norm = 0.0;
    double max_modulus_deviation = 0.0;  // max | |u|-1 | over the nine entries
    std::size_t iterations = 0;
    bool converged = false;  // projected gradient below tolerance
};

struct BoundCertificate {
    double bound_value = 0.0;
    std::array<cd, 9> argmax{};             // signs become (+-1, 0)
    std::string method;                      // "exhaustive" | "multistart-ascent"
    std::size_t n_starts = 0;
    double max_gradient_norm = 0.0;          // projected gradient at the optimum
    double max_modulus_deviation = 0.0;      // at the best point
    // For multistart: deviation across every start whose value ties the best
    // within 1e-6; confirms that optima saturate the unit-modulus constraint.
    double max_modulus_deviation_at_optimum = 0.0;
    std::vector<AscentStart> starts;         // empty for the exhaustive method
    std::size_t evaluations = 0;             // exhaustive: number of assignments
};

/// Exhaustive maximum over all 2^9 = 512 sign assignments. Integer
/// arithmetic; the result is exactly 4.
BoundCertificate dichotomic_bound();

/// Ascent hyperparameters; the defaults suit the benign 18-parameter
/// landscape and are exposed for experimentation.
struct AscentOptions {
    double initial_step = 0.1;
    double min_step = 1e-12;
    std::size_t max_iterations = 100000;
};

/// Multi-start projected gradient ascent over nine modulus-phase pairs,
/// moduli in [0,1]. Deterministic in (n_starts, seed) regardless of
/// scheduling: ties reduce to the lowest start index.
BoundCertificate phase_bound(std::size_t n_starts, double tol, std::uint64_t seed,
                             const AscentOptions& options = AscentOptions());

/// Maximum of the objective over n random unit-modulus assignments.
double sample_noncontextual(std::size_t n, std::uint64_t seed);

} // namespace contextlab

#endif
