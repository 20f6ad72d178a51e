#ifndef CONTEXTLAB_TYPES_HPP
#define CONTEXTLAB_TYPES_HPP

#include <complex>
#include <stdexcept>
#include <string>

namespace contextlab {

using cd = std::complex<double>;

/// Tolerance knobs shared across the library. Construction accuracy sits one
/// decade below the acceptance checks so that certified objects always pass.
struct Tolerances {
    double unitarity = 1e-10;      // ||U'U - 1||_max for certified unitaries
    double reconstruction = 1e-8;  // eigendecomposition / canonical form round trips
    double commutator = 1e-9;      // algebra residuals ([.,.], {.,.}, products)
    double clustering = 1e-8;      // angular width when clustering unit-circle spectra
    double pairing = 1e-8;         // angular distance when matching lambda to -lambda
};

/// Input that could not be read or decoded (CLI exit code 2).
class ParseError : public std::runtime_error {
public:
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

/// Structural refusal: the requested object cannot exist (CLI exit code 3).
/// Carries the defect that blocks the construction, e.g. a spectrum whose
/// eigenvalue clusters do not pair up under negation.
class RefusalError : public std::runtime_error {
public:
    RefusalError(const std::string& what, std::string defect_text)
        : std::runtime_error(what), defect(std::move(defect_text)) {}
    explicit RefusalError(const std::string& what) : std::runtime_error(what), defect(what) {}
    std::string defect;
};

/// Numerical routine failed to reach its target accuracy.
class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(const std::string& what, double achieved_residual)
        : std::runtime_error(what), residual(achieved_residual) {}
    double residual;
};

} // namespace contextlab

#endif
