#include "contextlab/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "contextlab/linalg.hpp"
#include "contextlab/parallel.hpp"

namespace contextlab {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// 3x3 grid addressing of the flat 9-entry assignment, row-major.
inline std::size_t at(std::size_t j, std::size_t k) { return 3 * j + k; }

struct Point {
    std::array<double, 9> modulus{};
    std::array<double, 9> phase{};

    std::array<cd, 9> assignment() const {
        std::array<cd, 9> u;
        for (std::size_t i = 0; i < 9; ++i) {
            u[i] = std::polar(modulus[i], phase[i]);
        }
        return u;
    }
};

double objective(const Point& p) {
    return classical_objective(p.assignment());
}

/// Gradient in (modulus, phase) coordinates. Each entry u appears in exactly
/// two contexts; the coefficient is the product of the other entries, with
/// the last column negated.
void gradient(const Point& p, std::array<double, 9>& gm, std::array<double, 9>& gp) {
    const std::array<cd, 9> u = p.assignment();
    for (std::size_t j = 0; j < 3; ++j) {
        for (std::size_t k = 0; k < 3; ++k) {
            cd co = u[at(j, (k + 1) % 3)] * u[at(j, (k + 2) % 3)];
            const double col_sign = (k == 2) ? -1.0 : 1.0;
            co += col_sign * u[at((j + 1) % 3, k)] * u[at((j + 2) % 3, k)];
            const std::size_t i = at(j, k);
            gm[i] = (std::polar(1.0, p.phase[i]) * co).real();
            gp[i] = (cd(0.0, 1.0) * u[i] * co).real();
        }
    }
}

/// Zeroes modulus components that push outside [0,1]; phases are free.
double projected_gradient_norm(const Point& p, const std::array<double, 9>& gm,
                               const std::array<double, 9>& gp) {
    double s = 0.0;
    for (std::size_t i = 0; i < 9; ++i) {
        double g = gm[i];
        if ((p.modulus[i] >= 1.0 && g > 0.0) || (p.modulus[i] <= 0.0 && g < 0.0)) {
            g = 0.0;
        }
        s += g * g + gp[i] * gp[i];
    }
    return std::sqrt(s);
}

AscentStart run_ascent(std::uint64_t seed, double tol, const AscentOptions& options,
                       Point& best_point) {
    Rng rng(seed);
    Point p;
    for (std::size_t i = 0; i < 9; ++i) {
        // Moduli start in the upper half of the box; the optimizer is still
        // free to move them anywhere in [0,1].
        p.modulus[i] = 0.5 + 0.5 * rng.uniform();
        p.phase[i] = kTwoPi * rng.uniform();
    }

    double step = options.initial_step;
    double f = objective(p);
    std::array<double, 9> gm;
    std::array<double, 9> gp;
    AscentStart result;
    result.seed = seed;

    std::size_t it = 0;
    for (; it < options.max_iterations; ++it) {
        gradient(p, gm, gp);
        if (projected_gradient_norm(p, gm, gp) < tol) {
            result.converged = true;
            break;
        }
        if (step < options.min_step) {
            break;
        }
        Point trial = p;
        for (std::size_t i = 0; i < 9; ++i) {
            trial.modulus[i] = std::clamp(p.modulus[i] + step * gm[i], 0.0, 1.0);
            trial.phase[i] = p.phase[i] + step * gp[i];
        }
        const double ft = objective(trial);
        if (ft > f) {
            p = trial;
            f = ft;
            step = std::min(step * 1.5, 1.0);
        } else {
            step *= 0.5;
        }
    }

    gradient(p, gm, gp);
    result.value = f;
    result.iterations = it;
    result.projected_gradient_norm = projected_gradient_norm(p, gm, gp);
    result.converged = result.converged || result.projected_gradient_norm < tol;
    double dev = 0.0;
    for (std::size_t i = 0; i < 9; ++i) {
        dev = std::max(dev, std::abs(p.modulus[i] - 1.0));
    }
    result.max_modulus_deviation = dev;
    best_point = p;
    return result;
}

} // namespace

double classical_objective(const std::array<cd, 9>& u) {
    double total = 0.0;
    for (std::size_t j = 0; j < 3; ++j) {
        total += (u[at(j, 0)] * u[at(j, 1)] * u[at(j, 2)]).real();
    }
    total += (u[at(0, 0)] * u[at(1, 0)] * u[at(2, 0)]).real();
    total += (u[at(0, 1)] * u[at(1, 1)] * u[at(2, 1)]).real();
    total -= (u[at(0, 2)] * u[at(1, 2)] * u[at(2, 2)]).real();
    return total;
}

BoundCertificate dichotomic_bound() {
    BoundCertificate cert;
    cert.method = "exhaustive";
    cert.evaluations = 512;

    int best = -100;
    std::array<int, 9> best_signs{};
    for (unsigned mask = 0; mask < 512; ++mask) {
        std::array<int, 9> s;
        for (std::size_t i = 0; i < 9; ++i) {
            s[i] = (mask >> i) & 1u ? -1 : 1;
        }
        int value = 0;
        for (std::size_t j = 0; j < 3; ++j) {
            value += s[at(j, 0)] * s[at(j, 1)] * s[at(j, 2)];
        }
        value += s[at(0, 0)] * s[at(1, 0)] * s[at(2, 0)];
        value += s[at(0, 1)] * s[at(1, 1)] * s[at(2, 1)];
        value -= s[at(0, 2)] * s[at(1, 2)] * s[at(2, 2)];
        if (value > best) {
            best = value;
            best_signs = s;
        }
    }
    cert.bound_value = double(best);
    for (std::size_t i = 0; i < 9; ++i) {
        cert.argmax[i] = cd(double(best_signs[i]), 0.0);
    }
    return cert;
}

BoundCertificate phase_bound(std::size_t n_starts, double tol, std::uint64_t seed,
                             const AscentOptions& options) {
    if (n_starts == 0) {
        throw std::invalid_argument("phase_bound: need at least one start");
    }
    BoundCertificate cert;
    cert.method = "multistart-ascent";
    cert.n_starts = n_starts;
    cert.starts.resize(n_starts);
    std::vector<Point> points(n_starts);

    parallel_for(n_starts, [&](std::size_t i) {
        cert.starts[i] = run_ascent(seed + i, tol, options, points[i]);
    });

    // Deterministic reduction: best value, ties broken by lowest start index.
    std::size_t best = 0;
    for (std::size_t i = 1; i < n_starts; ++i) {
        if (cert.starts[i].value > cert.starts[best].value) {
            best = i;
        }
    }
    cert.bound_value = cert.starts[best].value;
    cert.argmax = points[best].assignment();
    cert.max_gradient_norm = cert.starts[best].projected_gradient_norm;
    cert.max_modulus_deviation = cert.starts[best].max_modulus_deviation;
    double dev = 0.0;
    for (const AscentStart& s : cert.starts) {
        if (s.value >= cert.bound_value - 1e-6) {
            dev = std::max(dev, s.max_modulus_deviation);
        }
    }
    cert.max_modulus_deviation_at_optimum = dev;
    return cert;
}

double sample_noncontextual(std::size_t n, std::uint64_t seed) {
    if (n == 0) {
        throw std::invalid_argument("sample_noncontextual: need at least one sample");
    }
    Rng rng(seed);
    double best = -1e300;
    std::array<cd, 9> u;
    for (std::size_t s = 0; s < n; ++s) {
        for (std::size_t i = 0; i < 9; ++i) {
            u[i] = std::polar(1.0, kTwoPi * rng.uniform());
        }
        best = std::max(best, classical_objective(u));
    }
    return best;
}

} // namespace contextlab
