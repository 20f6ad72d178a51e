#include "contextlab/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace contextlab {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Phase of z mapped to [0, 2pi).
double phase_mod_2pi(cd z) {
    double p = std::arg(z);
    if (p < 0.0) {
        p += kTwoPi;
    }
    // arg(z) == -pi maps to +pi exactly; keep the representative below 2pi.
    if (p >= kTwoPi) {
        p -= kTwoPi;
    }
    return p;
}

double offdiag_norm(const Matrix& a) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            if (i != j) {
                s += std::norm(a(i, j));
            }
        }
    }
    return std::sqrt(s);
}

} // namespace

UnitaryOperator UnitaryOperator::certify(Matrix m, double tol) {
    if (!m.is_square()) {
        throw std::invalid_argument("unitary certification: matrix is not square");
    }
    if (!m.all_finite()) {
        throw std::invalid_argument("unitary certification: non-finite entries");
    }
    const double residual = max_abs_diff(m.dagger() * m, Matrix::identity(m.rows()));
    if (residual > tol) {
        throw std::invalid_argument("unitary certification failed: ||U'U - 1||_max = " +
                                    std::to_string(residual));
    }
    return UnitaryOperator(std::move(m), residual);
}

DensityMatrix DensityMatrix::from_pure(const StateVector& psi) {
    const std::size_t d = psi.dim();
    Matrix rho(d, d);
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < d; ++j) {
            rho(i, j) = psi.amplitudes[i] * std::conj(psi.amplitudes[j]);
        }
    }
    return DensityMatrix{std::move(rho)};
}

Matrix tensor(const Matrix& a, const Matrix& b) {
    const std::size_t rr = a.rows() * b.rows();
    const std::size_t cc = a.cols() * b.cols();
    if (a.rows() != 0 && rr / a.rows() != b.rows()) {
        throw std::invalid_argument("tensor product dimension overflow");
    }
    if (rr * cc > std::size_t(1) << 28) {
        throw std::invalid_argument("tensor product dimension overflow");
    }
    Matrix out(rr, cc);
    for (std::size_t ia = 0; ia < a.rows(); ++ia) {
        for (std::size_t ja = 0; ja < a.cols(); ++ja) {
            const cd av = a(ia, ja);
            if (av == cd(0.0, 0.0)) {
                continue;
            }
            for (std::size_t ib = 0; ib < b.rows(); ++ib) {
                for (std::size_t jb = 0; jb < b.cols(); ++jb) {
                    out(ia * b.rows() + ib, ja * b.cols() + jb) = av * b(ib, jb);
                }
            }
        }
    }
    return out;
}

Matrix direct_sum(const std::vector<Matrix>& blocks) {
    if (blocks.empty()) {
        throw std::invalid_argument("direct_sum of empty block list");
    }
    std::size_t total = 0;
    for (const Matrix& b : blocks) {
        if (!b.is_square()) {
            throw std::invalid_argument("direct_sum blocks must be square");
        }
        total += b.rows();
    }
    Matrix out(total, total);
    std::size_t off = 0;
    for (const Matrix& b : blocks) {
        for (std::size_t i = 0; i < b.rows(); ++i) {
            for (std::size_t j = 0; j < b.cols(); ++j) {
                out(off + i, off + j) = b(i, j);
            }
        }
        off += b.rows();
    }
    return out;
}

HermitianEig eig_hermitian(const Matrix& h) {
    if (!h.is_square()) {
        throw std::invalid_argument("eig_hermitian: matrix is not square");
    }
    const std::size_t n = h.rows();

    // Work on the exactly Hermitian average; callers validate hermiticity.
    Matrix a(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            a(i, j) = (h(i, j) + std::conj(h(j, i))) * 0.5;
        }
    }
    Matrix v = Matrix::identity(n);

    const double threshold = 1e-12 * std::max(1.0, a.frobenius_norm());
    const double skip = n > 1 ? threshold / std::sqrt(double(n) * double(n - 1)) : threshold;
    const int max_sweeps = 100;

    int sweep = 0;
    for (; sweep < max_sweeps && n > 1; ++sweep) {
        if (offdiag_norm(a) <= threshold) {
            break;
        }
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const cd apq = a(p, q);
                const double r = std::abs(apq);
                if (r <= skip) {
                    continue;
                }
                const double app = a(p, p).real();
                const double aqq = a(q, q).real();
                const double delta = 0.5 * (app - aqq);
                const double root = std::hypot(delta, r);
                // t = mu_plus - app, computed without cancellation.
                const double t = delta >= 0.0 ? r * r / (delta + root) : root - delta;
                const double np_ = std::sqrt(r * r + t * t);
                // Columns of g are the eigenvectors of the 2x2 pivot block.
                const cd g11 = apq / np_;
                const cd g21 = cd(t / np_, 0.0);
                const cd g12 = cd(-t / np_, 0.0);
                const cd g22 = std::conj(apq) / np_;
                // a <- g' a g on rows/cols p, q.
                for (std::size_t k = 0; k < n; ++k) {
                    const cd akp = a(k, p);
                    const cd akq = a(k, q);
                    a(k, p) = akp * g11 + akq * g21;
                    a(k, q) = akp * g12 + akq * g22;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const cd apk = a(p, k);
                    const cd aqk = a(q, k);
                    a(p, k) = std::conj(g11) * apk + std::conj(g21) * aqk;
                    a(q, k) = std::conj(g12) * apk + std::conj(g22) * aqk;
                }
                a(p, q) = cd(0.0, 0.0);
                a(q, p) = cd(0.0, 0.0);
                for (std::size_t k = 0; k < n; ++k) {
                    const cd vkp = v(k, p);
                    const cd vkq = v(k, q);
                    v(k, p) = vkp * g11 + vkq * g21;
                    v(k, q) = vkp * g12 + vkq * g22;
                }
            }
        }
    }
    if (n > 1 && offdiag_norm(a) > threshold) {
        throw ConvergenceError("Jacobi diagonalization did not converge in 100 sweeps",
                               offdiag_norm(a));
    }

    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) {
        order[i] = i;
    }
    std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
        return a(i, i).real() < a(j, j).real();
    });

    HermitianEig out;
    out.eigenvalues.resize(n);
    out.vectors = Matrix(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        out.eigenvalues[j] = a(order[j], order[j]).real();
        for (std::size_t i = 0; i < n; ++i) {
            out.vectors(i, j) = v(i, order[j]);
        }
    }
    return out;
}

UnitaryOperator expm_i_hermitian(const Matrix& h, double t, double hermiticity_tol) {
    if (!h.is_square()) {
        throw std::invalid_argument("expm_i_hermitian: matrix is not square");
    }
    if (max_abs_diff(h, h.dagger()) > hermiticity_tol) {
        throw std::invalid_argument("expm_i_hermitian: input is not Hermitian within tolerance");
    }
    HermitianEig eh = eig_hermitian(h);
    const std::size_t n = h.rows();
    // W diag(e^{i t w}) W'
    Matrix scaled = eh.vectors;
    for (std::size_t j = 0; j < n; ++j) {
        const cd f = std::exp(cd(0.0, t * eh.eigenvalues[j]));
        for (std::size_t i = 0; i < n; ++i) {
            scaled(i, j) *= f;
        }
    }
    return UnitaryOperator::certify(scaled * eh.vectors.dagger(), 1e-9);
}

SpectralDecomposition eig_unitary(const UnitaryOperator& u, const Tolerances& tol) {
    const Matrix& m = u.matrix();
    const std::size_t d = m.rows();
    const Matrix md = m.dagger();
    Matrix b(d, d);
    Matrix c(d, d);
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < d; ++j) {
            b(i, j) = (m(i, j) + md(i, j)) * 0.5;
            c(i, j) = (m(i, j) - md(i, j)) * cd(0.0, -0.5);
        }
    }

    Matrix v = Matrix::identity(d);
    std::vector<std::vector<std::size_t>> parts{std::vector<std::size_t>(d)};
    for (std::size_t i = 0; i < d; ++i) {
        parts[0][i] = i;
    }

    // Alternate between the two commuting Hermitian parts, first resolving
    // coarse gaps, then refining inside near-degenerate subspaces. Eigenvalue
    // pairs that stay clustered under both parts are genuinely degenerate at
    // the 1e-9 scale and any orthonormal basis serves them.
    const std::pair<const Matrix*, double> ladder[] = {
        {&b, 1e-4}, {&c, 1e-4}, {&b, 1e-9}, {&c, 1e-9}};
    for (const auto& [mat, gap] : ladder) {
        std::vector<std::vector<std::size_t>> next;
        for (const auto& part : parts) {
            const std::size_t k = part.size();
            if (k == 1) {
                next.push_back(part);
                continue;
            }
            Matrix w(d, k);
            for (std::size_t j = 0; j < k; ++j) {
                for (std::size_t i = 0; i < d; ++i) {
                    w(i, j) = v(i, part[j]);
                }
            }
            Matrix block = w.dagger() * (*mat * w);
            HermitianEig eh = eig_hermitian(block);
            Matrix rotated = w * eh.vectors;
            for (std::size_t j = 0; j < k; ++j) {
                for (std::size_t i = 0; i < d; ++i) {
                    v(i, part[j]) = rotated(i, j);
                }
            }
            std::size_t start = 0;
            for (std::size_t j = 1; j < k; ++j) {
                if (eh.eigenvalues[j] - eh.eigenvalues[j - 1] > gap) {
                    next.emplace_back(part.begin() + start, part.begin() + j);
                    start = j;
                }
            }
            next.emplace_back(part.begin() + start, part.end());
        }
        parts = std::move(next);
    }

    // Rayleigh quotients give the eigenvalues on the final basis.
    std::vector<cd> lambda(d);
    for (std::size_t j = 0; j < d; ++j) {
        std::vector<cd> col(d);
        for (std::size_t i = 0; i < d; ++i) {
            col[i] = v(i, j);
        }
        lambda[j] = inner(col, mat_vec(m, col));
    }

    std::vector<std::size_t> order(d);
    for (std::size_t i = 0; i < d; ++i) {
        order[i] = i;
    }
    std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
        return phase_mod_2pi(lambda[i]) < phase_mod_2pi(lambda[j]);
    });

    SpectralDecomposition out;
    out.eigenvalues.resize(d);
    out.eigenvectors = Matrix(d, d);
    for (std::size_t j = 0; j < d; ++j) {
        out.eigenvalues[j] = lambda[order[j]];
        for (std::size_t i = 0; i < d; ++i) {
            out.eigenvectors(i, j) = v(i, order[j]);
        }
    }

    for (const cd& l : out.eigenvalues) {
        if (std::abs(std::abs(l) - 1.0) > 1e-8) {
            throw ConvergenceError("eig_unitary: eigenvalue off the unit circle",
                                   std::abs(std::abs(l) - 1.0));
        }
    }
    Matrix rec(d, d);
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < d; ++j) {
            cd s = 0.0;
            for (std::size_t k = 0; k < d; ++k) {
                s += out.eigenvectors(i, k) * out.eigenvalues[k] *
                     std::conj(out.eigenvectors(j, k));
            }
            rec(i, j) = s;
        }
    }
    const double rec_res = max_abs_diff(m, rec);
    if (rec_res > tol.reconstruction) {
        throw ConvergenceError("eig_unitary: reconstruction residual above tolerance", rec_res);
    }
    return out;
}

double Rng::uniform() {
    return double(engine_() >> 11) * 0x1.0p-53;
}

double Rng::gaussian() {
    if (have_spare_) {
        have_spare_ = false;
        return spare_;
    }
    // u1 in (0,1] so the log is finite.
    const double u1 = 1.0 - uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    spare_ = r * std::sin(kTwoPi * u2);
    have_spare_ = true;
    return r * std::cos(kTwoPi * u2);
}

cd Rng::complex_gaussian() {
    const double re = gaussian();
    const double im = gaussian();
    return cd(re, im);
}

StateVector haar_state(std::size_t dim, std::uint64_t seed) {
    if (dim == 0) {
        throw std::invalid_argument("haar_state: dim must be positive");
    }
    Rng rng(seed);
    StateVector psi;
    psi.amplitudes.resize(dim);
    double n = 0.0;
    do {
        for (std::size_t i = 0; i < dim; ++i) {
            psi.amplitudes[i] = rng.complex_gaussian();
        }
        n = norm(psi.amplitudes);
    } while (n == 0.0);
    for (cd& a : psi.amplitudes) {
        a /= n;
    }
    return psi;
}

DensityMatrix random_density(std::size_t dim, std::size_t rank, std::uint64_t seed) {
    if (dim == 0 || rank == 0 || rank > dim) {
        throw std::invalid_argument("random_density: need 1 <= rank <= dim");
    }
    Rng rng(seed);
    Matrix g(dim, rank);
    for (std::size_t i = 0; i < dim; ++i) {
        for (std::size_t j = 0; j < rank; ++j) {
            g(i, j) = rng.complex_gaussian();
        }
    }
    // G G' is Hermitian; build the upper triangle and mirror it.
    Matrix rho(dim, dim);
    for (std::size_t i = 0; i < dim; ++i) {
        for (std::size_t j = i; j < dim; ++j) {
            cd s = 0.0;
            for (std::size_t k = 0; k < rank; ++k) {
                s += g(i, k) * std::conj(g(j, k));
            }
            rho(i, j) = s;
            rho(j, i) = std::conj(s);
        }
        rho(i, i) = cd(rho(i, i).real(), 0.0);
    }
    const double tr = rho.trace().real();
    rho *= cd(1.0 / tr, 0.0);
    return DensityMatrix{std::move(rho)};
}

UnitaryOperator random_unitary(std::size_t dim, std::uint64_t seed) {
    if (dim == 0) {
        throw std::invalid_argument("random_unitary: dim must be positive");
    }
    Rng rng(seed);
    Matrix g(dim, dim);
    for (std::size_t i = 0; i < dim; ++i) {
        for (std::size_t j = 0; j < dim; ++j) {
            g(i, j) = rng.complex_gaussian();
        }
    }
    // Modified Gram-Schmidt with one re-orthogonalization pass. Normalizing
    // each pivot to a positive real norm fixes the QR phase convention, which
    // makes the result Haar-distributed.
    for (std::size_t j = 0; j < dim; ++j) {
        for (int pass = 0; pass < 2; ++pass) {
            for (std::size_t k = 0; k < j; ++k) {
                cd proj = 0.0;
                for (std::size_t i = 0; i < dim; ++i) {
                    proj += std::conj(g(i, k)) * g(i, j);
                }
                for (std::size_t i = 0; i < dim; ++i) {
                    g(i, j) -= proj * g(i, k);
                }
            }
        }
        double n = 0.0;
        for (std::size_t i = 0; i < dim; ++i) {
            n += std::norm(g(i, j));
        }
        n = std::sqrt(n);
        if (n == 0.0) {
            throw ConvergenceError("random_unitary: degenerate Gaussian sample", 0.0);
        }
        for (std::size_t i = 0; i < dim; ++i) {
            g(i, j) /= n;
        }
    }
    return UnitaryOperator::certify(std::move(g));
}

} // namespace contextlab
