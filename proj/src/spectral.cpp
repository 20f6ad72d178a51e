#include "contextlab/spectral.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <sstream>

namespace contextlab {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

double phase_mod_2pi(cd z) {
    double p = std::arg(z);
    if (p < 0.0) {
        p += kTwoPi;
    }
    if (p >= kTwoPi) {
        p -= kTwoPi;
    }
    return p;
}

/// Angular distance on the unit circle, in [0, pi].
double angular_distance(cd a, cd b) {
    return std::abs(std::arg(a * std::conj(b)));
}

std::string format_complex(cd z) {
    std::ostringstream os;
    os.precision(6);
    os << z.real() << (z.imag() < 0 ? "" : "+") << z.imag() << "i";
    return os.str();
}

const Matrix kSigmaX{{cd(0, 0), cd(1, 0)}, {cd(1, 0), cd(0, 0)}};
const Matrix kSigmaY{{cd(0, 0), cd(0, -1)}, {cd(0, 1), cd(0, 0)}};
const Matrix kSigmaZ{{cd(1, 0), cd(0, 0)}, {cd(0, 0), cd(-1, 0)}};

TripleResiduals compute_residuals(const Matrix& m1, const Matrix& m2, const Matrix& m3,
                                  int sign) {
    TripleResiduals r;
    r.anticommutator_12 = anticommutator(m1, m2).max_abs();
    r.anticommutator_13 = anticommutator(m1, m3).max_abs();
    r.anticommutator_23 = anticommutator(m2, m3).max_abs();
    Matrix target = Matrix::identity(m1.rows());
    target *= cd(0.0, double(sign));
    r.product_identity = max_abs_diff(m1 * m2 * m3, target);
    const Matrix eye = Matrix::identity(m1.rows());
    r.max_unitarity = std::max({max_abs_diff(m1.dagger() * m1, eye),
                                max_abs_diff(m2.dagger() * m2, eye),
                                max_abs_diff(m3.dagger() * m3, eye)});
    return r;
}

double worst_residual(const TripleResiduals& r) {
    return std::max({r.anticommutator_12, r.anticommutator_13, r.anticommutator_23,
                     r.product_identity, r.max_unitarity});
}

} // namespace

EigenClusters cluster_spectrum(const SpectralDecomposition& decomp, double tol) {
    if (tol <= 0.0) {
        throw std::invalid_argument("cluster_spectrum: tol must be positive");
    }
    const std::size_t d = decomp.eigenvalues.size();
    if (d == 0) {
        throw std::invalid_argument("cluster_spectrum: empty decomposition");
    }

    std::vector<std::size_t> order(d);
    for (std::size_t i = 0; i < d; ++i) {
        order[i] = i;
    }
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return phase_mod_2pi(decomp.eigenvalues[a]) < phase_mod_2pi(decomp.eigenvalues[b]);
    });

    // Greedy merge of phase-sorted neighbours, then a wrap-around merge of the
    // first and last cluster across the branch cut.
    std::vector<std::vector<std::size_t>> groups;
    for (std::size_t n = 0; n < d; ++n) {
        const std::size_t idx = order[n];
        if (!groups.empty() &&
            angular_distance(decomp.eigenvalues[idx],
                             decomp.eigenvalues[groups.back().back()]) <= tol) {
            groups.back().push_back(idx);
        } else {
            groups.push_back({idx});
        }
    }
    if (groups.size() > 1 &&
        angular_distance(decomp.eigenvalues[groups.front().front()],
                         decomp.eigenvalues[groups.back().back()]) <= tol) {
        groups.back().insert(groups.back().end(), groups.front().begin(), groups.front().end());
        groups.erase(groups.begin());
    }

    EigenClusters out;
    out.clustering_tol = tol;
    out.dim = d;
    for (const auto& g : groups) {
        EigenCluster c;
        cd mean = 0.0;
        for (std::size_t idx : g) {
            mean += decomp.eigenvalues[idx];
        }
        if (std::abs(mean) == 0.0) {
            throw ConvergenceError("cluster_spectrum: degenerate circular mean", 0.0);
        }
        c.representative = mean / std::abs(mean);
        c.multiplicity = g.size();
        c.vectors = Matrix(d, g.size());
        for (std::size_t j = 0; j < g.size(); ++j) {
            for (std::size_t i = 0; i < d; ++i) {
                c.vectors(i, j) = decomp.eigenvectors(i, g[j]);
            }
        }
        out.clusters.push_back(std::move(c));
    }

    for (std::size_t i = 0; i < out.clusters.size(); ++i) {
        for (std::size_t j = i + 1; j < out.clusters.size(); ++j) {
            const double sep = angular_distance(out.clusters[i].representative,
                                                out.clusters[j].representative);
            if (sep <= 2.0 * tol) {
                throw ConvergenceError(
                    "cluster_spectrum: ambiguous clustering, representatives separated by " +
                        std::to_string(sep) + " <= 2*tol",
                    sep);
            }
        }
    }
    return out;
}

PairingVerdict check_pairing(const EigenClusters& clusters, double pairing_tol) {
    PairingVerdict verdict;
    const std::size_t n = clusters.clusters.size();

    // Visit clusters largest-multiplicity first so that defects are reported
    // from the side with more weight.
    std::vector<std::size_t> visit(n);
    for (std::size_t i = 0; i < n; ++i) {
        visit[i] = i;
    }
    std::sort(visit.begin(), visit.end(), [&](std::size_t a, std::size_t b) {
        const auto& ca = clusters.clusters[a];
        const auto& cb = clusters.clusters[b];
        if (ca.multiplicity != cb.multiplicity) {
            return ca.multiplicity > cb.multiplicity;
        }
        return phase_mod_2pi(ca.representative) < phase_mod_2pi(cb.representative);
    });

    std::vector<bool> used(n, false);
    for (std::size_t i : visit) {
        if (used[i]) {
            continue;
        }
        const cd target = -clusters.clusters[i].representative;
        std::size_t best = n;
        double best_dist = kPi + 1.0;
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i) {
                continue;
            }
            const double dist = angular_distance(clusters.clusters[j].representative, target);
            if (dist < best_dist) {
                best_dist = dist;
                best = j;
            }
        }
        if (best == n || best_dist > pairing_tol) {
            verdict.paired = false;
            verdict.defect = "no eigenvalue cluster at -lambda for lambda = " +
                             format_complex(clusters.clusters[i].representative);
            return verdict;
        }
        if (used[best]) {
            verdict.paired = false;
            verdict.defect = "cluster at " + format_complex(-target) +
                             " already paired; spectrum is not negation-symmetric";
            return verdict;
        }
        if (clusters.clusters[i].multiplicity != clusters.clusters[best].multiplicity) {
            verdict.paired = false;
            verdict.defect = "multiplicity mismatch (" +
                             std::to_string(clusters.clusters[i].multiplicity) + " vs " +
                             std::to_string(clusters.clusters[best].multiplicity) +
                             ") between lambda = " +
                             format_complex(clusters.clusters[i].representative) +
                             " and -lambda";
            return verdict;
        }
        used[i] = true;
        used[best] = true;
        const bool i_is_plus = phase_mod_2pi(clusters.clusters[i].representative) < kPi;
        if (i_is_plus) {
            verdict.pairs.emplace_back(i, best);
        } else {
            verdict.pairs.emplace_back(best, i);
        }
    }
    // Pairs in deterministic order: ascending phase of the + member.
    std::sort(verdict.pairs.begin(), verdict.pairs.end(),
              [&](const auto& a, const auto& b) {
                  return phase_mod_2pi(clusters.clusters[a.first].representative) <
                         phase_mod_2pi(clusters.clusters[b.first].representative);
              });
    verdict.paired = true;
    return verdict;
}

UnitaryOperator construct_partner(const UnitaryOperator& u1,
                                  const std::optional<std::vector<cd>>& lambda_primes,
                                  const Tolerances& tol) {
    const SpectralDecomposition decomp = eig_unitary(u1, tol);
    const EigenClusters clusters = cluster_spectrum(decomp, tol.clustering);
    const PairingVerdict verdict = check_pairing(clusters, tol.pairing);
    if (!verdict.paired) {
        throw RefusalError("no anti-commuting partner exists: " + verdict.defect,
                           verdict.defect);
    }

    std::vector<cd> primes(verdict.pairs.size(), cd(1.0, 0.0));
    if (lambda_primes) {
        if (lambda_primes->size() != verdict.pairs.size()) {
            throw std::invalid_argument(
                "construct_partner: expected " + std::to_string(verdict.pairs.size()) +
                " lambda' values, got " + std::to_string(lambda_primes->size()));
        }
        for (std::size_t i = 0; i < primes.size(); ++i) {
            if (std::abs(std::abs((*lambda_primes)[i]) - 1.0) > 1e-10) {
                throw std::invalid_argument("construct_partner: lambda' must have unit modulus");
            }
            primes[i] = (*lambda_primes)[i];
        }
    }

    const std::size_t d = u1.dim();
    Matrix u2(d, d);
    for (std::size_t p = 0; p < verdict.pairs.size(); ++p) {
        const EigenCluster& plus = clusters.clusters[verdict.pairs[p].first];
        const EigenCluster& minus = clusters.clusters[verdict.pairs[p].second];
        for (std::size_t j = 0; j < plus.multiplicity; ++j) {
            // u2 |e+_j> = lambda' |e-_j>  and  u2 |e-_j> = lambda' |e+_j>
            for (std::size_t r = 0; r < d; ++r) {
                for (std::size_t c = 0; c < d; ++c) {
                    u2(r, c) += primes[p] * (minus.vectors(r, j) * std::conj(plus.vectors(c, j)) +
                                             plus.vectors(r, j) * std::conj(minus.vectors(c, j)));
                }
            }
        }
    }

    UnitaryOperator out = UnitaryOperator::certify(std::move(u2), tol.unitarity);
    const double ac = anticommutator(u1.matrix(), out.matrix()).max_abs();
    if (ac > tol.commutator) {
        throw ConvergenceError("construct_partner: anti-commutator residual above tolerance", ac);
    }
    return out;
}

PmsTriple complete_triple(const UnitaryOperator& u1, const UnitaryOperator& u2, int sign,
                          const Tolerances& tol) {
    if (sign != 1 && sign != -1) {
        throw std::invalid_argument("complete_triple: sign must be +1 or -1");
    }
    if (u1.dim() != u2.dim()) {
        throw std::invalid_argument("complete_triple: dimension mismatch");
    }
    const double ac = anticommutator(u1.matrix(), u2.matrix()).max_abs();
    if (ac > tol.commutator) {
        throw RefusalError("complete_triple: ||{u1,u2}||_max = " + std::to_string(ac) +
                               " exceeds tolerance; the pair does not anti-commute",
                           "anticommutator residual " + std::to_string(ac));
    }
    Matrix m3 = cd(0.0, double(sign)) * (u2.matrix().dagger() * u1.matrix().dagger());
    UnitaryOperator u3 = UnitaryOperator::certify(std::move(m3), tol.unitarity);
    return make_triple(u1, u2, u3, sign, tol);
}

PmsTriple make_triple(const UnitaryOperator& u1, const UnitaryOperator& u2,
                      const UnitaryOperator& u3, int sign, const Tolerances& tol) {
    if (sign != 1 && sign != -1) {
        throw std::invalid_argument("make_triple: sign must be +1 or -1");
    }
    if (u1.dim() != u2.dim() || u1.dim() != u3.dim()) {
        throw std::invalid_argument("make_triple: dimension mismatch");
    }
    TripleResiduals r = compute_residuals(u1.matrix(), u2.matrix(), u3.matrix(), sign);
    const double worst = worst_residual(r);
    if (worst > tol.commutator) {
        throw RefusalError("triple invariants violated: worst residual = " + std::to_string(worst),
                           "triple residual " + std::to_string(worst));
    }
    if (u1.dim() % 2 != 0) {
        throw RefusalError("triple invariants violated: odd dimension " +
                               std::to_string(u1.dim()),
                           "odd dimension");
    }
    return PmsTriple{u1, u2, u3, sign, r};
}

TripleCheckResult check_triple(const Matrix& u1, const Matrix& u2, const Matrix& u3,
                               std::optional<int> sign, const Tolerances& tol) {
    if (!u1.is_square() || u1.rows() != u2.rows() || u1.rows() != u3.rows() ||
        u2.rows() != u2.cols() || u3.rows() != u3.cols()) {
        throw std::invalid_argument("check_triple: operators must be square with equal dimension");
    }
    TripleCheckResult out;
    if (sign) {
        if (*sign != 1 && *sign != -1) {
            throw std::invalid_argument("check_triple: sign must be +1 or -1");
        }
        out.sign = *sign;
        out.residuals = compute_residuals(u1, u2, u3, out.sign);
    } else {
        const TripleResiduals plus = compute_residuals(u1, u2, u3, +1);
        const TripleResiduals minus = compute_residuals(u1, u2, u3, -1);
        if (plus.product_identity <= minus.product_identity) {
            out.sign = +1;
            out.residuals = plus;
        } else {
            out.sign = -1;
            out.residuals = minus;
        }
    }
    out.worst = worst_residual(out.residuals);
    out.dim_even = u1.rows() % 2 == 0;
    out.pass = out.dim_even && out.worst <= tol.commutator;
    return out;
}

AlgebraReport verify_algebra(const PmsTriple& triple, double tol) {
    const std::array<const Matrix*, 3> u = {&triple.u1.matrix(), &triple.u2.matrix(),
                                            &triple.u3.matrix()};
    const std::array<std::array<std::size_t, 3>, 3> cyclic = {{{0, 1, 2}, {1, 2, 0}, {2, 0, 1}}};

    double plus_branch = 0.0;
    double minus_branch = 0.0;
    for (const auto& [i, j, k] : cyclic) {
        const Matrix comm = commutator(*u[i], *u[j]);
        const Matrix rhs = cd(0.0, 2.0) * u[k]->dagger();
        plus_branch = std::max(plus_branch, max_abs_diff(comm, rhs));
        minus_branch = std::max(minus_branch, max_abs_diff(comm, -rhs));
    }

    AlgebraReport report;
    report.commutator_branch = plus_branch <= minus_branch ? +1 : -1;
    report.max_commutator = std::min(plus_branch, minus_branch);

    double anti = 0.0;
    for (std::size_t i = 0; i < 3; ++i) {
        for (std::size_t j = i; j < 3; ++j) {
            const Matrix ac = anticommutator(*u[i], *u[j]);
            if (i == j) {
                // {Ui,Ui} = 2 Ui^2, literally as stated.
                anti = std::max(anti, max_abs_diff(ac, cd(2.0, 0.0) * (*u[i] * *u[i])));
            } else {
                anti = std::max(anti, ac.max_abs());
            }
        }
    }
    report.max_anticommutator = anti;

    Matrix target = Matrix::identity(triple.dim());
    target *= cd(0.0, double(triple.sign));
    report.product_identity = max_abs_diff(*u[0] * *u[1] * *u[2], target);
    report.tolerance = tol;
    report.pass = report.max_commutator <= tol && report.max_anticommutator <= tol;
    return report;
}

CanonicalForm canonical_form(const PmsTriple& triple, const Tolerances& tol) {
    const SpectralDecomposition decomp = eig_unitary(triple.u1, tol);
    const EigenClusters clusters = cluster_spectrum(decomp, tol.clustering);
    const PairingVerdict verdict = check_pairing(clusters, tol.pairing);
    if (!verdict.paired) {
        // A valid triple implies a paired spectrum; reaching this means the
        // triple invariants were bypassed.
        throw std::logic_error("canonical_form: valid triple with unpaired spectrum: " +
                               verdict.defect);
    }

    const std::size_t d = triple.dim();
    const Matrix& m2 = triple.u2.matrix();
    const Matrix u2_squared = m2 * m2;

    struct Block {
        cd lambda;
        cd lambda_prime;
        Matrix plus;   // d x k
        Matrix minus;  // d x k
    };
    std::vector<Block> blocks;

    for (const auto& [pi, mi] : verdict.pairs) {
        const EigenCluster& plus = clusters.clusters[pi];
        // u2^2 preserves the +lambda eigenspace; its eigenvalues there are
        // lambda'^2, one per canonical sub-block.
        Matrix mblock = plus.vectors.dagger() * (u2_squared * plus.vectors);
        const UnitaryOperator mb = UnitaryOperator::certify(std::move(mblock), 1e-6);
        const SpectralDecomposition sub = eig_unitary(mb, tol);
        const EigenClusters sub_clusters = cluster_spectrum(sub, tol.clustering);
        for (const EigenCluster& sc : sub_clusters.clusters) {
            Block blk;
            blk.lambda = plus.representative;
            // Principal square root: phase in (-pi/2, pi/2].
            blk.lambda_prime = std::exp(cd(0.0, 0.5 * std::arg(sc.representative)));
            blk.plus = plus.vectors * sc.vectors;
            blk.minus = (m2 * blk.plus) * (cd(1.0, 0.0) / blk.lambda_prime);
            blocks.push_back(std::move(blk));
        }
    }

    std::sort(blocks.begin(), blocks.end(), [](const Block& a, const Block& b) {
        const double pa = phase_mod_2pi(a.lambda);
        const double pb = phase_mod_2pi(b.lambda);
        if (pa != pb) {
            return pa < pb;
        }
        return phase_mod_2pi(a.lambda_prime) < phase_mod_2pi(b.lambda_prime);
    });

    std::vector<cd> lambdas;
    std::vector<cd> lambda_primes;
    std::vector<std::size_t> multiplicities;
    Matrix v(d, d);
    std::size_t col = 0;
    for (const Block& blk : blocks) {
        const std::size_t k = blk.plus.cols();
        lambdas.push_back(blk.lambda);
        lambda_primes.push_back(blk.lambda_prime);
        multiplicities.push_back(k);
        for (std::size_t j = 0; j < k; ++j) {
            for (std::size_t i = 0; i < d; ++i) {
                v(i, col) = blk.plus(i, j);
                v(i, col + 1) = blk.minus(i, j);
            }
            col += 2;
        }
    }
    if (col != d) {
        throw std::logic_error("canonical_form: block multiplicities do not sum to dimension");
    }
    CanonicalForm form{UnitaryOperator::certify(std::move(v), 1e-7), std::move(lambdas),
                       std::move(lambda_primes), std::move(multiplicities), triple.sign};

    const std::array<Matrix, 3> rebuilt = canonical_blocks(form);
    const Matrix& vb = form.basis.matrix();
    const double res = std::max(
        {max_abs_diff(triple.u1.matrix(), vb * rebuilt[0] * vb.dagger()),
         max_abs_diff(triple.u2.matrix(), vb * rebuilt[1] * vb.dagger()),
         max_abs_diff(triple.u3.matrix(), vb * rebuilt[2] * vb.dagger())});
    if (res > tol.reconstruction) {
        throw ConvergenceError("canonical_form: reconstruction residual above tolerance", res);
    }
    return form;
}

std::array<Matrix, 3> canonical_blocks(const CanonicalForm& form) {
    std::vector<Matrix> b1;
    std::vector<Matrix> b2;
    std::vector<Matrix> b3;
    for (std::size_t i = 0; i < form.block_count(); ++i) {
        const Matrix eye = Matrix::identity(form.block_multiplicities[i]);
        b1.push_back(form.lambdas[i] * tensor(eye, kSigmaZ));
        b2.push_back(form.lambda_primes[i] * tensor(eye, kSigmaX));
        b3.push_back(cd(double(form.sign), 0.0) *
                     std::conj(form.lambdas[i] * form.lambda_primes[i]) * tensor(eye, kSigmaY));
    }
    return {direct_sum(b1), direct_sum(b2), direct_sum(b3)};
}

} // namespace contextlab
