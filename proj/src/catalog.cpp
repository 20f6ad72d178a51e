#include "contextlab/catalog.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <vector>

namespace contextlab {

namespace {

constexpr double kPi = std::numbers::pi;

const Matrix kSigmaX{{cd(0, 0), cd(1, 0)}, {cd(1, 0), cd(0, 0)}};
const Matrix kSigmaZ{{cd(1, 0), cd(0, 0)}, {cd(0, 0), cd(-1, 0)}};

/// Defect text from running the pairing test on an explicit spectrum.
std::string pairing_defect_of(const UnitaryOperator& u) {
    const PairingVerdict verdict = check_pairing(cluster_spectrum(eig_unitary(u), 1e-8));
    return verdict.paired ? std::string("spectrum unexpectedly paired") : verdict.defect;
}

} // namespace

double TruncationQuality::max_anticommutator() const {
    return std::max({anticommutator_12, anticommutator_13, anticommutator_23});
}

Matrix spin_sx(unsigned two_s) {
    const std::size_t d = two_s + 1;
    const double s = two_s / 2.0;
    Matrix sp(d, d);
    for (std::size_t a = 1; a < d; ++a) {
        const double m = s - double(a);
        sp(a - 1, a) = std::sqrt(s * (s + 1.0) - m * (m + 1.0));
    }
    const Matrix sm = sp.dagger();
    return cd(0.5, 0.0) * (sp + sm);
}

Matrix spin_sy(unsigned two_s) {
    const std::size_t d = two_s + 1;
    const double s = two_s / 2.0;
    Matrix sp(d, d);
    for (std::size_t a = 1; a < d; ++a) {
        const double m = s - double(a);
        sp(a - 1, a) = std::sqrt(s * (s + 1.0) - m * (m + 1.0));
    }
    const Matrix sm = sp.dagger();
    return cd(0.0, -0.5) * (sp - sm);
}

Matrix spin_sz(unsigned two_s) {
    const std::size_t d = two_s + 1;
    const double s = two_s / 2.0;
    Matrix sz(d, d);
    for (std::size_t a = 0; a < d; ++a) {
        sz(a, a) = cd(s - double(a), 0.0);
    }
    return sz;
}

Matrix weyl_clock(std::size_t d) {
    Matrix z(d, d);
    for (std::size_t k = 0; k < d; ++k) {
        z(k, k) = std::polar(1.0, 2.0 * kPi * double(k) / double(d));
    }
    return z;
}

Matrix weyl_shift(std::size_t d) {
    Matrix x(d, d);
    for (std::size_t k = 0; k < d; ++k) {
        x((k + 1) % d, k) = cd(1.0, 0.0);
    }
    return x;
}

Matrix annihilation(std::size_t cutoff) {
    Matrix a(cutoff, cutoff);
    for (std::size_t m = 1; m < cutoff; ++m) {
        a(m - 1, m) = cd(std::sqrt(double(m)), 0.0);
    }
    return a;
}

UnitaryOperator displacement_operator(cd alpha, std::size_t cutoff) {
    const Matrix a = annihilation(cutoff);
    // exp(alpha a' - alpha* a) = exp(i h) with Hermitian h = -i (alpha a' - alpha* a)
    const Matrix h = cd(0.0, -1.0) * (alpha * a.dagger() - std::conj(alpha) * a);
    return expm_i_hermitian(h, 1.0);
}

StateVector coherent_state(cd alpha, std::size_t cutoff) {
    StateVector psi;
    psi.amplitudes.resize(cutoff);
    // c_n = alpha^n / sqrt(n!), built recursively, normalized after truncation.
    cd c = cd(1.0, 0.0);
    psi.amplitudes[0] = c;
    for (std::size_t n = 1; n < cutoff; ++n) {
        c *= alpha / std::sqrt(double(n));
        psi.amplitudes[n] = c;
    }
    const double nn = norm(psi.amplitudes);
    for (cd& z : psi.amplitudes) {
        z /= nn;
    }
    return psi;
}

PmsTriple pauli_triple() {
    const UnitaryOperator u1 = UnitaryOperator::certify(kSigmaX);
    const UnitaryOperator u2 = UnitaryOperator::certify(kSigmaZ);
    // The -1 branch completes the pair with sigma_y.
    return complete_triple(u1, u2, -1);
}

PmsTriple spin_rotation_triple(const SpinParams& p) {
    if (p.two_s == 0) {
        throw std::invalid_argument("spin_rotation_triple: two_s must be positive");
    }
    const double angle_tol = 1e-12;
    if (std::abs(p.t1 - kPi) > angle_tol || std::abs(p.t2 - kPi) > angle_tol ||
        std::abs(p.t3 - kPi) > angle_tol) {
        throw RefusalError(
            "spin rotations need t1 = t2 = t3 = pi: the rotation spectrum "
            "e^{i(S+1-b)t} pairs under negation only at t = pi",
            "rotation angle != pi");
    }
    if (p.two_s % 2 == 0) {
        // Integer spin: exp(i pi Sz) has an odd-dimensional, unpaired spectrum.
        const UnitaryOperator r3 = expm_i_hermitian(spin_sz(p.two_s), kPi);
        const std::string defect = pairing_defect_of(r3);
        throw RefusalError("integer spin refused: exp(i pi Sz) admits no anti-commuting "
                           "partner: " + defect,
                           defect);
    }
    const UnitaryOperator u1 = expm_i_hermitian(spin_sx(p.two_s), kPi);
    const UnitaryOperator u2 = expm_i_hermitian(spin_sy(p.two_s), kPi);
    return complete_triple(u1, u2, +1);
}

cd spin_r3_phase(const SpinParams& p) {
    const PmsTriple triple = spin_rotation_triple(p);
    const UnitaryOperator r3 = expm_i_hermitian(spin_sz(p.two_s), kPi);
    return (triple.u3.matrix().dagger() * r3.matrix()).trace() / double(p.two_s + 1);
}

PmsTriple parity_pseudospin_triple(std::size_t num_blocks) {
    if (num_blocks == 0) {
        throw std::invalid_argument("parity_pseudospin_triple: need at least one block");
    }
    const std::size_t d = 2 * num_blocks;
    Matrix p(d, d);
    Matrix px(d, d);
    for (std::size_t n = 0; n < num_blocks; ++n) {
        p(2 * n, 2 * n) = cd(1.0, 0.0);
        p(2 * n + 1, 2 * n + 1) = cd(-1.0, 0.0);
        px(2 * n, 2 * n + 1) = cd(1.0, 0.0);
        px(2 * n + 1, 2 * n) = cd(1.0, 0.0);
    }
    return complete_triple(UnitaryOperator::certify(std::move(p)),
                           UnitaryOperator::certify(std::move(px)), +1);
}

PmsTriple weyl_triple(const WeylParams& p) {
    if (p.d < 2) {
        throw std::invalid_argument("weyl_triple: d must be at least 2");
    }
    if (p.d % 2 != 0) {
        // The d-th roots of unity contain no -lambda partners when d is odd.
        const UnitaryOperator clock = UnitaryOperator::certify(weyl_clock(p.d));
        const std::string defect = pairing_defect_of(clock);
        throw RefusalError("odd qudit dimension refused: " + defect, defect);
    }
    const Matrix z = weyl_clock(p.d);
    Matrix zh = Matrix::identity(p.d);
    for (std::size_t k = 0; k < p.d / 2; ++k) {
        zh = zh * z;
    }
    return complete_triple(UnitaryOperator::certify(std::move(zh)),
                           UnitaryOperator::certify(weyl_shift(p.d)), +1);
}

ApproxTriple fock_displacement_triple(const FockParams& p) {
    if (p.cutoff < 8) {
        throw std::invalid_argument("fock_displacement_triple: cutoff must be at least 8");
    }
    const double im12 = (p.alpha1 * std::conj(p.alpha2)).imag();
    if (std::abs(std::abs(im12) - kPi / 2.0) > 1e-10) {
        std::ostringstream os;
        os << "displacement triangle condition violated: need Im(alpha1 * conj(alpha2)) = "
              "+-pi/2, got "
           << im12;
        throw RefusalError(os.str(), os.str());
    }

    ApproxTriple out;
    out.sign = im12 > 0.0 ? +1 : -1;
    out.cutoff = p.cutoff;
    out.alphas = {p.alpha1, p.alpha2, -p.alpha1 - p.alpha2};
    const double max_sq = std::max({std::norm(out.alphas[0]), std::norm(out.alphas[1]),
                                    std::norm(out.alphas[2])});
    if (max_sq > double(p.cutoff) / 4.0) {
        std::ostringstream os;
        os << "cutoff " << p.cutoff << " may be too small: max |alpha|^2 = " << max_sq
           << " exceeds cutoff/4";
        out.warning = os.str();
    }

    const UnitaryOperator d1 = displacement_operator(out.alphas[0], p.cutoff);
    const UnitaryOperator d2 = displacement_operator(out.alphas[1], p.cutoff);
    const UnitaryOperator d3 = displacement_operator(out.alphas[2], p.cutoff);
    out.u1 = d1.matrix();
    out.u2 = d2.matrix();
    out.u3 = d3.matrix();
    out.quality.max_unitarity_residual = std::max(
        {d1.unitarity_residual(), d2.unitarity_residual(), d3.unitarity_residual()});

    const auto tests = fock_test_states(p.cutoff);
    out.quality.n_test_states = tests.size();
    const Matrix ac12 = anticommutator(out.u1, out.u2);
    const Matrix ac13 = anticommutator(out.u1, out.u3);
    const Matrix ac23 = anticommutator(out.u2, out.u3);
    Matrix product_defect = out.u1 * out.u2 * out.u3;
    for (std::size_t i = 0; i < p.cutoff; ++i) {
        product_defect(i, i) -= cd(0.0, double(out.sign));
    }
    for (const auto& [label, psi] : tests) {
        out.quality.anticommutator_12 =
            std::max(out.quality.anticommutator_12, norm(mat_vec(ac12, psi.amplitudes)));
        out.quality.anticommutator_13 =
            std::max(out.quality.anticommutator_13, norm(mat_vec(ac13, psi.amplitudes)));
        out.quality.anticommutator_23 =
            std::max(out.quality.anticommutator_23, norm(mat_vec(ac23, psi.amplitudes)));
        out.quality.product_identity =
            std::max(out.quality.product_identity, norm(mat_vec(product_defect, psi.amplitudes)));
    }
    return out;
}

std::vector<std::pair<std::string, StateVector>> fock_test_states(std::size_t cutoff) {
    std::vector<std::pair<std::string, StateVector>> states;
    for (std::size_t n = 0; n < 5; ++n) {
        StateVector fock;
        fock.amplitudes.assign(cutoff, cd(0.0, 0.0));
        fock.amplitudes[n] = cd(1.0, 0.0);
        states.emplace_back(n == 0 ? "vacuum" : "fock:" + std::to_string(n), std::move(fock));
    }
    const cd coherent_alphas[] = {cd(0.5, 0.0), cd(1.0, 0.0),  cd(1.5, 0.0),
                                  cd(0.0, 1.5), cd(-1.5, 0.0), cd(0.75, 0.75)};
    for (cd a : coherent_alphas) {
        std::ostringstream label;
        label << "coherent:" << a.real() << (a.imag() < 0 ? "" : "+") << a.imag() << "i";
        states.emplace_back(label.str(), coherent_state(a, cutoff));
    }
    return states;
}

AsadianVerdict asadian_check(cd a1, cd a2, cd a3) {
    AsadianVerdict v;
    v.pairwise_im = {(a1 * std::conj(a2)).imag(), (a1 * std::conj(a3)).imag(),
                     (a2 * std::conj(a3)).imag()};
    v.sum_abs = std::abs(a1 + a2 + a3);
    v.ok = v.sum_abs <= 1e-10;
    for (double im : v.pairwise_im) {
        v.ok = v.ok && std::abs(std::abs(im) - kPi / 2.0) <= 1e-10;
    }
    return v;
}

CatalogEntry make_catalog_entry(const std::string& name) {
    CatalogEntry entry;
    entry.name = name;
    if (name == "pauli") {
        entry.triple = pauli_triple();
        return entry;
    }
    const auto colon = name.find(':');
    const std::string family = name.substr(0, colon);
    const std::string args = colon == std::string::npos ? "" : name.substr(colon + 1);
    auto parse_size = [&](const std::string& text) {
        try {
            std::size_t pos = 0;
            const long long v = std::stoll(text, &pos);
            if (pos != text.size() || v <= 0) {
                throw std::invalid_argument(text);
            }
            return std::size_t(v);
        } catch (const std::exception&) {
            throw ParseError("catalog: bad integer argument '" + text + "' in '" + name + "'");
        }
    };
    if (family == "spin") {
        SpinParams p;
        p.two_s = unsigned(parse_size(args));
        entry.triple = spin_rotation_triple(p);
        return entry;
    }
    if (family == "parity") {
        entry.triple = parity_pseudospin_triple(parse_size(args));
        return entry;
    }
    if (family == "weyl") {
        entry.triple = weyl_triple(WeylParams{parse_size(args)});
        return entry;
    }
    if (family == "fock") {
        std::vector<std::string> parts;
        std::stringstream ss(args);
        std::string item;
        while (std::getline(ss, item, ',')) {
            parts.push_back(item);
        }
        if (parts.size() != 5) {
            throw ParseError("catalog: fock needs <re1>,<im1>,<re2>,<im2>,<cutoff>");
        }
        auto parse_real = [&](const std::string& text) {
            try {
                std::size_t pos = 0;
                const double v = std::stod(text, &pos);
                if (pos != text.size()) {
                    throw std::invalid_argument(text);
                }
                return v;
            } catch (const std::exception&) {
                throw ParseError("catalog: bad real argument '" + text + "' in '" + name + "'");
            }
        };
        FockParams p;
        p.alpha1 = cd(parse_real(parts[0]), parse_real(parts[1]));
        p.alpha2 = cd(parse_real(parts[2]), parse_real(parts[3]));
        p.cutoff = parse_size(parts[4]);
        entry.approx = fock_displacement_triple(p);
        return entry;
    }
    throw ParseError("catalog: unknown name '" + name + "'");
}

} // namespace contextlab
