#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "contextlab/catalog.hpp"
#include "contextlab/pms.hpp"
#include "test_helpers.hpp"

using namespace contextlab;
using namespace test_helpers;

namespace {

PmsSquare corrupted_pauli_square(double epsilon) {
    const PmsTriple t = pauli_triple();
    Matrix bad = t.u2.matrix();
    bad(0, 0) += cd(epsilon, 0);
    bad(1, 0) += cd(0, epsilon);
    return build_square_unchecked(t.u1.matrix(), closest_unitary(bad), t.u3.matrix(), t.sign);
}

} // namespace

TEST_CASE("build_square on the Pauli triple reproduces the qubit square") {
    const PmsSquare sq = build_square(pauli_triple());
    CHECK(sq.local_dim == 2);
    CHECK(max_abs_diff(sq.entries[0][0], tensor(sigma_x(), Matrix::identity(2))) == 0.0);
    CHECK(max_abs_diff(sq.entries[0][1], tensor(Matrix::identity(2), sigma_x())) == 0.0);
    CHECK(max_abs_diff(sq.entries[0][2], tensor(sigma_x(), sigma_x())) == 0.0);
    CHECK(max_abs_diff(sq.entries[1][0], tensor(Matrix::identity(2), sigma_z())) == 0.0);
    CHECK(max_abs_diff(sq.entries[1][1], tensor(sigma_z(), Matrix::identity(2))) == 0.0);
    CHECK(max_abs_diff(sq.entries[1][2], tensor(sigma_z(), sigma_z())) == 0.0);
    CHECK(max_abs_diff(sq.entries[2][0], tensor(sigma_x(), sigma_z())) == 0.0);
    CHECK(max_abs_diff(sq.entries[2][1], tensor(sigma_z(), sigma_x())) == 0.0);
    CHECK(max_abs_diff(sq.entries[2][2], tensor(sigma_y(), sigma_y())) < 1e-14);
}

TEST_CASE("every square entry is unitary") {
    const PmsSquare sq = build_square(pauli_triple());
    for (const auto& row : sq.entries) {
        for (const Matrix& a : row) {
            CHECK(a.rows() == 4);
            CHECK(max_abs_diff(a.dagger() * a, Matrix::identity(4)) < 1e-9);
        }
    }
}

TEST_CASE("the last column of the Pauli square multiplies to minus identity") {
    const PmsSquare sq = build_square(pauli_triple());
    const Matrix prod = sq.entries[0][2] * sq.entries[1][2] * sq.entries[2][2];
    CHECK(max_abs_diff(prod, -Matrix::identity(4)) < 1e-14);
}

TEST_CASE("verify_compatibility passes the Pauli square at machine precision") {
    const CompatibilityReport r = verify_compatibility(build_square(pauli_triple()), 1e-12);
    CHECK(r.pass);
    for (double res : r.row_residuals) {
        CHECK(res <= 1e-12);
    }
    for (double res : r.col_residuals) {
        CHECK(res <= 1e-12);
    }
}

TEST_CASE("verify_compatibility flags a corrupted square") {
    const CompatibilityReport r = verify_compatibility(corrupted_pauli_square(1e-3), 1e-9);
    CHECK(!r.pass);
}

TEST_CASE("anti-commutation alone makes all six contexts compatible") {
    // In row 3 and the columns the anti-commutators cancel pairwise across
    // the tensor factors, so any valid pair yields commuting contexts.
    const PmsTriple t = random_valid_triple(6, 123, +1);
    const CompatibilityReport r = verify_compatibility(build_square(t), 1e-9);
    CHECK(r.pass);
    const ProductReport p = row_col_products(build_square(t));
    CHECK(p.max_residual <= 1e-9);
}

TEST_CASE("row and column products match the +1/+1/-1 pattern") {
    for (const char* name : {"pauli", "weyl:4"}) {
        const PmsSquare sq = build_square(*make_catalog_entry(name).triple);
        const ProductReport r = row_col_products(sq);
        CHECK(r.max_residual <= 1e-12);
    }
}

TEST_CASE("the sign branch does not alter the context product pattern") {
    const PmsTriple plus = complete_triple(UnitaryOperator::certify(sigma_z()),
                                           UnitaryOperator::certify(sigma_x()), +1);
    const PmsTriple minus = complete_triple(UnitaryOperator::certify(sigma_z()),
                                            UnitaryOperator::certify(sigma_x()), -1);
    CHECK(row_col_products(build_square(plus)).max_residual <= 1e-12);
    CHECK(row_col_products(build_square(minus)).max_residual <= 1e-12);
}

TEST_CASE("expectation_re_x is 6 on the maximally mixed state") {
    const PmsSquare sq = build_square(pauli_triple());
    Matrix mixed = Matrix::identity(4);
    mixed *= cd(0.25, 0);
    const ViolationReport r = expectation_re_x(sq, DensityMatrix{mixed});
    CHECK(r.total == doctest::Approx(6.0).epsilon(1e-12));
    CHECK(r.evaluation_path == "direct");
}

TEST_CASE("expectation_re_x is 6 on the |00> state") {
    const PmsSquare sq = build_square(pauli_triple());
    StateVector psi;
    psi.amplitudes = {cd(1, 0), cd(0, 0), cd(0, 0), cd(0, 0)};
    const ViolationReport r = expectation_re_x(sq, DensityMatrix::from_pure(psi));
    CHECK(r.total == doctest::Approx(6.0).epsilon(1e-12));
}

TEST_CASE("negating the corner entry flips exactly R3 and C3, giving total 2") {
    PmsSquare sq = build_square(pauli_triple());
    sq.entries[2][2] = -sq.entries[2][2];
    Matrix mixed = Matrix::identity(4);
    mixed *= cd(0.25, 0);
    const ViolationReport r = expectation_re_x(sq, DensityMatrix{mixed});
    CHECK(r.rows[0] == doctest::Approx(1.0));
    CHECK(r.rows[1] == doctest::Approx(1.0));
    CHECK(r.rows[2] == doctest::Approx(-1.0));
    CHECK(r.cols[0] == doctest::Approx(1.0));
    CHECK(r.cols[1] == doctest::Approx(1.0));
    CHECK(r.cols[2] == doctest::Approx(1.0));
    CHECK(r.total == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("hermitian parts of Hermitian entries have no imaginary component") {
    const PmsSquare sq = build_square(pauli_triple());
    const Matrix a = sq.entries[0][0];  // sigma_x (x) 1 is Hermitian
    const Matrix imag_part = cd(0, -0.5) * (a - a.dagger());
    CHECK(imag_part.max_abs() == 0.0);
}

TEST_CASE("direct and hermitian paths agree on Haar states of the Pauli square") {
    const PmsSquare sq = build_square(pauli_triple());
    for (std::uint64_t s = 0; s < 20; ++s) {
        const DensityMatrix rho = DensityMatrix::from_pure(haar_state(4, 1000 + s));
        const ViolationReport d = expectation_re_x(sq, rho);
        const ViolationReport h = expectation_re_x_hermitian(sq, rho);
        CHECK(std::abs(d.total - h.total) < 1e-9);
        CHECK(d.total == doctest::Approx(6.0).epsilon(1e-10));
    }
}

TEST_CASE("direct and hermitian paths agree on mixed states of the d=4 shift square") {
    const PmsSquare sq = build_square(*make_catalog_entry("weyl:4").triple);
    for (std::uint64_t s = 0; s < 20; ++s) {
        const DensityMatrix rho = random_density(16, 16, 2000 + s);
        const ViolationReport d = expectation_re_x(sq, rho);
        const ViolationReport h = expectation_re_x_hermitian(sq, rho);
        CHECK(std::abs(d.total - h.total) < 1e-9);
        CHECK(d.total == doctest::Approx(6.0).epsilon(1e-10));
    }
}

TEST_CASE("unitarity makes the squared Hermitian parts sum to the identity") {
    const PmsSquare sq = build_square(*make_catalog_entry("weyl:4").triple);
    for (const auto& row : sq.entries) {
        for (const Matrix& a : row) {
            const Matrix re = cd(0.5, 0) * (a + a.dagger());
            const Matrix im = cd(0, -0.5) * (a - a.dagger());
            CHECK(max_abs_diff(re * re + im * im, Matrix::identity(a.rows())) < 1e-10);
        }
    }
}

TEST_CASE("the imaginary-part witness vanishes on valid squares") {
    // Context products of a valid square are +-1, so the imaginary
    // combination is reported alongside the real one but sits at zero.
    const PmsSquare sq = build_square(*make_catalog_entry("weyl:4").triple);
    for (std::uint64_t s = 0; s < 5; ++s) {
        const DensityMatrix rho = DensityMatrix::from_pure(haar_state(16, 400 + s));
        CHECK(std::abs(expectation_re_x(sq, rho).imag_total) < 1e-10);
        CHECK(std::abs(expectation_re_x_hermitian(sq, rho).imag_total) < 1e-10);
    }
}

TEST_CASE("scan_states sees a state-independent value of 6") {
    const ScanSummary s = scan_states(build_square(pauli_triple()), 50, 20, 7);
    CHECK(s.spread() <= 1e-9);
    CHECK(s.mean_direct == doctest::Approx(6.0).epsilon(1e-10));
    CHECK(s.max_hermitian - s.min_hermitian <= 1e-9);
    CHECK(s.rows.size() == 70);
}

TEST_CASE("scan_states exposes the state dependence of a corrupted square") {
    // The value 6 is the quantum maximum, so the scan deviation is second
    // order in the corruption; a 0.2 kick moves the spread well past 1e-3.
    const ScanSummary s = scan_states(corrupted_pauli_square(0.2), 30, 10, 11);
    CHECK(s.spread() > 1e-3);
}

TEST_CASE("scan_states is deterministic in the seed") {
    const PmsSquare sq = build_square(pauli_triple());
    const ScanSummary a = scan_states(sq, 5, 5, 31);
    const ScanSummary b = scan_states(sq, 5, 5, 31);
    for (std::size_t i = 0; i < a.rows.size(); ++i) {
        CHECK(a.rows[i].total_direct == b.rows[i].total_direct);
        CHECK(a.rows[i].total_hermitian == b.rows[i].total_hermitian);
    }
}

TEST_CASE("the two evaluation routes genuinely differ once contexts stop commuting") {
    // Direct products and the printed expansion only coincide through the
    // commutation structure; a raw corruption of u3 must split them apart.
    const PmsTriple t = pauli_triple();
    Matrix bad = t.u3.matrix();
    bad(0, 0) += cd(0.3, 0.1);
    bad(1, 0) += cd(0.05, 0.2);
    const PmsSquare sq = build_square_unchecked(t.u1.matrix(), t.u2.matrix(), bad, t.sign);
    double worst = 0.0;
    for (std::uint64_t s = 0; s < 20; ++s) {
        const DensityMatrix rho = DensityMatrix::from_pure(haar_state(4, 600 + s));
        worst = std::max(worst, std::abs(expectation_re_x(sq, rho).total -
                                         expectation_re_x_hermitian(sq, rho).total));
    }
    CHECK(worst > 1e-3);
}

TEST_CASE("expectation rejects a state of the wrong dimension") {
    const PmsSquare sq = build_square(pauli_triple());
    CHECK_THROWS_AS(expectation_re_x(sq, random_density(3, 3, 1)), std::invalid_argument);
}

TEST_CASE("product-state evaluation matches the bipartite machinery") {
    const PmsTriple t = pauli_triple();
    const PmsSquare sq = build_square(t);
    const StateVector a = haar_state(2, 5);
    const StateVector b = haar_state(2, 6);
    StateVector joint;
    joint.amplitudes.resize(4);
    for (std::size_t i = 0; i < 2; ++i) {
        for (std::size_t j = 0; j < 2; ++j) {
            joint.amplitudes[2 * i + j] = a.amplitudes[i] * b.amplitudes[j];
        }
    }
    const ViolationReport direct = expectation_re_x(sq, DensityMatrix::from_pure(joint));
    const ViolationReport product =
        expectation_re_x_product(t.u1.matrix(), t.u2.matrix(), t.u3.matrix(), a, b);
    CHECK(std::abs(direct.total - product.total) < 1e-12);
    const ViolationReport ph =
        expectation_re_x_product(t.u1.matrix(), t.u2.matrix(), t.u3.matrix(), a, b, "hermitian");
    CHECK(std::abs(direct.total - ph.total) < 1e-12);
}
