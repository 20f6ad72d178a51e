#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "contextlab/catalog.hpp"
#include "contextlab/pms.hpp"
#include "test_helpers.hpp"

using namespace contextlab;
using namespace test_helpers;

namespace {
constexpr double kPi = std::numbers::pi;
const double kRootHalfPi = std::sqrt(kPi / 2.0);
}

TEST_CASE("pauli_triple completes sigma_x, sigma_z with sigma_y") {
    const PmsTriple t = pauli_triple();
    CHECK(max_abs_diff(t.u1.matrix(), sigma_x()) == 0.0);
    CHECK(max_abs_diff(t.u2.matrix(), sigma_z()) == 0.0);
    CHECK(max_abs_diff(t.u3.matrix(), sigma_y()) < 1e-14);
    CHECK(t.sign == -1);

    const ScanSummary s = scan_states(build_square(t), 10, 5, 1);
    CHECK(s.spread() <= 1e-9);
    CHECK(s.mean_direct == doctest::Approx(6.0).epsilon(1e-10));

    const CanonicalForm f = canonical_form(t);
    CHECK(f.block_count() == 1);
    CHECK(f.block_multiplicities[0] == 1);
    CHECK(std::abs(f.lambdas[0] - cd(1, 0)) < 1e-10);
    CHECK(std::abs(f.lambda_primes[0] - cd(1, 0)) < 1e-10);
}

TEST_CASE("spin one-half gives the i sigma rotations") {
    const PmsTriple t = spin_rotation_triple(SpinParams{1});
    CHECK(max_abs_diff(t.u1.matrix(), cd(0, 1) * sigma_x()) < 1e-14);
    CHECK(max_abs_diff(t.u2.matrix(), cd(0, 1) * sigma_y()) < 1e-14);
    CHECK(t.dim() == 2);
    CHECK(anticommutator(t.u1.matrix(), t.u2.matrix()).max_abs() < 1e-14);
}

TEST_CASE("integer spins are refused with the multiplicity defect") {
    for (unsigned two_s : {2u, 4u}) {
        try {
            spin_rotation_triple(SpinParams{two_s});
            FAIL("expected refusal for two_s = " << two_s);
        } catch (const RefusalError& e) {
            CHECK(e.defect.find("multiplicity mismatch") != std::string::npos);
        }
    }
}

TEST_CASE("spin rotations away from pi are refused") {
    SpinParams p{1};
    p.t1 = kPi / 2.0;
    CHECK_THROWS_AS(spin_rotation_triple(p), RefusalError);
}

TEST_CASE("spin three-halves violates maximally") {
    const PmsTriple t = spin_rotation_triple(SpinParams{3});
    CHECK(t.dim() == 4);
    const ScanSummary s = scan_states(build_square(t), 10, 5, 3);
    CHECK(s.spread() <= 1e-9);
    CHECK(std::abs(s.mean_direct - 6.0) <= 1e-9);
}

TEST_CASE("the completed spin operator differs from exp(i pi Sz) by a phase") {
    for (unsigned two_s : {1u, 3u}) {
        const cd phase = spin_r3_phase(SpinParams{two_s});
        CHECK(std::abs(std::abs(phase) - 1.0) < 1e-9);   // pure global phase
        CHECK(std::abs(phase - cd(0, -1)) < 1e-9);       // measured: -i
    }
}

TEST_CASE("one parity block is the qubit triple in the z basis") {
    const PmsTriple t = parity_pseudospin_triple(1);
    CHECK(max_abs_diff(t.u1.matrix(), sigma_z()) == 0.0);
    CHECK(max_abs_diff(t.u2.matrix(), sigma_x()) == 0.0);
    CHECK(max_abs_diff(t.u3.matrix(), sigma_y()) == 0.0);
}

TEST_CASE("parity pseudospins have exactly zero residuals") {
    const PmsTriple t = parity_pseudospin_triple(8);
    CHECK(t.dim() == 16);
    CHECK(t.residuals.anticommutator_12 == 0.0);
    CHECK(t.residuals.anticommutator_13 == 0.0);
    CHECK(t.residuals.anticommutator_23 == 0.0);
    CHECK(t.residuals.product_identity == 0.0);
}

TEST_CASE("parity canonical form is one block of multiplicity num_blocks") {
    const PmsTriple t = parity_pseudospin_triple(8);
    const CanonicalForm f = canonical_form(t);
    REQUIRE(f.block_count() == 1);
    CHECK(f.block_multiplicities[0] == 8);
    CHECK(std::abs(f.lambdas[0] - cd(1, 0)) < 1e-10);
}

TEST_CASE("weyl d=2 reduces to sigma_z, sigma_x, sigma_y") {
    const PmsTriple t = weyl_triple(WeylParams{2});
    CHECK(max_abs_diff(t.u1.matrix(), sigma_z()) < 1e-12);
    CHECK(max_abs_diff(t.u2.matrix(), sigma_x()) < 1e-12);
    CHECK(max_abs_diff(t.u3.matrix(), sigma_y()) < 1e-12);

    // Same operators the partner construction produces for sigma_z with unit
    // weights, so the clock-shift family and the completion agree at d=2.
    const UnitaryOperator partner = construct_partner(UnitaryOperator::certify(sigma_z()));
    const PmsTriple completed =
        complete_triple(UnitaryOperator::certify(sigma_z()), partner, +1);
    CHECK(max_abs_diff(t.u1.matrix(), completed.u1.matrix()) < 1e-12);
    CHECK(max_abs_diff(t.u2.matrix(), completed.u2.matrix()) < 1e-12);
    CHECK(max_abs_diff(t.u3.matrix(), completed.u3.matrix()) < 1e-12);
}

TEST_CASE("weyl squares violate maximally for even d") {
    for (std::size_t d : {4, 8}) {
        const PmsTriple t = weyl_triple(WeylParams{d});
        const ScanSummary s = scan_states(build_square(t), 8, 4, 5);
        CHECK(s.spread() <= 1e-9);
        CHECK(std::abs(s.mean_direct - 6.0) <= 1e-9);
    }
}

TEST_CASE("weyl canonical form at d=4 covers the dimension") {
    const CanonicalForm f = canonical_form(weyl_triple(WeylParams{4}));
    std::size_t total = 0;
    for (std::size_t k : f.block_multiplicities) {
        total += 2 * k;
    }
    CHECK(total == 4);
    // Either one doubly degenerate block or two singleton blocks, depending
    // on how the partner mixes the +1 eigenspace of Z^2.
    const bool one_block = f.block_count() == 1 && f.block_multiplicities[0] == 2;
    const bool two_blocks = f.block_count() == 2 && f.block_multiplicities[0] == 1 &&
                            f.block_multiplicities[1] == 1;
    CHECK((one_block || two_blocks));
}

TEST_CASE("weyl:2 and pauli reduce to the same canonical data") {
    const CanonicalForm w = canonical_form(weyl_triple(WeylParams{2}));
    const CanonicalForm p = canonical_form(pauli_triple());
    REQUIRE(w.block_count() == 1);
    REQUIRE(p.block_count() == 1);
    CHECK(w.block_multiplicities[0] == p.block_multiplicities[0]);
    CHECK(std::abs(w.lambdas[0] - p.lambdas[0]) < 1e-12);
    CHECK(std::abs(w.lambda_primes[0] - p.lambda_primes[0]) < 1e-12);
}

TEST_CASE("odd qudit dimensions are refused with pairing defects") {
    for (std::size_t d : {3, 5, 7, 9, 11, 13, 15}) {
        try {
            weyl_triple(WeylParams{d});
            FAIL("expected refusal for d = " << d);
        } catch (const RefusalError& e) {
            CHECK(!e.defect.empty());
        }
    }
    for (unsigned two_s : {6u, 8u, 10u, 12u, 14u}) {
        CHECK_THROWS_AS(spin_rotation_triple(SpinParams{two_s}), RefusalError);
    }
}

TEST_CASE("every finite catalog triple passes all structural checks jointly") {
    for (const char* name : {"pauli", "spin:1", "spin:3", "parity:8", "weyl:4", "weyl:8"}) {
        const PmsTriple t = *make_catalog_entry(name).triple;
        const AlgebraReport algebra = verify_algebra(t, 1e-9);
        const PmsSquare sq = build_square(t);
        const CompatibilityReport compat = verify_compatibility(sq, 1e-9);
        const ProductReport products = row_col_products(sq);
        CHECK(algebra.pass);
        CHECK(compat.pass);
        CHECK(products.max_residual <= 1e-9);
    }
}

TEST_CASE("clock and shift obey ZX = w XZ") {
    for (std::size_t d : {2, 3, 4, 5}) {
        const Matrix z = weyl_clock(d);
        const Matrix x = weyl_shift(d);
        const cd w = std::polar(1.0, 2.0 * kPi / double(d));
        CHECK(max_abs_diff(z * x, w * (x * z)) < 1e-14);
    }
}

TEST_CASE("displacement operators stay unitary after truncation") {
    const UnitaryOperator d = displacement_operator(cd(kRootHalfPi, 0), 32);
    CHECK(d.unitarity_residual() < 1e-12);
}

TEST_CASE("fock displacement triple satisfies the triangle data") {
    FockParams p;
    p.alpha1 = cd(kRootHalfPi, 0);
    p.alpha2 = cd(0, kRootHalfPi);
    p.cutoff = 32;
    const ApproxTriple t = fock_displacement_triple(p);
    CHECK(t.sign == -1);  // Im(alpha1 conj(alpha2)) = -pi/2
    CHECK(std::abs(t.alphas[2] - cd(-kRootHalfPi, -kRootHalfPi)) < 1e-14);
    CHECK(t.quality.max_unitarity_residual < 1e-12);
    CHECK(asadian_check(t.alphas[0], t.alphas[1], t.alphas[2]).ok);
}

TEST_CASE("fock vacuum expectation reaches 6 well inside the cutoff") {
    FockParams p;
    p.alpha1 = cd(kRootHalfPi, 0);
    p.alpha2 = cd(0, kRootHalfPi);
    p.cutoff = 32;
    const ApproxTriple t = fock_displacement_triple(p);
    StateVector vac;
    vac.amplitudes.assign(p.cutoff, cd(0, 0));
    vac.amplitudes[0] = cd(1, 0);
    const ViolationReport r = expectation_re_x_product(t.u1, t.u2, t.u3, vac, vac);
    CHECK(std::abs(r.total - 6.0) < 1e-6);
}

TEST_CASE("truncation quality improves when the cutoff doubles") {
    FockParams p;
    p.alpha1 = cd(kRootHalfPi, 0);
    p.alpha2 = cd(0, kRootHalfPi);
    p.cutoff = 16;
    const double r16 = fock_displacement_triple(p).quality.max_anticommutator();
    p.cutoff = 32;
    const double r32 = fock_displacement_triple(p).quality.max_anticommutator();
    CHECK(r32 <= r16);
}

TEST_CASE("fock refuses a violated triangle condition") {
    FockParams p;
    p.alpha1 = cd(1, 0);
    p.alpha2 = cd(1, 0);
    p.cutoff = 32;
    CHECK_THROWS_AS(fock_displacement_triple(p), RefusalError);
}

TEST_CASE("fock rejects tiny cutoffs and warns about marginal ones") {
    FockParams p;
    p.alpha1 = cd(kRootHalfPi, 0);
    p.alpha2 = cd(0, kRootHalfPi);
    p.cutoff = 4;
    CHECK_THROWS_AS(fock_displacement_triple(p), std::invalid_argument);
    p.cutoff = 8;  // |alpha3|^2 = pi > 8/4
    CHECK(!fock_displacement_triple(p).warning.empty());
}

TEST_CASE("asadian_check accepts the rectangular reference triangle") {
    const cd a1(kRootHalfPi, 0);
    const cd a2(0, kRootHalfPi);
    const cd a3 = -a1 - a2;
    CHECK(asadian_check(a1, a2, a3).ok);
    // permutation stability
    CHECK(asadian_check(a2, a3, a1).ok);
    CHECK(asadian_check(a3, a1, a2).ok);
    CHECK(asadian_check(a2, a1, a3).ok);
}

TEST_CASE("asadian_check rejects degenerate and perturbed triples") {
    CHECK(!asadian_check(cd(0, 0), cd(0, 0), cd(0, 0)).ok);
    const cd a1(kRootHalfPi, 0);
    const cd a2(0, kRootHalfPi);
    CHECK(!asadian_check(a1, a2, -a1 - a2 + cd(1e-6, 0)).ok);          // sum breaks
    CHECK(!asadian_check(a1, cd(0, kRootHalfPi + 1e-6), -a1 - a2).ok); // area breaks
}

TEST_CASE("catalog names parse to the right families") {
    CHECK(make_catalog_entry("pauli").triple.has_value());
    CHECK(make_catalog_entry("spin:3").triple->dim() == 4);
    CHECK(make_catalog_entry("parity:4").triple->dim() == 8);
    CHECK(make_catalog_entry("weyl:6").triple->dim() == 6);
    const CatalogEntry fock = make_catalog_entry("fock:1.2533141373155003,0,0,1.2533141373155003,16");
    CHECK(fock.approx.has_value());
    CHECK(fock.approx->cutoff == 16);
    CHECK_THROWS_AS(make_catalog_entry("nonsense"), ParseError);
    CHECK_THROWS_AS(make_catalog_entry("spin:abc"), ParseError);
    CHECK_THROWS_AS(make_catalog_entry("fock:1,2,3"), ParseError);
    CHECK_THROWS_AS(make_catalog_entry("spin:2"), RefusalError);
    CHECK_THROWS_AS(make_catalog_entry("weyl:5"), RefusalError);
}
