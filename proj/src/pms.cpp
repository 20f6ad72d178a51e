#include "contextlab/pms.hpp"

#include <algorithm>
#include <cmath>

#include "contextlab/parallel.hpp"

namespace contextlab {

namespace {

/// Complex trace tr(rho * m).
cd state_trace(const DensityMatrix& rho, const Matrix& m) {
    cd s = 0.0;
    const std::size_t d = rho.dim();
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < d; ++j) {
            s += rho.matrix(i, j) * m(j, i);
        }
    }
    return s;
}

void hermitian_parts(const Matrix& a, Matrix& re, Matrix& im) {
    const Matrix ad = a.dagger();
    re = cd(0.5, 0.0) * (a + ad);
    im = cd(0.0, -0.5) * (a - ad);
}

ViolationReport combine(const std::array<cd, 3>& rows, const std::array<cd, 3>& cols,
                        const std::string& path) {
    ViolationReport rep;
    rep.evaluation_path = path;
    for (std::size_t i = 0; i < 3; ++i) {
        rep.rows[i] = rows[i].real();
        rep.cols[i] = cols[i].real();
    }
    rep.total = rep.rows[0] + rep.rows[1] + rep.rows[2] + rep.cols[0] + rep.cols[1] - rep.cols[2];
    rep.imag_total = rows[0].imag() + rows[1].imag() + rows[2].imag() + cols[0].imag() +
                     cols[1].imag() - cols[2].imag();
    return rep;
}

} // namespace

PmsSquare build_square(const PmsTriple& triple) {
    return build_square_unchecked(triple.u1.matrix(), triple.u2.matrix(), triple.u3.matrix(),
                                  triple.sign);
}

PmsSquare build_square_unchecked(const Matrix& u1, const Matrix& u2, const Matrix& u3,
                                 int sign) {
    const std::size_t d = u1.rows();
    const Matrix eye = Matrix::identity(d);
    const Matrix u1d = u1.dagger();
    const Matrix u2d = u2.dagger();

    PmsSquare sq;
    sq.local_dim = d;
    sq.sign = sign;
    sq.entries[0] = {tensor(u1d, eye), tensor(eye, u1d), tensor(u1, u1)};
    sq.entries[1] = {tensor(eye, u2d), tensor(u2d, eye), tensor(u2, u2)};
    sq.entries[2] = {tensor(u1, u2), tensor(u2, u1), tensor(u3, u3)};
    return sq;
}

CompatibilityReport verify_compatibility(const PmsSquare& square, double tol) {
    CompatibilityReport rep;
    rep.tolerance = tol;
    const auto& a = square.entries;
    for (std::size_t j = 0; j < 3; ++j) {
        rep.row_residuals[j] = std::max({commutator(a[j][0], a[j][1]).max_abs(),
                                         commutator(a[j][0], a[j][2]).max_abs(),
                                         commutator(a[j][1], a[j][2]).max_abs()});
        rep.col_residuals[j] = std::max({commutator(a[0][j], a[1][j]).max_abs(),
                                         commutator(a[0][j], a[2][j]).max_abs(),
                                         commutator(a[1][j], a[2][j]).max_abs()});
    }
    rep.pass = true;
    for (std::size_t j = 0; j < 3; ++j) {
        rep.pass = rep.pass && rep.row_residuals[j] <= tol && rep.col_residuals[j] <= tol;
    }
    return rep;
}

ProductReport row_col_products(const PmsSquare& square) {
    ProductReport rep;
    const auto& a = square.entries;
    const Matrix eye = Matrix::identity(square.dim());
    for (std::size_t j = 0; j < 3; ++j) {
        rep.row_residuals[j] = max_abs_diff(a[j][0] * a[j][1] * a[j][2], eye);
    }
    rep.col_residuals[0] = max_abs_diff(a[0][0] * a[1][0] * a[2][0], eye);
    rep.col_residuals[1] = max_abs_diff(a[0][1] * a[1][1] * a[2][1], eye);
    rep.col_residuals[2] = max_abs_diff(a[0][2] * a[1][2] * a[2][2], -eye);
    rep.max_residual = std::max({rep.row_residuals[0], rep.row_residuals[1],
                                 rep.row_residuals[2], rep.col_residuals[0],
                                 rep.col_residuals[1], rep.col_residuals[2]});
    return rep;
}

ContextOperators direct_contexts(const PmsSquare& square) {
    ContextOperators ctx;
    const auto& a = square.entries;
    for (std::size_t j = 0; j < 3; ++j) {
        ctx.rows[j] = a[j][0] * a[j][1] * a[j][2];
        ctx.cols[j] = a[0][j] * a[1][j] * a[2][j];
    }
    return ctx;
}

ContextOperators hermitian_contexts(const PmsSquare& square) {
    // Split every entry into Hermitian parts A = A_R + i A_I and expand the
    // context products the way one would for commuting scalars:
    //   cosine: (R1 R2 - I1 I2) R3 - (I1 R2 + R1 I2) I3
    //   sine:   (I1 R2 + R1 I2) R3 + (R1 R2 - I1 I2) I3
    std::array<std::array<Matrix, 3>, 3> re;
    std::array<std::array<Matrix, 3>, 3> im;
    for (std::size_t j = 0; j < 3; ++j) {
        for (std::size_t k = 0; k < 3; ++k) {
            hermitian_parts(square.entries[j][k], re[j][k], im[j][k]);
        }
    }
    auto expand = [](const Matrix& r1, const Matrix& i1, const Matrix& r2, const Matrix& i2,
                     const Matrix& r3, const Matrix& i3, Matrix& cos_part, Matrix& sin_part) {
        const Matrix rr = r1 * r2 - i1 * i2;
        const Matrix ri = i1 * r2 + r1 * i2;
        cos_part = rr * r3 - ri * i3;
        sin_part = ri * r3 + rr * i3;
    };
    ContextOperators ctx;
    ctx.split = true;
    for (std::size_t j = 0; j < 3; ++j) {
        expand(re[j][0], im[j][0], re[j][1], im[j][1], re[j][2], im[j][2], ctx.rows[j],
               ctx.rows_sin[j]);
        expand(re[0][j], im[0][j], re[1][j], im[1][j], re[2][j], im[2][j], ctx.cols[j],
               ctx.cols_sin[j]);
    }
    return ctx;
}

ViolationReport evaluate_contexts(const ContextOperators& ctx, const DensityMatrix& state,
                                  const std::string& path) {
    if (state.dim() != ctx.rows[0].rows()) {
        throw std::invalid_argument("violation evaluation: state dimension mismatch");
    }
    std::array<cd, 3> rows;
    std::array<cd, 3> cols;
    for (std::size_t j = 0; j < 3; ++j) {
        if (ctx.split) {
            rows[j] = cd(state_trace(state, ctx.rows[j]).real(),
                         state_trace(state, ctx.rows_sin[j]).real());
            cols[j] = cd(state_trace(state, ctx.cols[j]).real(),
                         state_trace(state, ctx.cols_sin[j]).real());
        } else {
            rows[j] = state_trace(state, ctx.rows[j]);
            cols[j] = state_trace(state, ctx.cols[j]);
        }
    }
    return combine(rows, cols, path);
}

ViolationReport expectation_re_x(const PmsSquare& square, const DensityMatrix& state) {
    return evaluate_contexts(direct_contexts(square), state, "direct");
}

ViolationReport expectation_re_x_hermitian(const PmsSquare& square, const DensityMatrix& state) {
    return evaluate_contexts(hermitian_contexts(square), state, "hermitian");
}

ViolationReport expectation_re_x_product(const Matrix& u1, const Matrix& u2, const Matrix& u3,
                                         const StateVector& psi_a, const StateVector& psi_b,
                                         const std::string& path) {
    const std::size_t d = u1.rows();
    if (psi_a.dim() != d || psi_b.dim() != d) {
        throw std::invalid_argument("product-state evaluation: state dimension mismatch");
    }
    if (path != "direct" && path != "hermitian") {
        throw std::invalid_argument("product-state evaluation: unknown path '" + path + "'");
    }
    auto expect = [](const Matrix& m, const StateVector& psi) {
        return inner(psi.amplitudes, mat_vec(m, psi.amplitudes));
    };
    const Matrix u1d = u1.dagger();
    const Matrix u2d = u2.dagger();
    // Per-context single-mode products in slot order, plus the slot-wise
    // adjoint products the Hermitian route needs (note: not the reversed
    // adjoint (F1 F2 F3)').
    const Matrix p_11 = u1d * u1;  // slots (U1', 1, U1) and (1, U1', U1)
    const Matrix t_11 = u1 * u1d;
    const Matrix p_22 = u2d * u2;
    const Matrix t_22 = u2 * u2d;
    const Matrix p_123 = u1 * u2 * u3;
    const Matrix t_123 = u1d * u2d * u3.dagger();
    const Matrix p_213 = u2 * u1 * u3;
    const Matrix t_213 = u2d * u1d * u3.dagger();

    auto context = [&](const Matrix& ma, const Matrix& ta, const Matrix& mb, const Matrix& tb) {
        const cd plain = expect(ma, psi_a) * expect(mb, psi_b);
        if (path == "direct") {
            return plain;
        }
        // The printed cosine/sine expansions collapse to (M + M~)/2 and
        // (M - M~)/(2i) with M~ the slot-wise adjoint product, so both
        // factorize across the parties.
        const cd tilde = expect(ta, psi_a) * expect(tb, psi_b);
        const cd cos_val = (plain + tilde) * 0.5;
        const cd sin_val = (plain - tilde) * cd(0.0, -0.5);
        return cd(cos_val.real(), sin_val.real());
    };

    std::array<cd, 3> rows;
    std::array<cd, 3> cols;
    rows[0] = context(p_11, t_11, p_11, t_11);
    rows[1] = context(p_22, t_22, p_22, t_22);
    rows[2] = context(p_123, t_123, p_213, t_213);
    cols[0] = context(p_11, t_11, p_22, t_22);
    cols[1] = context(p_22, t_22, p_11, t_11);
    cols[2] = context(p_123, t_123, p_123, t_123);

    ViolationReport rep = combine(rows, cols, path);
    rep.state_kind = "product";
    return rep;
}

ScanSummary scan_states(const PmsSquare& square, std::size_t n_pure, std::size_t n_mixed,
                        std::uint64_t seed) {
    const ContextOperators dctx = direct_contexts(square);
    const ContextOperators hctx = hermitian_contexts(square);
    const std::size_t dim = square.dim();
    const std::size_t n = n_pure + n_mixed;

    ScanSummary summary;
    summary.n_pure = n_pure;
    summary.n_mixed = n_mixed;
    summary.seed = seed;
    summary.rows.resize(n);

    parallel_for(n, [&](std::size_t i) {
        const bool pure = i < n_pure;
        const std::uint64_t state_seed = seed + i;
        DensityMatrix rho = pure ? DensityMatrix::from_pure(haar_state(dim, state_seed))
                                 : random_density(dim, dim, state_seed);
        ViolationReport direct = evaluate_contexts(dctx, rho, "direct");
        ViolationReport herm = evaluate_contexts(hctx, rho, "hermitian");
        summary.rows[i] = ScanRow{i, pure ? "pure" : "mixed", state_seed, direct.total,
                                  herm.total};
    });

    if (n == 0) {
        return summary;
    }
    summary.min_direct = summary.max_direct = summary.rows[0].total_direct;
    summary.min_hermitian = summary.max_hermitian = summary.rows[0].total_hermitian;
    double sd = 0.0;
    double sh = 0.0;
    for (const ScanRow& row : summary.rows) {
        summary.min_direct = std::min(summary.min_direct, row.total_direct);
        summary.max_direct = std::max(summary.max_direct, row.total_direct);
        summary.min_hermitian = std::min(summary.min_hermitian, row.total_hermitian);
        summary.max_hermitian = std::max(summary.max_hermitian, row.total_hermitian);
        sd += row.total_direct;
        sh += row.total_hermitian;
    }
    summary.mean_direct = sd / double(n);
    summary.mean_hermitian = sh / double(n);
    return summary;
}

} // namespace contextlab
