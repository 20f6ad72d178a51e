#ifndef CONTEXTLAB_MATRIX_HPP
#define CONTEXTLAB_MATRIX_HPP

#include <cstddef>
#include <initializer_list>
#include <vector>

#include "contextlab/types.hpp"

namespace contextlab {

/// Dense complex matrix, row-major. Immutable-by-convention value type: the
/// library builds new matrices instead of mutating shared ones, so instances
/// are safe to share across threads.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols, cd(0.0, 0.0)) {}
    Matrix(std::initializer_list<std::initializer_list<cd>> init);

    static Matrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }

    cd& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const cd& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    const std::vector<cd>& data() const { return data_; }
    std::vector<cd>& data() { return data_; }

    Matrix dagger() const;
    cd trace() const;
    double max_abs() const;
    double frobenius_norm() const;
    bool all_finite() const;

    Matrix& operator+=(const Matrix& other);
    Matrix& operator-=(const Matrix& other);
    Matrix& operator*=(cd scalar);

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<cd> data_;
};

Matrix operator+(const Matrix& a, const Matrix& b);
Matrix operator-(const Matrix& a, const Matrix& b);
Matrix operator*(const Matrix& a, const Matrix& b);
Matrix operator*(cd scalar, const Matrix& m);
Matrix operator*(const Matrix& m, cd scalar);
Matrix operator-(const Matrix& m);

/// ||a - b||_max; the matrices must have equal shape.
double max_abs_diff(const Matrix& a, const Matrix& b);

/// a*b + b*a
Matrix anticommutator(const Matrix& a, const Matrix& b);

/// a*b - b*a
Matrix commutator(const Matrix& a, const Matrix& b);

/// Matrix-vector product.
std::vector<cd> mat_vec(const Matrix& m, const std::vector<cd>& v);

/// Conjugated inner product <a|b>.
cd inner(const std::vector<cd>& a, const std::vector<cd>& b);

double norm(const std::vector<cd>& v);

} // namespace contextlab

#endif
