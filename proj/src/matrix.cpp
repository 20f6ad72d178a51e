#include "contextlab/matrix.hpp"

#include <cmath>

namespace contextlab {

Matrix::Matrix(std::initializer_list<std::initializer_list<cd>> init) {
    rows_ = init.size();
    cols_ = rows_ ? init.begin()->size() : 0;
    data_.reserve(rows_ * cols_);
    for (const auto& row : init) {
        if (row.size() != cols_) {
            throw std::invalid_argument("matrix initializer rows have unequal lengths");
        }
        data_.insert(data_.end(), row.begin(), row.end());
    }
}

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        m(i, i) = cd(1.0, 0.0);
    }
    return m;
}

Matrix Matrix::dagger() const {
    Matrix out(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = 0; j < cols_; ++j) {
            out(j, i) = std::conj((*this)(i, j));
        }
    }
    return out;
}

cd Matrix::trace() const {
    if (!is_square()) {
        throw std::invalid_argument("trace of non-square matrix");
    }
    cd t = 0.0;
    for (std::size_t i = 0; i < rows_; ++i) {
        t += (*this)(i, i);
    }
    return t;
}

double Matrix::max_abs() const {
    double m = 0.0;
    for (const cd& z : data_) {
        m = std::max(m, std::abs(z));
    }
    return m;
}

double Matrix::frobenius_norm() const {
    double s = 0.0;
    for (const cd& z : data_) {
        s += std::norm(z);
    }
    return std::sqrt(s);
}

bool Matrix::all_finite() const {
    for (const cd& z : data_) {
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
            return false;
        }
    }
    return true;
}

Matrix& Matrix::operator+=(const Matrix& other) {
    if (rows_ != other.rows_ || cols_ != other.cols_) {
        throw std::invalid_argument("matrix addition shape mismatch");
    }
    for (std::size_t i = 0; i < data_.size(); ++i) {
        data_[i] += other.data_[i];
    }
    return *this;
}

Matrix& Matrix::operator-=(const Matrix& other) {
    if (rows_ != other.rows_ || cols_ != other.cols_) {
        throw std::invalid_argument("matrix subtraction shape mismatch");
    }
    for (std::size_t i = 0; i < data_.size(); ++i) {
        data_[i] -= other.data_[i];
    }
    return *this;
}

Matrix& Matrix::operator*=(cd scalar) {
    for (cd& z : data_) {
        z *= scalar;
    }
    return *this;
}

Matrix operator+(const Matrix& a, const Matrix& b) {
    Matrix out = a;
    out += b;
    return out;
}

Matrix operator-(const Matrix& a, const Matrix& b) {
    Matrix out = a;
    out -= b;
    return out;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.rows()) {
        throw std::invalid_argument("matrix product shape mismatch");
    }
    Matrix out(a.rows(), b.cols());
    // ikj loop order keeps the inner loop contiguous in both b and out.
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const cd aik = a(i, k);
            if (aik == cd(0.0, 0.0)) {
                continue;
            }
            for (std::size_t j = 0; j < b.cols(); ++j) {
                out(i, j) += aik * b(k, j);
            }
        }
    }
    return out;
}

Matrix operator*(cd scalar, const Matrix& m) {
    Matrix out = m;
    out *= scalar;
    return out;
}

Matrix operator*(const Matrix& m, cd scalar) {
    return scalar * m;
}

Matrix operator-(const Matrix& m) {
    return cd(-1.0, 0.0) * m;
}

double max_abs_diff(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw std::invalid_argument("max_abs_diff shape mismatch");
    }
    double m = 0.0;
    for (std::size_t i = 0; i < a.data().size(); ++i) {
        m = std::max(m, std::abs(a.data()[i] - b.data()[i]));
    }
    return m;
}

Matrix anticommutator(const Matrix& a, const Matrix& b) {
    return a * b + b * a;
}

Matrix commutator(const Matrix& a, const Matrix& b) {
    return a * b - b * a;
}

std::vector<cd> mat_vec(const Matrix& m, const std::vector<cd>& v) {
    if (m.cols() != v.size()) {
        throw std::invalid_argument("matrix-vector shape mismatch");
    }
    std::vector<cd> out(m.rows(), cd(0.0, 0.0));
    for (std::size_t i = 0; i < m.rows(); ++i) {
        cd s = 0.0;
        for (std::size_t j = 0; j < m.cols(); ++j) {
            s += m(i, j) * v[j];
        }
        out[i] = s;
    }
    return out;
}

cd inner(const std::vector<cd>& a, const std::vector<cd>& b) {
    if (a.size() != b.size()) {
        throw std::invalid_argument("inner product shape mismatch");
    }
    cd s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        s += std::conj(a[i]) * b[i];
    }
    return s;
}

double norm(const std::vector<cd>& v) {
    double s = 0.0;
    for (const cd& z : v) {
        s += std::norm(z);
    }
    return std::sqrt(s);
}

} // namespace contextlab
