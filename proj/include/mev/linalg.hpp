#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace mev {

/// Small dense row-major matrix. Parameter covariance matrices in this
/// library are at most 7x7, so no attempt is made at being clever.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool empty() const { return data_.empty(); }

    Matrix& operator*=(double s) {
        for (double& v : data_) v *= s;
        return *this;
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

/// Inverse by LU decomposition with partial pivoting. Returns nullopt for
/// singular (or numerically singular) input.
std::optional<Matrix> invert(const Matrix& a);

/// True if the symmetric matrix admits a Cholesky factorization, i.e. is
/// positive definite up to roundoff.
bool is_positive_definite(const Matrix& a);

/// (A + A^T)/2.
Matrix symmetrize(const Matrix& a);

/// v^T A v for square A.
double quadratic_form(const Matrix& a, std::span<const double> v);

}  // namespace mev
