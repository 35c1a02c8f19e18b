#include "mev/linalg.hpp"

#include <cmath>
#include <stdexcept>

namespace mev {

std::optional<Matrix> invert(const Matrix& a) {
    if (a.rows() != a.cols() || a.rows() == 0) return std::nullopt;
    const std::size_t n = a.rows();

    // Augmented Gauss-Jordan with partial pivoting.
    Matrix m = a;
    Matrix inv = Matrix::identity(n);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        double best = std::fabs(m(col, col));
        for (std::size_t r = col + 1; r < n; ++r) {
            if (std::fabs(m(r, col)) > best) {
                best = std::fabs(m(r, col));
                pivot = r;
            }
        }
        if (!(best > 0.0) || !std::isfinite(best)) return std::nullopt;
        if (pivot != col) {
            for (std::size_t j = 0; j < n; ++j) {
                std::swap(m(pivot, j), m(col, j));
                std::swap(inv(pivot, j), inv(col, j));
            }
        }
        const double d = m(col, col);
        for (std::size_t j = 0; j < n; ++j) {
            m(col, j) /= d;
            inv(col, j) /= d;
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col) continue;
            const double f = m(r, col);
            if (f == 0.0) continue;
            for (std::size_t j = 0; j < n; ++j) {
                m(r, j) -= f * m(col, j);
                inv(r, j) -= f * inv(col, j);
            }
        }
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (!std::isfinite(inv(i, j))) return std::nullopt;
    return inv;
}

bool is_positive_definite(const Matrix& a) {
    if (a.rows() != a.cols() || a.rows() == 0) return false;
    const std::size_t n = a.rows();
    Matrix l(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j <= i; ++j) {
            double s = a(i, j);
            for (std::size_t k = 0; k < j; ++k) s -= l(i, k) * l(j, k);
            if (i == j) {
                if (!(s > 0.0) || !std::isfinite(s)) return false;
                l(i, i) = std::sqrt(s);
            } else {
                l(i, j) = s / l(j, j);
            }
        }
    }
    return true;
}

Matrix symmetrize(const Matrix& a) {
    Matrix s(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            s(i, j) = 0.5 * (a(i, j) + a(j, i));
    return s;
}

double quadratic_form(const Matrix& a, std::span<const double> v) {
    if (a.rows() != v.size() || a.cols() != v.size())
        throw std::invalid_argument("quadratic_form: dimension mismatch");
    double acc = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        double row = 0.0;
        for (std::size_t j = 0; j < v.size(); ++j) row += a(i, j) * v[j];
        acc += v[i] * row;
    }
    return acc;
}

}  // namespace mev
