#pragma once

#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <vector>

#include "nilws/rational.hpp"

namespace nilws {

/// Dense row-major matrix over double or Rational. Everything is by value;
/// sizes in this project stay small (dim a <= 16, so(16) systems ~120 wide).
template <typename T>
class Matrix {
public:
    Matrix() : rows_(0), cols_(0) {}
    Matrix(std::size_t rows, std::size_t cols, T fill = T(0))
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
    Matrix(std::initializer_list<std::initializer_list<T>> rows) {
        rows_ = rows.size();
        cols_ = rows_ ? rows.begin()->size() : 0;
        data_.reserve(rows_ * cols_);
        for (const auto& r : rows) {
            if (r.size() != cols_) throw std::invalid_argument("Matrix: ragged initializer");
            for (const auto& v : r) data_.push_back(v);
        }
    }

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool empty() const { return data_.empty(); }

    T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    const std::vector<T>& data() const { return data_; }
    std::vector<T>& data() { return data_; }

    friend Matrix operator+(const Matrix& a, const Matrix& b) {
        Matrix r = a;
        for (std::size_t i = 0; i < r.data_.size(); ++i) r.data_[i] += b.data_[i];
        return r;
    }
    friend Matrix operator-(const Matrix& a, const Matrix& b) {
        Matrix r = a;
        for (std::size_t i = 0; i < r.data_.size(); ++i) r.data_[i] -= b.data_[i];
        return r;
    }
    friend Matrix operator*(const T& s, const Matrix& a) {
        Matrix r = a;
        for (auto& v : r.data_) v *= s;
        return r;
    }
    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        if (a.cols_ != b.rows_) throw std::invalid_argument("Matrix: product shape mismatch");
        Matrix r(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const T aik = a(i, k);
                if (aik == T(0)) continue;
                for (std::size_t j = 0; j < b.cols_; ++j) r(i, j) += aik * b(k, j);
            }
        return r;
    }
    Matrix operator-() const { return T(-1) * *this; }

    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

    Matrix transpose() const {
        Matrix r(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
        return r;
    }

    T trace() const {
        T t(0);
        for (std::size_t i = 0; i < rows_ && i < cols_; ++i) t += (*this)(i, i);
        return t;
    }

    std::vector<T> apply(const std::vector<T>& x) const {
        if (x.size() != cols_) throw std::invalid_argument("Matrix: apply shape mismatch");
        std::vector<T> y(rows_, T(0));
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) y[i] += (*this)(i, j) * x[j];
        return y;
    }

    Matrix block(std::size_t i0, std::size_t j0, std::size_t r, std::size_t c) const {
        Matrix b(r, c);
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < c; ++j) b(i, j) = (*this)(i0 + i, j0 + j);
        return b;
    }

    void set_block(std::size_t i0, std::size_t j0, const Matrix& b) {
        for (std::size_t i = 0; i < b.rows_; ++i)
            for (std::size_t j = 0; j < b.cols_; ++j) (*this)(i0 + i, j0 + j) = b(i, j);
    }

private:
    std::size_t rows_, cols_;
    std::vector<T> data_;
};

using MatD = Matrix<double>;
using MatQ = Matrix<Rational>;
using VecD = std::vector<double>;
using VecQ = std::vector<Rational>;

template <typename T>
Matrix<T> block_diag(const std::vector<Matrix<T>>& blocks) {
    std::size_t n = 0, m = 0;
    for (const auto& b : blocks) { n += b.rows(); m += b.cols(); }
    Matrix<T> r(n, m);
    std::size_t i0 = 0, j0 = 0;
    for (const auto& b : blocks) {
        r.set_block(i0, j0, b);
        i0 += b.rows();
        j0 += b.cols();
    }
    return r;
}

template <typename T>
T dot(const std::vector<T>& a, const std::vector<T>& b) {
    T s(0);
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline double norm2(const VecD& a) { return std::sqrt(dot(a, a)); }

/// Trace inner product <A,B> = Tr(A^t B) = sum of entrywise products.
template <typename T>
T trace_dot(const Matrix<T>& a, const Matrix<T>& b) {
    T s(0);
    for (std::size_t i = 0; i < a.data().size(); ++i) s += a.data()[i] * b.data()[i];
    return s;
}

inline double frobenius(const MatD& a) { return std::sqrt(trace_dot(a, a)); }

inline double max_abs(const MatD& a) {
    double m = 0;
    for (double v : a.data()) m = std::max(m, std::abs(v));
    return m;
}

inline double max_abs(const VecD& a) {
    double m = 0;
    for (double v : a) m = std::max(m, std::abs(v));
    return m;
}

template <typename T>
bool is_skew(const Matrix<T>& a) {
    if (a.rows() != a.cols()) return false;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j <= i; ++j)
            if (!(a(i, j) == -a(j, i))) return false;
    return true;
}

inline double skew_defect(const MatD& a) { return max_abs(a + a.transpose()); }

inline double orthogonality_defect(const MatD& a) {
    return max_abs(a.transpose() * a - MatD::identity(a.cols()));
}

inline MatD to_double(const MatQ& a) {
    MatD r(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) r(i, j) = a(i, j).to_double();
    return r;
}
inline const MatD& to_double(const MatD& a) { return a; }

inline VecD to_double(const VecQ& a) {
    VecD r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i].to_double();
    return r;
}
inline const VecD& to_double(const VecD& a) { return a; }

namespace detail {
template <typename T>
bool pivot_less(const T& a, const T& b) {
    if constexpr (std::is_same_v<T, double>) return std::abs(a) < std::abs(b);
    else return a.abs() < b.abs();
}
template <typename T>
bool pivot_usable(const T& v) {
    if constexpr (std::is_same_v<T, double>) return std::abs(v) > 1e-13;
    else return !v.is_zero();
}
} // namespace detail

/// Gaussian elimination with partial pivoting; exact over Rational.
template <typename T>
std::vector<T> solve_linear(Matrix<T> a, std::vector<T> b) {
    const std::size_t n = a.rows();
    if (a.cols() != n || b.size() != n) throw std::invalid_argument("solve_linear: shape");
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        for (std::size_t i = k + 1; i < n; ++i)
            if (detail::pivot_less(a(p, k), a(i, k))) p = i;
        if (!detail::pivot_usable(a(p, k))) throw std::domain_error("solve_linear: singular system");
        if (p != k) {
            for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(p, j));
            std::swap(b[k], b[p]);
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            T f = a(i, k) / a(k, k);
            if (f == T(0)) continue;
            for (std::size_t j = k; j < n; ++j) a(i, j) -= f * a(k, j);
            b[i] -= f * b[k];
        }
    }
    std::vector<T> x(n, T(0));
    for (std::size_t i = n; i-- > 0;) {
        T s = b[i];
        for (std::size_t j = i + 1; j < n; ++j) s -= a(i, j) * x[j];
        x[i] = s / a(i, i);
    }
    return x;
}

template <typename T>
T determinant(Matrix<T> a) {
    const std::size_t n = a.rows();
    T det(1);
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        for (std::size_t i = k + 1; i < n; ++i)
            if (detail::pivot_less(a(p, k), a(i, k))) p = i;
        if (!detail::pivot_usable(a(p, k))) {
            if constexpr (std::is_same_v<T, double>) { if (a(p, k) == 0.0) return 0.0; }
            else return T(0);
        }
        if (p != k) {
            for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(p, j));
            det = -det;
        }
        if (a(k, k) == T(0)) return T(0);
        det *= a(k, k);
        for (std::size_t i = k + 1; i < n; ++i) {
            T f = a(i, k) / a(k, k);
            if (f == T(0)) continue;
            for (std::size_t j = k; j < n; ++j) a(i, j) -= f * a(k, j);
        }
    }
    return det;
}

template <typename T>
Matrix<T> inverse(const Matrix<T>& a) {
    const std::size_t n = a.rows();
    Matrix<T> inv(n, n);
    std::vector<T> e(n, T(0));
    for (std::size_t j = 0; j < n; ++j) {
        e[j] = T(1);
        auto col = solve_linear(a, e);
        for (std::size_t i = 0; i < n; ++i) inv(i, j) = col[i];
        e[j] = T(0);
    }
    return inv;
}

/// Reduced row echelon form in place; returns pivot column indices.
/// Exact over Rational, tolerance-thresholded over double.
template <typename T>
std::vector<std::size_t> rref(Matrix<T>& a, double tol = 1e-10) {
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < a.cols() && row < a.rows(); ++col) {
        std::size_t p = row;
        for (std::size_t i = row + 1; i < a.rows(); ++i)
            if (detail::pivot_less(a(p, col), a(i, col))) p = i;
        bool usable;
        if constexpr (std::is_same_v<T, double>) usable = std::abs(a(p, col)) > tol;
        else usable = !a(p, col).is_zero();
        if (!usable) continue;
        if (p != row)
            for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a(row, j), a(p, j));
        T piv = a(row, col);
        for (std::size_t j = 0; j < a.cols(); ++j) a(row, j) /= piv;
        for (std::size_t i = 0; i < a.rows(); ++i) {
            if (i == row) continue;
            T f = a(i, col);
            if (f == T(0)) continue;
            for (std::size_t j = 0; j < a.cols(); ++j) a(i, j) -= f * a(row, j);
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

/// Kernel basis of A (as column coefficient vectors) from the RREF.
template <typename T>
std::vector<std::vector<T>> kernel_basis(Matrix<T> a, double tol = 1e-10) {
    auto pivots = rref(a, tol);
    std::vector<bool> is_pivot(a.cols(), false);
    for (auto p : pivots) is_pivot[p] = true;
    std::vector<std::vector<T>> basis;
    for (std::size_t free = 0; free < a.cols(); ++free) {
        if (is_pivot[free]) continue;
        std::vector<T> v(a.cols(), T(0));
        v[free] = T(1);
        for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -a(r, free);
        basis.push_back(std::move(v));
    }
    return basis;
}

template <typename T>
std::size_t rank_of(Matrix<T> a, double tol = 1e-10) {
    return rref(a, tol).size();
}

} // namespace nilws
