#pragma once

#include <wdvv/algebra/rational.hpp>

#include <cstddef>
#include <functional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace wdvv::algebra {

class SingularMatrix : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

inline bool is_zero(const Scalar& s) { return sgn(s) == 0; }
inline bool is_zero(const RationalFunction& r) { return r.is_zero(); }
inline bool is_zero(const Polynomial& p) { return p.is_zero(); }

/// Dense row-major matrix over an exact field (or ring, for the
/// operations that do not divide).
template<class T>
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, T(0)) {}
    Matrix(std::initializer_list<std::initializer_list<T>> rows) {
        rows_ = rows.size();
        cols_ = rows_ ? rows.begin()->size() : 0;
        data_.reserve(rows_ * cols_);
        for (const auto& r : rows) {
            if (r.size() != cols_) throw std::invalid_argument("ragged matrix literal");
            data_.insert(data_.end(), r.begin(), r.end());
        }
    }

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool square() const { return rows_ == cols_; }

    T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    Matrix transpose() const {
        Matrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i) {
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        }
        return t;
    }

    template<class F>
    auto map(F&& f) const -> Matrix<std::decay_t<decltype(f(std::declval<const T&>()))>> {
        Matrix<std::decay_t<decltype(f(std::declval<const T&>()))>> out(rows_, cols_);
        for (std::size_t i = 0; i < rows_; ++i) {
            for (std::size_t j = 0; j < cols_; ++j) out(i, j) = f((*this)(i, j));
        }
        return out;
    }

    Matrix& operator+=(const Matrix& o) {
        check_same(o);
        for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
        return *this;
    }
    Matrix& operator-=(const Matrix& o) {
        check_same(o);
        for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
        return *this;
    }
    Matrix& operator*=(const T& c) {
        for (auto& x : data_) x *= c;
        return *this;
    }
    friend Matrix operator+(Matrix x, const Matrix& y) { return x += y; }
    friend Matrix operator-(Matrix x, const Matrix& y) { return x -= y; }
    friend Matrix operator*(Matrix x, const T& c) { return x *= c; }
    friend Matrix operator*(const T& c, Matrix x) { return x *= c; }

    friend Matrix operator*(const Matrix& x, const Matrix& y) {
        if (x.cols_ != y.rows_) throw std::invalid_argument("matrix product dimension mismatch");
        Matrix out(x.rows_, y.cols_);
        for (std::size_t i = 0; i < x.rows_; ++i) {
            for (std::size_t k = 0; k < x.cols_; ++k) {
                const T& a = x(i, k);
                if (algebra::is_zero(a)) continue;
                for (std::size_t j = 0; j < y.cols_; ++j) {
                    if (!algebra::is_zero(y(k, j))) out(i, j) += a * y(k, j);
                }
            }
        }
        return out;
    }

    bool operator==(const Matrix& o) const { return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_; }

    bool is_zero() const {
        for (const auto& x : data_) {
            if (!algebra::is_zero(x)) return false;
        }
        return true;
    }

    bool is_symmetric() const {
        if (!square()) return false;
        for (std::size_t i = 0; i < rows_; ++i) {
            for (std::size_t j = i + 1; j < cols_; ++j) {
                if (!((*this)(i, j) == (*this)(j, i))) return false;
            }
        }
        return true;
    }

private:
    void check_same(const Matrix& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("matrix dimension mismatch");
    }

    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<T> data_;
};

/// Fraction-free (Bareiss) elimination; every division is exact.
template<class T>
T determinant(Matrix<T> m) {
    if (!m.square()) throw std::invalid_argument("determinant of a non-square matrix");
    const std::size_t n = m.rows();
    if (n == 0) return T(1);
    T sign(1);
    T prev(1);
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (is_zero(m(k, k))) {
            std::size_t p = k + 1;
            while (p < n && is_zero(m(p, k))) ++p;
            if (p == n) return T(0);
            for (std::size_t j = 0; j < n; ++j) std::swap(m(k, j), m(p, j));
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                T v = m(k, k) * m(i, j) - m(i, k) * m(k, j);
                m(i, j) = v / prev;
            }
        }
        prev = m(k, k);
    }
    return sign * m(n - 1, n - 1);
}

/// Gauss-Jordan inverse; throws SingularMatrix.
template<class T>
Matrix<T> inverse(Matrix<T> m) {
    if (!m.square()) throw std::invalid_argument("inverse of a non-square matrix");
    const std::size_t n = m.rows();
    Matrix<T> inv = Matrix<T>::identity(n);
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        while (p < n && is_zero(m(p, k))) ++p;
        if (p == n) throw SingularMatrix("matrix is singular");
        if (p != k) {
            for (std::size_t j = 0; j < n; ++j) {
                std::swap(m(k, j), m(p, j));
                std::swap(inv(k, j), inv(p, j));
            }
        }
        T pivot_inv = T(1) / m(k, k);
        for (std::size_t j = 0; j < n; ++j) {
            if (!is_zero(m(k, j))) m(k, j) *= pivot_inv;
            if (!is_zero(inv(k, j))) inv(k, j) *= pivot_inv;
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (i == k || is_zero(m(i, k))) continue;
            T f = m(i, k);
            for (std::size_t j = 0; j < n; ++j) {
                if (!is_zero(m(k, j))) m(i, j) -= f * m(k, j);
                if (!is_zero(inv(k, j))) inv(i, j) -= f * inv(k, j);
            }
        }
    }
    return inv;
}

/// Reduced row echelon form in place; returns the pivot columns.
template<class T>
std::vector<std::size_t> row_reduce(Matrix<T>& m) {
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
        std::size_t p = row;
        while (p < m.rows() && is_zero(m(p, col))) ++p;
        if (p == m.rows()) continue;
        for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(row, j), m(p, j));
        T inv = T(1) / m(row, col);
        for (std::size_t j = col; j < m.cols(); ++j) m(row, j) *= inv;
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == row || is_zero(m(i, col))) continue;
            T f = m(i, col);
            for (std::size_t j = col; j < m.cols(); ++j) {
                if (!is_zero(m(row, j))) m(i, j) -= f * m(row, j);
            }
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

template<class T>
std::size_t rank(Matrix<T> m) {
    return row_reduce(m).size();
}

/// Basis of {x : m x = 0}, one vector per free column.
template<class T>
std::vector<std::vector<T>> nullspace(Matrix<T> m) {
    auto pivots = row_reduce(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto c : pivots) is_pivot[c] = true;
    std::vector<std::vector<T>> basis;
    for (std::size_t free = 0; free < m.cols(); ++free) {
        if (is_pivot[free]) continue;
        std::vector<T> v(m.cols(), T(0));
        v[free] = T(1);
        for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m(r, free);
        basis.push_back(std::move(v));
    }
    return basis;
}

using ScalarMatrix = Matrix<Scalar>;
using RationalMatrix = Matrix<RationalFunction>;

} // namespace wdvv::algebra
