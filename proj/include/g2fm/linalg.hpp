#pragma once

#include "g2fm/rational.hpp"

#include <cmath>
#include <stdexcept>
#include <type_traits>
#include <vector>

namespace g2fm {

template <class T>
class Matrix {
public:
    Matrix() = default;
    Matrix(int rows, int cols) : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows) * cols, T(0)) {}

    static Matrix identity(int n) {
        Matrix m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = T(1);
        return m;
    }
    static Matrix from_columns(const std::vector<std::vector<T>>& cols, int rows) {
        Matrix m(rows, static_cast<int>(cols.size()));
        for (int c = 0; c < m.cols_; ++c) {
            if (static_cast<int>(cols[c].size()) != rows) throw std::invalid_argument("column length");
            for (int r = 0; r < rows; ++r) m(r, c) = cols[c][r];
        }
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    T& operator()(int r, int c) { return data_[static_cast<std::size_t>(r) * cols_ + c]; }
    const T& operator()(int r, int c) const { return data_[static_cast<std::size_t>(r) * cols_ + c]; }

    std::vector<T> column(int c) const {
        std::vector<T> v(rows_);
        for (int r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
        return v;
    }

    Matrix transpose() const {
        Matrix t(cols_, rows_);
        for (int r = 0; r < rows_; ++r)
            for (int c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
        return t;
    }

    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        if (a.cols_ != b.rows_) throw std::invalid_argument("matrix product shape");
        Matrix m(a.rows_, b.cols_);
        for (int i = 0; i < a.rows_; ++i)
            for (int k = 0; k < a.cols_; ++k) {
                const T& aik = a(i, k);
                if (aik == 0) continue;
                for (int j = 0; j < b.cols_; ++j)
                    if (b(k, j) != 0) m(i, j) += aik * b(k, j);
            }
        return m;
    }
    friend Matrix operator+(Matrix a, const Matrix& b) {
        a.check_same(b);
        for (std::size_t i = 0; i < a.data_.size(); ++i) a.data_[i] += b.data_[i];
        return a;
    }
    friend Matrix operator-(Matrix a, const Matrix& b) {
        a.check_same(b);
        for (std::size_t i = 0; i < a.data_.size(); ++i) a.data_[i] -= b.data_[i];
        return a;
    }
    friend Matrix operator*(const T& s, Matrix a) {
        for (auto& v : a.data_) v *= s;
        return a;
    }
    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

    std::vector<T> apply(const std::vector<T>& v) const {
        if (static_cast<int>(v.size()) != cols_) throw std::invalid_argument("matrix-vector shape");
        std::vector<T> out(rows_, T(0));
        for (int r = 0; r < rows_; ++r)
            for (int c = 0; c < cols_; ++c)
                if ((*this)(r, c) != 0 && v[c] != 0) out[r] += (*this)(r, c) * v[c];
        return out;
    }

    bool is_zero() const {
        for (const auto& v : data_)
            if (v != 0) return false;
        return true;
    }

    T trace() const {
        T t(0);
        for (int i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
        return t;
    }

private:
    void check_same(const Matrix& b) const {
        if (rows_ != b.rows_ || cols_ != b.cols_) throw std::invalid_argument("matrix shape mismatch");
    }

    int rows_ = 0;
    int cols_ = 0;
    std::vector<T> data_;
};

using RMatrix = Matrix<Rational>;

// Reduced row echelon form in place; returns pivot columns.
template <class T>
std::vector<int> rref(Matrix<T>& m, double tol = 1e-12) {
    std::vector<int> pivots;
    int row = 0;
    for (int c = 0; c < m.cols() && row < m.rows(); ++c) {
        int piv = -1;
        if constexpr (std::is_floating_point_v<T>) {
            double best = tol;
            for (int r = row; r < m.rows(); ++r)
                if (std::abs(m(r, c)) > best) {
                    best = std::abs(m(r, c));
                    piv = r;
                }
        } else {
            (void)tol;
            for (int r = row; r < m.rows(); ++r)
                if (m(r, c) != 0) {
                    piv = r;
                    break;
                }
        }
        if (piv < 0) continue;
        if (piv != row)
            for (int k = 0; k < m.cols(); ++k) std::swap(m(piv, k), m(row, k));
        T inv = T(1) / m(row, c);
        for (int k = c; k < m.cols(); ++k) m(row, k) *= inv;
        for (int r = 0; r < m.rows(); ++r) {
            if (r == row || m(r, c) == 0) continue;
            T f = m(r, c);
            for (int k = c; k < m.cols(); ++k)
                if (m(row, k) != 0) m(r, k) -= f * m(row, k);
        }
        pivots.push_back(c);
        ++row;
    }
    return pivots;
}

template <class T>
int rank(Matrix<T> m) {
    return static_cast<int>(rref(m).size());
}

// Basis of the right null space, one vector per free column.
template <class T>
std::vector<std::vector<T>> nullspace(Matrix<T> m) {
    auto pivots = rref(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (int p : pivots) is_pivot[p] = true;
    std::vector<std::vector<T>> basis;
    for (int f = 0; f < m.cols(); ++f) {
        if (is_pivot[f]) continue;
        std::vector<T> v(m.cols(), T(0));
        v[f] = T(1);
        for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m(static_cast<int>(r), f);
        basis.push_back(std::move(v));
    }
    return basis;
}

template <class T>
Matrix<T> inverse(const Matrix<T>& a) {
    if (a.rows() != a.cols()) throw std::invalid_argument("inverse of non-square matrix");
    int n = a.rows();
    Matrix<T> aug(n, 2 * n);
    for (int r = 0; r < n; ++r) {
        for (int c = 0; c < n; ++c) aug(r, c) = a(r, c);
        aug(r, n + r) = T(1);
    }
    auto piv = rref(aug);
    if (static_cast<int>(piv.size()) < n || piv[n - 1] != n - 1) throw std::runtime_error("singular matrix");
    Matrix<T> inv(n, n);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) inv(r, c) = aug(r, n + c);
    return inv;
}

// Solves a x = b for square non-singular a.
template <class T>
std::vector<T> solve(const Matrix<T>& a, const std::vector<T>& b) {
    int n = a.rows();
    if (a.cols() != n || static_cast<int>(b.size()) != n) throw std::invalid_argument("solve shape");
    Matrix<T> aug(n, n + 1);
    for (int r = 0; r < n; ++r) {
        for (int c = 0; c < n; ++c) aug(r, c) = a(r, c);
        aug(r, n) = b[r];
    }
    auto piv = rref(aug);
    if (static_cast<int>(piv.size()) < n || piv[n - 1] != n - 1) throw std::runtime_error("singular system");
    std::vector<T> x(n);
    for (int r = 0; r < n; ++r) x[r] = aug(r, n);
    return x;
}

// Orthogonal projector onto the column span of v: V (V^T V)^{-1} V^T.
template <class T>
Matrix<T> projector_onto(const Matrix<T>& v) {
    if (v.cols() == 0) return Matrix<T>(v.rows(), v.rows());
    Matrix<T> vt = v.transpose();
    return v * inverse(vt * v) * vt;
}

// Columns of m reduced to a linearly independent spanning subset.
template <class T>
Matrix<T> independent_columns(const Matrix<T>& m) {
    Matrix<T> work = m;
    auto piv = rref(work);
    Matrix<T> out(m.rows(), static_cast<int>(piv.size()));
    for (std::size_t k = 0; k < piv.size(); ++k)
        for (int r = 0; r < m.rows(); ++r) out(r, static_cast<int>(k)) = m(r, piv[k]);
    return out;
}

// Intersection of column spans, returned as a basis (columns).
template <class T>
Matrix<T> intersect_spans(const Matrix<T>& a, const Matrix<T>& b) {
    Matrix<T> stacked(a.rows(), a.cols() + b.cols());
    for (int r = 0; r < a.rows(); ++r) {
        for (int c = 0; c < a.cols(); ++c) stacked(r, c) = a(r, c);
        for (int c = 0; c < b.cols(); ++c) stacked(r, a.cols() + c) = -b(r, c);
    }
    auto ns = nullspace(stacked);
    std::vector<std::vector<T>> cols;
    for (const auto& v : ns) {
        std::vector<T> w(a.rows(), T(0));
        for (int c = 0; c < a.cols(); ++c)
            if (v[c] != 0)
                for (int r = 0; r < a.rows(); ++r) w[r] += v[c] * a(r, c);
        cols.push_back(std::move(w));
    }
    return independent_columns(Matrix<T>::from_columns(cols, a.rows()));
}

}  // namespace g2fm
