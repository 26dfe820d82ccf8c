#pragma once

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <utility>
#include <vector>

#include "flatgraph/rational.hpp"

namespace flatgraph {

using Vector = std::vector<Rational>;

/// Dense row-major matrix over the rationals.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
    Matrix(std::initializer_list<std::initializer_list<Rational>> rows) {
        rows_ = rows.size();
        cols_ = rows_ == 0 ? 0 : rows.begin()->size();
        data_.reserve(rows_ * cols_);
        for (const auto& r : rows) {
            if (r.size() != cols_) throw std::invalid_argument("Matrix: ragged initializer");
            data_.insert(data_.end(), r.begin(), r.end());
        }
    }

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }

    /// Builds a rows x columns.size() matrix; every column must have `rows` entries.
    static Matrix from_columns(std::size_t rows, const std::vector<Vector>& columns) {
        Matrix m(rows, columns.size());
        for (std::size_t j = 0; j < columns.size(); ++j) {
            if (columns[j].size() != rows) throw std::invalid_argument("Matrix: column length mismatch");
            for (std::size_t i = 0; i < rows; ++i) m(i, j) = columns[j][i];
        }
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    Vector column(std::size_t c) const {
        Vector v(rows_);
        for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
        return v;
    }

    Matrix transpose() const {
        Matrix t(cols_, rows_);
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
        return t;
    }

    bool is_zero() const {
        for (const auto& x : data_)
            if (!x.is_zero()) return false;
        return true;
    }

    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        if (a.cols_ != b.rows_) throw std::invalid_argument("Matrix: product dimension mismatch");
        Matrix p(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const Rational& x = a(i, k);
                if (x.is_zero()) continue;
                for (std::size_t j = 0; j < b.cols_; ++j) p(i, j) += x * b(k, j);
            }
        return p;
    }

    friend Vector operator*(const Matrix& a, const Vector& v) {
        if (a.cols_ != v.size()) throw std::invalid_argument("Matrix: vector dimension mismatch");
        Vector out(a.rows_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) out[i] += a(i, k) * v[k];
        return out;
    }

    friend Matrix operator*(const Rational& s, Matrix m) {
        for (auto& x : m.data_) x *= s;
        return m;
    }

    friend bool operator==(const Matrix& a, const Matrix& b) = default;

    friend std::ostream& operator<<(std::ostream& os, const Matrix& m) {
        os << '[';
        for (std::size_t r = 0; r < m.rows_; ++r) {
            os << (r ? "; " : "");
            for (std::size_t c = 0; c < m.cols_; ++c) os << (c ? " " : "") << m(r, c);
        }
        return os << ']';
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Rational> data_;
};

struct RowEchelon {
    Matrix reduced;                        // reduced row-echelon form
    std::vector<std::size_t> pivot_columns; // one per nonzero row, increasing
};

/// Gauss-Jordan elimination. Pivot for each column is the first nonzero
/// entry at or below the current row, columns scanned left to right.
inline RowEchelon row_reduce(Matrix m) {
    RowEchelon out;
    std::size_t row = 0;
    for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
        std::size_t pivot = row;
        while (pivot < m.rows() && m(pivot, col).is_zero()) ++pivot;
        if (pivot == m.rows()) continue;
        if (pivot != row)
            for (std::size_t c = 0; c < m.cols(); ++c) std::swap(m(row, c), m(pivot, c));
        const Rational inv = Rational(1) / m(row, col);
        for (std::size_t c = col; c < m.cols(); ++c) m(row, c) *= inv;
        for (std::size_t r = 0; r < m.rows(); ++r) {
            if (r == row || m(r, col).is_zero()) continue;
            const Rational factor = m(r, col);
            for (std::size_t c = col; c < m.cols(); ++c) m(r, c) -= factor * m(row, c);
        }
        out.pivot_columns.push_back(col);
        ++row;
    }
    out.reduced = std::move(m);
    return out;
}

inline std::size_t rank(const Matrix& m) { return row_reduce(m).pivot_columns.size(); }

/// Basis of the right kernel, one column per free variable. Column j has a 1
/// in its free position and zeros in every other free position.
inline Matrix kernel_basis(const Matrix& m) {
    const RowEchelon e = row_reduce(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto c : e.pivot_columns) is_pivot[c] = true;

    std::vector<Vector> columns;
    for (std::size_t free = 0; free < m.cols(); ++free) {
        if (is_pivot[free]) continue;
        Vector v(m.cols());
        v[free] = 1;
        for (std::size_t r = 0; r < e.pivot_columns.size(); ++r) v[e.pivot_columns[r]] = -e.reduced(r, free);
        columns.push_back(std::move(v));
    }
    return Matrix::from_columns(m.cols(), columns);
}

/// Some x with m * x = b, or nullopt if the system is inconsistent.
inline std::optional<Vector> solve(const Matrix& m, const Vector& b) {
    if (b.size() != m.rows()) throw std::invalid_argument("solve: right-hand side length != rows");
    Matrix aug(m.rows(), m.cols() + 1);
    for (std::size_t r = 0; r < m.rows(); ++r) {
        for (std::size_t c = 0; c < m.cols(); ++c) aug(r, c) = m(r, c);
        aug(r, m.cols()) = b[r];
    }
    const RowEchelon e = row_reduce(std::move(aug));
    if (!e.pivot_columns.empty() && e.pivot_columns.back() == m.cols()) return std::nullopt;
    Vector x(m.cols());
    for (std::size_t r = 0; r < e.pivot_columns.size(); ++r) x[e.pivot_columns[r]] = e.reduced(r, m.cols());
    return x;
}

inline Rational determinant(Matrix m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("determinant: matrix not square");
    const std::size_t n = m.rows();
    Rational det = 1;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        while (pivot < n && m(pivot, col).is_zero()) ++pivot;
        if (pivot == n) return 0;
        if (pivot != col) {
            for (std::size_t c = 0; c < n; ++c) std::swap(m(col, c), m(pivot, c));
            det = -det;
        }
        det *= m(col, col);
        for (std::size_t r = col + 1; r < n; ++r) {
            if (m(r, col).is_zero()) continue;
            const Rational factor = m(r, col) / m(col, col);
            for (std::size_t c = col; c < n; ++c) m(r, c) -= factor * m(col, c);
        }
    }
    return det;
}

inline std::optional<Matrix> inverse(const Matrix& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("inverse: matrix not square");
    const std::size_t n = m.rows();
    Matrix aug(n, 2 * n);
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) aug(r, c) = m(r, c);
        aug(r, n + r) = 1;
    }
    const RowEchelon e = row_reduce(std::move(aug));
    if (e.pivot_columns.size() < n || (n > 0 && e.pivot_columns[n - 1] != n - 1)) return std::nullopt;
    Matrix inv(n, n);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) inv(r, c) = e.reduced(r, n + c);
    return inv;
}

} // namespace flatgraph
