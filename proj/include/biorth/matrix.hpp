#pragma once

// Dense row-major matrices over an exact (or floating) scalar, plus the
// fraction-free elimination routines used for determinants and null spaces.

#include <algorithm>
#include <cassert>
#include <optional>
#include <vector>

#include "biorth/rational.hpp"

namespace biorth {

template <typename T>
class Matrix {
public:
    Matrix() = default;
    Matrix(size_t rows, size_t cols, const T& fill = T(0)) : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    static Matrix identity(size_t n)
    {
        Matrix m(n, n);
        for (size_t i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }

    size_t rows() const { return rows_; }
    size_t cols() const { return cols_; }

    T& operator()(size_t i, size_t j)
    {
        assert(i < rows_ && j < cols_);
        return data_[i * cols_ + j];
    }
    const T& operator()(size_t i, size_t j) const
    {
        assert(i < rows_ && j < cols_);
        return data_[i * cols_ + j];
    }

    Matrix transposed() const
    {
        Matrix t(cols_, rows_);
        for (size_t i = 0; i < rows_; ++i)
            for (size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    /// Top-left k x k block.
    Matrix leading_block(size_t k) const
    {
        Matrix b(k, k);
        for (size_t i = 0; i < k; ++i)
            for (size_t j = 0; j < k; ++j) b(i, j) = (*this)(i, j);
        return b;
    }

    friend bool operator==(const Matrix&, const Matrix&) = default;

private:
    size_t rows_ = 0, cols_ = 0;
    std::vector<T> data_;
};

template <typename T>
Matrix<T> operator*(const Matrix<T>& x, const Matrix<T>& y)
{
    assert(x.cols() == y.rows());
    Matrix<T> out(x.rows(), y.cols());
    for (size_t i = 0; i < x.rows(); ++i)
        for (size_t k = 0; k < x.cols(); ++k) {
            if (x(i, k) == 0) continue;
            for (size_t j = 0; j < y.cols(); ++j) out(i, j) += x(i, k) * y(k, j);
        }
    return out;
}

template <typename T>
Matrix<T> operator-(const Matrix<T>& x, const Matrix<T>& y)
{
    Matrix<T> out(x.rows(), x.cols());
    for (size_t i = 0; i < x.rows(); ++i)
        for (size_t j = 0; j < x.cols(); ++j) out(i, j) = x(i, j) - y(i, j);
    return out;
}

template <typename T>
Matrix<T> operator+(const Matrix<T>& x, const Matrix<T>& y)
{
    Matrix<T> out(x.rows(), x.cols());
    for (size_t i = 0; i < x.rows(); ++i)
        for (size_t j = 0; j < x.cols(); ++j) out(i, j) = x(i, j) + y(i, j);
    return out;
}

template <typename T>
Matrix<T> scaled(const Matrix<T>& x, const T& s)
{
    Matrix<T> out = x;
    for (size_t i = 0; i < x.rows(); ++i)
        for (size_t j = 0; j < x.cols(); ++j) out(i, j) *= s;
    return out;
}

/// First (row-major) position where two equally sized matrices differ.
template <typename T>
std::optional<std::pair<size_t, size_t>> first_mismatch(const Matrix<T>& x, const Matrix<T>& y)
{
    for (size_t i = 0; i < x.rows(); ++i)
        for (size_t j = 0; j < x.cols(); ++j)
            if (x(i, j) != y(i, j)) return std::pair{i, j};
    return std::nullopt;
}

// Fraction-free elimination --------------------------------------------------

/// Clears denominators row by row. Returns the integer matrix; `scale` receives
/// the product of the per-row multipliers (det(int) = scale * det(original)).
inline Matrix<Integer> clear_denominators(const Matrix<Rational>& m, Rational* scale = nullptr)
{
    Matrix<Integer> out(m.rows(), m.cols());
    Rational total = 1;
    for (size_t i = 0; i < m.rows(); ++i) {
        Integer l = 1;
        for (size_t j = 0; j < m.cols(); ++j) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), m(i, j).get_den_mpz_t());
        for (size_t j = 0; j < m.cols(); ++j) {
            Rational v = m(i, j) * l;
            out(i, j) = v.get_num();
        }
        total *= l;
    }
    if (scale) *scale = total;
    return out;
}

/// Bareiss fraction-free determinant of a square integer matrix.
inline Integer bareiss_determinant(Matrix<Integer> m)
{
    const size_t n = m.rows();
    assert(n == m.cols());
    if (n == 0) return 1;
    Integer prev = 1;
    int sign = 1;
    for (size_t k = 0; k + 1 < n; ++k) {
        if (m(k, k) == 0) {
            size_t r = k + 1;
            while (r < n && m(r, k) == 0) ++r;
            if (r == n) return 0;
            for (size_t j = 0; j < n; ++j) std::swap(m(k, j), m(r, j));
            sign = -sign;
        }
        for (size_t i = k + 1; i < n; ++i) {
            for (size_t j = k + 1; j < n; ++j) {
                Integer t = m(k, k) * m(i, j) - m(i, k) * m(k, j);
                mpz_divexact(m(i, j).get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
            }
            m(i, k) = 0;
        }
        prev = m(k, k);
    }
    Integer det = m(n - 1, n - 1);
    return sign < 0 ? Integer(-det) : det;
}

/// Exact determinant of a rational matrix via Bareiss on the cleared matrix.
inline Rational determinant(const Matrix<Rational>& m)
{
    Rational scale;
    Matrix<Integer> im = clear_denominators(m, &scale);
    Rational det(bareiss_determinant(std::move(im)));
    return det / scale;
}

/// Result of fraction-free row reduction: echelon form plus pivot columns.
struct EchelonForm {
    Matrix<Integer> reduced;
    std::vector<size_t> pivot_columns;
    size_t rank() const { return pivot_columns.size(); }
};

/// One-step fraction-free (Bareiss) row echelon form with row pivoting.
inline EchelonForm fraction_free_echelon(Matrix<Integer> m)
{
    const size_t rows = m.rows(), cols = m.cols();
    std::vector<size_t> pivots;
    Integer prev = 1;
    size_t r = 0;
    for (size_t c = 0; c < cols && r < rows; ++c) {
        size_t p = r;
        while (p < rows && m(p, c) == 0) ++p;
        if (p == rows) continue;
        if (p != r)
            for (size_t j = 0; j < cols; ++j) std::swap(m(r, j), m(p, j));
        for (size_t i = r + 1; i < rows; ++i) {
            for (size_t j = c + 1; j < cols; ++j) {
                Integer t = m(r, c) * m(i, j) - m(i, c) * m(r, j);
                mpz_divexact(m(i, j).get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
            }
            m(i, c) = 0;
        }
        prev = m(r, c);
        pivots.push_back(c);
        ++r;
    }
    return EchelonForm{std::move(m), std::move(pivots)};
}

/// Basis vector of the null space when it is one-dimensional; nullopt otherwise.
/// The free variable is set to 1 and the pivot variables are back-substituted.
inline std::optional<std::vector<Rational>> one_dimensional_null_vector(const Matrix<Rational>& m)
{
    EchelonForm ef = fraction_free_echelon(clear_denominators(m));
    const size_t n = m.cols();
    if (ef.rank() + 1 != n) return std::nullopt;
    std::vector<bool> is_pivot(n, false);
    for (size_t c : ef.pivot_columns) is_pivot[c] = true;
    size_t free_col = 0;
    while (is_pivot[free_col]) ++free_col;

    std::vector<Rational> x(n, Rational(0));
    x[free_col] = 1;
    for (size_t k = ef.rank(); k-- > 0;) {
        const size_t c = ef.pivot_columns[k];
        Rational acc = 0;
        for (size_t j = c + 1; j < n; ++j)
            if (ef.reduced(k, j) != 0) acc += Rational(ef.reduced(k, j)) * x[j];
        x[c] = -acc / Rational(ef.reduced(k, c));
    }
    return x;
}

}  // namespace biorth
