#pragma once

#include "leibniz/rational.hpp"

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace leibniz {

using Vec = std::vector<Rational>;

inline Vec zero_vec(std::size_t n) { return Vec(n, Rational(0)); }

inline bool is_zero_vec(const Vec& v)
{
    for (const auto& x : v)
        if (!is_zero(x))
            return false;
    return true;
}

inline Vec add(const Vec& a, const Vec& b)
{
    if (a.size() != b.size())
        throw std::invalid_argument("vector dimension mismatch");
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        r[i] = a[i] + b[i];
    return r;
}

inline Vec sub(const Vec& a, const Vec& b)
{
    if (a.size() != b.size())
        throw std::invalid_argument("vector dimension mismatch");
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        r[i] = a[i] - b[i];
    return r;
}

inline Vec scale(const Rational& c, const Vec& v)
{
    Vec r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i)
        r[i] = c * v[i];
    return r;
}

inline Rational dot(const Vec& a, const Vec& b)
{
    if (a.size() != b.size())
        throw std::invalid_argument("vector dimension mismatch");
    Rational s(0);
    for (std::size_t i = 0; i < a.size(); ++i)
        if (!is_zero(a[i]) && !is_zero(b[i]))
            s += a[i] * b[i];
    return s;
}

/// Dense matrix over exact rationals, row-major.
class Matrix {
public:
    Matrix() : rows_(0), cols_(0) {}

    Matrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols, Rational(0))
    {
    }

    Matrix(std::initializer_list<std::initializer_list<long long>> init)
    {
        rows_ = init.size();
        cols_ = rows_ == 0 ? 0 : init.begin()->size();
        data_.reserve(rows_ * cols_);
        for (const auto& row : init) {
            if (row.size() != cols_)
                throw std::invalid_argument("ragged initializer");
            for (long long v : row)
                data_.emplace_back(v);
        }
    }

    static Matrix identity(std::size_t n)
    {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i)
            m.at(i, i) = 1;
        return m;
    }

    static Matrix from_rows(const std::vector<Vec>& rows, std::size_t cols)
    {
        Matrix m(rows.size(), cols);
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (rows[r].size() != cols)
                throw std::invalid_argument("row length mismatch");
            for (std::size_t c = 0; c < cols; ++c)
                m.at(r, c) = rows[r][c];
        }
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    const Rational& at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
    Rational& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }

    Vec row(std::size_t r) const
    {
        return Vec(data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
                   data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
    }

    Vec col(std::size_t c) const
    {
        Vec v(rows_);
        for (std::size_t r = 0; r < rows_; ++r)
            v[r] = at(r, c);
        return v;
    }

    bool operator==(const Matrix& o) const
    {
        return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
    }

    Vec mul(const Vec& v) const
    {
        if (v.size() != cols_)
            throw std::invalid_argument("matrix-vector dimension mismatch");
        Vec r = zero_vec(rows_);
        for (std::size_t i = 0; i < rows_; ++i) {
            Rational s(0);
            for (std::size_t j = 0; j < cols_; ++j) {
                const Rational& a = at(i, j);
                if (!is_zero(a) && !is_zero(v[j]))
                    s += a * v[j];
            }
            r[i] = s;
        }
        return r;
    }

    Matrix mul(const Matrix& o) const
    {
        if (cols_ != o.rows_)
            throw std::invalid_argument("matrix-matrix dimension mismatch");
        Matrix r(rows_, o.cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t k = 0; k < cols_; ++k) {
                const Rational& a = at(i, k);
                if (is_zero(a))
                    continue;
                for (std::size_t j = 0; j < o.cols_; ++j) {
                    const Rational& b = o.at(k, j);
                    if (!is_zero(b))
                        r.at(i, j) += a * b;
                }
            }
        return r;
    }

    Matrix transpose() const
    {
        Matrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                t.at(j, i) = at(i, j);
        return t;
    }

    bool is_zero_matrix() const
    {
        for (const auto& x : data_)
            if (!is_zero(x))
                return false;
        return true;
    }

private:
    std::size_t rows_;
    std::size_t cols_;
    std::vector<Rational> data_;
};

struct RrefResult {
    Matrix reduced;
    std::vector<std::size_t> pivot_columns;
    std::size_t rank = 0;
};

/// Reduced row echelon form with plain left-to-right pivoting (first row with
/// a nonzero entry in the pivot column). Deterministic on equal input.
inline RrefResult rref(Matrix m)
{
    const std::size_t rows = m.rows();
    const std::size_t cols = m.cols();
    RrefResult res;
    std::size_t pivot_row = 0;
    for (std::size_t c = 0; c < cols && pivot_row < rows; ++c) {
        std::size_t sel = pivot_row;
        while (sel < rows && is_zero(m.at(sel, c)))
            ++sel;
        if (sel == rows)
            continue;
        if (sel != pivot_row)
            for (std::size_t j = c; j < cols; ++j)
                std::swap(m.at(sel, j), m.at(pivot_row, j));
        const Rational inv = Rational(1) / m.at(pivot_row, c);
        if (inv != 1)
            for (std::size_t j = c; j < cols; ++j)
                m.at(pivot_row, j) *= inv;
        for (std::size_t r = 0; r < rows; ++r) {
            if (r == pivot_row)
                continue;
            const Rational factor = m.at(r, c);
            if (is_zero(factor))
                continue;
            for (std::size_t j = c; j < cols; ++j) {
                if (!is_zero(m.at(pivot_row, j)))
                    m.at(r, j) -= factor * m.at(pivot_row, j);
            }
        }
        res.pivot_columns.push_back(c);
        ++pivot_row;
    }
    res.rank = res.pivot_columns.size();
    res.reduced = std::move(m);
    return res;
}

inline std::size_t rank(const Matrix& m) { return rref(m).rank; }

/// Basis of { v : m v = 0 }; one vector per free column, with a 1 in the free
/// slot and zeros in the other free slots.
inline std::vector<Vec> nullspace(const Matrix& m)
{
    const RrefResult r = rref(m);
    const std::size_t cols = m.cols();
    std::vector<bool> is_pivot(cols, false);
    for (std::size_t c : r.pivot_columns)
        is_pivot[c] = true;
    std::vector<Vec> basis;
    for (std::size_t f = 0; f < cols; ++f) {
        if (is_pivot[f])
            continue;
        Vec v = zero_vec(cols);
        v[f] = 1;
        for (std::size_t p = 0; p < r.pivot_columns.size(); ++p)
            v[r.pivot_columns[p]] = -r.reduced.at(p, f);
        basis.push_back(std::move(v));
    }
    return basis;
}

/// One exact solution of m x = b, free variables pinned to zero so witness
/// output is reproducible. std::nullopt when the system is inconsistent.
inline std::optional<Vec> solve(const Matrix& m, const Vec& b)
{
    if (b.size() != m.rows())
        throw std::invalid_argument("rhs length mismatch");
    Matrix aug(m.rows(), m.cols() + 1);
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j)
            aug.at(i, j) = m.at(i, j);
        aug.at(i, m.cols()) = b[i];
    }
    const RrefResult r = rref(std::move(aug));
    for (std::size_t c : r.pivot_columns)
        if (c == m.cols())
            return std::nullopt;
    Vec x = zero_vec(m.cols());
    for (std::size_t p = 0; p < r.pivot_columns.size(); ++p)
        x[r.pivot_columns[p]] = r.reduced.at(p, m.cols());
    return x;
}

} // namespace leibniz
