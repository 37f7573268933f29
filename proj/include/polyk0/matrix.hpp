#pragma once

/**
 * @file matrix.hpp
 * @brief Dense integer matrices in row-major order.
 *
 * Matrices act on column vectors: an `r x c` matrix is a map Z^c -> Z^r.
 * Products skip zero entries, which matters for the very sparse face and
 * degeneracy matrices produced by the simplicial code.
 */

#include "integer.hpp"

#include <algorithm>
#include <initializer_list>
#include <string>
#include <vector>

namespace polyk0 {

class IntMatrix {
public:
    IntMatrix() = default;
    IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    IntMatrix(std::initializer_list<std::initializer_list<long>> rows)
    {
        rows_ = rows.size();
        cols_ = rows_ == 0 ? 0 : rows.begin()->size();
        data_.reserve(rows_ * cols_);
        for (const auto& r : rows) {
            if (r.size() != cols_)
                throw Error("ragged matrix literal");
            for (long x : r)
                data_.emplace_back(x);
        }
    }

    static IntMatrix identity(std::size_t n)
    {
        IntMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i)
            m(i, i) = 1;
        return m;
    }

    static IntMatrix from_rows(const std::vector<Vec>& rows, std::size_t cols)
    {
        IntMatrix m(rows.size(), cols);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != cols)
                throw Error("row length mismatch");
            for (std::size_t j = 0; j < cols; ++j)
                m(i, j) = rows[i][j];
        }
        return m;
    }

    static IntMatrix from_columns(const std::vector<Vec>& columns, std::size_t rows)
    {
        IntMatrix m(rows, columns.size());
        for (std::size_t j = 0; j < columns.size(); ++j) {
            if (columns[j].size() != rows)
                throw Error("column length mismatch");
            for (std::size_t i = 0; i < rows; ++i)
                m(i, j) = columns[j][i];
        }
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Int& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Int& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    Vec row(std::size_t i) const { return Vec(data_.begin() + i * cols_, data_.begin() + (i + 1) * cols_); }

    Vec column(std::size_t j) const
    {
        Vec c(rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            c[i] = (*this)(i, j);
        return c;
    }

    bool is_zero() const
    {
        return std::all_of(data_.begin(), data_.end(), [](const Int& x) { return x == 0; });
    }

    IntMatrix transpose() const
    {
        IntMatrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                t(j, i) = (*this)(i, j);
        return t;
    }

    IntMatrix reduced(const CoefficientRing& ring) const&
    {
        IntMatrix m(*this);
        m.reduce_in_place(ring);
        return m;
    }

    IntMatrix reduced(const CoefficientRing& ring) &&
    {
        reduce_in_place(ring);
        return std::move(*this);
    }

    void reduce_in_place(const CoefficientRing& ring)
    {
        if (ring.is_integers())
            return;
        for (auto& x : data_)
            if (x != 0)
                mpz_fdiv_r(x.get_mpz_t(), x.get_mpz_t(), ring.modulus().get_mpz_t());
    }

    /// Rows [r0, r1) and columns [c0, c1).
    IntMatrix block(std::size_t r0, std::size_t r1, std::size_t c0, std::size_t c1) const
    {
        IntMatrix b(r1 - r0, c1 - c0);
        for (std::size_t i = r0; i < r1; ++i)
            for (std::size_t j = c0; j < c1; ++j)
                b(i - r0, j - c0) = (*this)(i, j);
        return b;
    }

    void swap_rows(std::size_t a, std::size_t b)
    {
        if (a == b)
            return;
        for (std::size_t j = 0; j < cols_; ++j)
            std::swap((*this)(a, j), (*this)(b, j));
    }

    void swap_cols(std::size_t a, std::size_t b)
    {
        if (a == b)
            return;
        for (std::size_t i = 0; i < rows_; ++i)
            std::swap((*this)(i, a), (*this)(i, b));
    }

    /// row[target] += factor * row[source]
    void add_row_multiple(std::size_t target, std::size_t source, const Int& factor)
    {
        if (factor == 0)
            return;
        for (std::size_t j = 0; j < cols_; ++j) {
            const Int& s = (*this)(source, j);
            if (s != 0)
                mpz_addmul((*this)(target, j).get_mpz_t(), factor.get_mpz_t(), s.get_mpz_t());
        }
    }

    /// col[target] += factor * col[source]
    void add_col_multiple(std::size_t target, std::size_t source, const Int& factor)
    {
        if (factor == 0)
            return;
        for (std::size_t i = 0; i < rows_; ++i) {
            const Int& s = (*this)(i, source);
            if (s != 0)
                mpz_addmul((*this)(i, target).get_mpz_t(), factor.get_mpz_t(), s.get_mpz_t());
        }
    }

    void negate_row(std::size_t i)
    {
        for (std::size_t j = 0; j < cols_; ++j)
            (*this)(i, j) = -(*this)(i, j);
    }

    Vec apply(const Vec& v) const
    {
        if (v.size() != cols_)
            throw Error("matrix-vector size mismatch");
        Vec r = zeros(rows_);
        for (std::size_t j = 0; j < cols_; ++j) {
            if (v[j] == 0)
                continue;
            for (std::size_t i = 0; i < rows_; ++i) {
                const Int& a = (*this)(i, j);
                if (a != 0)
                    mpz_addmul(r[i].get_mpz_t(), a.get_mpz_t(), v[j].get_mpz_t());
            }
        }
        return r;
    }

    /// Row vector times matrix.
    Vec apply_left(const Vec& v) const
    {
        if (v.size() != rows_)
            throw Error("vector-matrix size mismatch");
        Vec r = zeros(cols_);
        for (std::size_t i = 0; i < rows_; ++i) {
            if (v[i] == 0)
                continue;
            for (std::size_t j = 0; j < cols_; ++j) {
                const Int& a = (*this)(i, j);
                if (a != 0)
                    mpz_addmul(r[j].get_mpz_t(), a.get_mpz_t(), v[i].get_mpz_t());
            }
        }
        return r;
    }

    friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b)
    {
        if (a.cols_ != b.rows_)
            throw Error("matrix product size mismatch: " + a.shape() + " * " + b.shape());
        // sparse rows of b
        std::vector<std::vector<std::size_t>> nz(b.rows_);
        for (std::size_t k = 0; k < b.rows_; ++k)
            for (std::size_t j = 0; j < b.cols_; ++j)
                if (b(k, j) != 0)
                    nz[k].push_back(j);
        IntMatrix c(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const Int& x = a(i, k);
                if (x == 0)
                    continue;
                for (std::size_t j : nz[k])
                    mpz_addmul(c(i, j).get_mpz_t(), x.get_mpz_t(), b(k, j).get_mpz_t());
            }
        return c;
    }

    friend IntMatrix operator+(const IntMatrix& a, const IntMatrix& b)
    {
        a.require_same_shape(b);
        IntMatrix c(a);
        for (std::size_t i = 0; i < c.data_.size(); ++i)
            c.data_[i] += b.data_[i];
        return c;
    }

    friend IntMatrix operator-(const IntMatrix& a, const IntMatrix& b)
    {
        a.require_same_shape(b);
        IntMatrix c(a);
        for (std::size_t i = 0; i < c.data_.size(); ++i)
            c.data_[i] -= b.data_[i];
        return c;
    }

    friend bool operator==(const IntMatrix& a, const IntMatrix& b)
    {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

    std::string shape() const { return std::to_string(rows_) + "x" + std::to_string(cols_); }

    const std::vector<Int>& data() const { return data_; }

private:
    void require_same_shape(const IntMatrix& b) const
    {
        if (rows_ != b.rows_ || cols_ != b.cols_)
            throw Error("matrix shape mismatch: " + shape() + " vs " + b.shape());
    }

    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Int> data_;
};

inline bool equal_in(const CoefficientRing& ring, const IntMatrix& a, const IntMatrix& b)
{
    if (a.rows() != b.rows() || a.cols() != b.cols())
        return false;
    if (ring.is_integers())
        return a == b;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            if (!divides(ring.modulus(), a(i, j) - b(i, j)))
                return false;
    return true;
}

/// Block-diagonal sum.
inline IntMatrix direct_sum(const std::vector<IntMatrix>& blocks)
{
    std::size_t r = 0, c = 0;
    for (const auto& b : blocks) {
        r += b.rows();
        c += b.cols();
    }
    IntMatrix m(r, c);
    std::size_t r0 = 0, c0 = 0;
    for (const auto& b : blocks) {
        for (std::size_t i = 0; i < b.rows(); ++i)
            for (std::size_t j = 0; j < b.cols(); ++j)
                m(r0 + i, c0 + j) = b(i, j);
        r0 += b.rows();
        c0 += b.cols();
    }
    return m;
}

inline IntMatrix kronecker(const IntMatrix& a, const IntMatrix& b)
{
    IntMatrix m(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) {
            const Int& x = a(i, j);
            if (x == 0)
                continue;
            for (std::size_t k = 0; k < b.rows(); ++k)
                for (std::size_t l = 0; l < b.cols(); ++l)
                    if (b(k, l) != 0)
                        m(i * b.rows() + k, j * b.cols() + l) = x * b(k, l);
        }
    return m;
}

/// Vertical concatenation.
inline IntMatrix stack(const std::vector<IntMatrix>& parts, std::size_t cols)
{
    std::size_t r = 0;
    for (const auto& p : parts) {
        if (p.cols() != cols)
            throw Error("stack: column mismatch");
        r += p.rows();
    }
    IntMatrix m(r, cols);
    std::size_t r0 = 0;
    for (const auto& p : parts) {
        for (std::size_t i = 0; i < p.rows(); ++i)
            for (std::size_t j = 0; j < cols; ++j)
                m(r0 + i, j) = p(i, j);
        r0 += p.rows();
    }
    return m;
}

} // namespace polyk0
