#pragma once

/**
 * @file linalg.hpp
 * @brief Exact linear algebra over Z and over prime fields.
 *
 * Smith normal form, integer row echelon form with unimodular transforms,
 * saturated integer kernels and their left inverses, Bareiss determinants,
 * and a reduced-row-echelon engine over F_p used for large sparse stacks of
 * face matrices.
 */

#include "matrix.hpp"

#include <cstdint>
#include <optional>

namespace polyk0 {

/// U * A * V = D with U, V unimodular and D diagonal, d_1 | d_2 | ... .
struct SmithForm {
    IntMatrix U;
    IntMatrix D;
    IntMatrix V;
    IntMatrix V_inv;
    std::size_t rank = 0;

    /// Diagonal entries d_0 .. d_{min(rows, cols) - 1}.
    Vec diagonal() const
    {
        Vec d;
        for (std::size_t i = 0; i < std::min(D.rows(), D.cols()); ++i)
            d.push_back(D(i, i));
        return d;
    }
};

namespace detail {

inline bool find_min_abs(const IntMatrix& D, std::size_t r0, std::size_t c0, std::size_t r1, std::size_t c1,
                         std::size_t& pi, std::size_t& pj)
{
    bool found = false;
    Int best;
    for (std::size_t i = r0; i < r1; ++i)
        for (std::size_t j = c0; j < c1; ++j) {
            const Int& x = D(i, j);
            if (x == 0)
                continue;
            if (!found || mpz_cmpabs(x.get_mpz_t(), best.get_mpz_t()) < 0) {
                best = abs(x);
                pi = i;
                pj = j;
                found = true;
            }
        }
    return found;
}

inline SmithForm smith(const IntMatrix& A, bool track_left)
{
    const std::size_t m = A.rows(), n = A.cols();
    SmithForm s;
    s.D = A;
    if (track_left)
        s.U = IntMatrix::identity(m);
    s.V = IntMatrix::identity(n);
    s.V_inv = IntMatrix::identity(n);
    IntMatrix& D = s.D;

    auto row_op = [&](std::size_t target, std::size_t source, const Int& f) {
        D.add_row_multiple(target, source, f);
        if (track_left)
            s.U.add_row_multiple(target, source, f);
    };
    auto row_swap = [&](std::size_t a, std::size_t b) {
        D.swap_rows(a, b);
        if (track_left)
            s.U.swap_rows(a, b);
    };
    auto col_op = [&](std::size_t target, std::size_t source, const Int& f) {
        D.add_col_multiple(target, source, f);
        s.V.add_col_multiple(target, source, f);
        s.V_inv.add_row_multiple(source, target, -f);
    };
    auto col_swap = [&](std::size_t a, std::size_t b) {
        D.swap_cols(a, b);
        s.V.swap_cols(a, b);
        s.V_inv.swap_rows(a, b);
    };

    const std::size_t steps = std::min(m, n);
    std::size_t t = 0;
    for (; t < steps; ++t) {
        std::size_t pi = 0, pj = 0;
        if (!find_min_abs(D, t, t, m, n, pi, pj))
            break;
        row_swap(t, pi);
        col_swap(t, pj);
        for (;;) {
            for (std::size_t i = t + 1; i < m; ++i)
                if (D(i, t) != 0)
                    row_op(i, t, -div_trunc(D(i, t), D(t, t)));
            if (find_min_abs(D, t + 1, t, m, t + 1, pi, pj)) {
                row_swap(t, pi);
                continue;
            }
            for (std::size_t j = t + 1; j < n; ++j)
                if (D(t, j) != 0)
                    col_op(j, t, -div_trunc(D(t, j), D(t, t)));
            if (find_min_abs(D, t, t + 1, t + 1, n, pi, pj)) {
                col_swap(t, pj);
                continue;
            }
            bool fixed = false;
            for (std::size_t i = t + 1; i < m && !fixed; ++i)
                for (std::size_t j = t + 1; j < n; ++j)
                    if (!divides(D(t, t), D(i, j))) {
                        row_op(t, i, Int(1));
                        fixed = true;
                        break;
                    }
            if (!fixed)
                break;
        }
        if (D(t, t) < 0) {
            D.negate_row(t);
            if (track_left)
                s.U.negate_row(t);
        }
    }
    s.rank = t;
    return s;
}

} // namespace detail

/// Smith normal form with pivot = minimal nonzero |entry|, ties broken by
/// smallest (row, col). Deterministic for a fixed input.
inline SmithForm smith_normal_form(const IntMatrix& A) { return detail::smith(A, true); }

/// Row echelon form H = T * A over Z with T unimodular (when tracked).
/// Pivots are positive; rows below `rank` are zero.
struct Echelon {
    IntMatrix H;
    IntMatrix T;
    std::size_t rank = 0;
    std::vector<std::size_t> pivot_cols;
};

inline Echelon row_echelon(const IntMatrix& A, bool track_transform)
{
    Echelon e;
    e.H = A;
    const std::size_t m = A.rows(), n = A.cols();
    if (track_transform)
        e.T = IntMatrix::identity(m);
    auto row_op = [&](std::size_t target, std::size_t source, const Int& f) {
        e.H.add_row_multiple(target, source, f);
        if (track_transform)
            e.T.add_row_multiple(target, source, f);
    };
    auto row_swap = [&](std::size_t a, std::size_t b) {
        e.H.swap_rows(a, b);
        if (track_transform)
            e.T.swap_rows(a, b);
    };
    std::size_t r = 0;
    for (std::size_t c = 0; c < n && r < m; ++c) {
        std::size_t pi = 0, pj = 0;
        if (!detail::find_min_abs(e.H, r, c, m, c + 1, pi, pj))
            continue;
        for (;;) {
            row_swap(r, pi);
            for (std::size_t i = r + 1; i < m; ++i)
                if (e.H(i, c) != 0)
                    row_op(i, r, -div_trunc(e.H(i, c), e.H(r, c)));
            if (!detail::find_min_abs(e.H, r + 1, c, m, c + 1, pi, pj))
                break;
        }
        if (e.H(r, c) < 0) {
            e.H.negate_row(r);
            if (track_transform)
                e.T.negate_row(r);
        }
        e.pivot_cols.push_back(c);
        ++r;
    }
    e.rank = r;
    return e;
}

/// Basis of the Z-span of the rows of A.
inline IntMatrix row_basis(const IntMatrix& A)
{
    Echelon e = row_echelon(A, false);
    return e.H.block(0, e.rank, 0, A.cols());
}

/// Saturated basis (as columns) of {v in Z^n : A v = 0}.
inline IntMatrix integer_kernel(const IntMatrix& A)
{
    Echelon e = row_echelon(A.transpose(), true);
    const std::size_t n = A.cols();
    return e.T.block(e.rank, n, 0, n).transpose();
}

/// L with L * B = I for a saturated integer basis B (columns).
inline IntMatrix left_inverse(const IntMatrix& B)
{
    SmithForm s = smith_normal_form(B);
    if (s.rank != B.cols())
        throw Error("left_inverse: columns are not independent");
    for (std::size_t i = 0; i < s.rank; ++i)
        if (s.D(i, i) != 1)
            throw Error("left_inverse: lattice is not saturated");
    // B = U^-1 [I; 0] V^-1, so L = V [I 0] U.
    return s.V * s.U.block(0, B.cols(), 0, B.rows());
}

/// Bareiss fraction-free determinant.
inline Int determinant(const IntMatrix& A)
{
    if (A.rows() != A.cols())
        throw Error("determinant of non-square matrix");
    const std::size_t n = A.rows();
    if (n == 0)
        return 1;
    IntMatrix M(A);
    Int sign = 1, prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (M(k, k) == 0) {
            std::size_t swap = k + 1;
            while (swap < n && M(swap, k) == 0)
                ++swap;
            if (swap == n)
                return 0;
            M.swap_rows(k, swap);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j) {
                Int v = M(i, j) * M(k, k) - M(i, k) * M(k, j);
                mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
                M(i, j) = v;
            }
        prev = M(k, k);
    }
    return sign * M(n - 1, n - 1);
}

inline std::size_t integer_rank(const IntMatrix& A) { return row_echelon(A, false).rank; }

namespace modp {

using Residue = std::uint64_t;

inline Residue to_residue(const Int& x, Residue p)
{
    return mpz_fdiv_ui(x.get_mpz_t(), static_cast<unsigned long>(p));
}

inline Residue inverse(Residue a, Residue p)
{
    // p prime: a^(p-2)
    Residue result = 1, base = a % p, e = p - 2;
    while (e > 0) {
        if (e & 1)
            result = result * base % p;
        base = base * base % p;
        e >>= 1;
    }
    return result;
}

/// Incrementally maintained reduced row echelon form over F_p.
class Rref {
public:
    Rref(Residue p, std::size_t cols) : p_(p), cols_(cols)
    {
        if (p < 2 || p >= (Residue(1) << 31))
            throw Error("modp::Rref: modulus out of range");
    }

    std::size_t rank() const { return rows_.size(); }
    std::size_t cols() const { return cols_; }
    const std::vector<std::size_t>& pivots() const { return pivots_; }

    /// Returns true when the row was independent of those already inserted.
    bool insert(std::vector<Residue> v)
    {
        for (std::size_t r = 0; r < rows_.size(); ++r) {
            Residue c = v[pivots_[r]];
            if (c != 0)
                axpy(v, p_ - c, rows_[r]);
        }
        std::size_t lead = 0;
        while (lead < cols_ && v[lead] == 0)
            ++lead;
        if (lead == cols_)
            return false;
        Residue inv = inverse(v[lead], p_);
        for (auto& x : v)
            x = x * inv % p_;
        for (auto& row : rows_) {
            Residue c = row[lead];
            if (c != 0)
                axpy(row, p_ - c, v);
        }
        rows_.push_back(std::move(v));
        pivots_.push_back(lead);
        return true;
    }

    void insert_rows(const IntMatrix& A)
    {
        if (A.cols() != cols_)
            throw Error("modp::Rref: column mismatch");
        std::vector<Residue> v(cols_);
        for (std::size_t i = 0; i < A.rows(); ++i) {
            bool nonzero = false;
            for (std::size_t j = 0; j < cols_; ++j) {
                v[j] = to_residue(A(i, j), p_);
                nonzero = nonzero || v[j] != 0;
            }
            if (nonzero)
                insert(v);
        }
    }

    /// Free (non-pivot) columns in increasing order.
    std::vector<std::size_t> free_columns() const
    {
        std::vector<bool> is_pivot(cols_, false);
        for (auto c : pivots_)
            is_pivot[c] = true;
        std::vector<std::size_t> f;
        for (std::size_t c = 0; c < cols_; ++c)
            if (!is_pivot[c])
                f.push_back(c);
        return f;
    }

    /// Kernel basis as columns; the basis vector for free column f is 1 at f
    /// and 0 at every other free column, so kernel coordinates of a vector
    /// are read off at the free columns.
    IntMatrix kernel() const
    {
        auto fc = free_columns();
        IntMatrix K(cols_, fc.size());
        for (std::size_t b = 0; b < fc.size(); ++b) {
            K(fc[b], b) = 1;
            for (std::size_t r = 0; r < rows_.size(); ++r) {
                Residue x = rows_[r][fc[b]];
                if (x != 0)
                    K(pivots_[r], b) = static_cast<unsigned long>((p_ - x) % p_);
            }
        }
        return K;
    }

private:
    void axpy(std::vector<Residue>& v, Residue c, const std::vector<Residue>& w) const
    {
        for (std::size_t j = 0; j < cols_; ++j)
            if (w[j] != 0)
                v[j] = (v[j] + c * w[j]) % p_;
    }

    Residue p_;
    std::size_t cols_;
    std::vector<std::vector<Residue>> rows_;
    std::vector<std::size_t> pivots_;
};

inline std::size_t rank(const IntMatrix& A, Residue p)
{
    Rref r(p, A.cols());
    r.insert_rows(A);
    return r.rank();
}

inline IntMatrix kernel(const IntMatrix& A, Residue p)
{
    Rref r(p, A.cols());
    r.insert_rows(A);
    return r.kernel();
}

} // namespace modp

} // namespace polyk0
