#pragma once

/**
 * @file functors.hpp
 * @brief Polynomial functors on free modules, acting on matrices.
 *
 * Bases: Sym^d on nondecreasing index tuples in lexicographic order, Lambda^d
 * on increasing index tuples, the d-fold tensor power on index tuples with the
 * leftmost factor most significant.
 */

#include "matrix.hpp"

#include <functional>
#include <map>
#include <sstream>

namespace polyk0 {

namespace detail {

/// Nondecreasing (strict = false) or increasing (strict = true) tuples of
/// length d over [0, a), in lexicographic order.
inline std::vector<std::vector<std::size_t>> index_tuples(std::size_t a, std::size_t d, bool strict)
{
    std::vector<std::vector<std::size_t>> out;
    std::vector<std::size_t> cur;
    std::function<void(std::size_t)> rec = [&](std::size_t start) {
        if (cur.size() == d) {
            out.push_back(cur);
            return;
        }
        for (std::size_t i = start; i < a; ++i) {
            cur.push_back(i);
            rec(strict ? i + 1 : i);
            cur.pop_back();
        }
    };
    rec(0);
    return out;
}

/// Position of a sorted tuple in the lexicographic list of index_tuples(a, d, strict).
class TupleRanker {
public:
    TupleRanker(std::size_t a, std::size_t d, bool strict) : a_(a), d_(d), strict_(strict)
    {
        // count_[len][start]: tuples of length len with entries in [start, a)
        count_.assign(d + 1, std::vector<std::size_t>(a + 2, 0));
        for (std::size_t start = 0; start <= a + 1; ++start)
            count_[0][start] = 1;
        for (std::size_t len = 1; len <= d; ++len)
            for (std::size_t start = a + 1; start-- > 0;) {
                if (start >= a)
                    continue;
                // first entry is start, or all entries exceed start
                count_[len][start] = count_[len - 1][strict ? start + 1 : start] + count_[len][start + 1];
            }
    }

    std::size_t rank(const std::vector<std::size_t>& t) const
    {
        std::size_t r = 0, lo = 0;
        for (std::size_t pos = 0; pos < d_; ++pos) {
            for (std::size_t v = lo; v < t[pos]; ++v)
                r += count_[d_ - pos - 1][strict_ ? v + 1 : v];
            lo = strict_ ? t[pos] + 1 : t[pos];
        }
        return r;
    }

private:
    std::size_t a_, d_;
    bool strict_;
    std::vector<std::vector<std::size_t>> count_;
};

/// Sparse nonzero entries of each column.
inline std::vector<std::vector<std::pair<std::size_t, Int>>> sparse_columns(const IntMatrix& A)
{
    std::vector<std::vector<std::pair<std::size_t, Int>>> cols(A.cols());
    for (std::size_t i = 0; i < A.rows(); ++i)
        for (std::size_t j = 0; j < A.cols(); ++j)
            if (A(i, j) != 0)
                cols[j].emplace_back(i, A(i, j));
    return cols;
}

/// Sym^d(A) (strict = false) or Lambda^d(A) (strict = true): the image of a
/// basis tuple is the product of the corresponding columns of A, expanded by
/// choosing one nonzero entry from each column.
inline IntMatrix power_of_matrix(const IntMatrix& A, std::size_t d, bool strict)
{
    auto src = index_tuples(A.cols(), d, strict);
    TupleRanker ranker(A.rows(), d, strict);
    const std::size_t out_rows = index_tuples(A.rows(), d, strict).size();
    auto cols = sparse_columns(A);
    IntMatrix out(out_rows, src.size());
    std::vector<std::size_t> rows(d), sorted(d);
    for (std::size_t c = 0; c < src.size(); ++c) {
        const auto& tuple = src[c];
        std::function<void(std::size_t, const Int&)> rec = [&](std::size_t pos, const Int& coeff) {
            if (pos == d) {
                sorted = rows;
                bool odd = false;
                if (strict) {
                    // insertion sort, tracking the permutation sign
                    for (std::size_t i = 1; i < d; ++i)
                        for (std::size_t j = i; j > 0 && sorted[j - 1] > sorted[j]; --j) {
                            std::swap(sorted[j - 1], sorted[j]);
                            odd = !odd;
                        }
                } else {
                    std::sort(sorted.begin(), sorted.end());
                }
                Int& target = out(ranker.rank(sorted), c);
                if (odd)
                    target -= coeff;
                else
                    target += coeff;
                return;
            }
            for (const auto& [r, x] : cols[tuple[pos]]) {
                if (strict) {
                    bool repeated = false;
                    for (std::size_t q = 0; q < pos && !repeated; ++q)
                        repeated = rows[q] == r;
                    if (repeated)
                        continue;
                }
                rows[pos] = r;
                rec(pos + 1, coeff * x);
            }
        };
        rec(0, Int(1));
    }
    return out;
}

inline IntMatrix sym_power(const IntMatrix& A, std::size_t d) { return power_of_matrix(A, d, false); }
inline IntMatrix ext_power(const IntMatrix& A, std::size_t d) { return power_of_matrix(A, d, true); }

} // namespace detail

class FunctorSpec {
public:
    enum class Kind { sym, ext, tensor, frobenius, direct_sum, constant };

    static FunctorSpec sym(std::size_t d) { return make(Kind::sym, d); }
    static FunctorSpec ext(std::size_t d) { return make(Kind::ext, d); }
    static FunctorSpec tensor(std::size_t d) { return make(Kind::tensor, d); }
    /// Frobenius twist over Z/p.
    static FunctorSpec frobenius(std::size_t p)
    {
        if (!is_prime(Int(static_cast<unsigned long>(p))))
            throw Error("frobenius twist needs a prime, got " + std::to_string(p));
        return make(Kind::frobenius, p);
    }
    /// Constant functor with value a free module of the given rank.
    static FunctorSpec constant(std::size_t rank)
    {
        FunctorSpec f;
        f.kind_ = Kind::constant;
        f.n_ = rank;
        return f;
    }
    static FunctorSpec direct_sum(std::vector<FunctorSpec> parts)
    {
        if (parts.empty())
            throw Error("direct sum of no functors");
        FunctorSpec f;
        f.kind_ = Kind::direct_sum;
        f.parts_ = std::move(parts);
        return f;
    }

    /// "sym:2", "ext:3", "tensor:2", "frobenius:3" (or "twist:3"), "const:1",
    /// joined with '+' for direct sums.
    static FunctorSpec parse(const std::string& text)
    {
        std::vector<FunctorSpec> parts;
        std::stringstream ss(text);
        std::string item;
        while (std::getline(ss, item, '+')) {
            auto colon = item.find(':');
            if (colon == std::string::npos)
                throw Error("functor '" + item + "' must look like kind:n");
            std::string kind = item.substr(0, colon), num = item.substr(colon + 1);
            std::size_t n = 0;
            try {
                std::size_t used = 0;
                n = std::stoul(num, &used);
                if (used != num.size())
                    throw std::invalid_argument(num);
            } catch (const std::exception&) {
                throw Error("functor '" + item + "': bad number '" + num + "'");
            }
            if (kind == "sym")
                parts.push_back(sym(n));
            else if (kind == "ext")
                parts.push_back(ext(n));
            else if (kind == "tensor")
                parts.push_back(tensor(n));
            else if (kind == "frobenius" || kind == "twist")
                parts.push_back(frobenius(n));
            else if (kind == "const")
                parts.push_back(constant(n));
            else
                throw Error("unknown functor kind '" + kind + "'");
        }
        if (parts.empty())
            throw Error("empty functor description");
        return parts.size() == 1 ? parts[0] : direct_sum(std::move(parts));
    }

    Kind kind() const { return kind_; }
    std::size_t parameter() const { return n_; }
    const std::vector<FunctorSpec>& parts() const { return parts_; }

    /// Polynomial degree as a functor on modules. The Frobenius twist is
    /// additive, so it has degree 1.
    std::size_t degree() const
    {
        switch (kind_) {
        case Kind::sym:
        case Kind::ext:
        case Kind::tensor:
            return n_;
        case Kind::frobenius:
            return 1;
        case Kind::constant:
            return 0;
        case Kind::direct_sum: {
            std::size_t d = 0;
            for (const auto& p : parts_)
                d = std::max(d, p.degree());
            return d;
        }
        }
        return 0;
    }

    /// Rank of F(R^a).
    std::size_t output_rank(std::size_t a) const
    {
        switch (kind_) {
        case Kind::sym:
            return binomial(Int(static_cast<unsigned long>(a + n_)) - 1, n_).get_ui();
        case Kind::ext:
            return binomial(Int(static_cast<unsigned long>(a)), n_).get_ui();
        case Kind::tensor: {
            std::size_t r = 1;
            for (std::size_t i = 0; i < n_; ++i)
                r *= a;
            return r;
        }
        case Kind::frobenius:
            return a;
        case Kind::constant:
            return n_;
        case Kind::direct_sum: {
            std::size_t r = 0;
            for (const auto& p : parts_)
                r += p.output_rank(a);
            return r;
        }
        }
        return 0;
    }

    void require_ring(const CoefficientRing& ring) const
    {
        if (kind_ == Kind::frobenius && (ring.is_integers() || ring.modulus() != static_cast<unsigned long>(n_)))
            throw Error("frobenius:" + std::to_string(n_) + " is only defined over Z/" + std::to_string(n_) +
                        ", not over " + ring.name());
        if ((kind_ == Kind::sym || kind_ == Kind::ext || kind_ == Kind::tensor) && n_ == 0)
            throw Error(name() + ": degree must be at least 1");
        for (const auto& p : parts_)
            p.require_ring(ring);
    }

    /// F(A) for A: R^a -> R^b given as a b x a matrix, reduced into the ring.
    IntMatrix apply(const IntMatrix& A, const CoefficientRing& ring) const
    {
        require_ring(ring);
        IntMatrix out;
        switch (kind_) {
        case Kind::sym:
            out = detail::sym_power(A, n_);
            break;
        case Kind::ext:
            out = detail::ext_power(A, n_);
            break;
        case Kind::tensor:
            out = IntMatrix::identity(1);
            for (std::size_t i = 0; i < n_; ++i)
                out = kronecker(out, A);
            break;
        case Kind::frobenius:
            // entrywise p-th power; over the prime field this is the identity on entries
            out = IntMatrix(A.rows(), A.cols());
            for (std::size_t i = 0; i < A.rows(); ++i)
                for (std::size_t j = 0; j < A.cols(); ++j) {
                    Int x;
                    Int m = ring.modulus();
                    mpz_powm_ui(x.get_mpz_t(), mod_floor(A(i, j), m).get_mpz_t(), n_, m.get_mpz_t());
                    out(i, j) = x;
                }
            break;
        case Kind::constant:
            out = IntMatrix::identity(n_);
            break;
        case Kind::direct_sum: {
            std::vector<IntMatrix> blocks;
            for (const auto& p : parts_)
                blocks.push_back(p.apply(A, ring));
            out = polyk0::direct_sum(blocks);
            break;
        }
        }
        return out.reduced(ring);
    }

    std::string name() const
    {
        switch (kind_) {
        case Kind::sym:
            return "sym:" + std::to_string(n_);
        case Kind::ext:
            return "ext:" + std::to_string(n_);
        case Kind::tensor:
            return "tensor:" + std::to_string(n_);
        case Kind::frobenius:
            return "frobenius:" + std::to_string(n_);
        case Kind::constant:
            return "const:" + std::to_string(n_);
        case Kind::direct_sum: {
            std::string s;
            for (const auto& p : parts_)
                s += (s.empty() ? "" : "+") + p.name();
            return s;
        }
        }
        return "";
    }

private:
    static FunctorSpec make(Kind k, std::size_t n)
    {
        FunctorSpec f;
        f.kind_ = k;
        f.n_ = n;
        return f;
    }

    Kind kind_ = Kind::tensor;
    std::size_t n_ = 1;
    std::vector<FunctorSpec> parts_;
};

} // namespace polyk0
