#pragma once

/**
 * @file monoid_ring.hpp
 * @brief Quotients R[M] / I^{n+1} of monoid algebras by powers of the
 * augmentation ideal.
 *
 * Elements of a quotient are stored in the normal coordinates of its
 * additive group. Products are computed on lifts in an "ambient" free
 * module and reduced back:
 *
 *  - FREE monoid N^k: ambient basis = monomials t^a, |a| <= n, in the
 *    shifted variables t_i = x_i - 1 (degree-lex order). Monomials of degree
 *    > n are already zero, so the ambient module is the quotient itself.
 *  - FINITE monoid: ambient basis = monoid elements. I^{n+1} is built as
 *    J_0 = R[M], J_{k+1} = span{ b * (g - 1) : b in basis(J_k), g a monoid
 *    generator }, which equals I^{k+1} because J_k is an ideal and I is
 *    generated as an ideal by the (g - 1).
 */

#include "monoid.hpp"

#include <functional>
#include <sstream>

namespace polyk0 {

class MonoidAlgebraQuotient {
public:
    const CommMonoid& monoid() const { return monoid_; }
    std::size_t degree() const { return degree_; }
    const CoefficientRing& coefficients() const { return ring_; }
    const FgAbelianGroup& group() const { return group_; }
    std::size_t ambient_dim() const { return monoid_.is_free() ? monomials_.size() : monoid_.size(); }

    /// FREE only: exponent tuples of the ambient basis.
    const std::vector<std::vector<std::size_t>>& monomials() const { return monomials_; }

    /// Number of cyclic summands: free rank plus invariant factors. Over F_p
    /// this is the dimension.
    std::size_t dimension() const { return group_.dim(); }

    Vec ambient_class(const Coords& m) const
    {
        monoid_.require(m);
        if (monoid_.is_finite())
            return unit_vector(monoid_.size(), m[0].get_ui());
        // x^e = prod (1 + t_i)^{e_i}
        Vec v = zeros(monomials_.size());
        for (std::size_t b = 0; b < monomials_.size(); ++b) {
            Int c = 1;
            for (std::size_t i = 0; i < m.size() && c != 0; ++i)
                c *= binomial(m[i], monomials_[b][i]);
            v[b] = c;
        }
        return v;
    }

    Vec ambient_product(const Vec& u, const Vec& v) const
    {
        Vec w = zeros(ambient_dim());
        if (monoid_.is_finite()) {
            const auto& t = monoid_.table();
            for (std::size_t a = 0; a < u.size(); ++a) {
                if (u[a] == 0)
                    continue;
                for (std::size_t b = 0; b < v.size(); ++b)
                    if (v[b] != 0)
                        mpz_addmul(w[t[a][b]].get_mpz_t(), u[a].get_mpz_t(), v[b].get_mpz_t());
            }
            return w;
        }
        std::vector<std::size_t> sum(monoid_.rank());
        for (std::size_t a = 0; a < u.size(); ++a) {
            if (u[a] == 0)
                continue;
            for (std::size_t b = 0; b < v.size(); ++b) {
                if (v[b] == 0)
                    continue;
                std::size_t total = 0;
                for (std::size_t i = 0; i < sum.size(); ++i) {
                    sum[i] = monomials_[a][i] + monomials_[b][i];
                    total += sum[i];
                }
                if (total > degree_)
                    continue;
                mpz_addmul(w[monomial_index_.at(sum)].get_mpz_t(), u[a].get_mpz_t(), v[b].get_mpz_t());
            }
        }
        return w;
    }

    Vec reduce_ambient(const Vec& x) const { return group_.reduce(x); }
    Vec lift(const Vec& a) const { return group_.lift(a); }

    Vec class_of(const Coords& m) const { return reduce_ambient(ambient_class(m)); }
    Vec one() const { return class_of(monoid_.identity()); }
    Vec zero() const { return group_.zero(); }

    Vec add(const Vec& a, const Vec& b) const { return group_.add(a, b); }
    Vec sub(const Vec& a, const Vec& b) const { return group_.sub(a, b); }
    Vec mul(const Int& c, const Vec& a) const { return group_.mul(c, a); }

    Vec multiply(const Vec& a, const Vec& b) const { return reduce_ambient(ambient_product(lift(a), lift(b))); }

    Vec power(const Vec& a, std::size_t k) const
    {
        Vec r = one();
        for (std::size_t i = 0; i < k; ++i)
            r = multiply(r, a);
        return r;
    }

    bool is_zero(const Vec& a) const { return polyk0::is_zero(group_.normalize(a)); }

    /// Ring map to R: every monoid element goes to 1.
    Int augmentation(const Vec& a) const
    {
        Vec x = lift(a);
        Int s = 0;
        if (monoid_.is_free())
            s = x.empty() ? Int(0) : x[0];
        else
            for (const auto& c : x)
                s += c;
        return ring_.reduce(s);
    }

    /// Structure constants: entry [i][j] is basis_i * basis_j in normal coordinates.
    std::vector<std::vector<Vec>> multiplication_table() const
    {
        const std::size_t d = group_.dim();
        std::vector<std::vector<Vec>> t(d, std::vector<Vec>(d));
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j)
                t[i][j] = multiply(unit_vector(d, i), unit_vector(d, j));
        return t;
    }

    /// Labels of the normal-coordinate generators.
    std::vector<std::string> basis_labels() const
    {
        std::vector<std::string> labels;
        for (std::size_t k = 0; k < group_.dim(); ++k) {
            Vec x = lift(unit_vector(group_.dim(), k));
            labels.push_back(monoid_.is_free() ? free_label(x) : finite_label(x));
        }
        return labels;
    }

    std::string monomial_label(std::size_t b) const
    {
        const auto& a = monomials_[b];
        std::ostringstream os;
        bool any = false;
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (a[i] == 0)
                continue;
            os << (any ? "*" : "") << "t";
            if (a.size() > 1)
                os << (i + 1);
            if (a[i] > 1)
                os << "^" << a[i];
            any = true;
        }
        return any ? os.str() : "1";
    }

private:
    friend MonoidAlgebraQuotient aug_ideal_power_quotient(const CommMonoid&, std::size_t, const CoefficientRing&);

    MonoidAlgebraQuotient(CommMonoid m, std::size_t n, CoefficientRing r)
        : monoid_(std::move(m)), degree_(n), ring_(std::move(r))
    {
    }

    std::string free_label(const Vec& x) const { return combination(x, [&](std::size_t b) { return monomial_label(b); }); }

    std::string finite_label(const Vec& x) const
    {
        return combination(x, [](std::size_t b) { return "[" + std::to_string(b) + "]"; });
    }

    static std::string combination(const Vec& x, const std::function<std::string(std::size_t)>& name)
    {
        std::ostringstream os;
        bool first = true;
        for (std::size_t b = 0; b < x.size(); ++b) {
            if (x[b] == 0)
                continue;
            Int c = x[b];
            if (first)
                os << (c < 0 ? "-" : "");
            else
                os << (c < 0 ? " - " : " + ");
            Int a = abs(c);
            if (a != 1)
                os << a.get_str() << "*";
            os << name(b);
            first = false;
        }
        return first ? "0" : os.str();
    }

    CommMonoid monoid_;
    std::size_t degree_;
    CoefficientRing ring_;
    FgAbelianGroup group_;
    std::vector<std::vector<std::size_t>> monomials_;
    std::map<std::vector<std::size_t>, std::size_t> monomial_index_;
};

namespace detail {

/// Exponent tuples of total degree <= n in k variables, degree-lex
/// (by degree, then lexicographically descending so t1 precedes t2).
inline std::vector<std::vector<std::size_t>> monomials_up_to(std::size_t k, std::size_t n)
{
    std::vector<std::vector<std::size_t>> out;
    for (std::size_t d = 0; d <= n; ++d) {
        std::vector<std::vector<std::size_t>> level;
        std::vector<std::size_t> a(k, 0);
        std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t i, std::size_t left) {
            if (k == 0) {
                if (left == 0)
                    level.push_back(a);
                return;
            }
            if (i + 1 == k) {
                a[i] = left;
                level.push_back(a);
                return;
            }
            for (std::size_t x = left + 1; x-- > 0;) {
                a[i] = x;
                rec(i + 1, left - x);
            }
        };
        rec(0, d);
        out.insert(out.end(), level.begin(), level.end());
    }
    return out;
}

} // namespace detail

inline MonoidAlgebraQuotient aug_ideal_power_quotient(const CommMonoid& M, std::size_t n, const CoefficientRing& R)
{
    MonoidAlgebraQuotient Q(M, n, R);
    if (M.is_free()) {
        Q.monomials_ = detail::monomials_up_to(M.rank(), n);
        for (std::size_t b = 0; b < Q.monomials_.size(); ++b)
            Q.monomial_index_[Q.monomials_[b]] = b;
        const std::size_t N = Q.monomials_.size();
        IntMatrix rels(R.is_integers() ? 0 : N, N);
        if (!R.is_integers())
            for (std::size_t i = 0; i < N; ++i)
                rels(i, i) = R.modulus();
        Q.group_ = FgAbelianGroup::from_relations(N, rels);
        return Q;
    }

    const std::size_t s = M.size();
    const auto& table = M.table();
    const auto gens = M.generators();
    auto with_modulus = [&](std::vector<Vec> rows) {
        if (!R.is_integers()) {
            for (auto& r : rows)
                r = R.reduce(r);
            for (std::size_t i = 0; i < s; ++i)
                rows.push_back(scale(R.modulus(), unit_vector(s, i)));
        }
        return rows;
    };

    IntMatrix J = IntMatrix::identity(s);
    for (std::size_t step = 0; step <= n; ++step) {
        std::vector<Vec> rows;
        for (std::size_t i = 0; i < J.rows(); ++i) {
            Vec b = J.row(i);
            for (const auto& g : gens) {
                std::size_t gi = g[0].get_ui();
                Vec r = -b;
                for (std::size_t x = 0; x < s; ++x)
                    if (b[x] != 0)
                        r[table[x][gi]] += b[x];
                if (!is_zero(r))
                    rows.push_back(std::move(r));
            }
        }
        rows = with_modulus(std::move(rows));
        J = rows.empty() ? IntMatrix(0, s) : row_basis(IntMatrix::from_rows(rows, s));
    }
    std::vector<Vec> rels;
    for (std::size_t i = 0; i < J.rows(); ++i)
        rels.push_back(J.row(i));
    rels = with_modulus(std::move(rels));
    Q.group_ = FgAbelianGroup::from_relations(s, IntMatrix::from_rows(rels, s));
    return Q;
}

/// m^{-1} = sum_{k=0}^{n} (1 - m)^k, since (m - 1)^{n+1} = 0 in the quotient.
inline Vec invert_monoid_element(const MonoidAlgebraQuotient& Q, const Coords& m)
{
    Vec one = Q.one();
    Vec u = Q.sub(one, Q.class_of(m));
    Vec term = one, acc = one;
    for (std::size_t k = 1; k <= Q.degree(); ++k) {
        term = Q.multiply(term, u);
        acc = Q.add(acc, term);
    }
    return acc;
}

/// R_n V for V = (F_p)^k: F_p[V] / I^{n+1}.
inline MonoidAlgebraQuotient passi_functor(std::size_t k, std::size_t n, unsigned long p,
                                           std::size_t cap = kDefaultFiniteCap)
{
    if (!is_prime(Int(p)))
        throw Error("passi_functor: " + std::to_string(p) + " is not prime");
    return aug_ideal_power_quotient(CommMonoid::vector_space(p, k, cap), n, CoefficientRing::mod(Int(p)));
}

/// The natural surjection R[M]/I^{n+1} -> R[M]/I^{m+1} for m <= n.
inline Vec project_to_lower(const MonoidAlgebraQuotient& high, const MonoidAlgebraQuotient& low, const Vec& a)
{
    if (low.degree() > high.degree())
        throw Error("project_to_lower: target degree exceeds source degree");
    Vec x = high.lift(a);
    if (high.monoid().is_finite())
        return low.reduce_ambient(x);
    Vec y = zeros(low.ambient_dim());
    for (std::size_t b = 0; b < y.size(); ++b)
        y[b] = x[b]; // low monomials are a prefix of the high ones
    return low.reduce_ambient(y);
}

} // namespace polyk0
