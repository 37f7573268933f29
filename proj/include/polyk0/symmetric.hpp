#pragma once

/**
 * @file symmetric.hpp
 * @brief Symmetric polynomials in the monomial basis, characters of
 * homogeneous polynomial functors, and Newton's identities.
 *
 * A partition is stored with its parts in descending order; m_lambda is the
 * sum of all distinct monomials whose exponent multiset is lambda.
 */

#include "functors.hpp"

#include <map>
#include <sstream>
#include <variant>

namespace polyk0 {

using Partition = std::vector<std::size_t>;
using Exponents = std::vector<std::size_t>;

/// Partitions of n with at most max_parts parts, in reverse lexicographic order.
inline std::vector<Partition> partitions(std::size_t n, std::size_t max_parts)
{
    std::vector<Partition> out;
    Partition cur;
    std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t left, std::size_t largest) {
        if (left == 0) {
            out.push_back(cur);
            return;
        }
        if (cur.size() == max_parts)
            return;
        for (std::size_t part = std::min(left, largest); part >= 1; --part) {
            cur.push_back(part);
            rec(left - part, part);
            cur.pop_back();
        }
    };
    rec(n, n);
    return out;
}

/// n! / prod k_i!
inline Int multinomial(const std::vector<std::size_t>& parts)
{
    std::size_t n = 0;
    for (auto k : parts)
        n += k;
    Int r = factorial(n);
    for (auto k : parts)
        r /= factorial(k);
    return r;
}

class SymmetricPolynomial {
public:
    SymmetricPolynomial(std::size_t nvars, std::size_t degree) : nvars_(nvars), degree_(degree) {}

    std::size_t nvars() const { return nvars_; }
    std::size_t degree() const { return degree_; }
    const std::map<Partition, Int>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    Int coefficient(const Partition& lambda) const
    {
        auto it = terms_.find(lambda);
        return it == terms_.end() ? Int(0) : it->second;
    }

    void add(Partition lambda, const Int& c)
    {
        std::sort(lambda.begin(), lambda.end(), std::greater<>());
        while (!lambda.empty() && lambda.back() == 0)
            lambda.pop_back();
        std::size_t total = 0;
        for (auto x : lambda)
            total += x;
        if (total != degree_)
            throw Error("monomial of degree " + std::to_string(total) + " in a polynomial of degree " +
                        std::to_string(degree_));
        if (lambda.size() > nvars_)
            throw Error("partition has more parts than variables");
        Int& slot = terms_[lambda];
        slot += c;
        if (slot == 0)
            terms_.erase(lambda);
    }

    SymmetricPolynomial operator+(const SymmetricPolynomial& b) const
    {
        require_compatible(b);
        SymmetricPolynomial r(*this);
        for (const auto& [l, c] : b.terms_)
            r.add(l, c);
        return r;
    }

    SymmetricPolynomial operator-(const SymmetricPolynomial& b) const
    {
        require_compatible(b);
        SymmetricPolynomial r(*this);
        for (const auto& [l, c] : b.terms_)
            r.add(l, -c);
        return r;
    }

    SymmetricPolynomial scaled(const Int& k) const
    {
        SymmetricPolynomial r(nvars_, degree_);
        for (const auto& [l, c] : terms_)
            r.add(l, k * c);
        return r;
    }

    bool operator==(const SymmetricPolynomial& b) const
    {
        return nvars_ == b.nvars_ && degree_ == b.degree_ && terms_ == b.terms_;
    }

    /// All monomials with their coefficients.
    std::map<Exponents, Int> expand() const
    {
        std::map<Exponents, Int> dense;
        for (const auto& [lambda, c] : terms_) {
            Exponents e(nvars_, 0);
            std::copy(lambda.begin(), lambda.end(), e.begin());
            std::sort(e.begin(), e.end());
            do {
                dense[e] += c;
            } while (std::next_permutation(e.begin(), e.end()));
        }
        return dense;
    }

    /// Inverse of expand; fails unless the input is symmetric and homogeneous.
    static SymmetricPolynomial from_dense(std::size_t nvars, std::size_t degree, const std::map<Exponents, Int>& dense)
    {
        SymmetricPolynomial r(nvars, degree);
        for (const auto& [e, c] : dense) {
            if (c == 0)
                continue;
            if (e.size() != nvars)
                throw Error("exponent vector has the wrong length");
            Partition lambda(e.begin(), e.end());
            std::sort(lambda.begin(), lambda.end(), std::greater<>());
            if (!std::equal(lambda.begin(), lambda.end(), e.begin()))
                continue; // read each orbit at its sorted representative
            r.add(lambda, c);
        }
        if (r.expand() != strip_zeros(dense))
            throw Error("polynomial is not symmetric");
        return r;
    }

    /// Sets the variables beyond the first n to zero.
    SymmetricPolynomial restrict_to(std::size_t n) const
    {
        if (n > nvars_)
            throw Error("restrict_to: more variables than present");
        SymmetricPolynomial r(n, degree_);
        for (const auto& [l, c] : terms_)
            if (l.size() <= n)
                r.add(l, c);
        return r;
    }

    /// Product computed through the dense expansion.
    SymmetricPolynomial operator*(const SymmetricPolynomial& b) const
    {
        if (nvars_ != b.nvars_)
            throw Error("product of symmetric polynomials in different variable counts");
        std::map<Exponents, Int> out;
        auto x = expand(), y = b.expand();
        for (const auto& [e, c] : x)
            for (const auto& [f, d] : y) {
                Exponents g(nvars_);
                for (std::size_t i = 0; i < nvars_; ++i)
                    g[i] = e[i] + f[i];
                out[g] += c * d;
            }
        return from_dense(nvars_, degree_ + b.degree_, out);
    }

    /// "m(2) + 2*m(1,1)"; "0" when zero.
    std::string to_string() const
    {
        if (terms_.empty())
            return "0";
        std::ostringstream os;
        bool first = true;
        for (const auto& [l, c] : terms_) {
            Int a = c;
            if (first) {
                if (a < 0) {
                    os << "-";
                    a = -a;
                }
            } else {
                os << (a < 0 ? " - " : " + ");
                if (a < 0)
                    a = -a;
            }
            if (a != 1)
                os << a.get_str() << "*";
            os << "m(";
            for (std::size_t i = 0; i < l.size(); ++i)
                os << (i ? "," : "") << l[i];
            os << ")";
            first = false;
        }
        return os.str();
    }

private:
    void require_compatible(const SymmetricPolynomial& b) const
    {
        if (nvars_ != b.nvars_ || degree_ != b.degree_)
            throw Error("symmetric polynomials differ in variable count or degree");
    }

    static std::map<Exponents, Int> strip_zeros(const std::map<Exponents, Int>& m)
    {
        std::map<Exponents, Int> r;
        for (const auto& [e, c] : m)
            if (c != 0)
                r[e] = c;
        return r;
    }

    std::size_t nvars_;
    std::size_t degree_;
    std::map<Partition, Int> terms_;
};

/// Character of a degree-p functor on F_p^n: the weights of the diagonal
/// torus. Twist: power sum p_p. Tensor power: e_1^p. Sym^p: h_p. Lambda^p: e_p.
inline SymmetricPolynomial character(const FunctorSpec& F, std::size_t nvars, std::size_t p)
{
    if (nvars < p)
        throw Error("character needs at least " + std::to_string(p) + " variables, got " + std::to_string(nvars));
    using K = FunctorSpec::Kind;
    SymmetricPolynomial r(nvars, p);
    switch (F.kind()) {
    case K::direct_sum:
        for (const auto& part : F.parts())
            r = r + character(part, nvars, p);
        return r;
    case K::constant:
        throw Error("constant functors are not homogeneous of degree " + std::to_string(p));
    default:
        break;
    }
    if (F.parameter() != p)
        throw Error(F.name() + " is not homogeneous of degree " + std::to_string(p));
    switch (F.kind()) {
    case K::frobenius:
        r.add({p}, 1);
        break;
    case K::tensor:
        for (const auto& l : partitions(p, nvars))
            r.add(l, multinomial(l));
        break;
    case K::sym:
        for (const auto& l : partitions(p, nvars))
            r.add(l, 1);
        break;
    case K::ext:
        r.add(Partition(p, 1), 1);
        break;
    default:
        break;
    }
    return r;
}

struct DivisibilityCounterexample {
    Partition monomial;
    Int coefficient;
};

using DivisibilityResult = std::variant<SymmetricPolynomial, DivisibilityCounterexample>;

/// (a - b) / p, or the first monomial whose coefficient p does not divide.
inline DivisibilityResult check_divisibility(const SymmetricPolynomial& a, const SymmetricPolynomial& b,
                                             const Int& p)
{
    SymmetricPolynomial diff = a - b;
    SymmetricPolynomial q(diff.nvars(), diff.degree());
    for (const auto& [l, c] : diff.terms()) {
        if (!divides(p, c))
            return DivisibilityCounterexample{l, c};
        q.add(l, c / p);
    }
    return q;
}

/// Polynomial in named variables x1, x2, ... (exponent vector indexed from 0).
template <class Coeff>
class Polynomial {
public:
    using Terms = std::map<Exponents, Coeff>;

    Polynomial() = default;
    explicit Polynomial(Terms t) : terms_(std::move(t)) { normalize(); }

    static Polynomial constant(const Coeff& c) { return Polynomial(Terms{{Exponents{}, c}}); }

    static Polynomial variable(std::size_t i)
    {
        Exponents e(i + 1, 0);
        e[i] = 1;
        return Polynomial(Terms{{e, Coeff(1)}});
    }

    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    friend Polynomial operator+(const Polynomial& a, const Polynomial& b)
    {
        Terms t = a.terms_;
        for (const auto& [e, c] : b.terms_)
            t[e] += c;
        return Polynomial(std::move(t));
    }

    friend Polynomial operator-(const Polynomial& a, const Polynomial& b)
    {
        Terms t = a.terms_;
        for (const auto& [e, c] : b.terms_)
            t[e] -= c;
        return Polynomial(std::move(t));
    }

    friend Polynomial operator*(const Polynomial& a, const Polynomial& b)
    {
        Terms t;
        for (const auto& [e, c] : a.terms_)
            for (const auto& [f, d] : b.terms_) {
                Exponents g(std::max(e.size(), f.size()), 0);
                for (std::size_t i = 0; i < e.size(); ++i)
                    g[i] += e[i];
                for (std::size_t i = 0; i < f.size(); ++i)
                    g[i] += f[i];
                t[g] += c * d;
            }
        return Polynomial(std::move(t));
    }

    friend Polynomial operator*(const Coeff& k, const Polynomial& a)
    {
        Terms t;
        for (const auto& [e, c] : a.terms_)
            t[e] = k * c;
        return Polynomial(std::move(t));
    }

    bool operator==(const Polynomial& b) const { return terms_ == b.terms_; }

    /// Substitutes values for the variables.
    template <class Value>
    Value evaluate(const std::vector<Value>& values) const
    {
        Value total(0);
        for (const auto& [e, c] : terms_) {
            Value term(c);
            for (std::size_t i = 0; i < e.size(); ++i)
                for (std::size_t k = 0; k < e[i]; ++k)
                    term *= values.at(i);
            total += term;
        }
        return total;
    }

    /// Variables printed as prefix1, prefix2, ...
    std::string to_string(const std::string& prefix) const
    {
        if (terms_.empty())
            return "0";
        std::ostringstream os;
        bool first = true;
        // highest total degree first
        std::vector<std::pair<Exponents, Coeff>> sorted(terms_.begin(), terms_.end());
        std::stable_sort(sorted.begin(), sorted.end(), [](const auto& x, const auto& y) {
            std::size_t dx = 0, dy = 0;
            for (auto v : x.first)
                dx += v;
            for (auto v : y.first)
                dy += v;
            return dx > dy;
        });
        for (const auto& [e, c] : sorted) {
            Coeff a = c;
            if (first) {
                if (a < 0) {
                    os << "-";
                    a = -a;
                }
            } else {
                os << (a < 0 ? " - " : " + ");
                if (a < 0)
                    a = -a;
            }
            std::string mono;
            for (std::size_t i = 0; i < e.size(); ++i) {
                if (e[i] == 0)
                    continue;
                if (!mono.empty())
                    mono += "*";
                mono += prefix + std::to_string(i + 1);
                if (e[i] > 1)
                    mono += "^" + std::to_string(e[i]);
            }
            if (mono.empty())
                os << a;
            else if (a != 1)
                os << a << "*" << mono;
            else
                os << mono;
            first = false;
        }
        return os.str();
    }

private:
    void normalize()
    {
        Terms t;
        for (auto& [e, c] : terms_) {
            if (c == 0)
                continue;
            Exponents f = e;
            while (!f.empty() && f.back() == 0)
                f.pop_back();
            t[f] += c;
        }
        terms_.clear();
        for (auto& [e, c] : t)
            if (c != 0)
                terms_[e] = c;
    }

    Terms terms_;
};

using IntPolynomial = Polynomial<Int>;
using RatPolynomial = Polynomial<mpq_class>;

/// p_1..p_m as polynomials in e_1..e_m, from
/// p_k = sum_{i=1}^{k-1} (-1)^{i-1} e_i p_{k-i} + (-1)^{k-1} k e_k.
inline std::vector<IntPolynomial> powersums_in_elementary(std::size_t m)
{
    std::vector<IntPolynomial> p(m + 1);
    for (std::size_t k = 1; k <= m; ++k) {
        Int last = (k % 2 == 1 ? 1 : -1) * static_cast<long>(k);
        IntPolynomial pk = last * IntPolynomial::variable(k - 1);
        for (std::size_t i = 1; i < k; ++i) {
            IntPolynomial term = IntPolynomial::variable(i - 1) * p[k - i];
            pk = i % 2 == 1 ? pk + term : pk - term;
        }
        p[k] = pk;
    }
    p.erase(p.begin());
    return p;
}

/// e_1..e_m as polynomials in p_1..p_m, from
/// k e_k = sum_{i=1}^{k} (-1)^{i-1} e_{k-i} p_i.
inline std::vector<RatPolynomial> elementary_in_powersums(std::size_t m)
{
    std::vector<RatPolynomial> e(m + 1);
    e[0] = RatPolynomial::constant(1);
    for (std::size_t k = 1; k <= m; ++k) {
        RatPolynomial sum;
        for (std::size_t i = 1; i <= k; ++i) {
            RatPolynomial term = e[k - i] * RatPolynomial::variable(i - 1);
            sum = i % 2 == 1 ? sum + term : sum - term;
        }
        e[k] = mpq_class(1, static_cast<unsigned long>(k)) * sum;
    }
    e.erase(e.begin());
    return e;
}

/// Numeric conversion: power sums p_1..p_m -> elementary e_1..e_m.
inline std::vector<mpq_class> newton_convert(const std::vector<mpq_class>& powersums)
{
    const std::size_t m = powersums.size();
    std::vector<mpq_class> e(m + 1);
    e[0] = 1;
    for (std::size_t k = 1; k <= m; ++k) {
        mpq_class sum = 0;
        for (std::size_t i = 1; i <= k; ++i)
            sum += (i % 2 == 1 ? 1 : -1) * e[k - i] * powersums[i - 1];
        e[k] = sum / static_cast<long>(k);
        e[k].canonicalize();
    }
    e.erase(e.begin());
    return e;
}

/// Numeric conversion: elementary e_1..e_m -> power sums p_1..p_m.
inline std::vector<mpq_class> newton_convert_inverse(const std::vector<mpq_class>& elementary)
{
    const std::size_t m = elementary.size();
    std::vector<mpq_class> p(m + 1);
    for (std::size_t k = 1; k <= m; ++k) {
        mpq_class v = (k % 2 == 1 ? 1 : -1) * static_cast<long>(k) * elementary[k - 1];
        for (std::size_t i = 1; i < k; ++i)
            v += (i % 2 == 1 ? 1 : -1) * elementary[i - 1] * p[k - i];
        p[k] = v;
        p[k].canonicalize();
    }
    p.erase(p.begin());
    return p;
}

} // namespace polyk0
