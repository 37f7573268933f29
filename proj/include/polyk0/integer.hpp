#pragma once

/**
 * @file integer.hpp
 * @brief Arbitrary-precision integers and coefficient rings.
 *
 * Everything in polyk0 is exact. Integers are GMP `mpz_class`; vectors of
 * integers double as coordinates of group and monoid elements.
 */

#include <gmpxx.h>

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace polyk0 {

using Int = mpz_class;
using Vec = std::vector<Int>;

/// Coordinates of a monoid element. FREE monoids use a k-tuple of naturals,
/// FINITE monoids a single entry holding the element index.
using Coords = std::vector<Int>;

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline Int parse_int(std::string_view text)
{
    Int value;
    std::string s(text);
    if (s.empty() || value.set_str(s, 10) != 0)
        throw Error("not a decimal integer: '" + s + "'");
    return value;
}

inline std::string to_string(const Int& x) { return x.get_str(10); }

/// Generalized binomial coefficient; `n` may be negative.
inline Int binomial(const Int& n, unsigned long k)
{
    Int r;
    mpz_bin_ui(r.get_mpz_t(), n.get_mpz_t(), k);
    return r;
}

inline Int binomial(long n, unsigned long k) { return binomial(Int(n), k); }

/// Remainder in [0, m) for m > 0.
inline Int mod_floor(const Int& a, const Int& m)
{
    Int r;
    mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    return r;
}

/// Quotient rounded toward zero.
inline Int div_trunc(const Int& a, const Int& b)
{
    Int q;
    mpz_tdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

inline bool divides(const Int& d, const Int& a)
{
    if (d == 0)
        return a == 0;
    return mpz_divisible_p(a.get_mpz_t(), d.get_mpz_t()) != 0;
}

inline Int gcd(const Int& a, const Int& b)
{
    Int g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

inline Int factorial(unsigned long n)
{
    Int r;
    mpz_fac_ui(r.get_mpz_t(), n);
    return r;
}

inline Int power(const Int& base, unsigned long e)
{
    Int r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

inline bool is_prime(const Int& n) { return n >= 2 && mpz_probab_prime_p(n.get_mpz_t(), 40) > 0; }

inline Vec zeros(std::size_t n) { return Vec(n, Int(0)); }

inline Vec unit_vector(std::size_t n, std::size_t i)
{
    Vec v = zeros(n);
    v[i] = 1;
    return v;
}

inline bool is_zero(const Vec& v)
{
    for (const auto& x : v)
        if (x != 0)
            return false;
    return true;
}

inline Vec operator+(const Vec& a, const Vec& b)
{
    if (a.size() != b.size())
        throw Error("vector size mismatch");
    Vec r(a);
    for (std::size_t i = 0; i < r.size(); ++i)
        r[i] += b[i];
    return r;
}

inline Vec operator-(const Vec& a, const Vec& b)
{
    if (a.size() != b.size())
        throw Error("vector size mismatch");
    Vec r(a);
    for (std::size_t i = 0; i < r.size(); ++i)
        r[i] -= b[i];
    return r;
}

inline Vec operator-(const Vec& a)
{
    Vec r(a);
    for (auto& x : r)
        x = -x;
    return r;
}

inline Vec scale(const Int& c, const Vec& a)
{
    Vec r(a);
    for (auto& x : r)
        x *= c;
    return r;
}

/// Z, or Z/m with m >= 2.
class CoefficientRing {
public:
    static CoefficientRing integers() { return CoefficientRing(Int(0)); }

    static CoefficientRing mod(const Int& m)
    {
        if (m < 2)
            throw Error("modulus must be >= 2, got " + to_string(m));
        return CoefficientRing(m);
    }

    bool is_integers() const { return modulus_ == 0; }
    const Int& modulus() const { return modulus_; }
    bool is_prime_field() const { return !is_integers() && is_prime(modulus_); }

    Int reduce(const Int& x) const { return is_integers() ? x : mod_floor(x, modulus_); }

    Vec reduce(const Vec& v) const
    {
        if (is_integers())
            return v;
        Vec r(v);
        for (auto& x : r)
            x = mod_floor(x, modulus_);
        return r;
    }

    std::string name() const { return is_integers() ? "Z" : "Z/" + to_string(modulus_); }

    bool operator==(const CoefficientRing&) const = default;

private:
    explicit CoefficientRing(Int m) : modulus_(std::move(m)) {}
    Int modulus_;
};

} // namespace polyk0
