#include "polyk0/polyk0.hpp"
#include "polyk0/suites.hpp"

#include <gtest/gtest.h>

#include <algorithm>

using namespace polyk0;
using oracle::Dense;

namespace {

SymmetricPolynomial quotient_or_fail(const DivisibilityResult& r)
{
    if (auto* c = std::get_if<DivisibilityCounterexample>(&r))
        throw Error("not divisible at a coefficient " + c->coefficient.get_str());
    return std::get<SymmetricPolynomial>(r);
}

Dense strip(Dense d)
{
    std::erase_if(d, [](const auto& kv) { return kv.second == 0; });
    return d;
}

Dense monomial(std::size_t n, std::size_t i, std::size_t power)
{
    std::vector<std::size_t> e(n, 0);
    e[i] = power;
    return Dense{{e, Int(1)}};
}

Dense add(Dense a, const Dense& b)
{
    for (const auto& [e, c] : b)
        a[e] += c;
    return strip(a);
}

// Characters straight from the weights of the diagonal torus.
Dense power_sum(std::size_t n, std::size_t p)
{
    Dense r;
    for (std::size_t i = 0; i < n; ++i)
        r = add(r, monomial(n, i, p));
    return r;
}

Dense elementary(std::size_t n, std::size_t k)
{
    Dense r;
    for (std::size_t mask = 0; mask < (1u << n); ++mask) {
        if (static_cast<std::size_t>(__builtin_popcount(mask)) != k)
            continue;
        std::vector<std::size_t> e(n, 0);
        for (std::size_t i = 0; i < n; ++i)
            e[i] = (mask >> i) & 1;
        r[e] += 1;
    }
    return r;
}

Dense complete(std::size_t n, std::size_t k)
{
    Dense r;
    std::vector<std::size_t> e(n, 0);
    std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t i, std::size_t left) {
        if (i + 1 == n) {
            e[i] = left;
            r[e] += 1;
            return;
        }
        for (std::size_t a = 0; a <= left; ++a) {
            e[i] = a;
            rec(i + 1, left - a);
        }
    };
    rec(0, k);
    return r;
}

Int evaluate(const Dense& d, const std::vector<long>& x)
{
    Int s = 0;
    for (const auto& [e, c] : d) {
        Int t = c;
        for (std::size_t i = 0; i < e.size(); ++i)
            t *= power(Int(x[i]), e[i]);
        s += t;
    }
    return s;
}

Int trace(const IntMatrix& A)
{
    Int s = 0;
    for (std::size_t i = 0; i < A.rows(); ++i)
        s += A(i, i);
    return s;
}

} // namespace

TEST(Characters, Examples)
{
    EXPECT_EQ(character(FunctorSpec::frobenius(2), 2, 2).to_string(), "m(2)");
    EXPECT_EQ(character(FunctorSpec::tensor(2), 2, 2).to_string(), "2*m(1,1) + m(2)");
    EXPECT_EQ(character(FunctorSpec::ext(2), 2, 2).to_string(), "m(1,1)");
    EXPECT_EQ(character(FunctorSpec::sym(2), 2, 2).to_string(), "m(1,1) + m(2)");
}

TEST(Characters, MatchTheTorusWeights)
{
    for (std::size_t p : {2u, 3u, 5u})
        for (std::size_t n = p; n <= p + 1; ++n) {
            EXPECT_EQ(character(FunctorSpec::frobenius(p), n, p).expand(), power_sum(n, p));
            EXPECT_EQ(character(FunctorSpec::tensor(p), n, p).expand(), strip(oracle::linear_form_power(n, p)));
            EXPECT_EQ(character(FunctorSpec::ext(p), n, p).expand(), elementary(n, p));
            EXPECT_EQ(character(FunctorSpec::sym(p), n, p).expand(), complete(n, p));
        }
}

TEST(Characters, AreTracesOfDiagonalMatrices)
{
    sample::Rng rng(11);
    for (std::size_t p : {2u, 3u})
        for (const auto& F : {FunctorSpec::tensor(p), FunctorSpec::sym(p), FunctorSpec::ext(p)})
            for (int t = 0; t < 5; ++t) {
                const std::size_t n = 3;
                std::vector<long> x(n);
                IntMatrix D(n, n);
                for (std::size_t i = 0; i < n; ++i) {
                    x[i] = sample::uniform(rng, -4, 4);
                    D(i, i) = x[i];
                }
                EXPECT_EQ(trace(F.apply(D, CoefficientRing::integers())), evaluate(character(F, n, p).expand(), x))
                    << F.name();
            }
}

TEST(Characters, AreSymmetric)
{
    for (const auto& F : {FunctorSpec::tensor(3), FunctorSpec::sym(3), FunctorSpec::parse("ext:3+twist:3")}) {
        Dense d = character(F, 4, 3).expand();
        for (const auto& [e, c] : d) {
            auto perm = e;
            std::sort(perm.begin(), perm.end());
            do {
                ASSERT_TRUE(d.count(perm));
                EXPECT_EQ(d.at(perm), c);
            } while (std::next_permutation(perm.begin(), perm.end()));
        }
    }
}

TEST(Characters, DirectSumsAdd)
{
    auto s = character(FunctorSpec::parse("sym:2+ext:2"), 3, 2);
    EXPECT_EQ(s, character(FunctorSpec::sym(2), 3, 2) + character(FunctorSpec::ext(2), 3, 2));
}

TEST(Characters, TensorPowerIsThePowerOfTheIdentityCharacter)
{
    for (std::size_t p : {2u, 3u, 5u}) {
        SymmetricPolynomial e1(p, 1);
        e1 = e1 + SymmetricPolynomial::from_dense(p, 1, power_sum(p, 1));
        SymmetricPolynomial prod = e1;
        for (std::size_t k = 1; k < p; ++k)
            prod = prod * e1;
        EXPECT_EQ(prod, character(FunctorSpec::tensor(p), p, p));
    }
}

TEST(Characters, RestrictionSetsVariablesToZero)
{
    for (const auto& F : {FunctorSpec::tensor(3), FunctorSpec::sym(3), FunctorSpec::ext(3)})
        EXPECT_EQ(character(F, 5, 3).restrict_to(3), character(F, 3, 3)) << F.name();
}

TEST(Characters, RejectsMismatchedDegrees)
{
    EXPECT_THROW(character(FunctorSpec::sym(2), 3, 3), Error);
    EXPECT_THROW(character(FunctorSpec::constant(1), 3, 3), Error);
    EXPECT_THROW(character(FunctorSpec::tensor(3), 2, 3), Error);
}

TEST(Divisibility, Examples)
{
    auto q2 = quotient_or_fail(check_divisibility(character(FunctorSpec::tensor(2), 2, 2),
                                                  character(FunctorSpec::frobenius(2), 2, 2), 2));
    EXPECT_EQ(q2.to_string(), "m(1,1)");

    auto q3 = quotient_or_fail(check_divisibility(character(FunctorSpec::tensor(3), 3, 3),
                                                  character(FunctorSpec::frobenius(3), 3, 3), 3));
    EXPECT_EQ(q3.to_string(), "2*m(1,1,1) + m(2,1)");

    auto bad = check_divisibility(character(FunctorSpec::sym(2), 2, 2), SymmetricPolynomial(2, 2), 2);
    ASSERT_TRUE(std::holds_alternative<DivisibilityCounterexample>(bad));
    EXPECT_EQ(std::get<DivisibilityCounterexample>(bad).coefficient, 1);
}

TEST(Divisibility, TensorMinusTwistHoldsForSmallPrimes)
{
    for (std::size_t p : {2u, 3u, 5u})
        for (std::size_t n = p; n <= p + 2; ++n) {
            auto r = check_divisibility(character(FunctorSpec::tensor(p), n, p),
                                        character(FunctorSpec::frobenius(p), n, p), Int(static_cast<unsigned long>(p)));
            ASSERT_TRUE(std::holds_alternative<SymmetricPolynomial>(r)) << "p=" << p << " n=" << n;
            auto q = std::get<SymmetricPolynomial>(r);
            // the quotient has no pure power terms and p * q + p_p recovers e_1^p
            EXPECT_EQ(q.coefficient(Partition{p}), 0);
            EXPECT_EQ(q.scaled(Int(static_cast<unsigned long>(p))) + character(FunctorSpec::frobenius(p), n, p),
                      character(FunctorSpec::tensor(p), n, p));
        }
}

TEST(Divisibility, FailsForCompositeDegree)
{
    // (x1 + ... + x4)^4 - sum x_i^4 has the coefficient 6 on x1^2 x2^2
    SymmetricPolynomial t(4, 4), pw(4, 4);
    t = t + SymmetricPolynomial::from_dense(4, 4, strip(oracle::linear_form_power(4, 4)));
    pw = pw + SymmetricPolynomial::from_dense(4, 4, power_sum(4, 4));
    auto r = check_divisibility(t, pw, 4);
    ASSERT_TRUE(std::holds_alternative<DivisibilityCounterexample>(r));
    EXPECT_FALSE(divides(Int(4), std::get<DivisibilityCounterexample>(r).coefficient));
}

TEST(Newton, PowerSumsInElementary)
{
    auto p = powersums_in_elementary(3);
    ASSERT_EQ(p.size(), 3u);
    // check p_k(e_1(x), e_2(x), e_3(x)) = sum x_i^k on integer points
    for (long a = -3; a <= 3; ++a)
        for (long b = -2; b <= 2; ++b)
            for (long c = -2; c <= 3; ++c) {
                std::vector<long> x{a, b, c};
                std::vector<Int> e{evaluate(elementary(3, 1), x), evaluate(elementary(3, 2), x),
                                   evaluate(elementary(3, 3), x)};
                for (std::size_t k = 1; k <= 3; ++k)
                    EXPECT_EQ(p[k - 1].evaluate(e), evaluate(power_sum(3, k), x));
            }
}

TEST(Newton, ElementaryInPowerSums)
{
    auto e = elementary_in_powersums(4);
    for (long a = -2; a <= 2; ++a)
        for (long b = -2; b <= 2; ++b) {
            std::vector<long> x{a, b, 1, 3};
            std::vector<mpq_class> p;
            for (std::size_t k = 1; k <= 4; ++k)
                p.emplace_back(evaluate(power_sum(4, k), x));
            for (std::size_t k = 1; k <= 4; ++k)
                EXPECT_EQ(e[k - 1].evaluate(p), mpq_class(evaluate(elementary(4, k), x)));
        }
}

TEST(Newton, NumericConversionRoundTrips)
{
    sample::Rng rng(3);
    for (int t = 0; t < 50; ++t) {
        std::vector<mpq_class> p;
        for (int k = 0; k < 5; ++k)
            p.emplace_back(sample::uniform(rng, -20, 20), sample::uniform(rng, 1, 6));
        for (auto& x : p)
            x.canonicalize();
        EXPECT_EQ(newton_convert_inverse(newton_convert(p)), p);
    }
}
