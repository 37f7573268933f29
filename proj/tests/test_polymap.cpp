#include "polyk0/polyk0.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace polyk0;

namespace {

std::mt19937_64 rng(11);

long uniform(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); }

const FgAbelianGroup Zgrp = FgAbelianGroup::free(1);
const Domain N1{CommMonoid::free(1)};
const Domain Z1{FgAbelianGroup::free(1)};

Coords c1(long x) { return Coords{Int(x)}; }

// binom(x, i) for any integer x, from the falling factorial.
Int falling_binomial(const Int& x, std::size_t i)
{
    Int num = 1, den = 1;
    for (std::size_t t = 0; t < i; ++t) {
        num *= x - static_cast<long>(t);
        den *= static_cast<long>(t + 1);
    }
    return num / den;
}

PolyMap random_mahler(const Domain& dom, std::size_t n)
{
    MahlerCoefficients c;
    for (const auto& j : detail::monomials_up_to(dom.coordinate_count(), n))
        c[j] = Vec{Int(uniform(-5, 5))};
    return PolyMap::mahler(dom, Zgrp, n, c);
}

Coords random_point(std::size_t k, long lo, long hi)
{
    Coords x(k);
    for (auto& v : x)
        v = uniform(lo, hi);
    return x;
}

} // namespace

TEST(CrossDifference, Examples)
{
    PolyMap d = cross_difference(binomial_map(2, false), c1(1));
    for (long x = 0; x <= 10; ++x)
        EXPECT_EQ(d(c1(x)), (Vec{x}));
    EXPECT_EQ(d.degree(), Degree(1));

    PolyMap constant = PolyMap::mahler(N1, Zgrp, 0, {{MultiIndex{0}, Vec{7}}});
    PolyMap dc = cross_difference(constant, c1(4));
    EXPECT_FALSE(dc.degree().has_value());
    EXPECT_TRUE(is_zero_map(dc, 5));

    PolyMap three = cross_difference(binomial_map(1), c1(3));
    for (long x = -5; x <= 5; ++x)
        EXPECT_EQ(three(c1(x)), (Vec{3}));
}

TEST(CrossDifference, OperatorsCommute)
{
    for (int t = 0; t < 30; ++t) {
        PolyMap f = random_mahler(Domain(FgAbelianGroup::free(2)), 3);
        Coords y = random_point(2, -4, 4), z = random_point(2, -4, 4), x = random_point(2, -6, 6);
        EXPECT_EQ(cross_difference(cross_difference(f, y), z)(x), cross_difference(cross_difference(f, z), y)(x));
    }
}

TEST(CrossDifference, CocycleIdentity)
{
    for (int t = 0; t < 30; ++t) {
        PolyMap f = random_mahler(Domain(FgAbelianGroup::free(2)), 3);
        Coords y = random_point(2, -4, 4), z = random_point(2, -4, 4), x = random_point(2, -6, 6);
        Vec lhs = cross_difference(f, y + z)(x);
        Vec rhs = cross_difference(f, y)(x + z) + cross_difference(f, z)(x);
        EXPECT_EQ(lhs, rhs);
    }
}

TEST(CrossDifference, OnFiniteTables)
{
    CommMonoid M = CommMonoid::cyclic_group(5);
    FgAbelianGroup Z5 = FgAbelianGroup::from_invariants(Vec{5}, 0);
    std::vector<Vec> values;
    for (long a = 0; a < 5; ++a)
        values.push_back(Vec{a * a});
    PolyMap f = PolyMap::table(Domain(M), Z5, 2, values);
    PolyMap d = cross_difference(f, c1(2));
    for (long a = 0; a < 5; ++a)
        EXPECT_EQ(d(c1(a)), Z5.normalize(Vec{(a + 2) * (a + 2) - a * a}));
}

TEST(VerifyDegree, Examples)
{
    DegreeCheck ok = verify_degree(binomial_map(2, false), 2, 4);
    EXPECT_TRUE(ok.holds);
    EXPECT_TRUE(ok.exhaustive);

    DegreeCheck bad = verify_degree(binomial_map(2, false), 1, 4);
    ASSERT_FALSE(bad.holds);
    ASSERT_TRUE(bad.witness.has_value());
    EXPECT_EQ(bad.witness->value, (Vec{1}));

    auto exp2 = [](const Coords& x) { return Vec{power(Int(2), x[0].get_ui())}; };
    DegreeCheck e = verify_degree(PolyMap::function(N1, Zgrp, 3, exp2), 3, 8);
    ASSERT_FALSE(e.holds);
    EXPECT_FALSE(e.exhaustive);
    // D_1^4 2^x = 2^x
    const auto& w = *e.witness;
    EXPECT_EQ(w.directions.size(), 4u);
    EXPECT_EQ(w.value, exp2(w.point));
}

TEST(VerifyDegree, WitnessIsAGenuineIteratedDifference)
{
    auto cube = [](const Coords& x) { return Vec{x[0] * x[0] * x[0] + x[1] * x[0]}; };
    PolyMap f = PolyMap::function(Domain(CommMonoid::free(2)), Zgrp, 2, cube);
    DegreeCheck c = verify_degree(f, 2, 4);
    ASSERT_FALSE(c.holds);
    const auto& w = *c.witness;
    PolyMap g = f;
    for (const auto& y : w.directions)
        g = cross_difference(g, y);
    EXPECT_EQ(g(w.point), w.value);
    EXPECT_FALSE(is_zero(w.value));
}

TEST(VerifyDegree, FiniteDomainsAreExhaustive)
{
    // the absorbing monoid {0, 1}: only constant maps have finite degree
    CommMonoid A = CommMonoid::finite({{0, 1}, {1, 1}});
    PolyMap f = PolyMap::table(Domain(A), Zgrp, 3, {Vec{0}, Vec{1}});
    DegreeCheck c = verify_degree(f, 3, 0);
    EXPECT_FALSE(c.holds);
    EXPECT_TRUE(c.exhaustive);
    EXPECT_TRUE(verify_degree(PolyMap::table(Domain(A), Zgrp, 0, {Vec{4}, Vec{4}}), 0, 0).holds);
}

TEST(VerifyDegree, MixedGroupDomain)
{
    // (a, x) -> a x in Z/3 on Z/3 + Z has degree exactly 2
    FgAbelianGroup A = FgAbelianGroup::from_invariants(Vec{3}, 1);
    FgAbelianGroup Z3 = FgAbelianGroup::from_invariants(Vec{3}, 0);
    PolyMap f = PolyMap::function(Domain(A), Z3, 2, [](const Coords& x) { return Vec{x[0] * x[1]}; });
    EXPECT_TRUE(verify_degree(f, 2, 4).holds);
    EXPECT_FALSE(verify_degree(f, 1, 4).holds);
}

TEST(Mahler, FitReproducesSamples)
{
    for (int t = 0; t < 20; ++t) {
        PolyMap f = random_mahler(Domain(CommMonoid::free(2)), 3);
        auto eval = [&f](const Coords& x) { return f(x); };
        auto refit = mahler_fit(2, 3, Zgrp, eval);
        EXPECT_EQ(refit, f.mahler_coefficients());
    }
}

TEST(Mahler, CertifyInterpolatesABlackBox)
{
    PolyMap sq = PolyMap::function(Z1, Zgrp, 2, [](const Coords& x) { return Vec{x[0] * x[0]}; });
    PolyMap c = certify(sq, 2, 4);
    ASSERT_TRUE(c.is_mahler());
    // x^2 = binom(x, 1) + 2 binom(x, 2)
    MahlerCoefficients expected{{MultiIndex{1}, Vec{1}}, {MultiIndex{2}, Vec{2}}};
    EXPECT_EQ(c.mahler_coefficients(), expected);
    EXPECT_THROW(certify(sq, 1, 4), Error);
}

TEST(Extension, Examples)
{
    PolyMap l2 = extend_over_group_completion(binomial_map(2, false));
    EXPECT_EQ(l2(c1(-1)), (Vec{1}));
    EXPECT_EQ(closed_form_extension(binomial_map(2, false), 2, c1(0), c1(1)), (Vec{1}));

    PolyMap l3 = extend_over_group_completion(binomial_map(3, false));
    EXPECT_EQ(l3(c1(-1)), (Vec{falling_binomial(Int(-1), 3)}));
    EXPECT_EQ(l3(c1(-1)), (Vec{-1}));

    PolyMap linear = PolyMap::mahler(N1, Zgrp, 1, {{MultiIndex{1}, Vec{5}}});
    for (long x = 0; x <= 5; ++x)
        for (long y = 0; y <= 5; ++y)
            EXPECT_EQ(closed_form_extension(linear, 1, c1(x), c1(y)), linear(c1(x)) - linear(c1(y)));
}

TEST(Extension, AgreesWithFallingFactorials)
{
    for (std::size_t i = 0; i <= 6; ++i) {
        PolyMap f = extend_over_group_completion(binomial_map(i, false));
        for (long x = -15; x <= 15; ++x)
            EXPECT_EQ(f(c1(x))[0], falling_binomial(Int(x), i));
    }
}

TEST(Extension, RestrictsToTheOriginalMap)
{
    for (int t = 0; t < 10; ++t) {
        PolyMap f = random_mahler(Domain(CommMonoid::free(2)), 3);
        PolyMap g = extend_over_group_completion(f);
        for (long a = 0; a <= 5; ++a)
            for (long b = 0; b <= 5; ++b)
                EXPECT_EQ(g(Coords{a, b}), f(Coords{a, b}));
    }
    // finite monoid: exhaustive
    CommMonoid M = CommMonoid::cyclic_group(4);
    FgAbelianGroup Z2 = FgAbelianGroup::from_invariants(Vec{2}, 0);
    std::vector<Vec> v;
    for (long a = 0; a < 4; ++a)
        v.push_back(Vec{binomial(Int(a), 2)});
    PolyMap f = PolyMap::table(Domain(M), Z2, 2, v);
    PolyMap g = extend_over_group_completion(f);
    GroupCompletion c(M);
    for (const auto& m : M.elements())
        EXPECT_EQ(g(c(m)), f(m));
}

TEST(Extension, FiniteMonoidThatIsNotAGroup)
{
    // {0, 1, 2} with truncated addition completes to the trivial group;
    // constant maps extend, the rest have no finite degree
    CommMonoid T = CommMonoid::finite({{0, 1, 2}, {1, 2, 2}, {2, 2, 2}});
    PolyMap constant = PolyMap::table(Domain(T), Zgrp, 0, {Vec{3}, Vec{3}, Vec{3}});
    PolyMap g = extend_over_group_completion(constant);
    EXPECT_EQ(g.domain().size(), 1u);
    EXPECT_EQ(g(g.domain().zero()), (Vec{3}));
    PolyMap id = PolyMap::table(Domain(T), Zgrp, 2, {Vec{0}, Vec{1}, Vec{2}});
    EXPECT_THROW(extend_over_group_completion(id), Error);
}

TEST(Extension, UncertifiedInputIsRejected)
{
    PolyMap box = PolyMap::function(N1, Zgrp, 2, [](const Coords& x) { return Vec{x[0] * x[0]}; });
    EXPECT_THROW(extend_over_group_completion(box), Error);
    EXPECT_NO_THROW(extend_over_group_completion(certify(box, 2, 4)));
}

TEST(Extension, UniquenessOnTheSpanningGrid)
{
    for (int t = 0; t < 10; ++t) {
        PolyMap f = random_mahler(N1, 4);
        PolyMap fp = extend_over_group_completion(f);
        // another extension, built from values of f on N only
        auto eval = [&f](const Coords& x) { return closed_form_extension(f, 4, x[0] >= 0 ? x : c1(0), x[0] >= 0 ? c1(0) : -x); };
        PolyMap other = certify(PolyMap::function(Z1, Zgrp, 4, eval), 4, 6);
        EXPECT_TRUE(agree_on_spanning_grid(fp, other));
        EXPECT_TRUE(is_zero_map(fp - other, 6));
    }
}

TEST(Extension, ClosedFormCoefficientsSumToOne)
{
    for (std::size_t n = 0; n <= 8; ++n) {
        Int s = 0;
        for (std::size_t j = 0; j <= n; ++j)
            s += (j % 2 ? -1 : 1) * binomial(Int(static_cast<unsigned long>(n + 1)), j + 1);
        EXPECT_EQ(s, 1);
        PolyMap f = random_mahler(N1, n);
        EXPECT_EQ(closed_form_extension(f, n, c1(3), c1(0)), f(c1(3)));
    }
}

TEST(Extension, ClosedFormMatchesQuotientRing)
{
    for (int t = 0; t < 30; ++t) {
        std::size_t n = static_cast<std::size_t>(uniform(0, 3));
        PolyMap f = random_mahler(Domain(CommMonoid::free(2)), n);
        Coords x = random_point(2, 0, 5), y = random_point(2, 0, 5);
        EXPECT_EQ(closed_form_extension(f, n, x, y), evaluate_extension_via_quotient(f, n, x, y));
    }
}

TEST(Compose, Examples)
{
    PolyMap twice = PolyMap::mahler(Z1, Zgrp, 1, {{MultiIndex{1}, Vec{2}}});
    PolyMap g = compose(binomial_map(2), twice);
    EXPECT_EQ(g.degree(), Degree(2));
    for (long x = -6; x <= 6; ++x)
        EXPECT_EQ(g(c1(x)), (Vec{2 * x * x - x}));

    PolyMap f = random_mahler(Z1, 3);
    PolyMap idf = compose(binomial_map(1), f);
    for (long x = -6; x <= 6; ++x)
        EXPECT_EQ(idf(c1(x)), f(c1(x)));

    PolyMap constant = PolyMap::mahler(Z1, Zgrp, 0, {{MultiIndex{0}, Vec{9}}});
    PolyMap cf = compose(constant, f);
    EXPECT_EQ(cf.degree(), Degree(0));
    EXPECT_EQ(cf(c1(5)), (Vec{9}));
}

TEST(Compose, IncompatibleShapesThrow)
{
    PolyMap f = PolyMap::mahler(Domain(FgAbelianGroup::free(2)), FgAbelianGroup::free(2), 1,
                                {{MultiIndex{1, 0}, Vec{1, 0}}});
    EXPECT_THROW(compose(binomial_map(2), f), Error);
}

TEST(FactorThroughQuotient, Examples)
{
    auto r = factor_through_quotient(binomial_map(2), {Vec{1}});
    ASSERT_TRUE(std::holds_alternative<QuotientCounterexample>(r));
    const auto& c = std::get<QuotientCounterexample>(r);
    EXPECT_NE(c.shifted_value, c.value);

    PolyMap constant = PolyMap::mahler(Z1, Zgrp, 0, {{MultiIndex{0}, Vec{4}}});
    auto rc = factor_through_quotient(constant, {Vec{3}});
    ASSERT_TRUE(std::holds_alternative<Factored>(rc));
    const auto& fc = std::get<Factored>(rc);
    EXPECT_EQ(fc.quotient.group().describe(), "Z/3");
    for (const auto& y : fc.map.domain().test_points(3))
        EXPECT_EQ(fc.map(y), (Vec{4}));

    // binom(x + y, 2) on Z^2 is invariant under (1, -1)
    Domain Z2{FgAbelianGroup::free(2)};
    PolyMap s = certify(PolyMap::function(Z2, Zgrp, 2, [](const Coords& x) { return Vec{binomial(x[0] + x[1], 2)}; }),
                        2, 4);
    auto rs = factor_through_quotient(s, {Vec{1, -1}});
    ASSERT_TRUE(std::holds_alternative<Factored>(rs));
    const auto& fs = std::get<Factored>(rs);
    EXPECT_EQ(fs.quotient.group().describe(), "Z");
    for (long a = -4; a <= 4; ++a)
        for (long b = -4; b <= 4; ++b)
            EXPECT_EQ(fs.map(fs.quotient.project(Coords{a, b})), (Vec{falling_binomial(Int(a + b), 2)}));
}

TEST(PointwiseArithmetic, DivideExact)
{
    // x^2 - x = 2 binom(x, 2)
    PolyMap f = power_map(2, true) - binomial_map(1);
    auto q = divide_exact(f, 2);
    ASSERT_TRUE(q.has_value());
    EXPECT_TRUE(is_zero_map(*q - binomial_map(2), 4));
    EXPECT_FALSE(divide_exact(binomial_map(1), 2).has_value());
}

TEST(ZeroMap, DegreeMinusOne)
{
    PolyMap z = PolyMap::zero(N1, Zgrp);
    EXPECT_FALSE(z.degree().has_value());
    EXPECT_TRUE(z.certified());
    PolyMap zp = extend_over_group_completion(z);
    EXPECT_TRUE(is_zero_map(zp, 5));
    EXPECT_EQ(degree_string(z.degree()), "-1");
}
