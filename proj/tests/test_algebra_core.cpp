#include "polyk0/polyk0.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace polyk0;

namespace {

std::mt19937_64 rng(7);

IntMatrix random_matrix(std::size_t r, std::size_t c, long lo, long hi)
{
    std::uniform_int_distribution<long> d(lo, hi);
    IntMatrix m(r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j)
            m(i, j) = d(rng);
    return m;
}

// Laplace expansion along the first row.
Int laplace(const IntMatrix& A)
{
    const std::size_t n = A.rows();
    if (n == 0)
        return 1;
    Int total = 0;
    for (std::size_t j = 0; j < n; ++j) {
        if (A(0, j) == 0)
            continue;
        IntMatrix minor(n - 1, n - 1);
        for (std::size_t r = 1; r < n; ++r)
            for (std::size_t c = 0, cc = 0; c < n; ++c)
                if (c != j)
                    minor(r - 1, cc++) = A(r, c);
        Int term = A(0, j) * laplace(minor);
        total += (j % 2 == 0) ? term : Int(-term);
    }
    return total;
}

void subsets(std::size_t n, std::size_t k, std::size_t start, std::vector<std::size_t>& cur,
             std::vector<std::vector<std::size_t>>& out)
{
    if (cur.size() == k) {
        out.push_back(cur);
        return;
    }
    for (std::size_t i = start; i < n; ++i) {
        cur.push_back(i);
        subsets(n, k, i + 1, cur, out);
        cur.pop_back();
    }
}

// Invariant factors from determinantal divisors: d_k = D_k / D_{k-1}, where
// D_k is the gcd of all k x k minors.
Vec determinantal_factors(const IntMatrix& A)
{
    Vec factors;
    Int prev = 1;
    for (std::size_t k = 1; k <= std::min(A.rows(), A.cols()); ++k) {
        std::vector<std::vector<std::size_t>> rs, cs;
        std::vector<std::size_t> cur;
        subsets(A.rows(), k, 0, cur, rs);
        subsets(A.cols(), k, 0, cur, cs);
        Int g = 0;
        for (const auto& r : rs)
            for (const auto& c : cs) {
                IntMatrix m(k, k);
                for (std::size_t i = 0; i < k; ++i)
                    for (std::size_t j = 0; j < k; ++j)
                        m(i, j) = A(r[i], c[j]);
                g = gcd(g, laplace(m));
            }
        if (g == 0)
            break;
        factors.push_back(g / prev);
        prev = g;
    }
    return factors;
}

bool is_diagonal(const IntMatrix& D)
{
    for (std::size_t i = 0; i < D.rows(); ++i)
        for (std::size_t j = 0; j < D.cols(); ++j)
            if (i != j && D(i, j) != 0)
                return false;
    return true;
}

} // namespace

TEST(SmithNormalForm, DiagonalExample)
{
    SmithForm s = smith_normal_form(IntMatrix::from_rows({{2, 0}, {0, 3}}, 2));
    EXPECT_EQ(s.diagonal(), (Vec{1, 6}));
}

TEST(SmithNormalForm, ZeroMatrix)
{
    SmithForm s = smith_normal_form(IntMatrix::from_rows({{0}}, 1));
    EXPECT_EQ(s.D, IntMatrix::from_rows({{0}}, 1));
    EXPECT_EQ(s.U, IntMatrix::identity(1));
    EXPECT_EQ(s.V, IntMatrix::identity(1));
}

TEST(SmithNormalForm, Identity)
{
    EXPECT_EQ(smith_normal_form(IntMatrix::identity(3)).D, IntMatrix::identity(3));
}

TEST(SmithNormalForm, EmptyShapes)
{
    SmithForm s = smith_normal_form(IntMatrix(0, 3));
    EXPECT_EQ(s.rank, 0u);
    EXPECT_EQ(s.V.rows(), 3u);
}

TEST(SmithNormalForm, RandomMatricesSatisfyUAVEqualsD)
{
    for (int t = 0; t < 200; ++t) {
        std::size_t r = std::uniform_int_distribution<std::size_t>(1, 6)(rng);
        std::size_t c = std::uniform_int_distribution<std::size_t>(1, 6)(rng);
        IntMatrix A = random_matrix(r, c, -50, 50);
        SmithForm s = smith_normal_form(A);
        ASSERT_EQ(s.U * A * s.V, s.D);
        ASSERT_TRUE(is_diagonal(s.D));
        ASSERT_EQ(abs(laplace(s.U)), 1);
        ASSERT_EQ(abs(laplace(s.V)), 1);
        ASSERT_EQ(s.V * s.V_inv, IntMatrix::identity(c));
        Vec d = s.diagonal();
        for (std::size_t i = 0; i + 1 < d.size(); ++i) {
            if (d[i] != 0) {
                ASSERT_TRUE(divides(d[i], d[i + 1])) << d[i] << " does not divide " << d[i + 1];
            }
        }
        for (const auto& x : d)
            ASSERT_GE(x, 0);
    }
}

TEST(SmithNormalForm, MatchesDeterminantalDivisors)
{
    for (int t = 0; t < 60; ++t) {
        std::size_t r = std::uniform_int_distribution<std::size_t>(1, 4)(rng);
        std::size_t c = std::uniform_int_distribution<std::size_t>(1, 5)(rng);
        IntMatrix A = random_matrix(r, c, -6, 6);
        SmithForm s = smith_normal_form(A);
        Vec nonzero;
        for (const auto& x : s.diagonal())
            if (x != 0)
                nonzero.push_back(x);
        ASSERT_EQ(nonzero, determinantal_factors(A));
    }
}

TEST(SmithNormalForm, Deterministic)
{
    IntMatrix A = random_matrix(5, 4, -20, 20);
    SmithForm a = smith_normal_form(A), b = smith_normal_form(A);
    EXPECT_EQ(a.U, b.U);
    EXPECT_EQ(a.V, b.V);
}

TEST(SmithNormalForm, LargeEntriesDoNotOverflow)
{
    Int big = power(Int(10), 40);
    IntMatrix A = IntMatrix::from_rows({{big, big + 1}, {big - 1, big}}, 2);
    SmithForm s = smith_normal_form(A);
    EXPECT_EQ(s.U * A * s.V, s.D);
    EXPECT_EQ(s.diagonal(), (Vec{1, 1}));
}

TEST(FgAbelianGroup, Presentations)
{
    EXPECT_EQ(fg_group_from_relations(1, IntMatrix::from_rows({{2}}, 1)).describe(), "Z/2");
    FgAbelianGroup z = fg_group_from_relations(2, IntMatrix::from_rows({{1, -1}}, 2));
    EXPECT_EQ(z.free_rank(), 1u);
    EXPECT_TRUE(z.torsion().empty());
    EXPECT_EQ(fg_group_from_relations(2, IntMatrix::from_rows({{2, 0}, {0, 3}}, 2)).describe(), "Z/6");
    EXPECT_EQ(fg_group_from_relations(3, IntMatrix(0, 3)).describe(), "Z^3");
}

TEST(FgAbelianGroup, RelationsReduceToZero)
{
    for (int t = 0; t < 50; ++t) {
        std::size_t g = std::uniform_int_distribution<std::size_t>(1, 5)(rng);
        std::size_t r = std::uniform_int_distribution<std::size_t>(0, 5)(rng);
        IntMatrix R = random_matrix(r, g, -9, 9);
        FgAbelianGroup G = FgAbelianGroup::from_relations(g, R);
        EXPECT_EQ(G.free_rank(), g - integer_rank(R));
        for (std::size_t i = 0; i + 1 < G.torsion().size(); ++i)
            EXPECT_TRUE(divides(G.torsion()[i], G.torsion()[i + 1]));
        for (const auto& d : G.torsion())
            EXPECT_GE(d, 2);
        for (std::size_t i = 0; i < r; ++i)
            EXPECT_TRUE(is_zero(G.reduce(R.row(i))));
        EXPECT_TRUE(is_zero(G.reduce(zeros(g))));
    }
}

TEST(FgAbelianGroup, ReductionIsAHomomorphismAndIdempotent)
{
    for (int t = 0; t < 50; ++t) {
        std::size_t g = std::uniform_int_distribution<std::size_t>(1, 4)(rng);
        FgAbelianGroup G = FgAbelianGroup::from_relations(g, random_matrix(3, g, -8, 8));
        Vec x = random_matrix(1, g, -30, 30).row(0), y = random_matrix(1, g, -30, 30).row(0);
        EXPECT_EQ(G.reduce(x + y), G.add(G.reduce(x), G.reduce(y)));
        Vec rx = G.reduce(x);
        EXPECT_EQ(G.normalize(rx), rx);
        EXPECT_EQ(G.reduce(G.lift(rx)), rx);
    }
}

TEST(FgAbelianGroup, FiniteElementEnumeration)
{
    FgAbelianGroup G = FgAbelianGroup::from_invariants(Vec{2, 6}, 0);
    EXPECT_EQ(G.element_count(), 12u);
    for (std::size_t i = 0; i < G.element_count(); ++i)
        EXPECT_EQ(G.index_of(G.element_at(i)), i);
}

TEST(CommMonoid, FiniteTableIsValidated)
{
    // not associative: 1+1 = 2 but 2 is not closed consistently
    EXPECT_THROW(CommMonoid::finite({{0, 1, 2}, {1, 2, 0}, {2, 0, 0}}), Error);
    // not commutative
    EXPECT_THROW(CommMonoid::finite({{0, 1}, {0, 1}}), Error);
    EXPECT_NO_THROW(CommMonoid::finite({{0, 1}, {1, 1}}));
}

TEST(CommMonoid, CapIsEnforced)
{
    EXPECT_THROW(CommMonoid::cyclic_group(65), Error);
    EXPECT_NO_THROW(CommMonoid::cyclic_group(65, 100));
}

TEST(GroupCompletion, Examples)
{
    GroupCompletion n(CommMonoid::free(1));
    EXPECT_EQ(n.group().describe(), "Z");
    EXPECT_EQ(n(Coords{5}), (Vec{5}));

    GroupCompletion z2(CommMonoid::cyclic_group(2));
    EXPECT_EQ(z2.group().describe(), "Z/2");
    EXPECT_NE(z2(Coords{1}), z2(Coords{0}));

    GroupCompletion absorbing(CommMonoid::finite({{0, 1}, {1, 1}}));
    EXPECT_TRUE(absorbing.group().is_trivial());
}

TEST(GroupCompletion, ClassMapIsAdditiveOnFiniteMonoids)
{
    std::vector<CommMonoid> monoids{CommMonoid::cyclic_group(6), CommMonoid::finite({{0, 1, 2}, {1, 2, 2}, {2, 2, 2}}),
                                    CommMonoid::vector_space(2, 2)};
    for (const auto& M : monoids) {
        GroupCompletion c(M);
        const auto& A = c.group();
        for (const auto& a : M.elements())
            for (const auto& b : M.elements())
                EXPECT_EQ(c(M.add(a, b)), A.add(c(a), c(b)));
    }
}

TEST(GroupCompletion, Functoriality)
{
    // Z/6 -> Z/3 reduction, and N -> Z/4 sending 1 to 1
    CommMonoid z6 = CommMonoid::cyclic_group(6), z3 = CommMonoid::cyclic_group(3), z4 = CommMonoid::cyclic_group(4);
    std::vector<Coords> images;
    for (long a = 0; a < 6; ++a)
        images.push_back(Coords{a % 3});
    MonoidHom phi(z6, z3, images);
    ASSERT_TRUE(phi.is_homomorphism());
    GroupHom phi_plus = complete(phi);
    EXPECT_TRUE(phi_plus.is_well_defined());
    GroupCompletion s(z6), t(z3);
    for (const auto& m : z6.elements())
        EXPECT_EQ(phi_plus(s(m)), t(phi(m)));

    MonoidHom psi(CommMonoid::free(1), z4, {Coords{1}});
    GroupHom psi_plus = complete(psi);
    GroupCompletion n(CommMonoid::free(1)), u(z4);
    for (long a = 0; a < 10; ++a)
        EXPECT_EQ(psi_plus(n(Coords{a})), u(psi(Coords{a})));
}

TEST(GroupCompletion, NonHomomorphismIsDetected)
{
    CommMonoid z2 = CommMonoid::cyclic_group(2), z3 = CommMonoid::cyclic_group(3);
    MonoidHom bad(z2, z3, {Coords{0}, Coords{1}});
    EXPECT_FALSE(bad.is_homomorphism());
}
