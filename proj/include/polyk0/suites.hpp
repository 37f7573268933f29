#pragma once

/**
 * @file suites.hpp
 * @brief Named verification suites. Each suite compares library results
 * against an independent computation and enforces a wall-clock bound.
 */

#include "k0.hpp"
#include "simplicial.hpp"
#include "symmetric.hpp"

#include <chrono>
#include <random>
#include <sstream>

namespace polyk0 {

inline constexpr std::uint64_t kDefaultSeed = 20240611;

struct SuiteReport {
    int id = 0;
    std::string name;
    bool passed = false;
    std::string detail;
    double seconds = 0;
    double bound_seconds = 0;
};

namespace sample {

using Rng = std::mt19937_64;

inline long uniform(Rng& rng, long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); }

inline IntMatrix random_matrix(Rng& rng, std::size_t rows, std::size_t cols, long lo, long hi)
{
    IntMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j)
            m(i, j) = uniform(rng, lo, hi);
    return m;
}

/// Random complex with d_{k-1} d_k = 0: each differential is a kernel basis
/// of the previous one times a random matrix.
inline ChainComplex random_complex(Rng& rng, const CoefficientRing& ring, std::size_t max_rank, std::size_t top)
{
    std::vector<std::size_t> ranks;
    for (std::size_t k = 0; k <= top; ++k)
        ranks.push_back(static_cast<std::size_t>(uniform(rng, 0, static_cast<long>(max_rank))));
    const long bound = ring.is_integers() ? 3 : ring.modulus().get_si() - 1;
    const long low = ring.is_integers() ? -3 : 0;
    std::vector<IntMatrix> d;
    for (std::size_t k = 1; k <= top; ++k) {
        IntMatrix K = k == 1 ? IntMatrix::identity(ranks[0]) : detail::ring_kernel(d.back(), ring).basis;
        d.push_back((K * random_matrix(rng, K.cols(), ranks[k], low, bound)).reduced(ring));
    }
    return ChainComplex(ring, ranks, std::move(d));
}

/// Invertible r x r matrix over F_p (rejection sampling).
inline IntMatrix random_invertible(Rng& rng, std::size_t r, long p)
{
    for (;;) {
        IntMatrix g = random_matrix(rng, r, r, 0, p - 1);
        if (modp::rank(g, static_cast<modp::Residue>(p)) == r)
            return g;
    }
}

} // namespace sample

namespace oracle {

/// x (x-1) ... (x-i+1) / i!
inline Int falling_binomial(const Int& x, std::size_t i)
{
    Int num = 1;
    for (std::size_t t = 0; t < i; ++t)
        num *= x - static_cast<long>(t);
    Int den = 1;
    for (std::size_t t = 2; t <= i; ++t)
        den *= static_cast<long>(t);
    return num / den;
}

/// Dense polynomial in n variables: exponent vector -> coefficient.
using Dense = std::map<std::vector<std::size_t>, Int>;

inline Dense dense_multiply(const Dense& a, const Dense& b)
{
    Dense c;
    for (const auto& [e, x] : a)
        for (const auto& [f, y] : b) {
            auto g = e;
            for (std::size_t i = 0; i < g.size(); ++i)
                g[i] += f[i];
            c[g] += x * y;
        }
    return c;
}

/// (x_1 + ... + x_n)^p by repeated multiplication.
inline Dense linear_form_power(std::size_t n, std::size_t p)
{
    Dense linear;
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<std::size_t> e(n, 0);
        e[i] = 1;
        linear[e] = 1;
    }
    Dense r{{std::vector<std::size_t>(n, 0), Int(1)}};
    for (std::size_t k = 0; k < p; ++k)
        r = dense_multiply(r, linear);
    return r;
}

/// #{a in [0, p-1]^k : sum a <= n}
inline std::size_t truncated_box_count(std::size_t p, std::size_t k, std::size_t n)
{
    std::size_t count = 0;
    std::vector<std::size_t> a(k, 0);
    for (;;) {
        std::size_t s = 0;
        for (auto x : a)
            s += x;
        if (s <= n)
            ++count;
        std::size_t i = 0;
        while (i < k && a[i] == p - 1)
            a[i++] = 0;
        if (i == k)
            break;
        ++a[i];
    }
    return count;
}

} // namespace oracle

namespace suites {

struct Outcome {
    bool ok = true;
    std::ostringstream detail;

    void require(bool condition, const std::string& message)
    {
        if (!condition && ok) {
            ok = false;
            detail << message;
        }
    }
};

inline Coords z1(long x) { return Coords{Int(x)}; }

inline void passi(Outcome& out, sample::Rng&)
{
    for (std::size_t i = 0; i <= 4; ++i) {
        PolyMap f = binomial_map(i, false);
        PolyMap fp = extend_over_group_completion(f);
        for (long x = -10; x <= 10; ++x)
            out.require(fp(z1(x))[0] == oracle::falling_binomial(Int(x), i),
                        "binom(., " + std::to_string(i) + ") extension wrong at " + std::to_string(x));
        for (long x = 0; x <= 10; ++x)
            out.require(fp(z1(x)) == f(z1(x)), "extension does not restrict to f");
        // any other degree <= i map on Z agreeing on the grid [0, i] is f+
        auto oracle_eval = [i](const Coords& x) { return Vec{oracle::falling_binomial(x[0], i)}; };
        PolyMap other = certify(PolyMap::function(Domain(FgAbelianGroup::free(1)), FgAbelianGroup::free(1), i, oracle_eval),
                                i, i + 2);
        out.require(agree_on_spanning_grid(fp, other), "extensions differ on the spanning grid");
        PolyMap diff = fp - other;
        out.require(diff.is_mahler() && diff.mahler_coefficients().empty(), "difference of extensions is not zero");
    }
    out.detail << (out.ok ? "binom(x, i) for i <= 4 on [-10, 10]" : "");
}

inline void quotient(Outcome& out, sample::Rng&)
{
    const auto Z = CoefficientRing::integers();
    for (std::size_t n = 0; n <= 6; ++n) {
        auto Q = aug_ideal_power_quotient(CommMonoid::free(1), n, Z);
        out.require(Q.group().free_rank() == n + 1 && Q.group().torsion().empty(),
                    "Z[N]/I^" + std::to_string(n + 1) + " is " + Q.group().describe());
        Coords x = z1(1);
        out.require(Q.multiply(Q.class_of(x), invert_monoid_element(Q, x)) == Q.one(), "x is not invertible");
        for (unsigned long p : {2ul, 3ul, 5ul, 7ul}) {
            std::size_t order = p;
            while (order <= n)
                order *= p;
            CommMonoid cyclic = CommMonoid::cyclic_group(order);
            auto QZ = aug_ideal_power_quotient(cyclic, n, Z);
            std::size_t generators = QZ.group().free_rank() + QZ.group().torsion().size();
            out.require(QZ.group().free_rank() == 1 && generators == n + 1,
                        "Z[Z/" + std::to_string(order) + "]/I^" + std::to_string(n + 1) + " is " +
                            QZ.group().describe());
            auto Qp = aug_ideal_power_quotient(cyclic, n, CoefficientRing::mod(Int(p)));
            auto Np = aug_ideal_power_quotient(CommMonoid::free(1), n, CoefficientRing::mod(Int(p)));
            out.require(Qp.dimension() == n + 1 && Np.dimension() == n + 1,
                        "F_" + std::to_string(p) + " dimensions differ at n = " + std::to_string(n));
        }
    }
    out.detail << (out.ok ? "n <= 6; Z/N paths with N = p^e > n, p in {2,3,5,7}" : "");
}

inline void closed_form(Outcome& out, sample::Rng& rng)
{
    int finite_cases = 0;
    for (int t = 0; t < 100 && out.ok; ++t) {
        const std::size_t n = static_cast<std::size_t>(sample::uniform(rng, 0, 3));
        if (t % 2 == 0) {
            const std::size_t k = static_cast<std::size_t>(sample::uniform(rng, 1, 2));
            MahlerCoefficients coeffs;
            for (const auto& j : detail::monomials_up_to(k, n))
                coeffs[j] = Vec{Int(sample::uniform(rng, -9, 9))};
            PolyMap f = PolyMap::mahler(Domain(CommMonoid::free(k)), FgAbelianGroup::free(1), n, coeffs);
            Coords x(k), y(k);
            for (std::size_t i = 0; i < k; ++i) {
                x[i] = sample::uniform(rng, 0, 6);
                y[i] = sample::uniform(rng, 0, 6);
            }
            Vec a = closed_form_extension(f, n, x, y);
            Vec b = evaluate_extension_via_quotient(f, n, x, y);
            Vec c = evaluate_mahler(coeffs, x - y, 1);
            Vec d = extend_over_group_completion(f)(x - y);
            out.require(a == b && b == c && c == d, "free case disagrees (trial " + std::to_string(t) + ")");
        } else {
            // binomials mod p are periodic with period p^e > n, so these are
            // degree <= n maps Z/p^e -> Z/p
            const long p = t % 4 == 1 ? 2 : 3;
            long order = p;
            while (order <= static_cast<long>(n))
                order *= p;
            CommMonoid M = CommMonoid::cyclic_group(static_cast<std::size_t>(order));
            FgAbelianGroup Fp = FgAbelianGroup::from_invariants(Vec{Int(p)}, 0);
            std::vector<Int> c(n + 1);
            for (auto& v : c)
                v = sample::uniform(rng, 0, p - 1);
            std::vector<Vec> values;
            for (long a = 0; a < order; ++a) {
                Int s = 0;
                for (std::size_t j = 0; j <= n; ++j)
                    s += c[j] * binomial(Int(a), j);
                values.push_back(Vec{s});
            }
            PolyMap f = PolyMap::table(Domain(M), Fp, n, values);
            PolyMap fp = extend_over_group_completion(f);
            GroupCompletion completion(M);
            Coords x = z1(sample::uniform(rng, 0, order - 1)), y = z1(sample::uniform(rng, 0, order - 1));
            Vec a = closed_form_extension(f, n, x, y);
            Vec b = evaluate_extension_via_quotient(f, n, x, y);
            Vec d = fp(completion.group().sub(completion(x), completion(y)));
            // the group Z/p^e: x - y is its own representative mod p^e
            Int direct = 0;
            Int diff = mod_floor(x[0] - y[0], Int(order));
            for (std::size_t j = 0; j <= n; ++j)
                direct += c[j] * binomial(diff, j);
            out.require(a == b && b == d && a == Fp.normalize(Vec{direct}),
                        "finite case disagrees (trial " + std::to_string(t) + ")");
            ++finite_cases;
        }
    }
    out.detail << (out.ok ? "100 trials, " + std::to_string(finite_cases) + " on finite cyclic monoids" : "");
}

inline void frobenius_char(Outcome& out, sample::Rng&)
{
    for (std::size_t p : {2u, 3u, 5u})
        for (std::size_t nv = p; nv <= p + 2; ++nv) {
            auto tensor = character(FunctorSpec::tensor(p), nv, p);
            auto twist = character(FunctorSpec::frobenius(p), nv, p);
            auto r = check_divisibility(tensor, twist, Int(static_cast<unsigned long>(p)));
            auto* q = std::get_if<SymmetricPolynomial>(&r);
            out.require(q != nullptr, "not divisible for p = " + std::to_string(p));
            if (!q)
                return;
            oracle::Dense dense = oracle::linear_form_power(nv, p);
            for (std::size_t i = 0; i < nv; ++i) {
                std::vector<std::size_t> e(nv, 0);
                e[i] = p;
                dense[e] -= 1;
            }
            auto expanded = q->expand();
            for (const auto& [e, coeff] : dense) {
                Int mine = expanded.count(e) ? expanded.at(e) : Int(0);
                out.require(coeff == static_cast<long>(p) * mine, "quotient coefficient mismatch");
            }
        }
    out.detail << (out.ok ? "p in {2,3,5}, nvars in [p, p+2]" : "");
}

inline void fermat(Outcome& out, sample::Rng&)
{
    for (std::size_t p : {2u, 3u, 5u}) {
        PolyMap diff = power_map(p, true) - binomial_map(1);
        auto q = divide_exact(diff, Int(static_cast<unsigned long>(p)));
        out.require(q.has_value(), "(x^p - x) is not divisible by " + std::to_string(p));
        if (!q)
            return;
        for (long x = -20; x <= 20; ++x) {
            Int direct = power(Int(x), p) - x;
            out.require(divides(Int(static_cast<unsigned long>(p)), direct), "Fermat fails at " + std::to_string(x));
            out.require((*q)(z1(x))[0] * static_cast<long>(p) == direct, "quotient wrong at " + std::to_string(x));
        }
        DegreeCheck c = verify_degree(*q, p, p + 2);
        out.require(c.holds && c.exhaustive, "(x^p - x)/p fails the degree check");
        auto la = lambda_and_adams(p);
        for (long x = -20; x <= 20; ++x)
            out.require(la.adams[p](z1(x))[0] == x, "psi^p is not the identity on ranks");
    }
    out.detail << (out.ok ? "p in {2,3,5} on [-20, 20]" : "");
}

inline void dold_kan(Outcome& out, sample::Rng& rng)
{
    int over_z = 0;
    for (int t = 0; t < 200 && out.ok; ++t) {
        CoefficientRing ring = t % 2 == 0 ? CoefficientRing::integers()
                                          : CoefficientRing::mod(Int(t % 3 == 0 ? 2 : (t % 3 == 1 ? 3 : 5)));
        over_z += ring.is_integers();
        std::size_t top = static_cast<std::size_t>(sample::uniform(rng, 0, 3));
        ChainComplex C = sample::random_complex(rng, ring, 4, top);
        DoldKanComparison cmp = dold_kan_comparison(C);
        out.require(cmp.chain_map && cmp.isomorphism, "roundtrip comparison fails (trial " + std::to_string(t) + ")");
        ChainComplex N = normalized_chains(dk_gamma(C));
        out.require(N.ranks() == C.ranks(), "normalized ranks differ");
        auto h1 = homology(C), h2 = homology(N);
        for (std::size_t k = 0; k < h1.size(); ++k)
            out.require(h1[k].same_invariants(h2[k]), "homology invariants differ in degree " + std::to_string(k));
    }
    out.detail << (out.ok ? "200 complexes (" + std::to_string(over_z) + " over Z)" : "");
}

inline void skeletal(Outcome& out, sample::Rng& rng)
{
    const std::vector<FunctorSpec> functors{FunctorSpec::sym(2), FunctorSpec::sym(3), FunctorSpec::ext(2),
                                            FunctorSpec::tensor(2)};
    int sharp = 0;
    for (int t = 0; t < 50 && out.ok; ++t) {
        const long p = t % 2 == 0 ? 2 : 3;
        CoefficientRing ring = CoefficientRing::mod(Int(p));
        std::size_t r = static_cast<std::size_t>(sample::uniform(rng, 1, 3));
        std::size_t rp = static_cast<std::size_t>(sample::uniform(rng, 1, 3));
        IntMatrix f = sample::random_matrix(rng, r, rp, 0, p - 1);
        for (const auto& F : functors) {
            const std::size_t d = F.degree();
            SimplicialModule X = cech_nerve(f, ring, d + 1);
            out.require(is_n_skeletal(X, 1), "Cech nerve is not 1-skeletal");
            SimplicialModule Y = apply_functor_levelwise(F, X);
            out.require(is_n_skeletal(Y, d), F.name() + " output is not " + std::to_string(d) + "-skeletal");
            if (normalized_ranks(Y)[d] != 0) {
                out.require(!is_n_skeletal(Y, d - 1), F.name() + " output is unexpectedly smaller-skeletal");
                ++sharp;
            }
        }
    }
    out.detail << (out.ok ? "50 nerves x 4 functors, degree bound attained in " + std::to_string(sharp) + " cases" : "");
}

inline void k0identify(Outcome& out, sample::Rng& rng)
{
    const std::vector<FunctorSpec> functors{FunctorSpec::sym(2), FunctorSpec::ext(2), FunctorSpec::tensor(2)};
    const CoefficientRing F2 = CoefficientRing::mod(2);
    bool saw_line = false;
    for (int t = 0; t < 50 && out.ok; ++t) {
        std::size_t rp = static_cast<std::size_t>(sample::uniform(rng, 0, 3));
        std::size_t rq = static_cast<std::size_t>(sample::uniform(rng, 0, 3 - static_cast<long>(rp)));
        if (t == 0) {
            rp = 1;
            rq = 1;
        }
        const std::size_t r = rp + rq;
        IntMatrix incl(r, rp);
        for (std::size_t i = 0; i < rp; ++i)
            incl(i, i) = 1;
        IntMatrix f = (sample::random_invertible(rng, r, 2) * incl).reduced(F2);
        for (const auto& F : functors) {
            Int a = euler_class(apply_functor_levelwise(F, cech_nerve(f, F2, 3)), 2);
            Int b = euler_class(apply_functor_levelwise(F, cech_nerve(incl, F2, 3)), 2);
            out.require(a == b, F.name() + ": Euler classes differ (trial " + std::to_string(t) + ")");
            out.require(a == static_cast<long>(F.output_rank(rq)), F.name() + ": Euler class is not rank F(X'')");
            if (F.kind() == FunctorSpec::Kind::sym && rq == 1) {
                out.require(a == 1, "Sym^2 of a line has Euler class " + a.get_str());
                auto ranks = normalized_ranks(apply_functor_levelwise(F, cech_nerve(incl, F2, 3)));
                if (rp == 1)
                    out.require(ranks[0] == 3 && ranks[1] == 3 && ranks[2] == 1, "Sym^2 normalized ranks are not 3,3,1");
                saw_line = true;
            }
        }
    }
    out.require(saw_line, "no sequence with X'' of rank 1 was sampled");
    out.detail << (out.ok ? "50 sequences over F_2" : "");
}

inline void lambda(Outcome& out, sample::Rng&)
{
    auto ext = [](std::size_t i) { return extend_over_group_completion(binomial_map(i, false)); };
    PolyMap l2 = ext(2), l3 = ext(3);
    out.require(l2(z1(-1))[0] == 1, "lambda^2(-1) != 1");
    out.require(l3(z1(-1))[0] == -1, "lambda^3(-1) != -1");
    for (long n = 0; n <= 10; ++n)
        out.require(l2(z1(-n))[0] == n * (n + 1) / 2, "lambda^2(-" + std::to_string(n) + ") wrong");
    auto la = lambda_and_adams(4);
    for (std::size_t d = 0; d <= 4; ++d)
        for (long x = 0; x <= 6; ++x)
            for (long y = 0; y <= 6; ++y) {
                Int sum = 0;
                for (std::size_t i = 0; i <= d; ++i)
                    sum += la.lambda[i](z1(x))[0] * la.lambda[d - i](z1(y))[0];
                out.require(la.lambda[d](z1(x + y))[0] == sum, "Vandermonde fails");
            }
    out.detail << (out.ok ? "values at negatives and the sum rule on [0,6]^2, d <= 4" : "");
}

inline void rnv(Outcome& out, sample::Rng&)
{
    for (unsigned long p : {2ul, 3ul})
        for (std::size_t k = 1; k <= 3; ++k)
            for (std::size_t n = 0; n <= 4; ++n) {
                auto Q = passi_functor(k, n, p);
                bool elementary = true;
                for (const auto& d : Q.group().torsion())
                    elementary = elementary && d == p;
                out.require(elementary && Q.group().free_rank() == 0, "R_nV is not an F_p vector space");
                out.require(Q.dimension() == oracle::truncated_box_count(p, k, n),
                            "dim R_" + std::to_string(n) + "(F_" + std::to_string(p) + "^" + std::to_string(k) +
                                ") = " + std::to_string(Q.dimension()));
            }
    out.detail << (out.ok ? "p in {2,3}, k <= 3, n <= 4" : "");
}

struct Entry {
    int id;
    const char* name;
    double bound_seconds;
    void (*run)(Outcome&, sample::Rng&);
};

inline const std::vector<Entry>& registry()
{
    static const std::vector<Entry> r{
        {1, "passi", 1, passi},         {2, "quotient", 5, quotient},     {3, "closed-form", 5, closed_form},
        {4, "frobenius-char", 5, frobenius_char}, {5, "fermat", 1, fermat}, {6, "dold-kan", 30, dold_kan},
        {7, "skeletal", 60, skeletal},  {8, "k0identify", 60, k0identify}, {9, "lambda", 1, lambda},
        {10, "rnv", 5, rnv},
    };
    return r;
}

} // namespace suites

inline std::vector<std::string> suite_names()
{
    std::vector<std::string> names;
    for (const auto& e : suites::registry())
        names.push_back(e.name);
    return names;
}

/// Runs a suite by name; a suite passes only when its checks hold and it
/// finishes within its time bound.
inline SuiteReport run_suite(const std::string& name, std::uint64_t seed = kDefaultSeed)
{
    for (const auto& e : suites::registry()) {
        if (name != e.name)
            continue;
        SuiteReport report{e.id, e.name, false, "", 0, e.bound_seconds};
        sample::Rng rng(seed + static_cast<std::uint64_t>(e.id));
        suites::Outcome out;
        auto start = std::chrono::steady_clock::now();
        try {
            e.run(out, rng);
        } catch (const std::exception& ex) {
            out.ok = false;
            out.detail << "exception: " << ex.what();
        }
        report.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        report.passed = out.ok && report.seconds < e.bound_seconds;
        report.detail = out.detail.str();
        if (out.ok && !report.passed)
            report.detail += " (over time bound)";
        return report;
    }
    throw Error("unknown suite \"" + name + "\"");
}

} // namespace polyk0
