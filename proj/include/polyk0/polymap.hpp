#pragma once

/**
 * @file polymap.hpp
 * @brief Degree-bounded polynomial maps between commutative monoids and
 * finitely generated abelian groups.
 *
 * A map f is polynomial of degree <= n when every (n+1)-fold iterated
 * cross-difference D_{m_0} ... D_{m_n} f vanishes, where
 * (D_y f)(x) = f(x + y) - f(x). Degree <= -1 means identically zero and is
 * represented by an empty `Degree`.
 *
 * Representations:
 *  - Mahler: f(a) = sum_j alpha_j prod_i binom(a_i, j_i), for domains N^k or
 *    Z^k. The degree is read off the support, so certificates are exact.
 *  - Table: one value per element of a finite domain.
 *  - BlackBox: an evaluation callback, used for user-supplied functions and
 *    for maps induced on groups that are neither finite nor free.
 *
 * On a free-rank domain a map of degree <= n is determined by its values on
 * the simplex {a : |a| <= n}; every Mahler fit below relies on this.
 */

#include "monoid_ring.hpp"

#include <functional>
#include <map>
#include <variant>

namespace polyk0 {

using MultiIndex = std::vector<std::size_t>;
using MahlerCoefficients = std::map<MultiIndex, Vec>;

/// Empty = the zero map (degree <= -1).
using Degree = std::optional<std::size_t>;

inline Degree lower_degree(Degree d)
{
    if (!d || *d == 0)
        return std::nullopt;
    return *d - 1;
}

inline std::string degree_string(Degree d) { return d ? std::to_string(*d) : "-1"; }

/// Domain of a polynomial map: a commutative monoid or an abelian group.
/// Group elements are normal coordinates.
class Domain {
public:
    Domain(CommMonoid m) : v_(std::move(m)) {}
    Domain(FgAbelianGroup g) : v_(std::move(g)) {}

    bool is_monoid() const { return std::holds_alternative<CommMonoid>(v_); }
    bool is_group() const { return std::holds_alternative<FgAbelianGroup>(v_); }
    const CommMonoid& monoid() const { return std::get<CommMonoid>(v_); }
    const FgAbelianGroup& group() const { return std::get<FgAbelianGroup>(v_); }

    bool is_finite() const { return is_monoid() ? monoid().is_finite() : group().is_finite(); }

    /// N^k or Z^k.
    bool is_free_rank() const { return is_monoid() ? monoid().is_free() : group().is_free(); }

    /// Number of coordinates of an element.
    std::size_t coordinate_count() const
    {
        if (is_monoid())
            return monoid().is_free() ? monoid().rank() : 1;
        return group().dim();
    }

    std::size_t size() const
    {
        if (is_monoid())
            return monoid().size();
        return group().element_count();
    }

    Coords element(std::size_t i) const { return is_monoid() ? monoid().element(i) : group().element_at(i); }
    std::size_t index(const Coords& x) const { return is_monoid() ? monoid().index(x) : group().index_of(x); }

    bool contains(const Coords& x) const
    {
        if (is_monoid())
            return monoid().contains(x);
        if (x.size() != group().dim())
            return false;
        for (std::size_t i = 0; i < group().torsion().size(); ++i)
            if (x[i] < 0 || x[i] >= group().torsion()[i])
                return false;
        return true;
    }

    void require(const Coords& x) const
    {
        if (!contains(x))
            throw Error("element is not in the domain " + describe());
    }

    Coords zero() const { return is_monoid() ? monoid().identity() : group().zero(); }
    Coords add(const Coords& a, const Coords& b) const { return is_monoid() ? monoid().add(a, b) : group().add(a, b); }

    Coords multiple(const Int& k, const Coords& a) const
    {
        return is_monoid() ? monoid().multiple(k, a) : group().mul(k, a);
    }

    /// Monoid generators, or the unit vectors of the normal coordinates.
    std::vector<Coords> generators() const
    {
        if (is_monoid())
            return monoid().generators();
        std::vector<Coords> g;
        for (std::size_t i = 0; i < group().dim(); ++i)
            g.push_back(unit_vector(group().dim(), i));
        return g;
    }

    /// Points with torsion coordinates exhaustive and free coordinates in
    /// [0, box]. FINITE monoids: every element.
    std::vector<Coords> test_points(std::size_t box) const
    {
        std::vector<Coords> pts;
        if (is_monoid() && monoid().is_finite())
            return monoid().elements();
        const std::size_t k = coordinate_count();
        std::vector<Int> bound(k, Int(static_cast<unsigned long>(box)));
        if (is_group())
            for (std::size_t i = 0; i < group().torsion().size(); ++i)
                bound[i] = group().torsion()[i] - 1;
        Coords x = zeros(k);
        for (;;) {
            pts.push_back(x);
            std::size_t i = 0;
            while (i < k && x[i] == bound[i]) {
                x[i] = 0;
                ++i;
            }
            if (i == k)
                break;
            x[i] += 1;
        }
        return pts;
    }

    std::string describe() const { return is_monoid() ? monoid().describe() : group().describe(); }

private:
    std::variant<CommMonoid, FgAbelianGroup> v_;
};

inline Vec evaluate_mahler(const MahlerCoefficients& coeffs, const Coords& x, std::size_t codomain_dim)
{
    Vec r = zeros(codomain_dim);
    for (const auto& [j, alpha] : coeffs) {
        Int w = 1;
        for (std::size_t i = 0; i < j.size() && w != 0; ++i)
            if (j[i] != 0)
                w *= binomial(x[i], j[i]);
        if (w == 0)
            continue;
        for (std::size_t c = 0; c < codomain_dim; ++c)
            mpz_addmul(r[c].get_mpz_t(), w.get_mpz_t(), alpha[c].get_mpz_t());
    }
    return r;
}

inline std::size_t multi_index_degree(const MultiIndex& j)
{
    std::size_t s = 0;
    for (auto x : j)
        s += x;
    return s;
}

/// Mahler coefficients of the degree <= `degree` map agreeing with `f` on the
/// simplex |a| <= degree of N^k: alpha_j = sum_{i <= j} (-1)^{|j-i|} prod binom(j_l, i_l) f(i).
inline MahlerCoefficients mahler_fit(std::size_t rank, std::size_t degree, const FgAbelianGroup& codomain,
                                     const std::function<Vec(const Coords&)>& f)
{
    auto points = detail::monomials_up_to(rank, degree);
    std::map<MultiIndex, Vec> values;
    for (const auto& p : points) {
        Coords x(p.begin(), p.end());
        values[p] = f(x);
    }
    MahlerCoefficients out;
    const std::size_t d = codomain.dim();
    for (const auto& j : points) {
        Vec alpha = zeros(d);
        MultiIndex i(rank, 0);
        // iterate i <= j componentwise
        for (;;) {
            Int w = 1;
            std::size_t diff = 0;
            for (std::size_t l = 0; l < rank; ++l) {
                w *= binomial(Int(static_cast<unsigned long>(j[l])), i[l]);
                diff += j[l] - i[l];
            }
            if (diff % 2 == 1)
                w = -w;
            const Vec& v = values.at(i);
            for (std::size_t c = 0; c < d; ++c)
                mpz_addmul(alpha[c].get_mpz_t(), w.get_mpz_t(), v[c].get_mpz_t());
            std::size_t l = 0;
            while (l < rank && i[l] == j[l]) {
                i[l] = 0;
                ++l;
            }
            if (l == rank)
                break;
            ++i[l];
        }
        alpha = codomain.normalize(alpha);
        if (!is_zero(alpha))
            out[j] = std::move(alpha);
    }
    return out;
}

class PolyMap {
public:
    struct Mahler {
        MahlerCoefficients coefficients;
    };
    struct Table {
        std::vector<Vec> values;
    };
    struct BlackBox {
        std::function<Vec(const Coords&)> eval;
    };
    using Representation = std::variant<Mahler, Table, BlackBox>;

    PolyMap(Domain domain, FgAbelianGroup codomain, Degree degree, Representation rep, bool certified)
        : domain_(std::move(domain)), codomain_(std::move(codomain)), degree_(degree), rep_(std::move(rep)),
          certified_(certified)
    {
        if (std::holds_alternative<Mahler>(rep_)) {
            if (!domain_.is_free_rank())
                throw Error("Mahler representation needs a domain N^k or Z^k, got " + domain_.describe());
            auto& coeffs = std::get<Mahler>(rep_).coefficients;
            for (auto it = coeffs.begin(); it != coeffs.end();) {
                if (it->first.size() != domain_.coordinate_count())
                    throw Error("Mahler multi-index has the wrong length");
                it->second = codomain_.normalize(it->second);
                it = is_zero(it->second) ? coeffs.erase(it) : std::next(it);
            }
        } else if (std::holds_alternative<Table>(rep_)) {
            if (!domain_.is_finite())
                throw Error("Table representation needs a finite domain");
            auto& values = std::get<Table>(rep_).values;
            if (values.size() != domain_.size())
                throw Error("Table has " + std::to_string(values.size()) + " values for a domain of size " +
                            std::to_string(domain_.size()));
            for (auto& v : values)
                v = codomain_.normalize(v);
        }
    }

    /// Certified exactly when the support lies within the degree bound.
    static PolyMap mahler(Domain domain, FgAbelianGroup codomain, Degree degree, MahlerCoefficients coeffs)
    {
        PolyMap f(std::move(domain), std::move(codomain), degree, Mahler{std::move(coeffs)}, false);
        f.certified_ = f.mahler_support_degree() <= degree;
        return f;
    }

    /// Uncertified until checked with verify_degree / certify.
    static PolyMap table(Domain domain, FgAbelianGroup codomain, Degree degree, std::vector<Vec> values)
    {
        return PolyMap(std::move(domain), std::move(codomain), degree, Table{std::move(values)}, false);
    }

    static PolyMap function(Domain domain, FgAbelianGroup codomain, Degree degree,
                            std::function<Vec(const Coords&)> eval)
    {
        return PolyMap(std::move(domain), std::move(codomain), degree, BlackBox{std::move(eval)}, false);
    }

    static PolyMap zero(Domain domain, FgAbelianGroup codomain)
    {
        if (domain.is_free_rank())
            return mahler(std::move(domain), std::move(codomain), std::nullopt, {});
        if (domain.is_finite()) {
            std::vector<Vec> v(domain.size(), codomain.zero());
            PolyMap f = table(std::move(domain), std::move(codomain), std::nullopt, std::move(v));
            f.certified_ = true;
            return f;
        }
        auto z = codomain.zero();
        return PolyMap(std::move(domain), std::move(codomain), std::nullopt, BlackBox{[z](const Coords&) { return z; }},
                       true);
    }

    const Domain& domain() const { return domain_; }
    const FgAbelianGroup& codomain() const { return codomain_; }
    Degree degree() const { return degree_; }
    bool is_zero_map_flagged() const { return !degree_; }
    bool certified() const { return certified_; }
    const Representation& representation() const { return rep_; }
    bool is_mahler() const { return std::holds_alternative<Mahler>(rep_); }
    bool is_table() const { return std::holds_alternative<Table>(rep_); }
    bool is_black_box() const { return std::holds_alternative<BlackBox>(rep_); }
    const MahlerCoefficients& mahler_coefficients() const { return std::get<Mahler>(rep_).coefficients; }
    const std::vector<Vec>& table_values() const { return std::get<Table>(rep_).values; }

    /// Empty when the Mahler support is empty.
    Degree mahler_support_degree() const
    {
        Degree d;
        for (const auto& [j, a] : mahler_coefficients()) {
            std::size_t s = multi_index_degree(j);
            if (!d || s > *d)
                d = s;
        }
        return d;
    }

    Vec operator()(const Coords& x) const
    {
        domain_.require(x);
        return evaluate_unchecked(x);
    }

    /// Mahler maps on N^k are also evaluated off N^k, i.e. as their unique
    /// extension to Z^k.
    Vec evaluate_unchecked(const Coords& x) const
    {
        return std::visit(
            [&](const auto& r) -> Vec {
                using R = std::decay_t<decltype(r)>;
                if constexpr (std::is_same_v<R, Mahler>)
                    return codomain_.normalize(evaluate_mahler(r.coefficients, x, codomain_.dim()));
                else if constexpr (std::is_same_v<R, Table>)
                    return r.values[domain_.index(x)];
                else
                    return codomain_.normalize(r.eval(x));
            },
            rep_);
    }

    PolyMap with_certification(Degree degree, bool certified) const
    {
        PolyMap f(*this);
        f.degree_ = degree;
        f.certified_ = certified;
        return f;
    }

private:
    Domain domain_;
    FgAbelianGroup codomain_;
    Degree degree_;
    Representation rep_;
    bool certified_ = false;
};

/// Map on Z (or N) to Z: x -> binom(x, i).
inline PolyMap binomial_map(std::size_t i, bool on_group = true)
{
    Domain dom = on_group ? Domain(FgAbelianGroup::free(1)) : Domain(CommMonoid::free(1));
    return PolyMap::mahler(std::move(dom), FgAbelianGroup::free(1), i, {{MultiIndex{i}, Vec{Int(1)}}});
}

/// Builds a map of the same kind as `like` (finite table, Mahler, or black
/// box) from an evaluation callback.
inline PolyMap materialize(const Domain& domain, const FgAbelianGroup& codomain, Degree degree, bool certified,
                           std::function<Vec(const Coords&)> eval)
{
    if (domain.is_finite()) {
        std::vector<Vec> values;
        for (std::size_t i = 0; i < domain.size(); ++i)
            values.push_back(eval(domain.element(i)));
        return PolyMap(domain, codomain, degree, PolyMap::Table{std::move(values)}, certified);
    }
    if (domain.is_free_rank() && certified) {
        if (!degree)
            return PolyMap::zero(domain, codomain);
        return PolyMap::mahler(domain, codomain, degree, mahler_fit(domain.coordinate_count(), *degree, codomain, eval));
    }
    return PolyMap(domain, codomain, degree, PolyMap::BlackBox{std::move(eval)}, certified);
}

/// (D_y f)(x) = f(x + y) - f(x).
inline PolyMap cross_difference(const PolyMap& f, const Coords& y)
{
    f.domain().require(y);
    const Domain& dom = f.domain();
    const FgAbelianGroup& cod = f.codomain();
    Degree d = lower_degree(f.degree());
    if (f.is_mahler()) {
        Degree fit = f.mahler_support_degree();
        if (!fit)
            return PolyMap::zero(dom, cod);
        auto eval = [f, y](const Coords& x) {
            return f.codomain().sub(f.evaluate_unchecked(f.domain().add(x, y)), f.evaluate_unchecked(x));
        };
        auto coeffs = mahler_fit(dom.coordinate_count(), *fit, cod, eval);
        PolyMap g = PolyMap::mahler(dom, cod, d, std::move(coeffs));
        return g.with_certification(d, f.certified() || g.certified());
    }
    auto eval = [f, y](const Coords& x) { return f.codomain().sub(f(f.domain().add(x, y)), f(x)); };
    return materialize(dom, cod, d, f.certified() && !f.is_table(), eval)
        .with_certification(d, f.certified());
}

struct DegreeWitness {
    std::vector<Coords> directions;
    Coords point;
    Vec value;
};

struct DegreeCheck {
    bool holds = false;
    /// True when the check is a proof: exhaustive over a finite domain, or
    /// exact Mahler-support inspection. False for box-only evidence.
    bool exhaustive = false;
    std::optional<DegreeWitness> witness;
};

namespace detail {

/// D_{dirs[0]} ... D_{dirs[n]} f (x) by inclusion-exclusion.
template <class Eval>
Vec iterated_difference(const Domain& dom, const FgAbelianGroup& cod, const Eval& eval,
                        const std::vector<Coords>& dirs, const Coords& x)
{
    const std::size_t m = dirs.size();
    Vec total = cod.zero();
    for (std::size_t mask = 0; mask < (std::size_t(1) << m); ++mask) {
        Coords p = x;
        std::size_t bits = 0;
        for (std::size_t i = 0; i < m; ++i)
            if (mask & (std::size_t(1) << i)) {
                p = dom.add(p, dirs[i]);
                ++bits;
            }
        Vec v = eval(p);
        total = ((m - bits) % 2 == 0) ? total + v : total - v;
    }
    return cod.normalize(total);
}

template <class Visit>
bool for_each_multiset(std::size_t choices, std::size_t length, const Visit& visit)
{
    std::vector<std::size_t> seq(length, 0);
    if (choices == 0)
        return length == 0 ? visit(seq) : true;
    for (;;) {
        if (!visit(seq))
            return false;
        std::size_t i = length;
        while (i > 0 && seq[i - 1] == choices - 1)
            --i;
        if (i == 0)
            return true;
        std::size_t v = seq[i - 1] + 1;
        for (std::size_t k = i - 1; k < length; ++k)
            seq[k] = v;
    }
}

inline DegreeCheck box_search(const PolyMap& f, std::size_t n, std::size_t box)
{
    const Domain& dom = f.domain();
    auto gens = dom.generators();
    auto points = dom.test_points(box);
    std::map<Coords, Vec> memo;
    auto eval = [&](const Coords& p) -> const Vec& {
        auto it = memo.find(p);
        if (it == memo.end())
            it = memo.emplace(p, f.evaluate_unchecked(p)).first;
        return it->second;
    };
    DegreeCheck result;
    result.holds = true;
    for_each_multiset(gens.size(), n + 1, [&](const std::vector<std::size_t>& seq) {
        std::vector<Coords> dirs;
        for (auto s : seq)
            dirs.push_back(gens[s]);
        for (const auto& x : points) {
            Vec v = iterated_difference(dom, f.codomain(), eval, dirs, x);
            if (!is_zero(v)) {
                result.holds = false;
                result.witness = DegreeWitness{dirs, x, v};
                return false;
            }
        }
        return true;
    });
    return result;
}

/// Exhaustive check on a finite domain through iterated difference tables.
inline DegreeCheck finite_check(const PolyMap& f, std::size_t n)
{
    const Domain& dom = f.domain();
    const std::size_t size = dom.size();
    auto gens = dom.generators();
    std::vector<std::vector<std::size_t>> shift(gens.size(), std::vector<std::size_t>(size));
    for (std::size_t g = 0; g < gens.size(); ++g)
        for (std::size_t x = 0; x < size; ++x)
            shift[g][x] = dom.index(dom.add(dom.element(x), gens[g]));
    std::vector<Vec> base(size);
    for (std::size_t x = 0; x < size; ++x)
        base[x] = f(dom.element(x));

    DegreeCheck result;
    result.holds = true;
    result.exhaustive = true;
    std::vector<std::size_t> path;
    std::function<bool(const std::vector<Vec>&, std::size_t)> rec = [&](const std::vector<Vec>& table,
                                                                         std::size_t start) {
        if (path.size() == n + 1) {
            for (std::size_t x = 0; x < size; ++x)
                if (!is_zero(table[x])) {
                    std::vector<Coords> dirs;
                    for (auto g : path)
                        dirs.push_back(gens[g]);
                    result.holds = false;
                    result.witness = DegreeWitness{dirs, dom.element(x), table[x]};
                    return false;
                }
            return true;
        }
        for (std::size_t g = start; g < gens.size(); ++g) {
            std::vector<Vec> next(size);
            bool all_zero = true;
            for (std::size_t x = 0; x < size; ++x) {
                next[x] = f.codomain().sub(table[shift[g][x]], table[x]);
                all_zero = all_zero && is_zero(next[x]);
            }
            if (all_zero)
                continue; // every further difference vanishes too
            path.push_back(g);
            bool ok = rec(next, g);
            path.pop_back();
            if (!ok)
                return false;
        }
        return true;
    };
    rec(base, 0);
    return result;
}

} // namespace detail

/// Checks that f has degree <= n. Finite domains: exhaustive over generator
/// sequences and all points (a proof). Mahler maps: exact support check,
/// with a witness found on a box when it fails. Black boxes: every (n+1)-fold
/// generator difference at every point of [0, box]^k (evidence only).
inline DegreeCheck verify_degree(const PolyMap& f, std::size_t n, std::size_t box)
{
    if (f.domain().is_finite())
        return detail::finite_check(f, n);
    if (f.is_mahler()) {
        Degree s = f.mahler_support_degree();
        if (!s || *s <= n) {
            DegreeCheck ok;
            ok.holds = true;
            ok.exhaustive = true;
            return ok;
        }
        DegreeCheck bad = detail::box_search(f, n, std::max(box, *s));
        bad.exhaustive = true;
        if (bad.holds)
            throw Error("verify_degree: Mahler support exceeds the bound but no witness was found");
        return bad;
    }
    return detail::box_search(f, n, box);
}

/// True when f vanishes everywhere (exhaustive on finite domains, exact for
/// Mahler maps, box evidence otherwise).
inline bool is_zero_map(const PolyMap& f, std::size_t box)
{
    if (f.is_mahler())
        return f.mahler_coefficients().empty();
    for (const auto& x : f.domain().test_points(box))
        if (!is_zero(f(x)))
            return false;
    return true;
}

/// Verifies degree <= n and returns a certified map. Black boxes on N^k or
/// Z^k are replaced by their Mahler interpolant, after checking that it
/// agrees with the black box on the whole box and that the box check passes.
inline PolyMap certify(const PolyMap& f, std::size_t n, std::size_t box)
{
    DegreeCheck c = verify_degree(f, n, box);
    if (!c.holds)
        throw Error("map does not have degree <= " + std::to_string(n));
    if (f.is_black_box() && f.domain().is_free_rank()) {
        auto eval = [&f](const Coords& x) { return f.evaluate_unchecked(x); };
        auto coeffs = mahler_fit(f.domain().coordinate_count(), n, f.codomain(), eval);
        PolyMap g = PolyMap::mahler(f.domain(), f.codomain(), n, coeffs);
        for (const auto& x : f.domain().test_points(box))
            if (g.evaluate_unchecked(x) != f.evaluate_unchecked(x))
                throw Error("Mahler interpolant disagrees with the map inside the box");
        return g;
    }
    return f.with_certification(n, true);
}

/// sum_{j=0}^{n} (-1)^j binom(n+1, j+1) f(x + j*y): the value at i(x) - i(y)
/// of the unique degree <= n extension of f, from x * y^{-1} with
/// y^{-1} = sum_{k=0}^{n} (1 - y)^k in Z[M]/I^{n+1}.
inline Vec closed_form_extension(const PolyMap& f, std::size_t n, const Coords& x, const Coords& y)
{
    const Domain& dom = f.domain();
    Vec total = f.codomain().zero();
    Coords point = x;
    for (std::size_t j = 0; j <= n; ++j) {
        Int c = binomial(Int(static_cast<unsigned long>(n + 1)), j + 1);
        if (j % 2 == 1)
            c = -c;
        total = total + scale(c, f(point));
        point = dom.add(point, y);
    }
    return f.codomain().normalize(total);
}

/// Same value as closed_form_extension, computed by expanding x * y^{-1} in
/// Z[M]/I^{n+1} and applying the linear map induced by f. On N^k the
/// induced map sends t^a to the Mahler coefficient alpha_a.
inline Vec evaluate_extension_via_quotient(const PolyMap& f, std::size_t n, const Coords& x, const Coords& y)
{
    if (!f.domain().is_monoid())
        throw Error("evaluate_extension_via_quotient: domain must be a monoid");
    const CommMonoid& M = f.domain().monoid();
    auto Q = aug_ideal_power_quotient(M, n, CoefficientRing::integers());
    Vec q = Q.multiply(Q.class_of(x), invert_monoid_element(Q, y));
    Vec lifted = Q.lift(q);
    Vec total = f.codomain().zero();
    if (M.is_free()) {
        if (!f.is_mahler())
            throw Error("evaluate_extension_via_quotient: free domains need a Mahler map");
        for (std::size_t b = 0; b < lifted.size(); ++b) {
            if (lifted[b] == 0)
                continue;
            auto it = f.mahler_coefficients().find(Q.monomials()[b]);
            if (it != f.mahler_coefficients().end())
                total = total + scale(lifted[b], it->second);
        }
    } else {
        for (std::size_t m = 0; m < lifted.size(); ++m)
            if (lifted[m] != 0)
                total = total + scale(lifted[m], f(M.element(m)));
    }
    return f.codomain().normalize(total);
}

/// The unique degree <= n map f+ on M^+ with f+ o i = f.
inline PolyMap extend_over_group_completion(const PolyMap& f)
{
    const Domain& dom = f.domain();
    if (dom.is_group()) {
        if (!f.certified())
            throw Error("extend: uncertified degree");
        return f;
    }
    const CommMonoid& M = dom.monoid();
    GroupCompletion completion(M);
    Domain target(completion.group());
    if (!f.degree()) {
        if (!is_zero_map(f, 2))
            throw Error("extend: map flagged zero is not zero");
        return PolyMap::zero(target, f.codomain());
    }
    const std::size_t n = *f.degree();

    if (M.is_free()) {
        PolyMap g = f;
        if (f.is_black_box()) {
            if (!f.certified())
                throw Error("extend: uncertified degree (certify the map first)");
            g = certify(f, n, n + 2);
        }
        DegreeCheck c = verify_degree(g, n, n + 2);
        if (!c.holds)
            throw Error("extend: uncertified degree (Mahler support exceeds " + std::to_string(n) + ")");
        return PolyMap::mahler(target, f.codomain(), n, g.mahler_coefficients());
    }

    DegreeCheck c = verify_degree(f, n, 0);
    if (!c.holds)
        throw Error("extend: uncertified degree (map on the finite monoid has degree > " + std::to_string(n) + ")");
    const FgAbelianGroup& G = completion.group();
    const std::size_t size = G.element_count();
    std::vector<std::optional<Vec>> values(size);
    for (std::size_t a = 0; a < M.size(); ++a)
        for (std::size_t b = 0; b < M.size(); ++b) {
            Coords x = M.element(a), y = M.element(b);
            std::size_t g = G.index_of(G.sub(completion(x), completion(y)));
            Vec v = closed_form_extension(f, n, x, y);
            if (!values[g])
                values[g] = std::move(v);
            else if (*values[g] != v)
                throw Error("extend: inconsistent extension values; degree certificate is wrong");
        }
    std::vector<Vec> table;
    for (auto& v : values) {
        if (!v)
            throw Error("extend: group completion element not reached");
        table.push_back(std::move(*v));
    }
    return PolyMap(target, f.codomain(), n, PolyMap::Table{std::move(table)}, true);
}

inline Degree composite_degree(Degree outer, Degree inner)
{
    if (!outer)
        return std::nullopt;
    if (!inner)
        return 0;
    return *outer * *inner;
}

/// g o f. The codomain of f must be g's domain group, or Z^l when g is a
/// Mahler map on N^l (then g acts through its extension to Z^l).
inline PolyMap compose(const PolyMap& g, const PolyMap& f)
{
    const Domain& gd = g.domain();
    const FgAbelianGroup& fc = f.codomain();
    bool compatible = false;
    if (gd.is_group())
        compatible = gd.group().same_invariants(fc) && gd.group().dim() == fc.dim();
    else if (gd.monoid().is_free())
        compatible = g.is_mahler() && fc.is_free() && fc.dim() == gd.monoid().rank();
    if (!compatible)
        throw Error("compose: codomain " + fc.describe() + " does not match domain " + gd.describe());
    Degree d = composite_degree(g.degree(), f.degree());
    auto eval = [g, f](const Coords& x) { return g.evaluate_unchecked(f.evaluate_unchecked(x)); };
    return materialize(f.domain(), g.codomain(), d, g.certified() && f.certified(), eval);
}

struct QuotientCounterexample {
    Coords point;
    Vec relation;
    Vec shifted_value;
    Vec value;
};

struct Factored {
    PolyMap map;
    GroupQuotient quotient;
};

using FactorResult = std::variant<Factored, QuotientCounterexample>;

/// Checks f(x + m) = f(x) for every relation generator m at every test point
/// (torsion part exhaustive, free part over [0, n]^r, enough because
/// D_m f has degree <= n - 1), then returns the induced map on A / <rels>.
inline FactorResult factor_through_quotient(const PolyMap& f, const std::vector<Vec>& relation_generators)
{
    if (!f.domain().is_group())
        throw Error("factor_through_quotient: domain must be an abelian group");
    if (!f.certified())
        throw Error("factor_through_quotient: uncertified degree");
    const FgAbelianGroup& A = f.domain().group();
    const std::size_t n = f.degree() ? *f.degree() : 0;
    auto points = f.domain().test_points(n);
    std::vector<Vec> rels;
    for (const auto& m : relation_generators)
        rels.push_back(A.normalize(m));
    for (const auto& m : rels)
        for (const auto& x : points) {
            Vec shifted = f(A.add(x, m)), value = f(x);
            if (shifted != value)
                return QuotientCounterexample{x, m, shifted, value};
        }
    GroupQuotient Q(A, rels);
    auto eval = [f, Q](const Coords& y) { return f(Q.lift(y)); };
    PolyMap induced = materialize(Domain(Q.group()), f.codomain(), f.degree(), true, eval);
    return Factored{std::move(induced), std::move(Q)};
}

/// Degree <= n maps on a free-rank group agreeing on the grid [0, n]^k are
/// equal; this compares two certified maps on that grid.
inline bool agree_on_spanning_grid(const PolyMap& a, const PolyMap& b)
{
    if (!a.certified() || !b.certified())
        throw Error("agree_on_spanning_grid: both maps must be certified");
    std::size_t n = std::max(a.degree().value_or(0), b.degree().value_or(0));
    for (const auto& x : a.domain().test_points(n))
        if (a.evaluate_unchecked(x) != b.evaluate_unchecked(x))
            return false;
    return true;
}

namespace detail {

inline void require_same_shape(const PolyMap& a, const PolyMap& b)
{
    if (a.domain().coordinate_count() != b.domain().coordinate_count() || a.domain().describe() != b.domain().describe() ||
        !a.codomain().same_invariants(b.codomain()))
        throw Error("pointwise operation on maps with different domains or codomains");
}

inline Degree max_degree(Degree a, Degree b)
{
    if (!a)
        return b;
    if (!b)
        return a;
    return std::max(*a, *b);
}

} // namespace detail

inline PolyMap operator+(const PolyMap& a, const PolyMap& b)
{
    detail::require_same_shape(a, b);
    auto eval = [a, b](const Coords& x) { return a.evaluate_unchecked(x) + b.evaluate_unchecked(x); };
    return materialize(a.domain(), a.codomain(), detail::max_degree(a.degree(), b.degree()),
                       a.certified() && b.certified(), eval);
}

inline PolyMap operator-(const PolyMap& a, const PolyMap& b)
{
    detail::require_same_shape(a, b);
    auto eval = [a, b](const Coords& x) { return a.evaluate_unchecked(x) - b.evaluate_unchecked(x); };
    return materialize(a.domain(), a.codomain(), detail::max_degree(a.degree(), b.degree()),
                       a.certified() && b.certified(), eval);
}

inline PolyMap operator*(const Int& c, const PolyMap& a)
{
    auto eval = [c, a](const Coords& x) { return scale(c, a.evaluate_unchecked(x)); };
    return materialize(a.domain(), a.codomain(), c == 0 ? std::nullopt : a.degree(), a.certified(), eval);
}

/// Pointwise product of two maps into Z; degrees add.
inline PolyMap operator*(const PolyMap& a, const PolyMap& b)
{
    detail::require_same_shape(a, b);
    if (!a.codomain().is_free() || a.codomain().dim() != 1)
        throw Error("pointwise product needs maps into Z");
    Degree d = (!a.degree() || !b.degree()) ? std::nullopt : Degree(*a.degree() + *b.degree());
    auto eval = [a, b](const Coords& x) { return Vec{a.evaluate_unchecked(x)[0] * b.evaluate_unchecked(x)[0]}; };
    return materialize(a.domain(), a.codomain(), d, a.certified() && b.certified(), eval);
}

/// f / p when every value is divisible by p (for Mahler maps: every
/// coefficient, which is equivalent because the binomial basis is a Z-basis
/// of integer-valued polynomials). Codomain must be free.
inline std::optional<PolyMap> divide_exact(const PolyMap& f, const Int& p)
{
    if (!f.codomain().is_free())
        throw Error("divide_exact needs a free codomain");
    if (f.is_mahler()) {
        MahlerCoefficients q;
        for (const auto& [j, a] : f.mahler_coefficients()) {
            Vec v = a;
            for (auto& x : v) {
                if (!divides(p, x))
                    return std::nullopt;
                mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), p.get_mpz_t());
            }
            q[j] = v;
        }
        return PolyMap::mahler(f.domain(), f.codomain(), f.degree(), q).with_certification(f.degree(), f.certified());
    }
    if (f.is_table()) {
        std::vector<Vec> vals = f.table_values();
        for (auto& v : vals)
            for (auto& x : v) {
                if (!divides(p, x))
                    return std::nullopt;
                mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), p.get_mpz_t());
            }
        return PolyMap(f.domain(), f.codomain(), f.degree(), PolyMap::Table{vals}, f.certified());
    }
    throw Error("divide_exact: black-box maps are not supported");
}

} // namespace polyk0
