#pragma once

/**
 * @file monoid.hpp
 * @brief Finite and free commutative monoids, monoid maps, group completion.
 */

#include "abelian_group.hpp"

#include <map>
#include <set>

namespace polyk0 {

inline constexpr std::size_t kDefaultFiniteCap = 64;

class CommMonoid {
public:
    enum class Kind { finite, free };

    static CommMonoid free(std::size_t rank)
    {
        CommMonoid m;
        m.kind_ = Kind::free;
        m.rank_ = rank;
        return m;
    }

    /// Validates associativity, commutativity and the existence of an identity.
    static CommMonoid finite(std::vector<std::vector<std::size_t>> table, std::size_t cap = kDefaultFiniteCap)
    {
        const std::size_t n = table.size();
        if (n == 0)
            throw Error("finite monoid needs at least one element");
        if (n > cap)
            throw Error("finite monoid has " + std::to_string(n) + " elements, cap is " + std::to_string(cap));
        for (const auto& row : table) {
            if (row.size() != n)
                throw Error("addition table is not square");
            for (auto x : row)
                if (x >= n)
                    throw Error("addition table entry out of range");
        }
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b)
                if (table[a][b] != table[b][a])
                    throw Error("addition table is not commutative at (" + std::to_string(a) + ", " +
                                std::to_string(b) + ")");
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b)
                for (std::size_t c = 0; c < n; ++c)
                    if (table[table[a][b]][c] != table[a][table[b][c]])
                        throw Error("addition table is not associative at (" + std::to_string(a) + ", " +
                                    std::to_string(b) + ", " + std::to_string(c) + ")");
        std::optional<std::size_t> identity;
        for (std::size_t e = 0; e < n && !identity; ++e) {
            bool ok = true;
            for (std::size_t a = 0; a < n && ok; ++a)
                ok = table[e][a] == a;
            if (ok)
                identity = e;
        }
        if (!identity)
            throw Error("addition table has no identity element");
        CommMonoid m;
        m.kind_ = Kind::finite;
        m.table_ = std::move(table);
        m.identity_ = *identity;
        return m;
    }

    static CommMonoid cyclic_group(std::size_t n, std::size_t cap = kDefaultFiniteCap)
    {
        std::vector<std::vector<std::size_t>> t(n, std::vector<std::size_t>(n));
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b)
                t[a][b] = (a + b) % n;
        return finite(std::move(t), cap);
    }

    /// (Z/p)^k under addition; element index is the base-p expansion, first
    /// coordinate least significant.
    static CommMonoid vector_space(std::size_t p, std::size_t k, std::size_t cap = kDefaultFiniteCap)
    {
        std::size_t n = 1;
        for (std::size_t i = 0; i < k; ++i) {
            n *= p;
            if (n > cap)
                throw Error("(F_" + std::to_string(p) + ")^" + std::to_string(k) + " exceeds the finite-monoid cap of " +
                            std::to_string(cap));
        }
        std::vector<std::vector<std::size_t>> t(n, std::vector<std::size_t>(n));
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b) {
                std::size_t x = a, y = b, r = 0, place = 1;
                for (std::size_t i = 0; i < k; ++i) {
                    r += ((x % p + y % p) % p) * place;
                    x /= p;
                    y /= p;
                    place *= p;
                }
                t[a][b] = r;
            }
        return finite(std::move(t), cap);
    }

    Kind kind() const { return kind_; }
    bool is_finite() const { return kind_ == Kind::finite; }
    bool is_free() const { return kind_ == Kind::free; }

    std::size_t rank() const
    {
        if (!is_free())
            throw Error("rank of a finite monoid");
        return rank_;
    }

    std::size_t size() const
    {
        if (!is_finite())
            throw Error("size of a free monoid");
        return table_.size();
    }

    const std::vector<std::vector<std::size_t>>& table() const { return table_; }
    std::size_t identity_index() const { return identity_; }

    Coords identity() const { return is_free() ? zeros(rank_) : Coords{Int(static_cast<unsigned long>(identity_))}; }

    Coords element(std::size_t index) const
    {
        if (index >= size())
            throw Error("element index out of range");
        return Coords{Int(static_cast<unsigned long>(index))};
    }

    std::size_t index(const Coords& x) const
    {
        require(x);
        return x[0].get_ui();
    }

    bool contains(const Coords& x) const
    {
        if (is_free()) {
            if (x.size() != rank_)
                return false;
            for (const auto& c : x)
                if (c < 0)
                    return false;
            return true;
        }
        return x.size() == 1 && x[0] >= 0 && x[0] < static_cast<unsigned long>(table_.size());
    }

    void require(const Coords& x) const
    {
        if (!contains(x))
            throw Error("element is not in the monoid " + describe());
    }

    Coords add(const Coords& a, const Coords& b) const
    {
        require(a);
        require(b);
        if (is_free())
            return a + b;
        return Coords{Int(static_cast<unsigned long>(table_[a[0].get_ui()][b[0].get_ui()]))};
    }

    Coords multiple(const Int& k, const Coords& a) const
    {
        if (k < 0)
            throw Error("negative multiple in a monoid");
        if (is_free())
            return scale(k, a);
        Coords r = identity();
        for (Int i = 0; i < k; ++i)
            r = add(r, a);
        return r;
    }

    /// FREE: unit vectors. FINITE: greedy generating set in index order.
    std::vector<Coords> generators() const
    {
        std::vector<Coords> gens;
        if (is_free()) {
            for (std::size_t i = 0; i < rank_; ++i)
                gens.push_back(unit_vector(rank_, i));
            return gens;
        }
        const std::size_t n = table_.size();
        std::vector<bool> reached(n, false);
        reached[identity_] = true;
        for (std::size_t g = 0; g < n; ++g) {
            if (reached[g])
                continue;
            gens.push_back(element(g));
            // closure of the submonoid under adding all generators so far
            bool grew = true;
            while (grew) {
                grew = false;
                for (std::size_t a = 0; a < n; ++a) {
                    if (!reached[a])
                        continue;
                    for (const auto& h : gens) {
                        std::size_t s = table_[a][h[0].get_ui()];
                        if (!reached[s]) {
                            reached[s] = true;
                            grew = true;
                        }
                    }
                }
            }
        }
        return gens;
    }

    std::vector<Coords> elements() const
    {
        std::vector<Coords> e;
        for (std::size_t i = 0; i < size(); ++i)
            e.push_back(element(i));
        return e;
    }

    std::string describe() const
    {
        if (is_free())
            return rank_ == 1 ? "N" : "N^" + std::to_string(rank_);
        return "finite monoid of order " + std::to_string(table_.size());
    }

private:
    Kind kind_ = Kind::free;
    std::size_t rank_ = 0;
    std::vector<std::vector<std::size_t>> table_;
    std::size_t identity_ = 0;
};

/// Monoid map. FINITE source: one image per element. FREE source: one image
/// per unit vector.
class MonoidHom {
public:
    MonoidHom(CommMonoid source, CommMonoid target, std::vector<Coords> images)
        : source_(std::move(source)), target_(std::move(target)), images_(std::move(images))
    {
        const std::size_t expected = source_.is_free() ? source_.rank() : source_.size();
        if (images_.size() != expected)
            throw Error("MonoidHom: wrong number of images");
        for (const auto& y : images_)
            target_.require(y);
    }

    const CommMonoid& source() const { return source_; }
    const CommMonoid& target() const { return target_; }
    const std::vector<Coords>& images() const { return images_; }

    Coords operator()(const Coords& x) const
    {
        source_.require(x);
        if (source_.is_finite())
            return images_[x[0].get_ui()];
        Coords r = target_.identity();
        for (std::size_t i = 0; i < x.size(); ++i)
            if (x[i] != 0)
                r = target_.add(r, target_.multiple(x[i], images_[i]));
        return r;
    }

    /// Additivity and unitality. Exhaustive for FINITE sources; FREE sources
    /// are additive by construction.
    bool is_homomorphism() const
    {
        if (source_.is_free())
            return true;
        if ((*this)(source_.identity()) != target_.identity())
            return false;
        for (std::size_t a = 0; a < source_.size(); ++a)
            for (std::size_t b = a; b < source_.size(); ++b) {
                auto x = source_.element(a), y = source_.element(b);
                if ((*this)(source_.add(x, y)) != target_.add((*this)(x), (*this)(y)))
                    return false;
            }
        return true;
    }

private:
    CommMonoid source_;
    CommMonoid target_;
    std::vector<Coords> images_;
};

/// M -> M^+ together with the presentation used to build M^+.
/// FREE rank k: generators are the unit vectors, no relations.
/// FINITE: one generator per element, relations [a] + [b] - [a + b].
class GroupCompletion {
public:
    explicit GroupCompletion(CommMonoid monoid) : monoid_(std::move(monoid))
    {
        if (monoid_.is_free()) {
            group_ = FgAbelianGroup::free(monoid_.rank());
            return;
        }
        const std::size_t n = monoid_.size();
        std::vector<Vec> rows;
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = a; b < n; ++b) {
                Vec r = zeros(n);
                r[a] += 1;
                r[b] += 1;
                r[monoid_.table()[a][b]] -= 1;
                rows.push_back(std::move(r));
            }
        group_ = FgAbelianGroup::from_relations(n, IntMatrix::from_rows(rows, n));
    }

    const CommMonoid& monoid() const { return monoid_; }
    const FgAbelianGroup& group() const { return group_; }

    Vec generator_coords(const Coords& m) const
    {
        monoid_.require(m);
        if (monoid_.is_free())
            return m;
        return unit_vector(monoid_.size(), m[0].get_ui());
    }

    /// The class map i: M -> M^+.
    Vec operator()(const Coords& m) const { return group_.reduce(generator_coords(m)); }

private:
    CommMonoid monoid_;
    FgAbelianGroup group_;
};

inline GroupCompletion group_completion(const CommMonoid& m) { return GroupCompletion(m); }

/// The group map M^+ -> N^+ induced by a monoid map M -> N.
inline GroupHom complete(const MonoidHom& phi)
{
    GroupCompletion src(phi.source()), dst(phi.target());
    std::vector<Vec> images;
    if (phi.source().is_free()) {
        for (const auto& y : phi.images())
            images.push_back(dst(y));
    } else {
        for (std::size_t a = 0; a < phi.source().size(); ++a)
            images.push_back(dst(phi(phi.source().element(a))));
    }
    return GroupHom(src.group(), dst.group(), std::move(images));
}

} // namespace polyk0
