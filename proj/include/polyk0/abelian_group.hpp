#pragma once

/**
 * @file abelian_group.hpp
 * @brief Finitely generated abelian groups in invariant-factor normal form.
 *
 * A group is presented by generators and integer relation rows. The Smith
 * form of the relation matrix gives a unimodular change of basis; generators
 * with invariant factor 1 are dropped, torsion coordinates are kept reduced
 * into [0, d), and free coordinates are unconstrained. Normal coordinates are
 * ordered torsion first, then free.
 */

#include "linalg.hpp"

#include <sstream>

namespace polyk0 {

class FgAbelianGroup {
public:
    FgAbelianGroup() = default;

    static FgAbelianGroup from_relations(std::size_t generators, const IntMatrix& relations)
    {
        if (relations.rows() > 0 && relations.cols() != generators)
            throw Error("relation matrix has " + std::to_string(relations.cols()) + " columns, expected " +
                        std::to_string(generators));
        FgAbelianGroup g;
        g.generators_ = generators;
        IntMatrix rels = relations.rows() > relations.cols() ? row_basis(relations) : relations;
        if (rels.rows() == 0)
            rels = IntMatrix(0, generators);
        g.relations_ = rels;
        SmithForm s = detail::smith(rels, false);

        std::vector<std::size_t> kept_torsion, kept_free;
        for (std::size_t i = 0; i < generators; ++i) {
            if (i < s.rank) {
                const Int& d = s.D(i, i);
                if (d == 1)
                    continue;
                g.torsion_.push_back(d);
                kept_torsion.push_back(i);
            } else {
                kept_free.push_back(i);
            }
        }
        g.free_rank_ = kept_free.size();
        std::vector<std::size_t> kept = kept_torsion;
        kept.insert(kept.end(), kept_free.begin(), kept_free.end());
        g.to_normal_ = IntMatrix(generators, kept.size());
        g.from_normal_ = IntMatrix(kept.size(), generators);
        for (std::size_t k = 0; k < kept.size(); ++k)
            for (std::size_t x = 0; x < generators; ++x) {
                g.to_normal_(x, k) = s.V(x, kept[k]);
                g.from_normal_(k, x) = s.V_inv(kept[k], x);
            }
        return g;
    }

    static FgAbelianGroup free(std::size_t rank) { return from_relations(rank, IntMatrix(0, rank)); }

    static FgAbelianGroup from_invariants(const Vec& torsion, std::size_t free_rank)
    {
        const std::size_t n = torsion.size() + free_rank;
        IntMatrix rels(torsion.size(), n);
        for (std::size_t i = 0; i < torsion.size(); ++i)
            rels(i, i) = torsion[i];
        return from_relations(n, rels);
    }

    std::size_t generator_count() const { return generators_; }
    const Vec& torsion() const { return torsion_; }
    std::size_t free_rank() const { return free_rank_; }
    std::size_t dim() const { return torsion_.size() + free_rank_; }
    bool is_finite() const { return free_rank_ == 0; }
    bool is_free() const { return torsion_.empty(); }
    bool is_trivial() const { return dim() == 0; }

    Int order() const
    {
        if (!is_finite())
            throw Error("order of an infinite group");
        Int o = 1;
        for (const auto& d : torsion_)
            o *= d;
        return o;
    }

    Vec zero() const { return zeros(dim()); }

    /// Reduces torsion coordinates into [0, d).
    Vec normalize(Vec y) const
    {
        if (y.size() != dim())
            throw Error("element has " + std::to_string(y.size()) + " coordinates, group has dim " +
                        std::to_string(dim()));
        for (std::size_t i = 0; i < torsion_.size(); ++i)
            y[i] = mod_floor(y[i], torsion_[i]);
        return y;
    }

    /// Original generator coordinates -> normal coordinates.
    Vec reduce(const Vec& x) const
    {
        if (x.size() != generators_)
            throw Error("reduce: expected " + std::to_string(generators_) + " generator coordinates");
        return normalize(to_normal_.apply_left(x));
    }

    /// Normal coordinates -> a representative in generator coordinates.
    Vec lift(const Vec& y) const
    {
        if (y.size() != dim())
            throw Error("lift: wrong element size");
        return from_normal_.apply_left(y);
    }

    Vec add(const Vec& a, const Vec& b) const { return normalize(a + b); }
    Vec sub(const Vec& a, const Vec& b) const { return normalize(a - b); }
    Vec neg(const Vec& a) const { return normalize(-a); }
    Vec mul(const Int& c, const Vec& a) const { return normalize(scale(c, a)); }

    /// Enumeration of a finite group: the first torsion coordinate varies fastest.
    Vec element_at(std::size_t index) const
    {
        if (!is_finite())
            throw Error("element_at on an infinite group");
        Vec y = zero();
        for (std::size_t i = 0; i < torsion_.size(); ++i) {
            unsigned long d = torsion_[i].get_ui();
            y[i] = static_cast<unsigned long>(index % d);
            index /= d;
        }
        return y;
    }

    std::size_t index_of(const Vec& y) const
    {
        if (!is_finite())
            throw Error("index_of on an infinite group");
        Vec z = normalize(y);
        std::size_t index = 0;
        for (std::size_t i = torsion_.size(); i-- > 0;)
            index = index * torsion_[i].get_ui() + z[i].get_ui();
        return index;
    }

    std::size_t element_count() const
    {
        Int o = order();
        if (!o.fits_ulong_p() || o > 100000000)
            throw Error("group too large to enumerate: order " + to_string(o));
        return o.get_ui();
    }

    bool same_invariants(const FgAbelianGroup& other) const
    {
        return torsion_ == other.torsion_ && free_rank_ == other.free_rank_;
    }

    std::string describe() const
    {
        if (is_trivial())
            return "0";
        std::ostringstream os;
        bool first = true;
        for (const auto& d : torsion_) {
            os << (first ? "" : " + ") << "Z/" << d.get_str();
            first = false;
        }
        if (free_rank_ > 0) {
            os << (first ? "" : " + ") << "Z";
            if (free_rank_ > 1)
                os << "^" << free_rank_;
        }
        return os.str();
    }

    /// Relation rows spanning the kernel of Z^generators -> group.
    const IntMatrix& relations() const { return relations_; }
    const IntMatrix& to_normal() const { return to_normal_; }
    const IntMatrix& from_normal() const { return from_normal_; }

private:
    std::size_t generators_ = 0;
    Vec torsion_;
    std::size_t free_rank_ = 0;
    IntMatrix relations_;
    IntMatrix to_normal_;
    IntMatrix from_normal_;
};

inline FgAbelianGroup fg_group_from_relations(std::size_t gens, const IntMatrix& rels)
{
    return FgAbelianGroup::from_relations(gens, rels);
}

/// Quotient of `parent` by the subgroup generated by some of its elements.
/// The quotient's generators are the parent's normal coordinates.
class GroupQuotient {
public:
    GroupQuotient(FgAbelianGroup parent, const std::vector<Vec>& relation_elements)
        : parent_(std::move(parent))
    {
        const std::size_t n = parent_.dim();
        std::vector<Vec> rows;
        for (std::size_t i = 0; i < parent_.torsion().size(); ++i) {
            Vec r = zeros(n);
            r[i] = parent_.torsion()[i];
            rows.push_back(std::move(r));
        }
        for (const auto& r : relation_elements) {
            if (r.size() != n)
                throw Error("quotient relation has wrong size");
            rows.push_back(r);
        }
        group_ = FgAbelianGroup::from_relations(n, IntMatrix::from_rows(rows, n));
    }

    const FgAbelianGroup& parent() const { return parent_; }
    const FgAbelianGroup& group() const { return group_; }

    Vec project(const Vec& parent_element) const { return group_.reduce(parent_element); }
    Vec lift(const Vec& element) const { return parent_.normalize(group_.lift(element)); }

private:
    FgAbelianGroup parent_;
    FgAbelianGroup group_;
};

/// Group homomorphism given on the source's original generators.
class GroupHom {
public:
    /// `generator_images[g]` is the image of generator g in target normal coordinates.
    GroupHom(FgAbelianGroup source, FgAbelianGroup target, std::vector<Vec> generator_images)
        : source_(std::move(source)), target_(std::move(target)), images_(std::move(generator_images))
    {
        if (images_.size() != source_.generator_count())
            throw Error("GroupHom: need one image per source generator");
        for (auto& v : images_)
            v = target_.normalize(v);
    }

    const FgAbelianGroup& source() const { return source_; }
    const FgAbelianGroup& target() const { return target_; }

    Vec on_generators(const Vec& x) const
    {
        Vec r = target_.zero();
        for (std::size_t g = 0; g < x.size(); ++g)
            if (x[g] != 0)
                r = r + scale(x[g], images_[g]);
        return target_.normalize(r);
    }

    Vec operator()(const Vec& element) const { return on_generators(source_.lift(element)); }

    /// Every source relation maps to zero.
    bool is_well_defined() const
    {
        const IntMatrix& rels = source_.relations();
        for (std::size_t i = 0; i < rels.rows(); ++i)
            if (!is_zero(on_generators(rels.row(i))))
                return false;
        return true;
    }

private:
    FgAbelianGroup source_;
    FgAbelianGroup target_;
    std::vector<Vec> images_;
};

} // namespace polyk0
