#pragma once

/**
 * @file k0.hpp
 * @brief K_0 of additive and stable categories described by their monoid of
 * isomorphism classes and a list of cofiber relations, and the polynomial
 * maps on K_0 induced by degree-bounded functors.
 */

#include "polymap.hpp"

namespace polyk0 {

struct AdditiveCatSpec {
    CommMonoid pi0;
};

/// A cofiber sequence sub -> total -> quotient, recorded by the classes of
/// its three terms in pi0.
struct CofiberRelation {
    Coords sub;
    Coords total;
    Coords quotient;
};

struct StableCatSpec {
    AdditiveCatSpec additive;
    std::vector<CofiberRelation> cofiber_relations;

    const CommMonoid& pi0() const { return additive.pi0; }
};

/// K_0 as a quotient of the group completion of pi0. For an additive
/// category the relation list is empty.
class K0Group {
public:
    K0Group(const StableCatSpec& spec) : completion_(spec.pi0())
    {
        for (const auto& r : spec.cofiber_relations) {
            spec.pi0().require(r.sub);
            spec.pi0().require(r.total);
            spec.pi0().require(r.quotient);
            const FgAbelianGroup& A = completion_.group();
            relations_.push_back(A.sub(A.add(completion_(r.sub), completion_(r.quotient)), completion_(r.total)));
        }
        quotient_.emplace(completion_.group(), relations_);
    }

    const FgAbelianGroup& group() const { return quotient_->group(); }
    const GroupCompletion& completion() const { return completion_; }
    const GroupQuotient& quotient() const { return *quotient_; }

    /// Elements i(x') + i(x'') - i(x) of the completion, one per cofiber relation.
    const std::vector<Vec>& relation_elements() const { return relations_; }

    /// [X] for X in pi0.
    Vec class_of(const Coords& x) const { return quotient_->project(completion_(x)); }

private:
    GroupCompletion completion_;
    std::vector<Vec> relations_;
    std::optional<GroupQuotient> quotient_;
};

inline K0Group k0_additive(const AdditiveCatSpec& spec) { return K0Group(StableCatSpec{spec, {}}); }
inline K0Group k0_stable(const StableCatSpec& spec) { return K0Group(spec); }

struct InducedMap {
    PolyMap map; ///< on K0(C)
    K0Group source;
};

using InducedResult = std::variant<InducedMap, QuotientCounterexample>;

/// F_*: K0(C) -> K0(D) with F_*([X]) = [F(X)], from the values of F on pi0(C)
/// (given in K0(D) coordinates). Extends F over the group completion, then
/// factors the extension through the cofiber relations of C.
inline InducedResult induced_k0_map(const PolyMap& F, std::size_t n, const StableCatSpec& C, const StableCatSpec& D)
{
    if (!F.domain().is_monoid())
        throw Error("induced_k0_map: F must be defined on pi0(C)");
    K0Group source(C), target(D);
    if (!F.codomain().same_invariants(target.group()))
        throw Error("induced_k0_map: F takes values in " + F.codomain().describe() + ", expected K0(D) = " +
                    target.group().describe());
    PolyMap certified = certify(F, n, n + 2);
    PolyMap extended = extend_over_group_completion(certified);
    FactorResult r = factor_through_quotient(extended, source.relation_elements());
    if (auto* c = std::get_if<QuotientCounterexample>(&r))
        return *c;
    return InducedMap{std::get<Factored>(r).map, std::move(source)};
}

/// x -> x^p on N as a certified degree-p map (the p-th tensor power on ranks).
inline PolyMap power_map(std::size_t p, bool on_group = false)
{
    Domain dom = on_group ? Domain(FgAbelianGroup::free(1)) : Domain(CommMonoid::free(1));
    auto eval = [p](const Coords& x) {
        Int r;
        mpz_pow_ui(r.get_mpz_t(), x[0].get_mpz_t(), p);
        return Vec{r};
    };
    return PolyMap::mahler(dom, FgAbelianGroup::free(1), p, mahler_fit(1, p, FgAbelianGroup::free(1), eval));
}

struct LambdaAdams {
    std::vector<PolyMap> lambda; ///< lambda[i] = binom(., i), i = 0..i_max
    std::vector<PolyMap> adams;  ///< adams[k], k = 1..i_max; adams[0] is unused (zero map)
};

/// lambda^i(x) = binom(x, i) on Z and the Adams maps from the Newton
/// recurrence psi^k = sum_{i=1}^{k-1} (-1)^{i-1} lambda^i psi^{k-i} + (-1)^{k-1} k lambda^k.
inline LambdaAdams lambda_and_adams(std::size_t i_max)
{
    if (i_max < 1)
        throw Error("lambda_and_adams: i_max must be at least 1");
    LambdaAdams out;
    for (std::size_t i = 0; i <= i_max; ++i)
        out.lambda.push_back(binomial_map(i));
    out.adams.push_back(PolyMap::zero(Domain(FgAbelianGroup::free(1)), FgAbelianGroup::free(1)));
    for (std::size_t k = 1; k <= i_max; ++k) {
        Int last = k % 2 == 1 ? Int(static_cast<unsigned long>(k)) : -Int(static_cast<unsigned long>(k));
        PolyMap psi = last * out.lambda[k];
        for (std::size_t i = 1; i < k; ++i) {
            PolyMap term = out.lambda[i] * out.adams[k - i];
            psi = (i % 2 == 1) ? psi + term : psi - term;
        }
        out.adams.push_back(psi.with_certification(k, true));
    }
    return out;
}

} // namespace polyk0
