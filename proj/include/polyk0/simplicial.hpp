#pragma once

/**
 * @file simplicial.hpp
 * @brief Truncated simplicial modules over Z or a prime field, normalized
 * chains, the Dold-Kan inverse, Cech nerves, levelwise functor application,
 * skeletality and Euler classes.
 *
 * Modules are free of finite rank and maps are matrices acting on column
 * vectors, so a map X_n -> X_m is an rank(X_m) x rank(X_n) matrix. A
 * SimplicialModule stores levels 0..N and carries a flag attesting that
 * every simplex above level N is degenerate.
 */

#include "abelian_group.hpp"
#include "functors.hpp"

#include <map>

namespace polyk0 {

namespace detail {

inline void require_simplicial_ring(const CoefficientRing& ring)
{
    if (!ring.is_integers() && !ring.is_prime_field())
        throw Error("simplicial computations need Z or a prime field, got " + ring.name());
}

inline std::size_t ring_rank(const IntMatrix& A, const CoefficientRing& ring)
{
    if (A.rows() == 0 || A.cols() == 0)
        return 0;
    if (ring.is_integers())
        return integer_rank(A);
    return modp::rank(A, ring.modulus().get_ui());
}

/// Kernel basis (columns) and a coordinate matrix L with L * basis = I.
struct KernelData {
    IntMatrix basis;
    IntMatrix coordinates;
};

inline KernelData ring_kernel(const IntMatrix& A, const CoefficientRing& ring)
{
    const std::size_t n = A.cols();
    if (A.rows() == 0)
        return {IntMatrix::identity(n), IntMatrix::identity(n)};
    if (ring.is_integers()) {
        IntMatrix K = integer_kernel(A);
        if (K.cols() == 0)
            return {K, IntMatrix(0, n)};
        return {K, left_inverse(K)};
    }
    modp::Rref r(ring.modulus().get_ui(), n);
    r.insert_rows(A);
    IntMatrix K = r.kernel();
    auto fc = r.free_columns();
    IntMatrix L(fc.size(), n);
    for (std::size_t b = 0; b < fc.size(); ++b)
        L(b, fc[b]) = 1;
    return {K, L};
}

} // namespace detail

/// Bounded chain complex C_0 <- C_1 <- ... <- C_N of free modules.
class ChainComplex {
public:
    /// `differentials[k-1]` is d_k: C_k -> C_{k-1}, a ranks[k-1] x ranks[k] matrix.
    ChainComplex(CoefficientRing ring, std::vector<std::size_t> ranks, std::vector<IntMatrix> differentials)
        : ring_(std::move(ring)), ranks_(std::move(ranks)), d_(std::move(differentials))
    {
        detail::require_simplicial_ring(ring_);
        if (ranks_.empty())
            throw Error("chain complex needs at least degree 0");
        if (d_.size() != ranks_.size() - 1)
            throw Error("chain complex with " + std::to_string(ranks_.size()) + " degrees needs " +
                        std::to_string(ranks_.size() - 1) + " differentials");
        for (std::size_t k = 1; k < ranks_.size(); ++k) {
            IntMatrix& d = d_[k - 1];
            if (d.rows() != ranks_[k - 1] || d.cols() != ranks_[k])
                throw Error("differential d_" + std::to_string(k) + " has shape " + d.shape() + ", expected " +
                            std::to_string(ranks_[k - 1]) + "x" + std::to_string(ranks_[k]));
            d = d.reduced(ring_);
        }
        for (std::size_t k = 2; k < ranks_.size(); ++k)
            if (!(d_[k - 2] * d_[k - 1]).reduced(ring_).is_zero())
                throw Error("d_" + std::to_string(k - 1) + " * d_" + std::to_string(k) + " is not zero");
    }

    const CoefficientRing& ring() const { return ring_; }
    const std::vector<std::size_t>& ranks() const { return ranks_; }
    std::size_t rank(std::size_t k) const { return k < ranks_.size() ? ranks_[k] : 0; }
    std::size_t top() const { return ranks_.size() - 1; }

    /// d_k for 1 <= k <= top.
    const IntMatrix& differential(std::size_t k) const
    {
        if (k == 0 || k > top())
            throw Error("no differential d_" + std::to_string(k));
        return d_[k - 1];
    }

private:
    CoefficientRing ring_;
    std::vector<std::size_t> ranks_;
    std::vector<IntMatrix> d_;
};

/// H_0..H_top. Over F_p each H_k is reported as (Z/p)^dim.
inline std::vector<FgAbelianGroup> homology(const ChainComplex& C)
{
    const CoefficientRing& ring = C.ring();
    std::vector<FgAbelianGroup> out;
    for (std::size_t k = 0; k <= C.top(); ++k) {
        const std::size_t n = C.rank(k);
        IntMatrix incoming = k < C.top() ? C.differential(k + 1) : IntMatrix(n, 0);
        if (ring.is_integers()) {
            detail::KernelData ker = k == 0 ? detail::KernelData{IntMatrix::identity(n), IntMatrix::identity(n)}
                                            : detail::ring_kernel(C.differential(k), ring);
            const std::size_t z = ker.basis.cols();
            IntMatrix image = ker.coordinates * incoming;
            out.push_back(FgAbelianGroup::from_relations(z, image.transpose()));
        } else {
            std::size_t z = n - (k == 0 ? 0 : detail::ring_rank(C.differential(k), ring));
            std::size_t b = detail::ring_rank(incoming, ring);
            out.push_back(FgAbelianGroup::from_invariants(Vec(z - b, ring.modulus()), 0));
        }
    }
    return out;
}

class SimplicialModule {
public:
    /// `faces[n][i]` is d_i: X_n -> X_{n-1} for 1 <= n <= N, 0 <= i <= n;
    /// `degeneracies[n][j]` is s_j: X_n -> X_{n+1} for 0 <= n < N, 0 <= j <= n.
    /// faces[0] and degeneracies[N] are empty.
    SimplicialModule(CoefficientRing ring, std::vector<std::size_t> ranks, std::vector<std::vector<IntMatrix>> faces,
                     std::vector<std::vector<IntMatrix>> degeneracies, bool degenerate_above = true)
        : ring_(std::move(ring)), ranks_(std::move(ranks)), faces_(std::move(faces)),
          degeneracies_(std::move(degeneracies)), degenerate_above_(degenerate_above)
    {
        detail::require_simplicial_ring(ring_);
        if (ranks_.empty())
            throw Error("simplicial module needs level 0");
        const std::size_t N = top();
        if (faces_.size() != N + 1 || degeneracies_.size() != N + 1)
            throw Error("simplicial module: face/degeneracy lists must have one entry per level");
        for (std::size_t n = 0; n <= N; ++n) {
            if (faces_[n].size() != (n == 0 ? 0 : n + 1))
                throw Error("level " + std::to_string(n) + " has the wrong number of faces");
            if (degeneracies_[n].size() != (n == N ? 0 : n + 1))
                throw Error("level " + std::to_string(n) + " has the wrong number of degeneracies");
            for (auto& d : faces_[n]) {
                if (d.rows() != ranks_[n - 1] || d.cols() != ranks_[n])
                    throw Error("face at level " + std::to_string(n) + " has shape " + d.shape());
                d = d.reduced(ring_);
            }
            for (auto& s : degeneracies_[n]) {
                if (s.rows() != ranks_[n + 1] || s.cols() != ranks_[n])
                    throw Error("degeneracy at level " + std::to_string(n) + " has shape " + s.shape());
                s = s.reduced(ring_);
            }
        }
        validate();
    }

    const CoefficientRing& ring() const { return ring_; }
    const std::vector<std::size_t>& ranks() const { return ranks_; }
    std::size_t top() const { return ranks_.size() - 1; }
    bool degenerate_above() const { return degenerate_above_; }
    const IntMatrix& face(std::size_t n, std::size_t i) const { return faces_.at(n).at(i); }
    const IntMatrix& degeneracy(std::size_t n, std::size_t j) const { return degeneracies_.at(n).at(j); }

private:
    /// Sparse rows of residues mod p; used to check identities over F_p
    /// without big-integer products.
    struct Sparse {
        std::size_t rows = 0, cols = 0;
        std::vector<std::vector<std::pair<std::size_t, std::uint64_t>>> row;
    };

    Sparse to_sparse(const IntMatrix& A) const
    {
        const std::uint64_t p = ring_.modulus().get_ui();
        Sparse s{A.rows(), A.cols(), {}};
        s.row.resize(A.rows());
        for (std::size_t i = 0; i < A.rows(); ++i)
            for (std::size_t j = 0; j < A.cols(); ++j)
                if (A(i, j) != 0)
                    s.row[i].emplace_back(j, modp::to_residue(A(i, j), p));
        return s;
    }

    /// Dense row-major residues of a * b.
    std::vector<std::uint64_t> product(const Sparse& a, const Sparse& b) const
    {
        const std::uint64_t p = ring_.modulus().get_ui();
        std::vector<std::uint64_t> c(a.rows * b.cols, 0);
        for (std::size_t i = 0; i < a.rows; ++i)
            for (const auto& [k, x] : a.row[i])
                for (const auto& [j, y] : b.row[k]) {
                    auto& z = c[i * b.cols + j];
                    z = (z + x * y) % p;
                }
        return c;
    }

    template <class Face, class Degen, class Same, class IsIdentity>
    void check_identities(const Face& face_at, const Degen& degen_at, const Same& same, const IsIdentity& is_identity) const
    {
        const std::size_t N = top();
        for (std::size_t n = 2; n <= N; ++n)
            for (std::size_t j = 1; j <= n; ++j)
                for (std::size_t i = 0; i < j; ++i)
                    if (!same(face_at(n - 1, i), face_at(n, j), face_at(n - 1, j - 1), face_at(n, i)))
                        fail("d_" + std::to_string(i) + " d_" + std::to_string(j), n);
        for (std::size_t n = 0; n + 2 <= N; ++n)
            for (std::size_t j = 0; j <= n; ++j)
                for (std::size_t i = 0; i <= j; ++i)
                    if (!same(degen_at(n + 1, i), degen_at(n, j), degen_at(n + 1, j + 1), degen_at(n, i)))
                        fail("s_" + std::to_string(i) + " s_" + std::to_string(j), n);
        for (std::size_t n = 0; n < N; ++n)
            for (std::size_t j = 0; j <= n; ++j)
                for (std::size_t i = 0; i <= n + 1; ++i) {
                    bool ok;
                    if (i == j || i == j + 1)
                        ok = is_identity(face_at(n + 1, i), degen_at(n, j), ranks_[n]);
                    else if (i < j)
                        ok = same(face_at(n + 1, i), degen_at(n, j), degen_at(n - 1, j - 1), face_at(n, i));
                    else
                        ok = same(face_at(n + 1, i), degen_at(n, j), degen_at(n - 1, j), face_at(n, i - 1));
                    if (!ok)
                        fail("d_" + std::to_string(i) + " s_" + std::to_string(j), n);
                }
    }

    void fail(const std::string& what, std::size_t n) const
    {
        throw Error("simplicial identity " + what + " fails at level " + std::to_string(n));
    }

    void validate() const
    {
        if (ring_.is_integers()) {
            auto face_at = [this](std::size_t n, std::size_t i) -> const IntMatrix& { return face(n, i); };
            auto degen_at = [this](std::size_t n, std::size_t j) -> const IntMatrix& { return degeneracy(n, j); };
            auto same = [](const IntMatrix& a, const IntMatrix& b, const IntMatrix& c, const IntMatrix& d) {
                return a * b == c * d;
            };
            auto is_identity = [](const IntMatrix& a, const IntMatrix& b, std::size_t r) {
                return a * b == IntMatrix::identity(r);
            };
            check_identities(face_at, degen_at, same, is_identity);
            return;
        }
        std::vector<std::vector<Sparse>> f(faces_.size()), s(degeneracies_.size());
        for (std::size_t n = 0; n < faces_.size(); ++n)
            for (const auto& m : faces_[n])
                f[n].push_back(to_sparse(m));
        for (std::size_t n = 0; n < degeneracies_.size(); ++n)
            for (const auto& m : degeneracies_[n])
                s[n].push_back(to_sparse(m));
        auto face_at = [&f](std::size_t n, std::size_t i) -> const Sparse& { return f.at(n).at(i); };
        auto degen_at = [&s](std::size_t n, std::size_t j) -> const Sparse& { return s.at(n).at(j); };
        auto same = [this](const Sparse& a, const Sparse& b, const Sparse& c, const Sparse& d) {
            return product(a, b) == product(c, d);
        };
        auto is_identity = [this](const Sparse& a, const Sparse& b, std::size_t r) {
            auto c = product(a, b);
            for (std::size_t i = 0; i < r; ++i)
                for (std::size_t j = 0; j < r; ++j)
                    if (c[i * r + j] != (i == j ? 1u : 0u))
                        return false;
            return true;
        };
        check_identities(face_at, degen_at, same, is_identity);
    }

    CoefficientRing ring_;
    std::vector<std::size_t> ranks_;
    std::vector<std::vector<IntMatrix>> faces_;
    std::vector<std::vector<IntMatrix>> degeneracies_;
    bool degenerate_above_ = true;
};

/// Normalized chains together with the inclusions N_k -> X_k and the
/// coordinate maps X_k -> N_k (defined on N_k).
struct NormalizedChains {
    ChainComplex complex;
    std::vector<IntMatrix> inclusion;
    std::vector<IntMatrix> coordinates;
};

namespace detail {

inline IntMatrix stacked_higher_faces(const SimplicialModule& X, std::size_t k)
{
    std::vector<IntMatrix> parts;
    for (std::size_t i = 1; i <= k; ++i)
        parts.push_back(X.face(k, i));
    return stack(parts, X.ranks()[k]);
}

} // namespace detail

/// N_k = intersection of ker d_i for 1 <= i <= k, with differential d_0.
inline NormalizedChains normalized_chain_data(const SimplicialModule& X)
{
    const CoefficientRing& ring = X.ring();
    std::vector<IntMatrix> inc, coord;
    std::vector<std::size_t> ranks;
    for (std::size_t k = 0; k <= X.top(); ++k) {
        detail::KernelData ker = k == 0 ? detail::KernelData{IntMatrix::identity(X.ranks()[0]),
                                                             IntMatrix::identity(X.ranks()[0])}
                                        : detail::ring_kernel(detail::stacked_higher_faces(X, k), ring);
        ranks.push_back(ker.basis.cols());
        inc.push_back(ker.basis);
        coord.push_back(ker.coordinates);
    }
    std::vector<IntMatrix> d;
    for (std::size_t k = 1; k <= X.top(); ++k)
        d.push_back((coord[k - 1] * (X.face(k, 0) * inc[k])).reduced(ring));
    return {ChainComplex(ring, ranks, std::move(d)), std::move(inc), std::move(coord)};
}

inline ChainComplex normalized_chains(const SimplicialModule& X) { return normalized_chain_data(X).complex; }

/// Ranks of N_0..N_top without building the complex.
inline std::vector<std::size_t> normalized_ranks(const SimplicialModule& X)
{
    std::vector<std::size_t> r{X.ranks()[0]};
    for (std::size_t k = 1; k <= X.top(); ++k)
        r.push_back(X.ranks()[k] - detail::ring_rank(detail::stacked_higher_faces(X, k), X.ring()));
    return r;
}

/// The unnormalized complex with d = sum (-1)^i d_i.
inline ChainComplex moore_complex(const SimplicialModule& X)
{
    std::vector<IntMatrix> d;
    for (std::size_t k = 1; k <= X.top(); ++k) {
        IntMatrix sum(X.ranks()[k - 1], X.ranks()[k]);
        for (std::size_t i = 0; i <= k; ++i)
            sum = i % 2 == 0 ? sum + X.face(k, i) : sum - X.face(k, i);
        d.push_back(sum);
    }
    return ChainComplex(X.ring(), X.ranks(), std::move(d));
}

namespace detail {

/// Monotone surjections [n] ->> [k] for k <= min(n, kmax), as value lists,
/// grouped by k and ordered by their jump sets.
inline std::vector<std::vector<std::size_t>> surjections(std::size_t n, std::size_t k)
{
    std::vector<std::vector<std::size_t>> out;
    if (k > n)
        return out;
    std::vector<std::size_t> cur{0};
    std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t pos, std::size_t value) {
        if (pos > n) {
            if (value == k)
                out.push_back(cur);
            return;
        }
        for (std::size_t step = 0; step <= 1; ++step) {
            std::size_t v = value + step;
            if (v > k || k - v > n - pos)
                continue;
            cur.push_back(v);
            rec(pos + 1, v);
            cur.pop_back();
        }
    };
    rec(1, 0);
    return out;
}

struct GammaLevel {
    struct Summand {
        std::vector<std::size_t> surjection;
        std::size_t k;
        std::size_t offset;
    };
    std::vector<Summand> summands;
    std::map<std::vector<std::size_t>, std::size_t> index;
    std::size_t rank = 0;
};

inline GammaLevel gamma_level(const ChainComplex& C, std::size_t n)
{
    GammaLevel L;
    for (std::size_t k = 0; k <= std::min(n, C.top()); ++k)
        for (auto& s : surjections(n, k)) {
            L.index[s] = L.summands.size();
            L.summands.push_back({s, k, L.rank});
            L.rank += C.rank(k);
        }
    return L;
}

/// theta^*: Gamma(C)_n -> Gamma(C)_m for a monotone theta: [m] -> [n].
inline IntMatrix gamma_operator(const ChainComplex& C, const GammaLevel& src, const GammaLevel& dst,
                                const std::vector<std::size_t>& theta)
{
    IntMatrix M(dst.rank, src.rank);
    for (const auto& s : src.summands) {
        std::vector<std::size_t> tau;
        for (auto t : theta)
            tau.push_back(s.surjection[t]);
        // tau = delta o eps with eps surjective onto the image
        std::vector<std::size_t> image(tau);
        image.erase(std::unique(image.begin(), image.end()), image.end());
        std::vector<std::size_t> eps;
        for (auto v : tau)
            eps.push_back(static_cast<std::size_t>(std::lower_bound(image.begin(), image.end(), v) - image.begin()));
        const std::size_t k = s.k;
        bool identity = image.size() == k + 1;
        bool delta0 = !identity && image.size() == k && image.front() == 1;
        if (!identity && !delta0)
            continue;
        const auto& t = dst.summands[dst.index.at(eps)];
        if (identity) {
            for (std::size_t b = 0; b < C.rank(k); ++b)
                M(t.offset + b, s.offset + b) = 1;
        } else {
            const IntMatrix& d = C.differential(k);
            for (std::size_t a = 0; a < C.rank(k - 1); ++a)
                for (std::size_t b = 0; b < C.rank(k); ++b)
                    M(t.offset + a, s.offset + b) = d(a, b);
        }
    }
    return M;
}

inline std::vector<std::size_t> coface(std::size_t n, std::size_t i)
{
    std::vector<std::size_t> t;
    for (std::size_t x = 0; x < n; ++x)
        t.push_back(x < i ? x : x + 1);
    return t;
}

inline std::vector<std::size_t> codegeneracy(std::size_t n, std::size_t j)
{
    std::vector<std::size_t> t;
    for (std::size_t x = 0; x <= n + 1; ++x)
        t.push_back(x <= j ? x : x - 1);
    return t;
}

} // namespace detail

/// Gamma(C) through level `levels` (default: the top degree of C).
/// Level n is the sum over monotone surjections [n] ->> [k] of C_k.
inline SimplicialModule dk_gamma(const ChainComplex& C, std::optional<std::size_t> levels = std::nullopt)
{
    const std::size_t N = levels.value_or(C.top());
    std::vector<detail::GammaLevel> L;
    std::vector<std::size_t> ranks;
    for (std::size_t n = 0; n <= N; ++n) {
        L.push_back(detail::gamma_level(C, n));
        ranks.push_back(L.back().rank);
    }
    std::vector<std::vector<IntMatrix>> faces(N + 1), degens(N + 1);
    for (std::size_t n = 1; n <= N; ++n)
        for (std::size_t i = 0; i <= n; ++i)
            faces[n].push_back(detail::gamma_operator(C, L[n], L[n - 1], detail::coface(n, i)));
    for (std::size_t n = 0; n < N; ++n)
        for (std::size_t j = 0; j <= n; ++j)
            degens[n].push_back(detail::gamma_operator(C, L[n], L[n + 1], detail::codegeneracy(n, j)));
    return SimplicialModule(C.ring(), ranks, std::move(faces), std::move(degens), N >= C.top());
}

struct DoldKanComparison {
    std::vector<IntMatrix> maps; ///< phi_k: C_k -> N_k
    bool chain_map = false;
    bool isomorphism = false;
};

/// Compares C with the normalized chains of Gamma(C): phi_k sends c to the
/// summand of the identity surjection [k] ->> [k].
inline DoldKanComparison dold_kan_comparison(const ChainComplex& C)
{
    SimplicialModule G = dk_gamma(C);
    NormalizedChains N = normalized_chain_data(G);
    const CoefficientRing& ring = C.ring();
    DoldKanComparison out;
    out.isomorphism = true;
    out.chain_map = true;
    for (std::size_t k = 0; k <= C.top(); ++k) {
        detail::GammaLevel L = detail::gamma_level(C, k);
        std::vector<std::size_t> id(k + 1);
        for (std::size_t i = 0; i <= k; ++i)
            id[i] = i;
        const auto& s = L.summands[L.index.at(id)];
        IntMatrix embed(L.rank, C.rank(k));
        for (std::size_t b = 0; b < C.rank(k); ++b)
            embed(s.offset + b, b) = 1;
        IntMatrix phi = (N.coordinates[k] * embed).reduced(ring);
        if (!equal_in(ring, N.inclusion[k] * phi, embed))
            out.isomorphism = false; // identity summand not inside N_k
        if (phi.rows() != phi.cols()) {
            out.isomorphism = false;
        } else {
            Int det = determinant(phi);
            bool unit = ring.is_integers() ? (det == 1 || det == -1) : ring.reduce(det) != 0;
            out.isomorphism = out.isomorphism && unit;
        }
        out.maps.push_back(std::move(phi));
    }
    for (std::size_t k = 1; k <= C.top(); ++k)
        if (!equal_in(ring, out.maps[k - 1] * C.differential(k), N.complex.differential(k) * out.maps[k]))
            out.chain_map = false;
    return out;
}

/// Cech nerve of f: X' -> X (an r x r' matrix): level n is X'^n + X with
/// coordinates (g_1, ..., g_n, x); d_0 sends it to (g_2, ..., g_n, f(g_1) + x),
/// d_i (0 < i < n) adds g_i and g_{i+1}, d_n drops g_n, s_j inserts 0 after g_j.
inline SimplicialModule cech_nerve(const IntMatrix& f, const CoefficientRing& ring, std::size_t levels)
{
    const std::size_t r = f.rows(), rp = f.cols();
    auto rank = [&](std::size_t n) { return n * rp + r; };
    std::vector<std::size_t> ranks;
    for (std::size_t n = 0; n <= levels; ++n)
        ranks.push_back(rank(n));
    // copies block `from` of the source to block `to` of the target (X' blocks, 1-based)
    auto copy_block = [&](IntMatrix& M, std::size_t to, std::size_t from) {
        for (std::size_t a = 0; a < rp; ++a)
            M((to - 1) * rp + a, (from - 1) * rp + a) += 1;
    };
    auto copy_x = [&](IntMatrix& M, std::size_t n_to, std::size_t n_from) {
        for (std::size_t a = 0; a < r; ++a)
            M(n_to * rp + a, n_from * rp + a) += 1;
    };
    std::vector<std::vector<IntMatrix>> faces(levels + 1), degens(levels + 1);
    for (std::size_t n = 1; n <= levels; ++n) {
        for (std::size_t i = 0; i <= n; ++i) {
            IntMatrix M(rank(n - 1), rank(n));
            copy_x(M, n - 1, n);
            if (i == 0) {
                for (std::size_t s = 1; s < n; ++s)
                    copy_block(M, s, s + 1);
                for (std::size_t a = 0; a < r; ++a)
                    for (std::size_t b = 0; b < rp; ++b)
                        M((n - 1) * rp + a, b) += f(a, b);
            } else if (i < n) {
                for (std::size_t s = 1; s < n; ++s) {
                    if (s < i)
                        copy_block(M, s, s);
                    else if (s == i) {
                        copy_block(M, s, s);
                        copy_block(M, s, s + 1);
                    } else
                        copy_block(M, s, s + 1);
                }
            } else {
                for (std::size_t s = 1; s < n; ++s)
                    copy_block(M, s, s);
            }
            faces[n].push_back(std::move(M));
        }
    }
    for (std::size_t n = 0; n < levels; ++n)
        for (std::size_t j = 0; j <= n; ++j) {
            IntMatrix M(rank(n + 1), rank(n));
            copy_x(M, n + 1, n);
            for (std::size_t s = 1; s <= n + 1; ++s) {
                if (s <= j)
                    copy_block(M, s, s);
                else if (s > j + 1)
                    copy_block(M, s, s - 1);
            }
            degens[n].push_back(std::move(M));
        }
    return SimplicialModule(ring, ranks, std::move(faces), std::move(degens), true);
}

inline SimplicialModule apply_functor_levelwise(const FunctorSpec& F, const SimplicialModule& X)
{
    F.require_ring(X.ring());
    std::vector<std::size_t> ranks;
    for (auto r : X.ranks())
        ranks.push_back(F.output_rank(r));
    const std::size_t N = X.top();
    std::vector<std::vector<IntMatrix>> faces(N + 1), degens(N + 1);
    for (std::size_t n = 1; n <= N; ++n)
        for (std::size_t i = 0; i <= n; ++i)
            faces[n].push_back(F.apply(X.face(n, i), X.ring()));
    for (std::size_t n = 0; n < N; ++n)
        for (std::size_t j = 0; j <= n; ++j)
            degens[n].push_back(F.apply(X.degeneracy(n, j), X.ring()));
    return SimplicialModule(X.ring(), ranks, std::move(faces), std::move(degens), X.degenerate_above());
}

/// True when N_k = 0 for n < k <= N. Needs N >= n + 1.
inline bool is_n_skeletal(const SimplicialModule& X, std::size_t n)
{
    if (X.top() < n + 1)
        throw Error("truncation level " + std::to_string(X.top()) + " is too small to decide " +
                    std::to_string(n) + "-skeletality (need at least " + std::to_string(n + 1) + ")");
    if (!X.degenerate_above())
        throw Error("simplicial module is not attested degenerate above its truncation level");
    auto r = normalized_ranks(X);
    for (std::size_t k = n + 1; k <= X.top(); ++k)
        if (r[k] != 0)
            return false;
    return true;
}

/// Smallest n with N_k = 0 for k > n, when that can be decided (n < N).
inline std::optional<std::size_t> skeletal_degree(const SimplicialModule& X)
{
    auto r = normalized_ranks(X);
    std::size_t n = 0;
    for (std::size_t k = 0; k < r.size(); ++k)
        if (r[k] != 0)
            n = k;
    if (n >= X.top() || !X.degenerate_above())
        return std::nullopt;
    return n;
}

/// sum_k (-1)^k rank N_k, for X certified n-skeletal with n <= bound.
inline Int euler_class(const SimplicialModule& X, std::size_t bound)
{
    auto n = skeletal_degree(X);
    if (!n)
        throw Error("euler_class: skeletality not certified within truncation level " + std::to_string(X.top()));
    if (*n > bound)
        throw Error("euler_class: object is only " + std::to_string(*n) + "-skeletal, bound is " +
                    std::to_string(bound));
    auto r = normalized_ranks(X);
    Int e = 0;
    for (std::size_t k = 0; k <= *n; ++k)
        e += (k % 2 == 0 ? 1 : -1) * static_cast<long>(r[k]);
    return e;
}

/// H_*(N F(Gamma C)) in degrees 0..top*deg(F), computed through level
/// top*deg(F) + 1, where N_{top*deg(F)+1} must vanish.
inline std::vector<FgAbelianGroup> derived_functor_homology(const FunctorSpec& F, const ChainComplex& C)
{
    const std::size_t bound = C.top() * F.degree();
    SimplicialModule X = apply_functor_levelwise(F, dk_gamma(C, bound + 1));
    NormalizedChains N = normalized_chain_data(X);
    if (N.complex.rank(bound + 1) != 0)
        throw Error("derived_functor_homology: normalized chains do not vanish in degree " + std::to_string(bound + 1));
    auto H = homology(N.complex);
    H.resize(bound + 1);
    return H;
}

} // namespace polyk0
