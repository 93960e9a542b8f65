#pragma once

#include "chow/core/elimination.hpp"
#include "chow/core/error.hpp"
#include "chow/jacobian/hypersurface.hpp"

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace chow {

/// Matrix of (source subspace of R_a) x R_b -> R_{a+b} / W. Column i*dim_b + j
/// is the class of source[i] * (j-th standard monomial of R_b).
struct MultiplicationMap {
    unsigned a = 0, b = 0, c = 0;
    std::vector<std::vector<Rational>> source; // vectors in R_a quotient coordinates
    std::size_t dim_b = 0;
    std::size_t target_dim = 0; // dim R_c - rank W
    ExactMatrix matrix;         // target_dim x (source.size() * dim_b)
};

namespace detail {

// Projection of R_c onto a complement of span(W): coordinates on the
// non-pivot columns of the reduced basis of W.
struct QuotientProjector {
    RowEchelon w;
    std::vector<std::size_t> keep;

    QuotientProjector(std::size_t dim, const std::vector<std::vector<Rational>>& span) {
        w = reduced_row_echelon(ExactMatrix::from_rows(span, dim));
        std::vector<bool> pivot(dim, false);
        for (auto p : w.pivots) pivot[p] = true;
        for (std::size_t j = 0; j < dim; ++j)
            if (!pivot[j]) keep.push_back(j);
    }

    std::vector<Rational> operator()(std::vector<Rational> v) const {
        for (std::size_t r = 0; r < w.pivots.size(); ++r) {
            const Rational f = v[w.pivots[r]];
            if (sgn(f) == 0) continue;
            for (std::size_t j = 0; j < v.size(); ++j)
                if (sgn(w.rows(r, j)) != 0) v[j] -= f * w.rows(r, j);
        }
        std::vector<Rational> out;
        out.reserve(keep.size());
        for (auto j : keep) out.push_back(v[j]);
        return out;
    }
};

inline std::vector<std::vector<Rational>> unit_vectors(std::size_t n) {
    std::vector<std::vector<Rational>> e(n, std::vector<Rational>(n));
    for (std::size_t i = 0; i < n; ++i) e[i][i] = 1;
    return e;
}

} // namespace detail

/// Multiplication R_a x R_b -> R_{a+b}, optionally restricted to a subspace of
/// R_a and composed with the projection modulo span(quotient_by).
inline MultiplicationMap multiplication_map(
    const HypersurfaceRing& ring, unsigned a, unsigned b,
    std::optional<std::vector<std::vector<Rational>>> source = std::nullopt,
    const std::vector<std::vector<Rational>>& quotient_by = {}) {
    if (a + b > ring.socle_degree() + 1)
        throw BadDegree("a + b = " + std::to_string(a + b) + " exceeds socle degree + 1 = " +
                        std::to_string(ring.socle_degree() + 1));
    const auto pa = ring.piece(a), pb = ring.piece(b), pc = ring.piece(a + b);
    MultiplicationMap m;
    m.a = a;
    m.b = b;
    m.c = a + b;
    m.source = source ? std::move(*source) : detail::unit_vectors(pa->quotient_dim());
    for (const auto& v : m.source)
        if (v.size() != pa->quotient_dim()) throw ShapeMismatch("source vector not in R_" + std::to_string(a));
    for (const auto& v : quotient_by)
        if (v.size() != pc->quotient_dim()) throw ShapeMismatch("quotient vector not in R_" + std::to_string(m.c));
    m.dim_b = pb->quotient_dim();
    const detail::QuotientProjector proj(pc->quotient_dim(), quotient_by);
    m.target_dim = proj.keep.size();
    m.matrix = ExactMatrix(m.target_dim, m.source.size() * m.dim_b);

    // products of standard monomials, reused across source vectors
    std::vector<std::vector<std::vector<Rational>>> prod(pa->quotient_dim());
    for (std::size_t i = 0; i < pa->quotient_dim(); ++i) {
        bool used = std::any_of(m.source.begin(), m.source.end(), [&](const auto& v) { return sgn(v[i]) != 0; });
        if (!used) continue;
        for (std::size_t j = 0; j < m.dim_b; ++j)
            prod[i].push_back(pc->reduce_monomial(pa->representative(i) * pb->representative(j)));
    }
    for (std::size_t s = 0; s < m.source.size(); ++s)
        for (std::size_t j = 0; j < m.dim_b; ++j) {
            std::vector<Rational> col(pc->quotient_dim());
            for (std::size_t i = 0; i < pa->quotient_dim(); ++i) {
                const Rational& coef = m.source[s][i];
                if (sgn(coef) == 0) continue;
                for (std::size_t t = 0; t < col.size(); ++t)
                    if (sgn(prod[i][j][t]) != 0) col[t] += coef * prod[i][j][t];
            }
            const auto projected = proj(std::move(col));
            for (std::size_t t = 0; t < m.target_dim; ++t) m.matrix(t, s * m.dim_b + j) = projected[t];
        }
    return m;
}

/// {w in span(source) : w * R_b = 0 in the target}, as R_a coordinate vectors.
/// Always exact.
inline std::vector<std::vector<Rational>> left_kernel(const MultiplicationMap& m) {
    const std::size_t k = m.source.size();
    ExactMatrix stacked(m.target_dim * m.dim_b, k);
    for (std::size_t j = 0; j < m.dim_b; ++j)
        for (std::size_t t = 0; t < m.target_dim; ++t)
            for (std::size_t s = 0; s < k; ++s) stacked(j * m.target_dim + t, s) = m.matrix(t, s * m.dim_b + j);
    std::vector<std::vector<Rational>> out;
    const std::size_t dim_a = k ? m.source.front().size() : 0;
    for (const auto& alpha : kernel_basis(stacked)) {
        std::vector<Rational> w(dim_a);
        for (std::size_t s = 0; s < k; ++s)
            if (sgn(alpha[s]) != 0)
                for (std::size_t i = 0; i < dim_a; ++i) w[i] += alpha[s] * m.source[s][i];
        out.push_back(std::move(w));
    }
    return out;
}

struct SurjectivityVerdict {
    bool surjective = false;
    std::size_t target_dim = 0;
    RankCertificate certificate;
};

/// rank = target dimension. A modular rank that reaches the target settles
/// it; otherwise the rank is recomputed exactly.
inline SurjectivityVerdict is_surjective(const MultiplicationMap& m,
                                         std::optional<std::uint64_t> prime = std::nullopt) {
    SurjectivityVerdict v;
    v.target_dim = m.target_dim;
    v.certificate = certified_rank(m.matrix, m.target_dim, prime);
    v.surjective = v.certificate.rank == m.target_dim;
    return v;
}

/// Socle coordinate of R_k x R_{socle-k} -> R_socle, as a dim R_k x dim R_{socle-k} matrix.
inline ExactMatrix pairing_matrix(const HypersurfaceRing& ring, unsigned k) {
    const unsigned s = ring.socle_degree();
    if (k > s) throw BadDegree("pairing degree " + std::to_string(k) + " exceeds socle degree");
    const auto ps = ring.piece(s);
    if (ps->quotient_dim() != 1)
        throw SocleNotOneDimensional("dim R_" + std::to_string(s) + " = " + std::to_string(ps->quotient_dim()));
    const auto pk = ring.piece(k), pl = ring.piece(s - k);
    ExactMatrix m(pk->quotient_dim(), pl->quotient_dim());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            m(i, j) = ps->reduce_monomial(pk->representative(i) * pl->representative(j))[0];
    return m;
}

/// dim R_k = dim R_{socle-k} and the pairing into the socle is nondegenerate.
inline bool macaulay_pairing_check(const HypersurfaceRing& ring, unsigned k) {
    const ExactMatrix m = pairing_matrix(ring, k);
    return m.rows() == m.cols() && rank(m) == m.rows();
}

struct DualityVerdict {
    SurjectivityVerdict surjectivity; // R_{socle-a-b} x R_b -> R_{socle-a}
    bool pairing = false;             // R_a x R_{socle-a} nondegenerate
    bool no_left_kernel() const noexcept { return surjectivity.surjective && pairing; }
};

/// No left kernel of R_a x R_b -> R_{a+b}: if w*R_b = 0 then w annihilates
/// R_{socle-a-b} * R_b, which is all of R_{socle-a} when that map is onto,
/// and a nondegenerate pairing forces w = 0.
inline DualityVerdict left_kernel_via_duality(const HypersurfaceRing& ring, unsigned a, unsigned b,
                                              std::optional<std::uint64_t> prime = std::nullopt) {
    const unsigned s = ring.socle_degree();
    if (a + b > s) throw BadDegree("a + b must not exceed the socle degree");
    DualityVerdict v;
    v.surjectivity = is_surjective(multiplication_map(ring, s - a - b, b), prime);
    v.pairing = macaulay_pairing_check(ring, a);
    return v;
}

/// Lower bound for rank(l : R_b -> R_{b+1}) valid for every nonzero linear
/// form l, when J_F is generated by monomials. If x_k is the grevlex-leading
/// variable of l, then l*m has leading monomial x_k*m, so every standard m
/// with x_k*m standard contributes an independent image.
inline std::size_t uniform_mult_rank_bound(const HypersurfaceRing& ring, unsigned b) {
    std::vector<Monomial> gens;
    for (std::size_t i = 0; i < ring.nvars(); ++i) {
        const auto& p = ring.partials()[i];
        if (p.size() > 1)
            throw IdealNotMonomial("dF/d" + ring.coords()[i] + " has " + std::to_string(p.size()) + " terms");
        if (p.size() == 1) gens.push_back(p.front().first);
    }
    auto standard = [&](const Monomial& m) {
        return std::none_of(gens.begin(), gens.end(), [&](const Monomial& g) { return g.divides(m); });
    };
    std::vector<Monomial> basis;
    for (const auto& m : enumerate_monomials(ring.nvars(), b))
        if (standard(m)) basis.push_back(m);
    std::size_t best = basis.size();
    for (std::size_t i = 0; i < ring.nvars(); ++i) {
        std::size_t count = 0;
        for (const auto& m : basis) {
            Monomial xm = m;
            xm[i] += 1;
            if (standard(xm)) ++count;
        }
        best = std::min(best, count);
    }
    return best;
}

/// Functional h -> socle coordinate of h*g on R_{socle-deg g}.
inline std::vector<Rational> pairing_functional(const HypersurfaceRing& ring, const Polynomial& g, unsigned g_degree) {
    const unsigned s = ring.socle_degree();
    if (g_degree > s) throw BadDegree("representative degree exceeds socle degree");
    const auto ps = ring.piece(s);
    if (ps->quotient_dim() != 1)
        throw SocleNotOneDimensional("dim R_" + std::to_string(s) + " = " + std::to_string(ps->quotient_dim()));
    const auto pg = ring.piece(g_degree), pa = ring.piece(s - g_degree);
    const auto gq = ring.to_quotient(g, g_degree);
    std::vector<Rational> phi(pa->quotient_dim());
    for (std::size_t i = 0; i < phi.size(); ++i)
        for (std::size_t j = 0; j < gq.size(); ++j)
            if (sgn(gq[j]) != 0)
                phi[i] += gq[j] * ps->reduce_monomial(pa->representative(i) * pg->representative(j))[0];
    return phi;
}

struct GreenGotzmannInstance {
    unsigned a = 0, b = 0;
    std::size_t kernel_dim = 0; // dim V/J = dim R_a - 1
    SurjectivityVerdict verdict;
};

/// V/J = ker(phi) in R_a for a nonzero functional phi (so V contains J_a by
/// construction); checks V/J x R_b -> R_{a+b} is onto.
inline GreenGotzmannInstance green_gotzmann_instance(const HypersurfaceRing& ring, unsigned a, unsigned b,
                                                     const std::vector<Rational>& functional,
                                                     std::optional<std::uint64_t> prime = std::nullopt) {
    if (functional.size() != ring.dim(a)) throw ShapeMismatch("functional not on R_" + std::to_string(a));
    if (std::all_of(functional.begin(), functional.end(), [](const Rational& x) { return sgn(x) == 0; }))
        throw DomainMismatch("zero functional has no codimension-one kernel");
    GreenGotzmannInstance g;
    g.a = a;
    g.b = b;
    const auto v = kernel_basis(ExactMatrix::from_rows({functional}, functional.size()));
    g.kernel_dim = v.size();
    g.verdict = is_surjective(multiplication_map(ring, a, b, v), prime);
    return g;
}

} // namespace chow
