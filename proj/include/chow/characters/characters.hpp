#pragma once

#include "chow/core/elimination.hpp"
#include "chow/core/error.hpp"
#include "chow/core/scalar.hpp"
#include "chow/jacobian/hypersurface.hpp"

#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace chow {

/// x_i -> zeta^{e_i} x_i with zeta a primitive N-th root of unity. Exponents
/// are kept in [0, N).
class DiagonalAutomorphism {
public:
    DiagonalAutomorphism(unsigned long modulus, const std::vector<long>& exponents) : n_(modulus) {
        if (modulus == 0) throw DomainMismatch("automorphism modulus must be positive");
        for (long e : exponents) {
            long r = e % static_cast<long>(modulus);
            if (r < 0) r += static_cast<long>(modulus);
            e_.push_back(static_cast<unsigned long>(r));
        }
    }

    static DiagonalAutomorphism identity(std::size_t nvars, unsigned long modulus = 1) {
        return DiagonalAutomorphism(modulus, std::vector<long>(nvars, 0));
    }

    unsigned long modulus() const noexcept { return n_; }
    const std::vector<unsigned long>& exponents() const noexcept { return e_; }

    /// Character of the volume form, sum of exponents.
    unsigned long twist() const {
        unsigned long s = 0;
        for (auto e : e_) s = (s + e) % n_;
        return s;
    }

    unsigned long character(const Monomial& m) const {
        if (m.size() != e_.size()) throw ShapeMismatch("monomial and automorphism differ in variable count");
        unsigned long c = 0;
        for (std::size_t i = 0; i < e_.size(); ++i) c = (c + (m[i] % n_) * e_[i]) % n_;
        return c;
    }

    unsigned long reduce(long c) const {
        long r = c % static_cast<long>(n_);
        return static_cast<unsigned long>(r < 0 ? r + static_cast<long>(n_) : r);
    }

private:
    unsigned long n_;
    std::vector<unsigned long> e_;
};

struct InvarianceResult {
    bool invariant = false;
    std::optional<unsigned long> character; // common character of all terms
    std::vector<unsigned long> term_characters;
};

/// Every term of F has the same character (F is an eigenvector).
inline InvarianceResult check_invariance(const HypersurfaceRing& ring, const DiagonalAutomorphism& s) {
    if (s.exponents().size() != ring.nvars()) throw ShapeMismatch("automorphism needs one exponent per coordinate");
    InvarianceResult r;
    for (const auto& [m, c] : ring.form_terms()) r.term_characters.push_back(s.character(m));
    std::set<unsigned long> distinct(r.term_characters.begin(), r.term_characters.end());
    r.invariant = distinct.size() <= 1;
    if (r.invariant && !distinct.empty()) r.character = *distinct.begin();
    return r;
}

struct CharacterSpectrum {
    unsigned degree = 0;
    bool twisted = false;
    std::map<unsigned long, std::size_t> histogram; // character -> eigenspace dimension (nonzero only)

    std::size_t total() const {
        std::size_t t = 0;
        for (const auto& [c, d] : histogram) t += d;
        return t;
    }

    std::size_t dim(unsigned long c) const {
        auto it = histogram.find(c);
        return it == histogram.end() ? 0 : it->second;
    }
};

/// Eigenspace dimensions of R_k, one character at a time: the Jacobian span is
/// spanned by eigenvectors m * dF/dx_i, so each slice is the ambient monomials
/// of that character modulo the generators of that character. The twisted
/// variant shifts by the character of the residue form P*Omega/F^{q+1}.
inline CharacterSpectrum character_spectrum(const HypersurfaceRing& ring, const DiagonalAutomorphism& s,
                                            unsigned k, bool twisted) {
    const auto inv = check_invariance(ring, s);
    if (!inv.invariant) throw NotInvariant("defining form is not an eigenvector of the automorphism");
    const unsigned long fchar = inv.character.value_or(0);
    long shift = 0;
    if (twisted) {
        shift = static_cast<long>(s.twist());
        if (fchar != 0) {
            if ((k + ring.nvars()) % ring.degree() != 0)
                throw BadDegree("twist by F^{q+1} needs k + n divisible by deg F");
            shift -= static_cast<long>(((k + ring.nvars()) / ring.degree()) * fchar);
        }
    }

    const auto ambient = enumerate_monomials(ring.nvars(), k);
    std::map<unsigned long, std::vector<std::size_t>> columns;
    for (std::size_t j = 0; j < ambient.size(); ++j) columns[s.character(ambient[j])].push_back(j);
    std::map<unsigned long, std::vector<std::vector<Integer>>> rows;
    for (auto& row : ring.span_rows(k)) {
        std::optional<unsigned long> c;
        for (std::size_t j = 0; j < row.size(); ++j) {
            if (sgn(row[j]) == 0) continue;
            const auto cj = s.character(ambient[j]);
            if (c && *c != cj) throw NotInvariant("Jacobian generator mixes characters");
            c = cj;
        }
        if (!c) continue;
        std::vector<Integer> slice;
        for (auto j : columns[*c]) slice.push_back(row[j]);
        rows[*c].push_back(std::move(slice));
    }

    CharacterSpectrum out;
    out.degree = k;
    out.twisted = twisted;
    for (auto& [c, cols] : columns) {
        const std::size_t r = rows.count(c) ? rank(std::move(rows[c]), cols.size()) : 0;
        if (cols.size() > r) out.histogram[s.reduce(static_cast<long>(c) + shift)] += cols.size() - r;
    }
    return out;
}

/// {u c mod N : gcd(u, N) = 1}.
inline std::set<unsigned long> galois_orbit(unsigned long c, unsigned long modulus) {
    std::set<unsigned long> o;
    for (unsigned long u = 1; u <= modulus; ++u)
        if (std::gcd(u, modulus) == 1) o.insert((u * (c % modulus)) % modulus);
    if (o.empty()) o.insert(0);
    return o;
}

struct OrbitReport {
    unsigned long representative = 0; // smallest member
    std::size_t size = 0;
    std::size_t dim_20 = 0, dim_11 = 0, dim_02 = 0;
    std::size_t max_multiplicity = 0; // largest eigenspace dimension on H^2_pr within the orbit
    bool excluded = false;
    std::string reason;
};

struct PicardBound {
    std::size_t bound = 1;
    unsigned degree_20 = 0, degree_11 = 0, degree_02 = 0;
    std::vector<OrbitReport> orbits;
};

/// Upper bound on the Picard number of a smooth surface in P^3 from the
/// twisted character spectra of R_{d-4}, R_{2d-4}, R_{3d-4}. An orbit O spans
/// a rational sub-representation W_O of H^2_pr. When every character of O
/// occurs once, W_O is irreducible over Q, so it holds algebraic classes only
/// if it lies entirely in H^{1,1}; meeting H^{2,0} or H^{0,2} rules that out.
/// Any other orbit contributes its full H^{1,1} dimension. The +1 is the
/// hyperplane class.
inline PicardBound picard_upper_bound(const HypersurfaceRing& ring, const DiagonalAutomorphism& s,
                                      std::optional<std::uint64_t> prime = std::nullopt) {
    if (ring.nvars() != 4) throw DegreeMismatch("Picard bound needs a surface in P^3");
    if (!check_invariance(ring, s).invariant) throw NotInvariant("defining form is not an eigenvector of the automorphism");
    if (!is_smooth_artinian(ring, prime)) throw NotSmooth("Jacobian ring is not Artinian");
    const unsigned d = ring.degree();
    PicardBound out;
    out.degree_20 = d >= 4 ? d - 4 : 0;
    out.degree_11 = 2 * d - 4;
    out.degree_02 = 3 * d - 4;
    CharacterSpectrum s20, s02;
    if (d >= 4) s20 = character_spectrum(ring, s, d - 4, true);
    const CharacterSpectrum s11 = character_spectrum(ring, s, 2 * d - 4, true);
    s02 = character_spectrum(ring, s, 3 * d - 4, true);

    std::set<unsigned long> seen;
    std::set<unsigned long> all;
    for (const CharacterSpectrum* sp : std::initializer_list<const CharacterSpectrum*>{&s20, &s11, &s02})
        for (const auto& [c, dim] : sp->histogram) all.insert(c);
    for (auto c : all) {
        if (seen.count(c)) continue;
        const auto orbit = galois_orbit(c, s.modulus());
        seen.insert(orbit.begin(), orbit.end());
        OrbitReport r;
        r.representative = *orbit.begin();
        r.size = orbit.size();
        for (auto x : orbit) {
            const std::size_t a = s20.dim(x), b = s11.dim(x), e = s02.dim(x);
            r.dim_20 += a;
            r.dim_11 += b;
            r.dim_02 += e;
            r.max_multiplicity = std::max(r.max_multiplicity, a + b + e);
        }
        const bool transcendental = r.dim_20 + r.dim_02 > 0;
        if (transcendental && r.max_multiplicity <= 1) {
            r.excluded = true;
            r.reason = "multiplicity-free orbit meets H^{2,0} + H^{0,2}";
        } else if (r.dim_11 == 0) {
            r.excluded = true;
            r.reason = "no H^{1,1} component";
        } else {
            r.reason = transcendental ? "orbit meets H^{2,0} but has repeated characters" : "orbit lies in H^{1,1}";
            out.bound += r.dim_11;
        }
        out.orbits.push_back(r);
    }
    return out;
}

} // namespace chow
