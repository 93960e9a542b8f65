#include "chow/characters/characters.hpp"
#include "chow/poly/parse.hpp"

#include <gtest/gtest.h>

#include <numeric>

using namespace chow;

namespace {

const std::vector<std::string> kCoords{"x0", "x1", "x2", "x3"};

HypersurfaceRing make(const std::string& f) {
    return HypersurfaceRing(parse_polynomial(f, PolyRing::make(kCoords)), kCoords);
}

HypersurfaceRing shioda() { return make("x0*x1^4 + x1*x2^4 + x2*x0^4 + x3^5"); }
DiagonalAutomorphism shioda_sigma() { return DiagonalAutomorphism(65, {16, -4, 1, 0}); }

HypersurfaceRing diagonal_fermat() { return make("x0^4 + x1^4 + x2^4 + x3^4"); }
DiagonalAutomorphism fermat_sigma() { return DiagonalAutomorphism(4, {0, 1, 2, 3}); }

// R_k of sum x_i^4 has the standard monomials with exponents <= 2 as basis.
std::map<unsigned long, std::size_t> fermat_oracle(unsigned k, bool twisted) {
    std::map<unsigned long, std::size_t> h;
    for (const auto& m : enumerate_monomials(4, k)) {
        if (!std::all_of(m.exps.begin(), m.exps.end(), [](auto e) { return e <= 2; })) continue;
        unsigned long c = 0;
        for (std::size_t i = 0; i < 4; ++i) c += i * m[i];
        ++h[(c + (twisted ? 6 : 0)) % 4];
    }
    return h;
}

} // namespace

TEST(Automorphism, NormalizesExponents) {
    const auto s = shioda_sigma();
    EXPECT_EQ(s.exponents(), (std::vector<unsigned long>{16, 61, 1, 0}));
    EXPECT_EQ(s.twist(), 13u);
    EXPECT_THROW(DiagonalAutomorphism(0, {1}), DomainMismatch);
}

TEST(Invariance, Examples) {
    const auto r = check_invariance(shioda(), shioda_sigma());
    EXPECT_TRUE(r.invariant);
    EXPECT_EQ(r.character, 0u);
    EXPECT_EQ(r.term_characters, (std::vector<unsigned long>(4, 0)));

    const auto f = check_invariance(make("x0^4 + x1^4 - x2^4 - x3^4"), shioda_sigma());
    EXPECT_FALSE(f.invariant);
    // x0^4 -> 64, x1^4 -> 49
    EXPECT_NE(std::find(f.term_characters.begin(), f.term_characters.end(), 64u), f.term_characters.end());
    EXPECT_NE(std::find(f.term_characters.begin(), f.term_characters.end(), 49u), f.term_characters.end());

    EXPECT_TRUE(check_invariance(make("x0^3 + x1*x2*x3 + x2^2*x3"), DiagonalAutomorphism::identity(4, 7)).invariant);
    EXPECT_THROW(character_spectrum(make("x0^4 + x1^4 - x2^4 - x3^4"), shioda_sigma(), 1, true), NotInvariant);
}

TEST(Spectrum, ShiodaLowAndSocle) {
    const auto ring = shioda();
    const auto s1 = character_spectrum(ring, shioda_sigma(), 1, true);
    EXPECT_EQ(s1.histogram, (std::map<unsigned long, std::size_t>{{9, 1}, {13, 1}, {14, 1}, {29, 1}}));
    const auto s12 = character_spectrum(ring, shioda_sigma(), 12, true);
    EXPECT_EQ(s12.histogram.size(), 1u);
    EXPECT_EQ(s12.total(), 1u);
}

TEST(Spectrum, TotalsMatchHilbertFunction) {
    const auto ring = shioda();
    for (unsigned k = 0; k <= 13; ++k) {
        EXPECT_EQ(character_spectrum(ring, shioda_sigma(), k, false).total(), ring.dim(k)) << k;
        EXPECT_EQ(character_spectrum(ring, shioda_sigma(), k, true).total(), ring.dim(k)) << k;
    }
}

TEST(Spectrum, IdentityIsSingleCharacter) {
    const auto ring = make("x0^3 + x1^3 + x2^3 + x3^3 + x0*x1*x2");
    for (unsigned k = 0; k <= 4; ++k) {
        const auto s = character_spectrum(ring, DiagonalAutomorphism::identity(4, 5), k, false);
        EXPECT_EQ(s.histogram, (std::map<unsigned long, std::size_t>{{0, ring.dim(k)}})) << k;
    }
}

TEST(Spectrum, DiagonalFermatAgainstBruteForce) {
    const auto ring = diagonal_fermat();
    for (unsigned k = 0; k <= 8; ++k)
        for (bool tw : {false, true})
            EXPECT_EQ(character_spectrum(ring, fermat_sigma(), k, tw).histogram, fermat_oracle(k, tw)) << k;
}

TEST(Spectrum, MacaulayDuality) {
    const auto ring = shioda();
    const auto s = shioda_sigma();
    const unsigned long socle = character_spectrum(ring, s, 12, false).histogram.begin()->first;
    for (unsigned k = 0; k <= 12; ++k) {
        const auto lo = character_spectrum(ring, s, k, false);
        const auto hi = character_spectrum(ring, s, 12 - k, false);
        for (const auto& [c, d] : lo.histogram) EXPECT_EQ(hi.dim(s.reduce(long(socle) - long(c))), d) << k << " " << c;
    }
}

TEST(Spectrum, EquivarianceOfIdealDimensions) {
    // ambient = ideal + quotient, one character at a time
    const auto ring = shioda();
    const auto s = shioda_sigma();
    for (unsigned k = 0; k <= 8; ++k) {
        std::map<unsigned long, std::size_t> ambient;
        for (const auto& m : enumerate_monomials(4, k)) ++ambient[s.character(m)];
        const auto q = character_spectrum(ring, s, k, false);
        std::size_t ideal = 0;
        for (const auto& [c, n] : ambient) {
            ASSERT_GE(n, q.dim(c));
            ideal += n - q.dim(c);
        }
        EXPECT_EQ(ideal, ring.piece(k)->ideal_dim()) << k;
    }
}

TEST(Orbits, Examples) {
    EXPECT_EQ(galois_orbit(13, 65), (std::set<unsigned long>{13, 26, 39, 52}));
    const auto units = galois_orbit(1, 65);
    EXPECT_EQ(units.size(), 48u);
    for (auto u : units) EXPECT_EQ(std::gcd(u, 65ul), 1u);
    EXPECT_EQ(galois_orbit(0, 65), (std::set<unsigned long>{0}));
}

TEST(Orbits, PartitionAndIdempotence) {
    for (unsigned long n : {1ul, 4ul, 12ul, 65ul}) {
        std::set<unsigned long> covered;
        std::size_t total = 0;
        for (unsigned long c = 0; c < n; ++c) {
            const auto o = galois_orbit(c, n);
            EXPECT_TRUE(o.count(c));
            for (auto x : o) EXPECT_EQ(galois_orbit(x, n), o);
            if (*o.begin() == c) {
                total += o.size();
                covered.insert(o.begin(), o.end());
            }
        }
        EXPECT_EQ(total, n);
        EXPECT_EQ(covered.size(), n);
    }
}

TEST(Picard, ShiodaRankOne) {
    const auto b = picard_upper_bound(shioda(), shioda_sigma());
    EXPECT_EQ(b.bound, 1u);
    std::size_t h11 = 0;
    for (const auto& o : b.orbits) {
        h11 += o.dim_11;
        EXPECT_TRUE(o.excluded) << o.representative;
    }
    EXPECT_EQ(h11, 44u);
}

TEST(Picard, IdentityIsVacuous) {
    const auto ring = shioda();
    const auto b = picard_upper_bound(ring, DiagonalAutomorphism::identity(4, 65));
    EXPECT_EQ(b.bound, 1u + ring.dim(6));
    ASSERT_EQ(b.orbits.size(), 1u);
    EXPECT_FALSE(b.orbits[0].excluded);
    EXPECT_GT(b.orbits[0].max_multiplicity, 1u);
}

TEST(Picard, DiagonalFermatQuartic) {
    const auto b = picard_upper_bound(diagonal_fermat(), fermat_sigma());
    // brute-force: orbits of Z/4 are {0}, {1,3}, {2}
    const auto s0 = fermat_oracle(0, true), s1 = fermat_oracle(4, true), s2 = fermat_oracle(8, true);
    std::size_t expect = 1;
    for (const std::set<unsigned long>& o : {std::set<unsigned long>{0}, {1, 3}, {2}}) {
        std::size_t tr = 0, mid = 0, mult = 0;
        for (auto c : o) {
            const std::size_t a = s0.count(c) ? s0.at(c) : 0, m = s1.count(c) ? s1.at(c) : 0,
                              z = s2.count(c) ? s2.at(c) : 0;
            tr += a + z;
            mid += m;
            mult = std::max(mult, a + m + z);
        }
        if (!(tr > 0 && mult <= 1)) expect += mid;
    }
    EXPECT_EQ(b.bound, expect);
    EXPECT_GE(b.bound, 1u);
    EXPECT_LE(b.bound, 20u);
}

TEST(Picard, Preconditions) {
    EXPECT_THROW(picard_upper_bound(make("x0^4 + x1^4 - x2^4 - x3^4"), shioda_sigma()), NotInvariant);
    EXPECT_THROW(picard_upper_bound(make("x0^4 + x1^4 + x2^4"), DiagonalAutomorphism::identity(4)), NotSmooth);
}
