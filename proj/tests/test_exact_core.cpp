#include "chow/core/elimination.hpp"
#include "chow/core/lattice.hpp"
#include "chow/poly/monomial.hpp"

#include <gtest/gtest.h>

#include <map>
#include <random>
#include <set>

using namespace chow;

namespace {

ExactMatrix random_int_matrix(std::mt19937& rng, std::size_t rows, std::size_t cols, int lo, int hi) {
    std::uniform_int_distribution<int> dist(lo, hi);
    ExactMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) m(i, j) = dist(rng);
    return m;
}

// Brute-force image of a small box of integer combinations, clipped to |x_i| <= bound.
std::set<std::vector<long>> lattice_points(const IntMatrix& basis, int coeff_range, long bound) {
    std::set<std::vector<long>> pts;
    std::vector<int> c(basis.rows(), -coeff_range);
    if (basis.rows() == 0) {
        pts.insert(std::vector<long>(basis.cols(), 0));
        return pts;
    }
    while (true) {
        std::vector<long> p(basis.cols(), 0);
        for (std::size_t i = 0; i < basis.rows(); ++i)
            for (std::size_t j = 0; j < basis.cols(); ++j) p[j] += c[i] * basis(i, j).get_si();
        bool inside = true;
        for (long x : p) inside = inside && std::labs(x) <= bound;
        if (inside) pts.insert(p);
        std::size_t k = 0;
        while (k < c.size() && c[k] == coeff_range) c[k++] = -coeff_range;
        if (k == c.size()) break;
        ++c[k];
    }
    return pts;
}

} // namespace

TEST(Rank, Identity) { EXPECT_EQ(rank(ExactMatrix::identity(3)), 3u); }

TEST(Rank, ProportionalRows) { EXPECT_EQ(rank(ExactMatrix{{1, 2}, {2, 4}}), 1u); }

TEST(Rank, EmptyMatrix) {
    EXPECT_EQ(rank(ExactMatrix(0, 5)), 0u);
    EXPECT_EQ(rank(ExactMatrix(4, 0)), 0u);
}

TEST(Rank, RationalEntries) {
    ExactMatrix m(2, 2);
    m(0, 0) = Rational(1, 2);
    m(0, 1) = Rational(1, 3);
    m(1, 0) = Rational(3, 2);
    m(1, 1) = 1;
    EXPECT_EQ(rank(m), 1u);
}

TEST(Rank, FermatDegreeFourGenerators) {
    // Rows x_i^3 * x_j in monomial coordinates of degree 4.
    const auto mons = enumerate_monomials(4, 4);
    ASSERT_EQ(mons.size(), 35u);
    std::map<std::vector<std::uint32_t>, std::size_t> col;
    for (std::size_t k = 0; k < mons.size(); ++k) col[mons[k].exps] = k;
    ExactMatrix m(16, 35);
    std::set<std::vector<std::uint32_t>> distinct;
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) {
            std::vector<std::uint32_t> e(4, 0);
            e[i] += 3;
            e[j] += 1;
            m(i * 4 + j, col.at(e)) = 1;
            distinct.insert(e);
        }
    // Oracle: distinct monomials are independent.
    EXPECT_EQ(rank(m), distinct.size());
    EXPECT_EQ(rank(m), 16u);
}

TEST(Kernel, IdentityHasNone) { EXPECT_TRUE(kernel_basis(ExactMatrix::identity(2)).empty()); }

TEST(Kernel, SingleRow) {
    const auto k = kernel_basis(ExactMatrix{{1, 1}});
    ASSERT_EQ(k.size(), 1u);
    EXPECT_EQ(k[0][0], -k[0][1]);
    EXPECT_NE(k[0][0], 0);
}

TEST(Kernel, RandomRankNullity) {
    std::mt19937 rng(20240611);
    for (int trial = 0; trial < 50; ++trial) {
        ExactMatrix m = random_int_matrix(rng, 4, 6, -5, 5);
        if (trial % 5 == 0) // force some dependent rows
            for (std::size_t j = 0; j < 6; ++j) m(3, j) = m(0, j) * 2 - m(1, j);
        const auto kernel = kernel_basis(m);
        EXPECT_EQ(rank(m) + kernel.size(), m.cols());
        for (const auto& v : kernel) {
            const auto image = m.apply(v);
            EXPECT_TRUE(is_zero_vector<Rational>(image));
        }
    }
}

TEST(ModularRank, IdentityCertifies) {
    const auto cert = modular_rank(ExactMatrix::identity(3), 101);
    EXPECT_EQ(cert.rank, 3u);
    EXPECT_EQ(cert.mode, RankCertificate::Mode::modular);
    EXPECT_TRUE(certifies(cert, 3));
}

TEST(ModularRank, CollapseIsLowerBoundOnly) {
    const ExactMatrix m{{101, 0}, {0, 1}};
    EXPECT_EQ(modular_rank(m, 101).rank, 1u);
    EXPECT_EQ(rank(m), 2u);
}

TEST(ModularRank, BadPrime) {
    ExactMatrix m(1, 1);
    m(0, 0) = Rational(1, 7);
    EXPECT_THROW(modular_rank(m, 7), BadPrime);
    EXPECT_THROW(modular_rank(m, 100), BadPrime);
    EXPECT_EQ(modular_rank(m, 11).rank, 1u);
}

TEST(ModularRank, NeverExceedsExact) {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 30; ++trial) {
        const ExactMatrix m = random_int_matrix(rng, 5, 5, -3, 3);
        EXPECT_LE(modular_rank(m, 3).rank, rank(m));
        EXPECT_LE(modular_rank(m, kDefaultCertificatePrime).rank, rank(m));
    }
}

TEST(ModularRank, CertifiedRankFallsBackToExact) {
    const ExactMatrix m{{101, 0}, {0, 1}};
    const auto cert = certified_rank(m, 2, 101);
    EXPECT_TRUE(cert.is_exact());
    EXPECT_EQ(cert.rank, 2u);
    EXPECT_FALSE(certified_rank(ExactMatrix::identity(2), 2, 101).is_exact());
}

TEST(Hnf, TwoRelationExample) {
    // Hand elimination gives rows (1,-4,3) and (0,13,-13); reducing the entry
    // above the second pivot into [0, 13) adds row 2 to row 1.
    const IntMatrix h = hermite_normal_form(IntMatrix{{3, 1, -4}, {1, -4, 3}});
    EXPECT_EQ(h, (IntMatrix{{1, 9, -10}, {0, 13, -13}}));
    // Same lattice as the hand-eliminated basis.
    EXPECT_EQ(hermite_normal_form(IntMatrix{{1, -4, 3}, {0, 13, -13}}), h);
}

TEST(Hnf, Identity) { EXPECT_EQ(hermite_normal_form(IntMatrix::identity(3)), IntMatrix::identity(3)); }

TEST(Hnf, SmallBoxOracle) {
    const IntMatrix input{{2, 0}, {0, 3}, {1, 1}};
    const IntMatrix h = hermite_normal_form(input);
    // gcd of 2x2 minors (6, 2, -3) is 1, so the lattice is Z^2.
    EXPECT_EQ(h, IntMatrix::identity(2));
    EXPECT_EQ(lattice_points(input, 6, 2), lattice_points(h, 6, 2));
}

TEST(Hnf, TransformReproducesBasis) {
    std::mt19937 rng(99);
    std::uniform_int_distribution<int> dist(-6, 6);
    for (int trial = 0; trial < 40; ++trial) {
        IntMatrix m(3, 4);
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = 0; j < 4; ++j) m(i, j) = dist(rng);
        const HermiteForm hf = hermite_form(m);
        for (std::size_t i = 0; i < hf.basis.rows(); ++i) {
            const auto row = combine_rows(m, hf.transform.row_vector(i));
            EXPECT_EQ(row, hf.basis.row_vector(i));
        }
        // Idempotence.
        EXPECT_EQ(hermite_normal_form(hf.basis), hf.basis);
        // Canonical: entries above pivots in [0, pivot).
        for (std::size_t i = 0; i < hf.basis.rows(); ++i) {
            const Integer& p = hf.basis(i, hf.pivots[i]);
            EXPECT_GT(p, 0);
            for (std::size_t k = 0; k < i; ++k) {
                EXPECT_GE(hf.basis(k, hf.pivots[i]), 0);
                EXPECT_LT(hf.basis(k, hf.pivots[i]), p);
            }
        }
        EXPECT_EQ(hf.basis.rows(), rank(m));
    }
}

TEST(Hnf, SameLatticeAsInputOnBox) {
    std::mt19937 rng(5);
    std::uniform_int_distribution<int> dist(-3, 3);
    for (int trial = 0; trial < 10; ++trial) {
        IntMatrix m(2, 2);
        for (std::size_t i = 0; i < 2; ++i)
            for (std::size_t j = 0; j < 2; ++j) m(i, j) = dist(rng);
        const IntMatrix h = hermite_normal_form(m);
        // Every HNF row is an integer combination of input rows and vice versa.
        for (std::size_t i = 0; i < m.rows(); ++i) {
            auto mm = minimal_multiple_in_lattice(h, m.row_vector(i));
            ASSERT_TRUE(mm.has_value());
            EXPECT_EQ(mm->n, 1);
        }
        for (std::size_t i = 0; i < h.rows(); ++i) {
            auto mm = minimal_multiple_in_lattice(m, h.row_vector(i));
            ASSERT_TRUE(mm.has_value());
            EXPECT_EQ(mm->n, 1);
        }
    }
}

TEST(MinimalMultiple, QuinticThreePointLattice) {
    const IntMatrix l{{3, 1, -4}, {1, -4, 3}};
    const auto r = minimal_multiple_in_lattice(l, {1, -1, 0});
    ASSERT_TRUE(r.has_value());
    EXPECT_EQ(r->n, 13);
    // Unique witness since the rows are independent: 3*r1 + 4*r2 = (13, -13, 0).
    EXPECT_EQ(r->witness, (std::vector<Integer>{3, 4}));
    EXPECT_EQ(combine_rows(l, r->witness), (std::vector<Integer>{13, -13, 0}));
}

TEST(MinimalMultiple, SingleRelation) {
    const auto r = minimal_multiple_in_lattice(IntMatrix{{4, -4}}, {1, -1});
    ASSERT_TRUE(r.has_value());
    EXPECT_EQ(r->n, 4);
    EXPECT_EQ(combine_rows(IntMatrix{{4, -4}}, r->witness), (std::vector<Integer>{4, -4}));
}

TEST(MinimalMultiple, OrthogonalTarget) {
    EXPECT_FALSE(minimal_multiple_in_lattice(IntMatrix{{1, 0}}, {0, 1}).has_value());
}

TEST(MinimalMultiple, ShapeMismatch) {
    EXPECT_THROW(minimal_multiple_in_lattice(IntMatrix{{1, 0}}, {0, 1, 2}), ShapeMismatch);
}

TEST(MinimalMultiple, IdealPropertyAndWitnessOnRandomLattices) {
    std::mt19937 rng(314);
    std::uniform_int_distribution<int> dist(-5, 5);
    int found = 0;
    for (int trial = 0; trial < 60; ++trial) {
        IntMatrix l(2, 3);
        for (std::size_t i = 0; i < 2; ++i)
            for (std::size_t j = 0; j < 3; ++j) l(i, j) = dist(rng);
        // Target in the Q-span so a multiple exists (unless degenerate).
        std::vector<Integer> v(3);
        for (std::size_t j = 0; j < 3; ++j) v[j] = l(0, j) - 2 * l(1, j);
        Integer g = 0;
        for (auto& x : v) g = gcd(g, x);
        if (g == 0) continue;
        for (auto& x : v) x /= g;
        const auto r = minimal_multiple_in_lattice(l, v);
        ASSERT_TRUE(r.has_value());
        ++found;
        std::vector<Integer> nv(3);
        for (std::size_t j = 0; j < 3; ++j) nv[j] = r->n * v[j];
        EXPECT_EQ(combine_rows(l, r->witness), nv);
        // Smaller positive multiples are not in the lattice (brute force).
        const auto pts = lattice_points(l, 12, 60);
        for (Integer k = 1; k < r->n; ++k) {
            std::vector<long> kv;
            bool fits = true;
            for (auto& x : v) {
                kv.push_back(Integer(k * x).get_si());
                fits = fits && abs(k * x) <= 60;
            }
            if (fits) {
                EXPECT_EQ(pts.count(kv), 0u) << "k=" << k;
            }
        }
        // Multiples of n are always in the lattice.
        for (int s : {2, 3}) {
            std::vector<Integer> sv(3);
            for (std::size_t j = 0; j < 3; ++j) sv[j] = s * nv[j];
            auto again = minimal_multiple_in_lattice(l, sv);
            ASSERT_TRUE(again.has_value());
            EXPECT_EQ(again->n, 1);
        }
    }
    EXPECT_GT(found, 30);
}
