#include "chow/curves/cycles.hpp"
#include "chow/poly/parse.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace chow;

namespace {

const std::vector<std::string> kAmbient{"x0", "x1", "x2", "x3"};

RingPtr ring_with_t() { return PolyRing::make({"x0", "x1", "x2", "x3", "t"}); }

PointLabels labels() {
    return {{"P", RationalPoint{{0, 1, 0, 0}}}, {"Q", RationalPoint{{0, 0, 1, 0}}}, {"R", RationalPoint{{1, 0, 0, 0}}}};
}

PlaneCurve z1() {
    return {"Z1", parse_polynomial("x0*x1^4 + x1*x2^4 + x2*x0^4", ring_with_t()), {"x0", "x1", "x2"}, kAmbient};
}

PlaneCurve z2(const std::string& t = "t") {
    return {"Z2", parse_polynomial("x1*x2^4 + x3^5 + " + t + "*x3*x1^4", ring_with_t()), {"x1", "x2", "x3"}, kAmbient};
}

std::vector<Integer> ints(std::initializer_list<long> v) { return {v.begin(), v.end()}; }

} // namespace

TEST(Restrict, Examples) {
    EXPECT_EQ(restrict_to_line(z1(), "x2").to_string(), "x0*x1^4");
    EXPECT_EQ(restrict_to_line(z2(), "x1").to_string(), "x3^5");
    PlaneCurve reducible{"C", parse_polynomial("x0*(x0^2 + x1*x2)", ring_with_t()), {"x0", "x1", "x2"}, {}};
    EXPECT_THROW(restrict_to_line(reducible, "x0"), LineIsComponent);
    EXPECT_THROW(restrict_to_line(z1(), "x3"), UnknownVariable);
}

TEST(BinaryFormCycle, Examples) {
    const auto c = intersection_cycle(z2(), "x3", labels());
    EXPECT_EQ(c.to_string(), "Q + 4P");
    EXPECT_EQ(c.multiplicity_of("Q"), 1u);
    EXPECT_EQ(c.multiplicity_of("P"), 4u);
    EXPECT_EQ(intersection_cycle(z2(), "x1", labels()).to_string(), "5Q");

    const auto r = ring_with_t();
    PlaneCurve conic{"C", parse_polynomial("x0^2 + x1^2 + x2^2", r), {"x0", "x1", "x2"}, {}};
    const auto q = binary_form_cycle(conic, "x2", parse_polynomial("x0^2 + x1^2", r));
    EXPECT_TRUE(q.points.empty());
    ASSERT_EQ(q.residual.size(), 1u);
    EXPECT_EQ(q.residual[0].degree(), 2u);
    EXPECT_TRUE(q.residual[0].irreducible);
    EXPECT_EQ(q.degree(), 2u);
}

TEST(BinaryFormCycle, UnlabeledPointsGetCoordinates) {
    const auto r = ring_with_t();
    PlaneCurve c{"C", parse_polynomial("(2*x0 - 3*x1)^2*x1 - x2^3", r), {"x0", "x1", "x2"}, {}};
    const auto cyc = intersection_cycle(c, "x2");
    ASSERT_EQ(cyc.points.size(), 2u);
    EXPECT_EQ(cyc.to_string(), "(1:0:0) + 2(1:2/3:0)");
}

TEST(BinaryFormCycle, ZOneSections) {
    EXPECT_EQ(intersection_cycle(z1(), "x0", labels()).to_string(), "Q + 4P");
    EXPECT_EQ(intersection_cycle(z1(), "x2", labels()).to_string(), "P + 4R");
    EXPECT_EQ(intersection_cycle(z1(), "x1", labels()).to_string(), "R + 4Q");
}

TEST(Relations, ZTwo) {
    const auto lat = hyperplane_relations(z2(), {"x3", "x1"}, labels());
    EXPECT_EQ(lat.basis, (std::vector<std::string>{"P", "Q"}));
    EXPECT_EQ(lat.relations, (IntMatrix{{4, -4}}));
    EXPECT_EQ(lat.symbolic, (std::vector<bool>{true, true}));
    const auto at1 = hyperplane_relations(z2("1"), {"x3", "x1"}, labels());
    EXPECT_EQ(at1.relations, lat.relations);
}

TEST(Relations, ZOne) {
    const auto lat = hyperplane_relations(z1(), {"x0", "x2", "x1"}, labels());
    EXPECT_EQ(lat.basis, (std::vector<std::string>{"P", "Q", "R"}));
    EXPECT_EQ(lat.relations, (IntMatrix{{3, 1, -4}, {1, -4, 3}}));
}

TEST(Relations, OneLineIsEmpty) {
    const auto lat = hyperplane_relations(z1(), {"x0"}, labels());
    EXPECT_EQ(lat.relations.rows(), 0u);
    EXPECT_FALSE(minimal_equivalence_order(lat, "P", "Q").has_value());
}

TEST(Relations, NonRationalAborts) {
    const auto r = ring_with_t();
    PlaneCurve c{"C", parse_polynomial("x0^2 + x1^2 + x2^2", r), {"x0", "x1", "x2"}, {}};
    EXPECT_THROW(hyperplane_relations(c, {"x0", "x1"}), NonRationalIntersection);
    PlaneCurve comp{"D", parse_polynomial("x0*x1", r), {"x0", "x1", "x2"}, {}};
    EXPECT_THROW(hyperplane_relations(comp, {"x0", "x2"}), LineIsComponent);
}

TEST(Relations, RowsSumToZero) {
    for (const auto& lat : {hyperplane_relations(z1(), {"x0", "x2", "x1"}, labels()),
                            hyperplane_relations(z2(), {"x3", "x1"}, labels())})
        for (std::size_t i = 0; i < lat.relations.rows(); ++i) {
            Integer s = 0;
            for (std::size_t j = 0; j < lat.relations.cols(); ++j) s += lat.relations(i, j);
            EXPECT_EQ(s, 0);
        }
}

TEST(Orders, ShiodaCurves) {
    const auto l1 = hyperplane_relations(z1(), {"x0", "x2", "x1"}, labels());
    const auto o1 = minimal_equivalence_order(l1, "P", "Q");
    ASSERT_TRUE(o1);
    EXPECT_EQ(o1->n, 13);
    EXPECT_EQ(o1->witness, ints({3, 4}));
    EXPECT_EQ(combine_rows(l1.relations, o1->witness), ints({13, -13, 0}));

    const auto l2 = hyperplane_relations(z2(), {"x3", "x1"}, labels());
    const auto o2 = minimal_equivalence_order(l2, "P", "Q");
    ASSERT_TRUE(o2);
    EXPECT_EQ(o2->n, 4);
    EXPECT_EQ(combine_rows(l2.relations, o2->witness), ints({4, -4}));

    EXPECT_EQ(common_order({o1->n, o2->n}), 52);
    EXPECT_THROW(minimal_equivalence_order(l1, "P", "S"), UnknownLabel);
}

TEST(Orders, IdealProperty) {
    const auto lat = hyperplane_relations(z1(), {"x0", "x2", "x1"}, labels());
    for (const auto& [a, b] : std::vector<std::pair<std::string, std::string>>{{"P", "Q"}, {"Q", "R"}, {"P", "R"}}) {
        const auto o = minimal_equivalence_order(lat, a, b);
        ASSERT_TRUE(o);
        EXPECT_EQ(o->n, 13);
        const long n = o->n.get_si();
        std::vector<Integer> v(3);
        auto pos = [&](const std::string& l) { return std::find(lat.basis.begin(), lat.basis.end(), l) - lat.basis.begin(); };
        for (long k = 1; k <= 3 * n; ++k) {
            v.assign(3, 0);
            v[pos(a)] = k;
            v[pos(b)] = -k;
            const auto m = minimal_multiple_in_lattice(lat.relations, v);
            ASSERT_TRUE(m);
            EXPECT_EQ(m->n == 1, k % n == 0) << "k=" << k;
        }
    }
}

TEST(Parametric, SymbolicAndSampled) {
    const auto sym = parametric_intersection_cycle(z2(), "x3", {}, labels());
    EXPECT_TRUE(sym.symbolic);
    EXPECT_EQ(sym.cycle.to_string(), "Q + 4P");

    // on x2 = 0 the restriction x3^5 + t*x3*x1^4 depends on t
    EXPECT_THROW(parametric_intersection_cycle(z2(), "x2", {}, labels()), DomainMismatch);
    const std::vector<std::map<std::string, Rational>> samples{{{"t", 1}}, {{"t", 2}}};
    const auto s = parametric_intersection_cycle(z2(), "x2", samples, labels());
    EXPECT_FALSE(s.symbolic);
    EXPECT_EQ(s.cycle.degree(), 5u);
    EXPECT_EQ(s.cycle.multiplicity_of("P"), 1u);
    // at t = -1 the quartic factor splits off two rational points
    const std::vector<std::map<std::string, Rational>> bad{{{"t", 1}}, {{"t", -1}}};
    EXPECT_THROW(parametric_intersection_cycle(z2(), "x2", bad, labels()), DomainMismatch);
}

TEST(Properties, DegreeConservation) {
    std::mt19937 rng(99);
    const auto r = ring_with_t();
    const std::vector<std::string> plane{"x0", "x1", "x2"};
    std::uniform_int_distribution<int> coef(-3, 3), root(-4, 4), deg(1, 6), which(0, 2);
    int checked = 0;
    for (int trial = 0; trial < 60; ++trial) {
        // products of random linear and quadratic factors exercise every branch
        Polynomial f = Polynomial::constant(r, 1);
        const int d = deg(rng);
        for (int k = 0; k < d; ++k) {
            Polynomial l(r);
            for (std::size_t i = 0; i < 3; ++i) {
                Monomial m(r->size());
                m[i] = 1;
                l.add_term(m, which(rng) == 0 ? root(rng) : coef(rng));
            }
            if (l.is_zero()) l = Polynomial::variable(r, "x0");
            if (which(rng) == 0) l = l * l + Polynomial::variable(r, "x1").pow(2) * Rational(2);
            f *= l;
        }
        PlaneCurve c{"C", f, plane, {}};
        for (const auto& line : plane) {
            Polynomial g;
            try {
                g = restrict_to_line(c, line);
            } catch (const LineIsComponent&) {
                continue;
            }
            const auto cyc = binary_form_cycle(c, line, g);
            EXPECT_EQ(cyc.degree(), f.total_degree()) << f.to_string() << " on " << line;
            ++checked;
        }
    }
    for (const auto& line : {"x0", "x2", "x1"}) EXPECT_EQ(intersection_cycle(z1(), line, labels()).degree(), 5u);
    for (const auto& line : {"x3", "x1"}) EXPECT_EQ(intersection_cycle(z2(), line, labels()).degree(), 5u);
    EXPECT_GT(checked, 100);
}
