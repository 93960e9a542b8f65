#pragma once

#include "chow/core/error.hpp"
#include "chow/core/lattice.hpp"
#include "chow/core/matrix.hpp"
#include "chow/core/scalar.hpp"
#include "chow/poly/geometry.hpp"
#include "chow/poly/polynomial.hpp"
#include "chow/poly/univariate.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace chow {

/// Plane curve {form = 0} inside the plane spanned by three of the ambient
/// coordinates; the remaining ambient coordinates vanish on it.
struct PlaneCurve {
    std::string name;
    Polynomial form;
    std::vector<std::string> plane;   // three coordinates of the plane
    std::vector<std::string> ambient; // full coordinate list (defaults to plane)

    const std::vector<std::string>& ambient_coords() const { return ambient.empty() ? plane : ambient; }
};

struct CyclePoint {
    std::string label; // declared label, or the coordinate string if none matched
    RationalPoint point;
    unsigned multiplicity = 0;
};

/// A factor of the restricted form without rational roots, kept as a
/// univariate polynomial in the first free coordinate (second set to 1).
struct ResidualFactor {
    UniPoly factor;
    unsigned multiplicity = 0;
    bool irreducible = false; // certified only for degree <= 3

    unsigned degree() const { return static_cast<unsigned>(factor.degree()); }
};

struct DivisorCycle {
    std::vector<CyclePoint> points;
    std::vector<ResidualFactor> residual;

    unsigned degree() const {
        unsigned d = 0;
        for (const auto& p : points) d += p.multiplicity;
        for (const auto& r : residual) d += r.degree() * r.multiplicity;
        return d;
    }

    bool is_rational() const { return residual.empty(); }

    std::optional<unsigned> multiplicity_of(const std::string& label) const {
        for (const auto& p : points)
            if (p.label == label) return p.multiplicity;
        return std::nullopt;
    }

    /// e.g. "Q + 4P", points in increasing multiplicity then label order.
    std::string to_string() const {
        std::vector<CyclePoint> sorted = points;
        std::sort(sorted.begin(), sorted.end(), [](const CyclePoint& a, const CyclePoint& b) {
            return a.multiplicity != b.multiplicity ? a.multiplicity < b.multiplicity : a.label < b.label;
        });
        std::string s;
        for (const auto& p : sorted) {
            if (!s.empty()) s += " + ";
            if (p.multiplicity != 1) s += std::to_string(p.multiplicity);
            s += p.label;
        }
        for (const auto& r : residual) {
            if (!s.empty()) s += " + ";
            s += (r.multiplicity != 1 ? std::to_string(r.multiplicity) + "*" : std::string()) + "[degree " +
                 std::to_string(r.degree()) + (r.irreducible ? " irreducible]" : " no rational roots]");
        }
        return s.empty() ? "0" : s;
    }
};

using PointLabels = std::vector<std::pair<std::string, RationalPoint>>;

struct RelationLattice {
    std::vector<std::string> basis; // point labels
    IntMatrix relations;            // one row per consecutive pair of lines
    std::vector<DivisorCycle> cycles;
    std::vector<bool> symbolic; // per line: cycle holds for every parameter value
};

struct EquivalenceOrder {
    Integer n;
    std::vector<Integer> witness; // coefficients on the relation rows
};

namespace detail {

inline std::vector<std::string> free_coords(const PlaneCurve& c, const std::string& line) {
    if (std::find(c.plane.begin(), c.plane.end(), line) == c.plane.end())
        throw UnknownVariable(line + " is not a coordinate of the plane of " + c.name);
    std::vector<std::string> rest;
    for (const auto& v : c.plane)
        if (v != line) rest.push_back(v);
    return rest;
}

inline std::string label_for(const RationalPoint& p, const PointLabels& labels) {
    for (const auto& [name, q] : labels)
        if (RationalPoint::normalized(q.coords) == p) return name;
    return p.to_string();
}

} // namespace detail

/// The curve's form with the coordinate `line` set to zero.
inline Polynomial restrict_to_line(const PlaneCurve& c, const std::string& line) {
    if (c.plane.size() != 3) throw DegreeMismatch("plane curve needs exactly three coordinates");
    detail::free_coords(c, line);
    std::map<std::string, Polynomial> zero{{line, Polynomial(c.form.ring())}};
    Polynomial g = substitute(c.form, zero);
    if (g.is_zero()) throw LineIsComponent(line + " = 0 is a component of " + c.name);
    return g;
}

/// Zero cycle of a binary form in the two free coordinates (u, v) of the
/// line: rational roots of g(u, 1), the point (1 : 0) with the degree drop as
/// multiplicity, and square-free parts of the rest. Points are returned in
/// ambient coordinates.
inline DivisorCycle binary_form_cycle(const PlaneCurve& c, const std::string& line, const Polynomial& g,
                                      const PointLabels& labels = {}) {
    if (g.is_zero()) throw LineIsComponent(line + " = 0 is a component of " + c.name);
    const auto uv = detail::free_coords(c, line);
    const auto& ring = g.ring();
    const std::size_t u = ring->index(uv[0]), v = ring->index(uv[1]);
    for (auto i : g.support())
        if (i != u && i != v)
            throw DomainMismatch("restricted form " + g.to_string() + " still involves " + ring->name(i));
    const auto deg = g.homogeneous_degree({u, v});
    if (!deg) throw NotHomogeneous(g.to_string());

    const UniPoly p = to_univariate(substitute(g, {{uv[1], Polynomial::constant(ring, 1)}}), u);
    const auto& amb = c.ambient_coords();
    auto point = [&](const Rational& uu, const Rational& vv) {
        std::vector<Rational> x(amb.size());
        for (std::size_t i = 0; i < amb.size(); ++i) {
            if (amb[i] == uv[0]) x[i] = uu;
            if (amb[i] == uv[1]) x[i] = vv;
        }
        return RationalPoint::normalized(std::move(x));
    };

    DivisorCycle cycle;
    const auto split = rational_roots(p);
    for (const auto& r : split.roots) {
        const auto pt = point(r.value, 1);
        cycle.points.push_back({detail::label_for(pt, labels), pt, r.multiplicity});
    }
    if (const auto at_infinity = static_cast<unsigned>(*deg - p.degree()); at_infinity > 0) {
        const auto pt = point(1, 0);
        cycle.points.push_back({detail::label_for(pt, labels), pt, at_infinity});
    }
    const auto parts = squarefree_decomposition(split.cofactor);
    for (std::size_t i = 0; i < parts.size(); ++i)
        if (parts[i].degree() > 0)
            cycle.residual.push_back({parts[i], static_cast<unsigned>(i + 1), parts[i].degree() <= 3});
    return cycle;
}

inline DivisorCycle intersection_cycle(const PlaneCurve& c, const std::string& line, const PointLabels& labels = {}) {
    return binary_form_cycle(c, line, restrict_to_line(c, line), labels);
}

struct ParametricCycle {
    DivisorCycle cycle;
    bool symbolic = true;                             // restricted form free of parameters
    std::vector<std::map<std::string, Rational>> samples; // values used otherwise
};

/// Intersection cycle of a curve whose form may involve parameters. When the
/// restriction to the line is parameter-free the cycle holds identically;
/// otherwise it is computed at every sample and must agree across them.
inline ParametricCycle parametric_intersection_cycle(const PlaneCurve& c, const std::string& line,
                                                     const std::vector<std::map<std::string, Rational>>& samples,
                                                     const PointLabels& labels = {}) {
    const Polynomial g = restrict_to_line(c, line);
    const auto uv = detail::free_coords(c, line);
    bool param_free = true;
    for (auto i : g.support())
        if (g.ring()->name(i) != uv[0] && g.ring()->name(i) != uv[1]) param_free = false;
    ParametricCycle out;
    if (param_free) {
        out.cycle = binary_form_cycle(c, line, g, labels);
        return out;
    }
    if (samples.empty()) throw DomainMismatch("restriction of " + c.name + " to " + line + " = 0 needs parameter samples");
    out.symbolic = false;
    out.samples = samples;
    for (std::size_t k = 0; k < samples.size(); ++k) {
        auto cyc = binary_form_cycle(c, line, evaluate(g, samples[k]), labels);
        if (k == 0) {
            out.cycle = std::move(cyc);
        } else if (cyc.to_string() != out.cycle.to_string()) {
            throw DomainMismatch("cycle of " + c.name + " on " + line + " = 0 changes with the parameter: " +
                                 out.cycle.to_string() + " vs " + cyc.to_string());
        }
    }
    return out;
}

/// Differences of the cycles cut by consecutive lines, over the union of
/// their supports (declared labels first, in declaration order).
inline RelationLattice hyperplane_relations(const PlaneCurve& c, const std::vector<std::string>& lines,
                                            const PointLabels& labels = {},
                                            const std::vector<std::map<std::string, Rational>>& samples = {}) {
    RelationLattice lat;
    for (const auto& l : lines) {
        auto pc = parametric_intersection_cycle(c, l, samples, labels);
        lat.symbolic.push_back(pc.symbolic);
        auto cyc = std::move(pc.cycle);
        if (!cyc.is_rational())
            throw NonRationalIntersection(c.name + " meets " + l + " = 0 in non-rational points: " + cyc.to_string());
        lat.cycles.push_back(std::move(cyc));
    }
    for (const auto& [name, pt] : labels)
        for (const auto& cyc : lat.cycles)
            if (cyc.multiplicity_of(name) &&
                std::find(lat.basis.begin(), lat.basis.end(), name) == lat.basis.end())
                lat.basis.push_back(name);
    for (const auto& cyc : lat.cycles)
        for (const auto& p : cyc.points)
            if (std::find(lat.basis.begin(), lat.basis.end(), p.label) == lat.basis.end()) lat.basis.push_back(p.label);

    const std::size_t rows = lat.cycles.empty() ? 0 : lat.cycles.size() - 1;
    lat.relations = IntMatrix(rows, lat.basis.size());
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t j = 0; j < lat.basis.size(); ++j) {
            const long a = lat.cycles[r].multiplicity_of(lat.basis[j]).value_or(0);
            const long b = lat.cycles[r + 1].multiplicity_of(lat.basis[j]).value_or(0);
            lat.relations(r, j) = a - b;
        }
    return lat;
}

/// Smallest n with n*(p1 - p2) in the relation lattice, with the combination
/// of relation rows that produces it. This certifies n*p1 ~ n*p2; the
/// lattice may be smaller than the full group of principal divisors.
inline std::optional<EquivalenceOrder> minimal_equivalence_order(const RelationLattice& lat, const std::string& p1,
                                                                 const std::string& p2) {
    auto pos = [&](const std::string& l) {
        auto it = std::find(lat.basis.begin(), lat.basis.end(), l);
        if (it == lat.basis.end()) throw UnknownLabel(l);
        return static_cast<std::size_t>(it - lat.basis.begin());
    };
    std::vector<Integer> v(lat.basis.size());
    v[pos(p1)] += 1;
    v[pos(p2)] -= 1;
    auto m = minimal_multiple_in_lattice(lat.relations, v);
    if (!m) return std::nullopt;
    return EquivalenceOrder{m->n, m->witness};
}

inline Integer common_order(const std::vector<Integer>& orders) {
    Integer n = 1;
    for (const auto& o : orders) n = lcm(n, o);
    return n;
}

} // namespace chow
