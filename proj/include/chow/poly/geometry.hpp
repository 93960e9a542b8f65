#pragma once

#include "chow/core/error.hpp"
#include "chow/poly/polynomial.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace chow {

/// Point of projective space with polynomial coordinates (constants, or
/// expressions in parameters and domain symbols).
struct ProjectivePoint {
    std::vector<Polynomial> coords;
    std::size_t nonzero_index = 0; // declared nonzero coordinate

    std::string to_string() const {
        std::string s = "(";
        for (std::size_t i = 0; i < coords.size(); ++i) s += (i ? " : " : "") + coords[i].to_string();
        return s + ")";
    }
};

/// Rational projective point, normalized so its first nonzero coordinate is 1.
struct RationalPoint {
    std::vector<Rational> coords;

    static RationalPoint normalized(std::vector<Rational> c) {
        std::size_t i = 0;
        while (i < c.size() && sgn(c[i]) == 0) ++i;
        if (i == c.size()) throw DomainMismatch("projective point with all coordinates zero");
        const Rational s = c[i];
        for (auto& x : c) x /= s;
        return {std::move(c)};
    }

    std::string to_string() const {
        std::string s = "(";
        for (std::size_t i = 0; i < coords.size(); ++i) s += (i ? ":" : "") + chow::to_string(coords[i]);
        return s + ")";
    }

    friend bool operator==(const RationalPoint&, const RationalPoint&) = default;
};

namespace detail {

inline std::vector<std::size_t> indices_of(const RingPtr& ring, const std::vector<std::string>& vars) {
    std::vector<std::size_t> idx;
    for (const auto& v : vars) idx.push_back(ring->index(v));
    return idx;
}

inline void require_only(const Polynomial& f, const std::vector<std::size_t>& allowed, const char* what) {
    for (auto i : f.support())
        if (std::find(allowed.begin(), allowed.end(), i) == allowed.end())
            throw DomainMismatch(std::string(what) + ": unexpected variable " + f.ring()->name(i) +
                                 " (substitute parameters first)");
}

} // namespace detail

/// Order of vanishing of the homogeneous form f (in `coords`) at a rational
/// point: dehomogenize at a coordinate equal to 1, translate the point to the
/// origin, take the lowest total degree. 0 = not on the curve, 1 = smooth point.
inline unsigned multiplicity_at_point(const Polynomial& f, const std::vector<std::string>& coords,
                                      const RationalPoint& point) {
    const auto& ring = f.ring();
    const auto idx = detail::indices_of(ring, coords);
    if (point.coords.size() != coords.size())
        throw DegreeMismatch("point dimension differs from coordinate count");
    detail::require_only(f, idx, "multiplicity_at_point");
    if (!f.homogeneous_degree(idx)) throw NotHomogeneous(f.to_string());
    if (f.is_zero()) throw DomainMismatch("multiplicity of the zero form");

    const RationalPoint p = RationalPoint::normalized(point.coords);
    std::size_t chart = 0;
    while (p.coords[chart] != 1) ++chart;
    std::map<std::string, Polynomial> shift;
    for (std::size_t i = 0; i < coords.size(); ++i) {
        if (i == chart) shift.emplace(coords[i], Polynomial::constant(ring, 1));
        else
            shift.emplace(coords[i], Polynomial::variable(ring, coords[i]) +
                                         Polynomial::constant(ring, p.coords[i]));
    }
    const Polynomial local = substitute(f, shift);
    std::uint64_t low = UINT64_MAX;
    for (const auto& [m, c] : local.terms()) low = std::min(low, m.degree());
    return static_cast<unsigned>(low);
}

/// True iff f composed with the map (one binary form per coordinate) vanishes
/// identically. Components must be homogeneous of a common degree.
inline bool check_parametrization(const Polynomial& f, const std::vector<std::string>& coords,
                                  const std::vector<Polynomial>& map) {
    if (map.size() != coords.size()) throw DegreeMismatch("map has wrong number of components");
    const auto idx = detail::indices_of(f.ring(), coords);
    detail::require_only(f, idx, "check_parametrization");
    if (!f.homogeneous_degree(idx)) throw NotHomogeneous(f.to_string());
    std::optional<std::uint64_t> deg;
    for (const auto& comp : map) {
        if (comp.is_zero()) continue;
        auto d = comp.homogeneous_degree();
        if (!d) throw DegreeMismatch("component " + comp.to_string() + " is not homogeneous");
        if (deg && *deg != *d) throw DegreeMismatch("components have different degrees");
        deg = d;
    }
    std::map<std::string, Polynomial> assignment;
    for (std::size_t i = 0; i < coords.size(); ++i) assignment.emplace(coords[i], map[i]);
    return substitute(f, assignment, map.front().ring()).is_zero();
}

} // namespace chow
