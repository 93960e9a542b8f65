#pragma once

#include "chow/core/error.hpp"
#include "chow/core/scalar.hpp"
#include "chow/core/step.hpp"
#include "chow/poly/geometry.hpp"
#include "chow/poly/parse.hpp"
#include "chow/poly/polynomial.hpp"
#include "chow/poly/univariate.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace chow {

/// Data of the deformed Fermat quartic family and its elliptic pencil. Every
/// polynomial lives in one tower ring (w^2 + w + 1 = 0, a^3 = -lambda).
struct PencilScenario {
    RingPtr ring;
    std::vector<std::string> surface_coords{"x0", "x1", "x2", "x3"};
    std::vector<std::string> plane_coords{"x", "y", "z"};
    std::string lambda = "lambda";
    std::string t = "t";

    Polynomial family;                          // F_t
    std::map<std::string, Polynomial> blowup;   // x_i -> linear forms in x, y, z, lambda
    Polynomial blowup_factor;                   // 8z
    Polynomial reduced;                         // declared F'
    std::vector<Polynomial> declared_partials;  // declared dF'/dx, dF'/dy, dF'/dz (may be empty)
    std::vector<ProjectivePoint> points;        // P_1, P_2, P_3 on z = 0
    std::vector<std::vector<Polynomial>> tangents; // T_i coefficients of x, y, z
    ProjectivePoint concurrency;                // P_{lambda,t}
    std::vector<Polynomial> hyperelliptic_divisors; // t, lambda, lambda - 1
    Polynomial hyperelliptic;                   // declared F''
    Polynomial lambda_numerator, lambda_denominator; // lambda(t) = num / den
    std::vector<Integer> tau{2, -2, 0};

    Polynomial poly(const std::string& text) const { return parse_polynomial(text, ring); }

    static RingPtr default_ring() {
        return PolyRing::tower({"x0", "x1", "x2", "x3", "x", "y", "z", "lambda", "t", "a", "w"});
    }

    /// The family exactly as stated in the source construction.
    static PencilScenario standard() {
        PencilScenario s;
        s.ring = default_ring();
        const std::string L0 = "(x1 - x2)", L1 = "(x0 - x3)", L2 = "(x1 + x3)", L3 = "(x0 - x2)";
        s.family = s.poly("x0^4 + x1^4 - x2^4 - x3^4 + 2*t*" + L0 + "*" + L1 + "*" + L2 + "*" + L3);
        s.blowup = {{"x0", s.poly("x + z")}, {"x1", s.poly("y + lambda*z")},
                    {"x2", s.poly("y - lambda*z")}, {"x3", s.poly("x - z")}};
        s.blowup_factor = s.poly("8*z");
        const std::string l2 = "(x + y + (lambda - 1)*z)", l3 = "(x - y + (lambda + 1)*z)";
        s.reduced = s.poly("x^3 + lambda*y^3 + z^2*(x + lambda^3*y) + lambda*t*z*" + l2 + "*" + l3);
        s.declared_partials = {
            s.poly("3*x^2 + z^2 + lambda*t*z*(" + l2 + " + " + l3 + ")"),
            s.poly("3*lambda*y^2 + lambda^3*z^2 + lambda*t*z*(" + l3 + " - " + l2 + ")"),
            s.poly("2*z*(x + lambda^3*y) + lambda*t*" + l2 + "*" + l3 + " + lambda*t*z*((lambda - 1)*" + l3 +
                   " + (lambda + 1)*" + l2 + ")")};
        const std::vector<std::string> zeta{"1", "w", "w^2"};
        for (std::size_t i = 0; i < 3; ++i) {
            const std::string root = "a*" + zeta[i];
            s.points.push_back({{s.poly(root), s.poly("1"), s.poly("0")}, 1});
            s.tangents.push_back({s.poly("3*(" + root + ")^2"), s.poly("3*lambda"),
                                  s.poly("lambda*t*((" + root + ")^2 - 1)")});
        }
        s.concurrency = {{s.poly("-lambda*t"), s.poly("t"), s.poly("3")}, 2};
        s.hyperelliptic_divisors = {s.poly("t"), s.poly("lambda"), s.poly("lambda - 1")};
        s.hyperelliptic = s.poly("lambda*(t^2 - 18*t + 9) + 4*t^2 - 6*t - 18");
        s.lambda_numerator = s.poly("-(4*t^2 - 6*t - 18)");
        s.lambda_denominator = s.poly("t^2 - 18*t + 9");
        return s;
    }
};

namespace detail {

inline std::map<std::string, Polynomial> point_assignment(const PencilScenario& s, const ProjectivePoint& p) {
    std::map<std::string, Polynomial> a;
    for (std::size_t i = 0; i < s.plane_coords.size(); ++i) a.emplace(s.plane_coords[i], p.coords[i]);
    return a;
}

inline Polynomial dot(const std::vector<Polynomial>& a, const std::vector<Polynomial>& b) {
    Polynomial r(a.front().ring());
    for (std::size_t i = 0; i < a.size(); ++i) r += a[i] * b[i];
    return r;
}

inline VerificationStep step(std::string name, std::string citation) {
    VerificationStep s;
    s.name = std::move(name);
    s.citation = std::move(citation);
    return s;
}

inline void fail(VerificationStep& s, const std::string& detail, const Polynomial& residual) {
    s.passed = false;
    s.detail = detail;
    s.witness = residual.to_string();
}

} // namespace detail

/// F_t under the blow-up substitution equals blowup_factor * F' exactly.
inline VerificationStep verify_blowup_factorization(const PencilScenario& s) {
    auto st = detail::step("blowup", "F_t(x+z, y+lambda z, y-lambda z, x-z) = 8z F'(x,y,z,lambda)");
    const Polynomial image = substitute(s.family, s.blowup);
    Polynomial q;
    try {
        q = exact_divide(image, s.blowup_factor);
    } catch (const NotDivisible& e) {
        detail::fail(st, "substituted family is not divisible by " + s.blowup_factor.to_string(), e.remainder());
        return st;
    }
    const Polynomial residual = q - s.reduced;
    if (!residual.is_zero()) {
        detail::fail(st, "quotient differs from declared F'", residual);
        return st;
    }
    st.passed = true;
    st.detail = "substituted family = " + s.blowup_factor.to_string() + " * F' (" +
                std::to_string(q.term_count()) + " terms)";
    return st;
}

/// F'(P_i) = 0 in the tower ring.
inline VerificationStep verify_membership(const PencilScenario& s, std::size_t i) {
    const std::string label = "P" + std::to_string(i + 1);
    auto st = detail::step("membership." + label, label + " = " + s.points.at(i).to_string() + " lies on F' = 0");
    const Polynomial v = substitute(s.reduced, detail::point_assignment(s, s.points[i]));
    if (!v.is_zero()) {
        detail::fail(st, "F'(" + label + ") does not reduce to zero", v);
        return st;
    }
    st.passed = true;
    st.detail = "F'(" + label + ") reduces to 0 under a^3 = -lambda, w^2 = -1 - w";
    return st;
}

/// Declared partials agree with the derivatives of F', and the gradient at P_i
/// equals the declared coefficients of T_i.
inline VerificationStep verify_tangent_line(const PencilScenario& s, std::size_t i) {
    const std::string label = "T" + std::to_string(i + 1);
    auto st = detail::step("tangent." + label, "tangent line " + label + " at P" + std::to_string(i + 1) +
                                                  " is 3 (a zeta^k)^2 x + 3 lambda y + lambda t ((a zeta^k)^2 - 1) z = 0");
    const auto grad = gradient(s.reduced, s.plane_coords);
    for (std::size_t k = 0; k < s.declared_partials.size(); ++k) {
        const Polynomial r = grad[k] - s.declared_partials[k];
        if (!r.is_zero()) {
            detail::fail(st, "declared dF'/d" + s.plane_coords[k] + " differs from the derivative", r);
            return st;
        }
    }
    const auto at = detail::point_assignment(s, s.points.at(i));
    for (std::size_t k = 0; k < grad.size(); ++k) {
        const Polynomial r = substitute(grad[k], at) - s.tangents.at(i).at(k);
        if (!r.is_zero()) {
            detail::fail(st, "dF'/d" + s.plane_coords[k] + " at P" + std::to_string(i + 1) +
                                 " differs from the declared coefficient",
                         r);
            return st;
        }
    }
    st.passed = true;
    st.detail = "gradient of F' at P" + std::to_string(i + 1) + " = (" + s.tangents[i][0].to_string() + ", " +
                s.tangents[i][1].to_string() + ", " + s.tangents[i][2].to_string() + ")";
    return st;
}

/// Each T_i vanishes at the concurrency point, and the three lines are
/// pairwise distinct (some 2x2 minor is a nonzero element).
inline VerificationStep verify_concurrency(const PencilScenario& s) {
    auto st = detail::step("concurrency", "T_1, T_2, T_3 meet in the single point " + s.concurrency.to_string());
    for (std::size_t i = 0; i < s.tangents.size(); ++i) {
        const Polynomial v = detail::dot(s.tangents[i], s.concurrency.coords);
        if (!v.is_zero()) {
            detail::fail(st, "T" + std::to_string(i + 1) + " does not vanish at the point", v);
            return st;
        }
    }
    std::vector<std::string> degenerate;
    const std::map<std::string, Polynomial> slice{{s.lambda, Polynomial(s.ring)}, {"a", Polynomial(s.ring)}};
    for (std::size_t i = 0; i < s.tangents.size(); ++i)
        for (std::size_t j = i + 1; j < s.tangents.size(); ++j) {
            std::vector<Polynomial> minors;
            for (std::size_t p = 0; p < 3; ++p)
                for (std::size_t q = p + 1; q < 3; ++q)
                    minors.push_back(s.tangents[i][p] * s.tangents[j][q] - s.tangents[i][q] * s.tangents[j][p]);
            const bool distinct = std::any_of(minors.begin(), minors.end(), [](const Polynomial& m) { return !m.is_zero(); });
            const std::string pair = "T" + std::to_string(i + 1) + "/T" + std::to_string(j + 1);
            if (!distinct) {
                st.passed = false;
                st.detail = pair + " coincide identically";
                st.witness = "0";
                return st;
            }
            const bool distinct_at_zero = std::any_of(minors.begin(), minors.end(), [&](const Polynomial& m) {
                return !substitute(m, slice).is_zero();
            });
            if (!distinct_at_zero) degenerate.push_back(pair);
        }
    st.passed = true;
    st.detail = "all three lines vanish at the point and are pairwise distinct";
    if (!degenerate.empty()) {
        std::string d;
        for (const auto& p : degenerate) d += (d.empty() ? "" : ", ") + p;
        st.data["degenerate_slice"] = "lambda = 0 (a = 0): " + d + " coincide";
        st.detail += "; on lambda = 0 (a = 0) the lines coincide";
    }
    return st;
}

struct HyperellipticResult {
    VerificationStep factorization; // F'(P) = t lambda (lambda-1) F''
    VerificationStep closed_form;   // F''(lambda(t)) = 0
    std::optional<Polynomial> quotient;
};

/// Clears denominators: den^K * F''(num/den) with K = deg_lambda F''.
inline Polynomial cleared_substitution(const PencilScenario& s, const Polynomial& f) {
    const std::size_t li = s.ring->index(s.lambda);
    const std::uint32_t k = f.degree_in(li);
    Polynomial r(s.ring);
    for (std::uint32_t e = 0; e <= k; ++e)
        r += f.coefficient_of(li, e) * s.lambda_numerator.pow(e) * s.lambda_denominator.pow(k - e);
    return r;
}

inline HyperellipticResult verify_hyperelliptic_condition(const PencilScenario& s) {
    HyperellipticResult out;
    out.factorization = detail::step("hyperelliptic.factorization",
                                     "F'(P_{lambda,t}) = t lambda (lambda - 1) F''_t(lambda), F'' = " +
                                         s.hyperelliptic.to_string());
    out.closed_form = detail::step("hyperelliptic.closed_form", "lambda(t) = (" + s.lambda_numerator.to_string() +
                                                                    ") / (" + s.lambda_denominator.to_string() +
                                                                    ") solves F''_t(lambda) = 0");
    Polynomial value = substitute(s.reduced, detail::point_assignment(s, s.concurrency));
    auto& f = out.factorization;
    f.data["value"] = value.to_string();
    bool divided = true;
    for (const auto& d : s.hyperelliptic_divisors) {
        try {
            value = exact_divide(value, d);
        } catch (const NotDivisible& e) {
            detail::fail(f, "F'(P) is not divisible by " + d.to_string(), e.remainder());
            divided = false;
            break;
        }
    }
    if (divided) {
        out.quotient = value;
        f.data["quotient"] = value.to_string();
        const Polynomial residual = value - s.hyperelliptic;
        if (residual.is_zero()) {
            f.passed = true;
            f.detail = "quotient equals the declared F''";
        } else {
            detail::fail(f, "quotient " + value.to_string() + " differs from the declared F''", residual);
        }
    }
    const Polynomial cleared = cleared_substitution(s, s.hyperelliptic);
    if (cleared.is_zero()) {
        out.closed_form.passed = true;
        out.closed_form.detail = "den^k * F''(num/den) expands to 0";
    } else {
        detail::fail(out.closed_form, "F'' does not vanish at lambda(t)", cleared);
    }
    if (out.quotient) {
        const bool q_vanishes = cleared_substitution(s, *out.quotient).is_zero();
        out.closed_form.data["solves_computed_quotient"] = q_vanishes ? "yes" : "no";
    }
    return out;
}

/// Euler relation at the concurrency point: 3 F'(P) = sum of coordinates times partials.
inline VerificationStep verify_euler_cross_check(const PencilScenario& s) {
    auto st = detail::step("euler", "3 F'(P) = sum_i P_i dF'/dx_i(P) at P_{lambda,t}");
    const auto at = detail::point_assignment(s, s.concurrency);
    const auto deg = s.reduced.homogeneous_degree({s.ring->index("x"), s.ring->index("y"), s.ring->index("z")});
    if (!deg) {
        detail::fail(st, "F' is not homogeneous in the plane coordinates", s.reduced);
        return st;
    }
    Polynomial rhs(s.ring);
    const auto grad = gradient(s.reduced, s.plane_coords);
    for (std::size_t k = 0; k < grad.size(); ++k) rhs += s.concurrency.coords[k] * substitute(grad[k], at);
    const Polynomial residual = substitute(s.reduced, at) * Rational(static_cast<unsigned long>(*deg)) - rhs;
    if (!residual.is_zero()) {
        detail::fail(st, "Euler relation fails at the point", residual);
        return st;
    }
    st.passed = true;
    st.detail = "Euler relation holds with degree " + std::to_string(*deg);
    return st;
}

/// tau(Z) must be nonzero and of degree zero.
inline VerificationStep verify_tau(const std::vector<Integer>& tau) {
    auto st = detail::step("tau", "tau(Z) is a nonzero degree-zero vector in Ker(Z^k -> sum Pic(Z_i))");
    std::string v = "(";
    Integer sum = 0;
    bool nonzero = false;
    for (std::size_t i = 0; i < tau.size(); ++i) {
        v += (i ? "," : "") + tau[i].get_str();
        sum += tau[i];
        nonzero = nonzero || sgn(tau[i]) != 0;
    }
    v += ")";
    st.data["vector"] = v;
    if (!nonzero) {
        st.detail = "tau = " + v + " is zero: the cycle shadow is decomposable";
        st.witness = v;
        return st;
    }
    if (sum != 0) {
        st.detail = "tau = " + v + " has nonzero degree " + sum.get_str();
        st.witness = v;
        return st;
    }
    st.passed = true;
    st.detail = "tau = " + v + " is nonzero of degree zero";
    return st;
}

struct Degeneration {
    std::string condition;
    std::string reason;
    std::vector<Rational> rational_values; // empty when only the condition is known
    std::optional<Integer> discriminant;
};

namespace detail {

inline Degeneration solve_in_t(const PencilScenario& s, const Polynomial& f, std::string reason) {
    Degeneration d;
    d.condition = f.to_string() + " = 0";
    d.reason = std::move(reason);
    const UniPoly u = to_univariate(f, s.ring->index(s.t));
    if (u.is_zero()) {
        d.condition = "identically";
        return d;
    }
    for (const auto& r : rational_roots(u).roots) d.rational_values.push_back(r.value);
    if (u.degree() == 2) {
        Rational disc = u.c[1] * u.c[1] - 4 * u.c[2] * u.c[0];
        Integer den = 1;
        for (const auto& x : u.c) den = lcm(den, x.get_den());
        disc *= Rational(den * den);
        d.discriminant = disc.get_num();
    }
    return d;
}

} // namespace detail

/// Parameter values where lambda(t) is undefined or lands on a degenerate fibre.
inline std::vector<Degeneration> report_degenerate_parameters(const PencilScenario& s) {
    std::vector<Degeneration> out;
    out.push_back(detail::solve_in_t(s, s.lambda_denominator, "pole of lambda(t)"));
    out.push_back(detail::solve_in_t(s, s.lambda_numerator, "lambda(t) = 0"));
    out.push_back(detail::solve_in_t(s, s.lambda_numerator - s.lambda_denominator, "lambda(t) = 1"));
    Degeneration zero;
    zero.condition = "t = 0";
    zero.reason = "factor t of F'(P): the hyperelliptic condition holds for every lambda";
    zero.rational_values = {0};
    out.push_back(zero);
    Degeneration inf;
    inf.condition = "t = infinity";
    inf.reason = "family leaves the affine parameter line";
    out.push_back(inf);
    return out;
}

/// Every step in order.
inline std::vector<VerificationStep> run_pencil(const PencilScenario& s) {
    std::vector<VerificationStep> steps;
    steps.push_back(verify_blowup_factorization(s));
    for (std::size_t i = 0; i < s.points.size(); ++i) steps.push_back(verify_membership(s, i));
    for (std::size_t i = 0; i < s.points.size(); ++i) steps.push_back(verify_tangent_line(s, i));
    steps.push_back(verify_concurrency(s));
    auto h = verify_hyperelliptic_condition(s);
    steps.push_back(std::move(h.factorization));
    steps.push_back(std::move(h.closed_form));
    steps.push_back(verify_euler_cross_check(s));
    steps.push_back(verify_tau(s.tau));
    return steps;
}

} // namespace chow
