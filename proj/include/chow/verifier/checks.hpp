#pragma once

#include "chow/characters/characters.hpp"
#include "chow/curves/cycles.hpp"
#include "chow/jacobian/hypersurface.hpp"
#include "chow/jacobian/multiplication.hpp"
#include "chow/pencil/pencil.hpp"
#include "chow/poly/geometry.hpp"
#include "chow/verifier/scenario.hpp"

#include <optional>
#include <string>
#include <vector>

namespace chow::verifier {

/// Certificate mode for one run: a forced global mode beats the check's own
/// option, which beats the scenario default.
struct ModeOverride {
    bool forced = false;
    std::optional<std::uint64_t> prime;
};

namespace detail {

inline VerificationStep make_step(const CheckSpec& c, std::string name, std::string citation) {
    VerificationStep s;
    s.name = c.has("id") ? c.get("id") : std::move(name);
    s.citation = std::move(citation);
    return s;
}

inline std::string join(const std::vector<std::size_t>& v, const char* sep = ",") {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) out += (i ? sep : "") + std::to_string(v[i]);
    return out;
}

inline std::string join(const std::vector<Integer>& v, const char* sep = ",") {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) out += (i ? sep : "") + v[i].get_str();
    return out;
}

inline unsigned degree_option(const CheckSpec& c, const std::string& key) {
    const std::string& v = c.get(key);
    if (v.empty() || v.find_first_not_of("0123456789") != std::string::npos || v.size() > 6)
        throw ParseError("option " + key + " must be a small non-negative integer", c.line, 1);
    return static_cast<unsigned>(std::stoul(v));
}

inline std::optional<Integer> integer_option(const CheckSpec& c, const std::string& key) {
    if (!c.has(key)) return std::nullopt;
    Integer z;
    if (z.set_str(c.get(key), 10) != 0) throw ParseError("option " + key + " must be an integer", c.line, 1);
    return z;
}

inline std::optional<std::uint64_t> resolve_prime(const ScenarioFile& s, const CheckSpec& c, const ModeOverride& m) {
    if (m.forced) return m.prime;
    if (c.has("prime")) {
        if (c.get("prime") == "exact") return std::nullopt;
        const auto p = integer_option(c, "prime");
        if (!p->fits_ulong_p() || !is_probable_prime(*p)) throw ParseError("prime option is not a prime", c.line, 1);
        return p->get_ui();
    }
    return s.prime;
}

inline std::vector<std::vector<Rational>> quotient_vectors(ScenarioFile& s, const CheckSpec& c, unsigned degree) {
    std::vector<std::vector<Rational>> out;
    if (!c.has("quotient")) return out;
    for (const auto& text : split(c.get("quotient"), ';')) out.push_back(s.jacobian().to_quotient(s.parse(text, c.line), degree));
    return out;
}

inline std::map<std::string, Rational> single_sample(const CheckSpec& c) {
    if (!c.has("at")) return {};
    const auto v = parse_samples(c.get("at"));
    if (v.size() != 1) throw ParseError("option at takes exactly one assignment", c.line, 1);
    return v.front();
}

inline PlaneCurve curve_at(const ScenarioFile& s, const CheckSpec& c) {
    PlaneCurve pc = s.find_curve(c.get("curve"))->curve;
    const auto at = single_sample(c);
    if (!at.empty()) pc.form = evaluate(pc.form, at);
    return pc;
}

inline std::string describe_sample(const std::map<std::string, Rational>& at) {
    std::string out;
    for (const auto& [k, v] : at) out += (out.empty() ? "" : ", ") + k + " = " + to_string(v);
    return out;
}

inline std::string certificate_text(const RankCertificate& c) { return c.describe(); }

} // namespace detail

inline std::vector<VerificationStep> check_invariance_step(ScenarioFile& s, const CheckSpec& c) {
    const auto& sigma = *s.automorphism;
    std::string exps;
    for (auto e : sigma.exponents()) exps += (exps.empty() ? "" : ",") + std::to_string(e);
    auto st = detail::make_step(c, "invariance",
                                s.form_name + " is an eigenvector of sigma = (" + exps + ") mod " + std::to_string(sigma.modulus()));
    const auto r = check_invariance(s.jacobian(), sigma);
    std::string chars;
    for (auto x : r.term_characters) chars += (chars.empty() ? "" : ",") + std::to_string(x);
    st.data["term_characters"] = chars;
    st.passed = r.invariant;
    if (r.invariant) {
        st.data["character"] = std::to_string(r.character.value_or(0));
        const auto want = detail::integer_option(c, "character");
        if (want && *want != static_cast<unsigned long>(r.character.value_or(0))) {
            st.passed = false;
            st.witness = "character " + std::to_string(r.character.value_or(0));
        }
        st.detail = "every term has character " + std::to_string(r.character.value_or(0));
    } else {
        st.detail = "terms have different characters";
        st.witness = chars;
    }
    return {st};
}

inline std::vector<VerificationStep> check_smooth(ScenarioFile& s, const CheckSpec& c, const ModeOverride& m) {
    const auto& ring = s.jacobian();
    auto st = detail::make_step(c, "smooth", "R_" + std::to_string(ring.socle_degree() + 1) +
                                                 " = 0, so the hypersurface is smooth (Jacobian criterion)");
    RankCertificate cert;
    st.passed = is_smooth_artinian(ring, detail::resolve_prime(s, c, m), &cert);
    st.data["certificate"] = cert.describe();
    st.detail = std::string(st.passed ? "Jacobian span fills degree " : "Jacobian span misses part of degree ") +
                std::to_string(ring.socle_degree() + 1) + " (" + cert.describe() + ")";
    if (!st.passed) st.witness = "rank " + std::to_string(cert.rank);
    return {st};
}

inline std::vector<VerificationStep> check_hilbert(ScenarioFile& s, const CheckSpec& c, const ModeOverride& m) {
    const auto& ring = s.jacobian();
    std::vector<std::size_t> expect;
    for (const auto& w : detail::split(c.get("expect"), ',')) {
        if (w.empty() || w.find_first_not_of("0123456789") != std::string::npos)
            throw ParseError("hilbert expect must be a comma-separated list of dimensions", c.line, 1);
        expect.push_back(std::stoul(w));
    }
    auto st = detail::make_step(c, "hilbert", "dim R_k = (" + detail::join(expect) + ")");
    const auto p = detail::resolve_prime(s, c, m);
    const HilbertTable t = p ? hilbert_function(ring, *p) : hilbert_function(ring);
    st.data["dims"] = detail::join(t.dims);
    st.data["certificate"] = t.note.empty() ? "exact elimination" : t.note;
    st.passed = t.dims == expect;
    st.detail = "computed (" + detail::join(t.dims) + "), " + st.data["certificate"];
    if (!st.passed) st.witness = detail::join(t.dims);
    return {st};
}

inline std::vector<VerificationStep> check_pairing(ScenarioFile& s, const CheckSpec& c) {
    const auto& ring = s.jacobian();
    const unsigned sd = ring.socle_degree();
    auto st = detail::make_step(c, "pairing", "R_k x R_" + std::to_string(sd) + "-k -> R_" + std::to_string(sd) +
                                                  " is a perfect pairing for every k");
    st.passed = true;
    for (unsigned k = 0; k <= sd; ++k) {
        if (!macaulay_pairing_check(ring, k)) {
            st.passed = false;
            st.witness = "k = " + std::to_string(k);
            break;
        }
    }
    st.detail = st.passed ? "pairing matrices have full rank for k = 0.." + std::to_string(sd) : "degenerate pairing";
    return {st};
}

inline std::vector<VerificationStep> check_uniform_bound(ScenarioFile& s, const CheckSpec& c) {
    const unsigned b = detail::degree_option(c, "b");
    const auto min = detail::integer_option(c, "min").value_or(2);
    auto st = detail::make_step(c, "uniform-bound.b" + std::to_string(b),
                                "rank(l: R_" + std::to_string(b) + " -> R_" + std::to_string(b + 1) + ") >= " +
                                    min.get_str() + " for every nonzero linear l, so R_1 x R_" + std::to_string(b) +
                                    " -> R_" + std::to_string(b + 1) + "/C g has no left kernel for any g");
    const std::size_t v = uniform_mult_rank_bound(s.jacobian(), b);
    st.data["bound"] = std::to_string(v);
    st.passed = Integer(static_cast<unsigned long>(v)) >= min;
    const auto want = detail::integer_option(c, "expect");
    if (want && *want != static_cast<unsigned long>(v)) st.passed = false;
    st.detail = "uniform multiplication rank bound " + std::to_string(v);
    if (!st.passed) st.witness = std::to_string(v);
    return {st};
}

inline std::vector<VerificationStep> check_green_gotzmann(ScenarioFile& s, const CheckSpec& c, const ModeOverride& m) {
    const auto& ring = s.jacobian();
    const unsigned a = detail::degree_option(c, "a"), b = detail::degree_option(c, "b");
    const Polynomial g = s.parse(c.get("g"), c.line);
    auto st = detail::make_step(c, "green-gotzmann",
                                "V/J x R_" + std::to_string(b) + " -> R_" + std::to_string(a + b) +
                                    " is onto, V = ker(h -> <h g>) of codimension one in R_" + std::to_string(a));
    const auto gd = g.homogeneous_degree(chow::detail::indices_of(g.ring(), s.coords));
    if (!gd || *gd + a != ring.socle_degree()) {
        st.detail = "g must be homogeneous of degree " + std::to_string(ring.socle_degree() - a);
        st.witness = g.to_string();
        return {st};
    }
    const auto phi = pairing_functional(ring, g, static_cast<unsigned>(*gd));
    const auto inst = green_gotzmann_instance(ring, a, b, phi, detail::resolve_prime(s, c, m));
    st.data["kernel_dim"] = std::to_string(inst.kernel_dim);
    st.data["rank"] = std::to_string(inst.verdict.certificate.rank);
    st.data["target_dim"] = std::to_string(inst.verdict.target_dim);
    st.data["certificate"] = inst.verdict.certificate.describe();
    st.passed = inst.verdict.surjective;
    const auto want = detail::integer_option(c, "expect-rank");
    if (want && *want != static_cast<unsigned long>(inst.verdict.certificate.rank)) st.passed = false;
    st.detail = std::string(inst.verdict.surjective ? "surjective" : "not surjective") + ", rank " +
                std::to_string(inst.verdict.certificate.rank) + ", dim V/J = " + std::to_string(inst.kernel_dim) +
                ", " + inst.verdict.certificate.describe();
    if (!st.passed) st.witness = "rank " + std::to_string(inst.verdict.certificate.rank);
    return {st};
}

inline std::string map_label(unsigned a, unsigned b) {
    return "R_" + std::to_string(a) + " x R_" + std::to_string(b) + " -> R_" + std::to_string(a + b);
}

inline std::vector<VerificationStep> check_map(ScenarioFile& s, const CheckSpec& c, const ModeOverride& m) {
    const unsigned a = detail::degree_option(c, "a"), b = detail::degree_option(c, "b");
    auto st = detail::make_step(c, "map.R" + std::to_string(a) + "xR" + std::to_string(b),
                                map_label(a, b) + (c.has("quotient") ? " (modulo the given classes)" : "") + " is onto");
    const auto mm = multiplication_map(s.jacobian(), a, b, std::nullopt, detail::quotient_vectors(s, c, a + b));
    const auto v = is_surjective(mm, detail::resolve_prime(s, c, m));
    st.data["rank"] = std::to_string(v.certificate.rank);
    st.data["target_dim"] = std::to_string(v.target_dim);
    st.data["certificate"] = v.certificate.describe();
    st.passed = v.surjective;
    const auto want = detail::integer_option(c, "expect-rank");
    if (want && *want != static_cast<unsigned long>(v.certificate.rank)) st.passed = false;
    st.detail = std::string(v.surjective ? "surjective" : "not surjective") + ", rank " +
                std::to_string(v.certificate.rank) + ", " + v.certificate.describe();
    if (!st.passed) st.witness = "rank " + std::to_string(v.certificate.rank) + " of " + std::to_string(v.target_dim);
    return {st};
}

inline std::vector<VerificationStep> check_duality(ScenarioFile& s, const CheckSpec& c, const ModeOverride& m) {
    const auto& ring = s.jacobian();
    const unsigned a = detail::degree_option(c, "a"), b = detail::degree_option(c, "b");
    const unsigned sd = ring.socle_degree();
    auto st = detail::make_step(c, "duality.R" + std::to_string(a) + "xR" + std::to_string(b),
                                map_label(a, b) + " has no left kernel, since " +
                                    (a + b <= sd ? map_label(sd - a - b, b) : std::string("the dual map")) +
                                    " is onto and the pairing is perfect");
    const auto v = left_kernel_via_duality(ring, a, b, detail::resolve_prime(s, c, m));
    st.data["surjective"] = v.surjectivity.surjective ? "true" : "false";
    st.data["rank"] = std::to_string(v.surjectivity.certificate.rank);
    st.data["pairing"] = v.pairing ? "nondegenerate" : "degenerate";
    st.data["certificate"] = v.surjectivity.certificate.describe();
    st.passed = v.no_left_kernel();
    const auto want = detail::integer_option(c, "expect-rank");
    if (want && *want != static_cast<unsigned long>(v.surjectivity.certificate.rank)) st.passed = false;
    st.detail = map_label(sd - a - b, b) + (v.surjectivity.surjective ? " onto" : " not onto") + ", rank " +
                std::to_string(v.surjectivity.certificate.rank) + " (" + v.surjectivity.certificate.describe() +
                "); pairing on R_" + std::to_string(a) + " " + st.data["pairing"];
    if (!st.passed) st.witness = st.detail;
    return {st};
}

inline std::vector<VerificationStep> check_left_kernel(ScenarioFile& s, const CheckSpec& c) {
    const unsigned a = detail::degree_option(c, "a"), b = detail::degree_option(c, "b");
    auto st = detail::make_step(c, "left-kernel.R" + std::to_string(a) + "xR" + std::to_string(b),
                                map_label(a, b) + (c.has("quotient") ? " modulo the given classes" : "") +
                                    " has no left kernel");
    const auto mm = multiplication_map(s.jacobian(), a, b, std::nullopt, detail::quotient_vectors(s, c, a + b));
    const auto k = left_kernel(mm);
    st.data["kernel_dim"] = std::to_string(k.size());
    st.passed = k.empty();
    st.detail = "left kernel of dimension " + std::to_string(k.size()) + " (exact elimination)";
    if (!k.empty()) {
        std::string w;
        for (const auto& x : k.front()) w += (w.empty() ? "" : ",") + to_string(x);
        st.witness = "(" + w + ")";
    }
    return {st};
}

inline std::vector<VerificationStep> check_hyperplane_section(ScenarioFile& s, const CheckSpec& c) {
    const auto& curve = s.find_curve(c.get("curve"))->curve;
    const std::string& h = c.get("hyperplane");
    auto st = detail::make_step(c, "section." + curve.name,
                                curve.name + " = " + c.get("surface") + " cut by " + h + " = 0");
    if (!s.ring->find(h)) throw ParseError("unknown hyperplane coordinate '" + h + "'", c.line, 1);
    const Polynomial cut = substitute(*s.find_polynomial(c.get("surface")), {{h, Polynomial(s.ring)}});
    const Polynomial diff = cut - curve.form;
    st.passed = diff.is_zero();
    st.detail = st.passed ? "restriction agrees with the declared curve" : "restriction differs";
    if (!st.passed) st.witness = diff.to_string();
    return {st};
}

inline std::vector<VerificationStep> check_cycle(ScenarioFile& s, const CheckSpec& c) {
    const auto& curve = s.find_curve(c.get("curve"))->curve;
    const std::string& line = c.get("line");
    auto st = detail::make_step(c, "cycle." + curve.name + "." + line,
                                curve.name + " . {" + line + " = 0} = " + c.get("expect"));
    const auto samples = parse_samples(c.get_or("samples", ""));
    const auto pc = parametric_intersection_cycle(curve, line, samples, s.points);
    const std::string got = pc.cycle.to_string();
    st.data["cycle"] = got;
    st.data["symbolic"] = pc.symbolic ? "true" : "false";
    st.passed = got == c.get("expect");
    st.detail = "cycle " + got + (pc.symbolic ? ", identically in the parameters" : ", at every sample");
    if (!st.passed) st.witness = got;
    return {st};
}

namespace detail {

struct OrderResult {
    RelationLattice lattice;
    std::optional<EquivalenceOrder> order;
};

inline OrderResult order_on(const ScenarioFile& s, const CurveSpec& cs, const std::string& p, const std::string& q,
                            const CheckSpec& c) {
    OrderResult r;
    r.lattice = hyperplane_relations(cs.curve, cs.lines, s.points, parse_samples(c.get_or("samples", "")));
    r.order = minimal_equivalence_order(r.lattice, p, q);
    return r;
}

inline std::string lattice_text(const RelationLattice& lat) {
    std::string out;
    for (std::size_t i = 0; i < lat.relations.rows(); ++i) {
        std::vector<Integer> row;
        for (std::size_t j = 0; j < lat.relations.cols(); ++j) row.push_back(lat.relations(i, j));
        out += (i ? ";" : "") + join(row);
    }
    return out;
}

} // namespace detail

inline std::vector<VerificationStep> check_order(ScenarioFile& s, const CheckSpec& c) {
    const auto& cs = *s.find_curve(c.get("curve"));
    const auto pts = detail::split(c.get("points"), ',');
    auto st = detail::make_step(c, "order." + cs.curve.name,
                                "n" + pts[0] + " = n" + pts[1] + " in CH_0(" + cs.curve.name + ")" +
                                    (c.has("expect") ? " with minimal n = " + c.get("expect") : ""));
    const auto r = detail::order_on(s, cs, pts[0], pts[1], c);
    std::string basis;
    for (const auto& b : r.lattice.basis) basis += (basis.empty() ? "" : ",") + b;
    st.data["basis"] = basis;
    st.data["relations"] = detail::lattice_text(r.lattice);
    if (!r.order) {
        st.detail = pts[0] + " - " + pts[1] + " has no multiple in the relation lattice";
        st.witness = "none";
        return {st};
    }
    st.data["order"] = r.order->n.get_str();
    st.data["combination"] = detail::join(r.order->witness);
    st.passed = true;
    const auto want = detail::integer_option(c, "expect");
    if (want && *want != r.order->n) st.passed = false;
    st.detail = "minimal n = " + r.order->n.get_str() + " from relation rows combined with (" +
                detail::join(r.order->witness) + ")";
    if (!st.passed) st.witness = r.order->n.get_str();
    return {st};
}

inline std::vector<VerificationStep> check_common_order(ScenarioFile& s, const CheckSpec& c) {
    const auto curves = detail::split(c.get("curves"), ',');
    const auto pts = detail::split(c.get("points"), ',');
    if (pts.size() != 2) throw ParseError("common-order needs exactly two points", c.line, 1);
    std::string names;
    for (const auto& n : curves) names += (names.empty() ? "" : ", ") + n;
    auto st = detail::make_step(c, "common-order",
                                "n" + pts[0] + " and n" + pts[1] + " are rationally equivalent on " + names +
                                    (c.has("expect") ? " for n = " + c.get("expect") : ""));
    std::vector<Integer> orders;
    for (const auto& n : curves) {
        const auto r = detail::order_on(s, *s.find_curve(n), pts[0], pts[1], c);
        if (!r.order) {
            st.detail = "no order on " + n;
            st.witness = n;
            return {st};
        }
        orders.push_back(r.order->n);
    }
    const Integer n = common_order(orders);
    st.data["orders"] = detail::join(orders);
    st.data["order"] = n.get_str();
    st.passed = true;
    const auto want = detail::integer_option(c, "expect");
    if (want && *want != n) st.passed = false;
    st.detail = "lcm(" + detail::join(orders) + ") = " + n.get_str() + "; rational equivalence holds at n = " + n.get_str();
    if (!st.passed) st.witness = n.get_str();
    return {st};
}

inline std::vector<VerificationStep> check_multiplicity(ScenarioFile& s, const CheckSpec& c) {
    const PlaneCurve pc = detail::curve_at(s, c);
    const std::string& label = c.get("point");
    const RationalPoint& p = *s.find_point(label);
    const auto at = detail::single_sample(c);
    auto st = detail::make_step(c, "multiplicity." + pc.name + "." + label,
                                pc.name + (at.empty() ? "" : " at " + detail::describe_sample(at)) + " has a point of multiplicity " +
                                    c.get("expect") + " at " + label);
    std::vector<Rational> plane;
    for (std::size_t i = 0; i < s.coords.size(); ++i) {
        const bool in_plane = std::find(pc.plane.begin(), pc.plane.end(), s.coords[i]) != pc.plane.end();
        if (!in_plane && sgn(p.coords[i]) != 0) {
            st.detail = label + " does not lie in the plane of " + pc.name;
            st.witness = p.to_string();
            return {st};
        }
    }
    for (const auto& v : pc.plane)
        plane.push_back(p.coords[std::find(s.coords.begin(), s.coords.end(), v) - s.coords.begin()]);
    const unsigned mult = multiplicity_at_point(pc.form, pc.plane, RationalPoint{plane});
    st.data["multiplicity"] = std::to_string(mult);
    const auto want = detail::integer_option(c, "expect");
    st.passed = *want == static_cast<unsigned long>(mult);
    st.detail = "multiplicity " + std::to_string(mult);
    if (!st.passed) st.witness = std::to_string(mult);
    return {st};
}

inline std::vector<VerificationStep> check_parametrization_step(ScenarioFile& s, const CheckSpec& c) {
    const PlaneCurve pc = detail::curve_at(s, c);
    const auto at = detail::single_sample(c);
    auto st = detail::make_step(c, "parametrization." + pc.name,
                                pc.name + (at.empty() ? "" : " at " + detail::describe_sample(at)) +
                                    " is parametrized by (" + c.get("map") + ")");
    std::vector<Polynomial> map;
    for (const auto& part : detail::split(c.get("map"), ',')) map.push_back(s.parse(part, c.line));
    if (map.size() != pc.plane.size() || std::all_of(map.begin(), map.end(), [](const Polynomial& p) { return p.is_zero(); })) {
        st.detail = "map needs three components, not all zero";
        return {st};
    }
    st.passed = check_parametrization(pc.form, pc.plane, map);
    if (!st.passed) {
        std::map<std::string, Polynomial> asg;
        for (std::size_t i = 0; i < map.size(); ++i) asg.emplace(pc.plane[i], map[i]);
        st.witness = substitute(pc.form, asg).to_string();
    }
    st.detail = st.passed ? "the form vanishes identically on the map" : "the form does not vanish on the map";
    return {st};
}

inline std::vector<VerificationStep> check_picard(ScenarioFile& s, const CheckSpec& c, const ModeOverride& m) {
    const auto& sigma = *s.automorphism;
    auto st = detail::make_step(c, "picard", "Picard number bounded by the Galois orbit scan of sigma on H^2_pr" +
                                                 (c.has("expect") ? " (expected " + c.get("expect") + ")" : std::string()));
    const auto b = picard_upper_bound(s.jacobian(), sigma, detail::resolve_prime(s, c, m));
    st.data["bound"] = std::to_string(b.bound);
    st.data["orbits"] = std::to_string(b.orbits.size());
    for (std::size_t i = 0; i < b.orbits.size(); ++i) {
        const auto& o = b.orbits[i];
        char key[32];
        std::snprintf(key, sizeof key, "orbit.%02zu", i + 1);
        st.data[key] = "rep " + std::to_string(o.representative) + ", size " + std::to_string(o.size) + ", h20 " +
                       std::to_string(o.dim_20) + ", h11 " + std::to_string(o.dim_11) + ", h02 " +
                       std::to_string(o.dim_02) + ", " + (o.excluded ? "excluded: " : "counted: ") + o.reason;
    }
    // the computed bound is reported verbatim whatever the expectation
    st.passed = true;
    const auto want = detail::integer_option(c, "expect");
    st.detail = "computed bound " + std::to_string(b.bound);
    if (want && *want != static_cast<unsigned long>(b.bound)) {
        st.detail += "; differs from the expected " + want->get_str();
        st.data["discrepancy"] = "computed " + std::to_string(b.bound) + ", expected " + want->get_str();
    }
    return {st};
}

inline std::vector<VerificationStep> check_pencil(ScenarioFile& s, const CheckSpec& c) {
    std::vector<VerificationStep> out;
    for (auto& st : run_pencil(*s.pencil)) {
        if (st.name == "tau") continue;
        st.name = (c.has("id") ? c.get("id") : std::string("pencil")) + "." + st.name;
        out.push_back(std::move(st));
    }
    return out;
}

inline std::vector<VerificationStep> check_degenerations(ScenarioFile& s, const CheckSpec& c) {
    auto st = detail::make_step(c, "degenerations", "parameter values where lambda(t) leaves the good locus");
    const auto d = report_degenerate_parameters(*s.pencil);
    for (std::size_t i = 0; i < d.size(); ++i) {
        std::string vals;
        for (const auto& v : d[i].rational_values) vals += (vals.empty() ? "" : ",") + to_string(v);
        std::string text = d[i].condition + ": " + d[i].reason;
        if (!vals.empty()) text += "; rational values " + vals;
        if (d[i].discriminant) text += "; discriminant " + d[i].discriminant->get_str();
        char key[32];
        std::snprintf(key, sizeof key, "case.%02zu", i + 1);
        st.data[key] = text;
    }
    st.passed = true;
    st.detail = std::to_string(d.size()) + " degenerate conditions";
    return {st};
}

inline std::vector<VerificationStep> check_tau(ScenarioFile& s, const CheckSpec& c) {
    const auto& tau = s.tau.empty() ? s.pencil->tau : s.tau;
    auto st = verify_tau(tau);
    if (c.has("id")) st.name = c.get("id");
    return {st};
}

/// Runs one check; module errors become a failed step carrying the message.
inline std::vector<VerificationStep> run_check(ScenarioFile& s, const CheckSpec& c, const ModeOverride& m) {
    try {
        const std::string& n = c.name;
        if (n == "invariance") return check_invariance_step(s, c);
        if (n == "smooth") return check_smooth(s, c, m);
        if (n == "hilbert") return check_hilbert(s, c, m);
        if (n == "pairing") return check_pairing(s, c);
        if (n == "uniform-bound") return check_uniform_bound(s, c);
        if (n == "green-gotzmann") return check_green_gotzmann(s, c, m);
        if (n == "map") return check_map(s, c, m);
        if (n == "duality") return check_duality(s, c, m);
        if (n == "left-kernel") return check_left_kernel(s, c);
        if (n == "hyperplane-section") return check_hyperplane_section(s, c);
        if (n == "cycle") return check_cycle(s, c);
        if (n == "order") return check_order(s, c);
        if (n == "common-order") return check_common_order(s, c);
        if (n == "multiplicity") return check_multiplicity(s, c);
        if (n == "parametrization") return check_parametrization_step(s, c);
        if (n == "picard") return check_picard(s, c, m);
        if (n == "pencil") return check_pencil(s, c);
        if (n == "degenerations") return check_degenerations(s, c);
        if (n == "tau") return check_tau(s, c);
        throw UnknownCheck(n);
    } catch (const ParseError&) {
        throw;
    } catch (const UnknownCheck&) {
        throw;
    } catch (const Error& e) {
        VerificationStep st;
        st.name = c.has("id") ? c.get("id") : c.name;
        st.citation = "check '" + c.name + "' on line " + std::to_string(c.line);
        st.detail = e.what();
        st.witness = e.kind();
        return {st};
    }
}

/// Checks that read the Jacobian ring of the scenario's form.
inline bool needs_jacobian(const CheckSpec& c) {
    static const std::set<std::string> k{"invariance", "smooth", "hilbert", "pairing", "uniform-bound",
                                         "green-gotzmann", "map", "duality", "left-kernel", "picard"};
    return k.count(c.name) != 0;
}

} // namespace chow::verifier
