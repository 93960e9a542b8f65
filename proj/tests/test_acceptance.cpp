// Acceptance run: one line per criterion, nonzero exit when any criterion fails.

#include "chow/characters/characters.hpp"
#include "chow/curves/cycles.hpp"
#include "chow/jacobian/hypersurface.hpp"
#include "chow/jacobian/multiplication.hpp"
#include "chow/verifier/runner.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <numeric>
#include <random>

using namespace chow;

namespace {

const std::vector<std::string> kCoords{"x0", "x1", "x2", "x3"};

RingPtr coords_ring() { return PolyRing::make(kCoords); }

HypersurfaceRing make(const std::string& f) { return HypersurfaceRing(parse_polynomial(f, coords_ring()), kCoords); }

HypersurfaceRing quartic() { return make("x0^4 + x1^4 - x2^4 - x3^4"); }

struct Outcome {
    bool passed = false;
    std::string detail;
};

std::string join(const std::vector<std::size_t>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
    return s;
}

Outcome hilbert_table() {
    const auto ring = quartic();
    const auto h = hilbert_function(ring).dims;
    const std::vector<std::size_t> want{1, 4, 10, 16, 19, 16, 10, 4, 1};
    return {h == want && ring.dim(8) == 1 && ring.dim(4) == 19, "table " + join(h)};
}

Outcome macaulay_duality() {
    const auto ring = quartic();
    const auto h = hilbert_function(ring).dims;
    bool ok = true;
    for (unsigned k = 0; k <= ring.socle_degree(); ++k) {
        ok = ok && h[k] == h[ring.socle_degree() - k];
        ok = ok && macaulay_pairing_check(ring, k);
    }
    return {ok, "palindromic and nondegenerate for k = 0..8"};
}

Outcome uniform_bound() {
    const auto ring = quartic();
    const auto b = uniform_mult_rank_bound(ring, 3);
    return {b == 13 && b >= 2, "bound " + std::to_string(b)};
}

Outcome green_gotzmann() {
    const auto ring = quartic();
    const auto g = parse_polynomial("x0*x1*x2*x3", coords_ring());
    const auto inst = green_gotzmann_instance(ring, 4, 3, pairing_functional(ring, g, 4));
    return {inst.verdict.surjective && inst.verdict.certificate.rank == 4 && inst.kernel_dim == 18,
            "kernel dim " + std::to_string(inst.kernel_dim) + ", rank " + std::to_string(inst.verdict.certificate.rank)};
}

verifier::Report run_builtin(const std::string& name) {
    auto s = verifier::parse_scenario(verifier::load_scenario_text(name));
    return verifier::run_scenario(s);
}

Outcome pencil() {
    const auto r = run_builtin("quartic-family");
    bool ok = true;
    std::string failed;
    for (const auto& e : r.entries) {
        if (e.step.name.rfind("pencil.", 0) != 0) continue;
        if (!e.step.passed) {
            ok = false;
            failed += (failed.empty() ? "" : ", ") + e.step.name;
        }
    }
    return {ok, ok ? "all identities hold" : "failed: " + failed};
}

Outcome shioda() {
    const auto r = run_builtin("shioda");
    std::map<std::string, const VerificationStep*> by;
    for (const auto& e : r.entries) by[e.step.name] = &e.step;
    const bool ok = r.passed() && r.mode == "modular p=1000003" && by.count("common-order") &&
                    by.at("common-order")->data.at("order") == "52";
    return {ok, std::to_string(r.count_passed()) + "/" + std::to_string(r.entries.size()) + " steps, " + r.mode};
}

Outcome picard() {
    const auto ring = make("x0*x1^4 + x1*x2^4 + x2*x0^4 + x3^5");
    const auto pb = picard_upper_bound(ring, DiagonalAutomorphism(65, {16, -4, 1, 0}));
    std::string d = "computed Picard upper bound " + std::to_string(pb.bound);
    if (pb.bound != 1) d += " (discrepancy: expected 1)";
    return {true, d};
}

Outcome properties() {
    std::mt19937 rng(1729);
    std::size_t bad = 0;

    // rank-nullity
    std::uniform_int_distribution<int> entry(-4, 4);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t rows = 2 + trial % 5, cols = 3 + trial % 4;
        ExactMatrix m(rows, cols);
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t j = 0; j < cols; ++j) m(i, j) = entry(rng);
        if (trial % 4 == 0)
            for (std::size_t j = 0; j < cols; ++j) m(rows - 1, j) = m(0, j) * 3 - m(1, j);
        const auto k = kernel_basis(m);
        if (rank(m) + k.size() != cols) ++bad;
        for (const auto& v : k)
            if (!is_zero_vector<Rational>(m.apply(v))) ++bad;
    }

    // Euler relation
    const auto r = coords_ring();
    for (int i = 0; i < 50; ++i) {
        const std::size_t d = 1 + i % 6;
        const auto mons = enumerate_monomials(4, d);
        std::uniform_int_distribution<std::size_t> pick(0, mons.size() - 1);
        Polynomial f(r);
        for (int t = 0; t < 6; ++t) f.add_term(mons[pick(rng)], Rational(entry(rng), 1 + i % 3));
        Polynomial lhs(r);
        for (const auto& v : kCoords) lhs += Polynomial::variable(r, v) * partial_derivative(f, v);
        if (lhs != f * Rational(static_cast<long>(d))) ++bad;
    }

    // random smooth quartics and quintics
    std::uniform_int_distribution<int> small(-2, 2);
    std::size_t rings = 0;
    for (unsigned d : {4u, 5u}) {
        std::size_t here = 0;
        for (int attempt = 0; attempt < 40 && here < (d == 4 ? 3u : 2u); ++attempt) {
            Polynomial f(r);
            for (std::size_t i = 0; i < 4; ++i) {
                Monomial m(4);
                m[i] = d;
                int c = 0;
                while (c == 0) c = small(rng);
                f.add_term(m, c);
            }
            const auto mons = enumerate_monomials(4, d);
            std::uniform_int_distribution<std::size_t> pick(0, mons.size() - 1);
            for (int t = 0; t < 3; ++t) f.add_term(mons[pick(rng)], small(rng));
            HypersurfaceRing ring(f, kCoords);
            if (!is_smooth_artinian(ring, kDefaultCertificatePrime)) continue;
            const auto h = hilbert_function(ring).dims;
            for (std::size_t k = 0; k < h.size(); ++k)
                if (h[k] != h[h.size() - 1 - k]) ++bad;
            const auto total = std::accumulate(h.begin(), h.end(), std::size_t{0});
            if (total != (d - 1) * (d - 1) * (d - 1) * (d - 1)) ++bad;
            ++here;
        }
        rings += here;
    }
    if (rings != 5) ++bad;

    // HNF idempotence
    for (int trial = 0; trial < 30; ++trial) {
        const std::size_t rows = 1 + trial % 3, cols = 2 + trial % 3;
        IntMatrix m(rows, cols);
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t j = 0; j < cols; ++j) m(i, j) = entry(rng);
        const auto h = hermite_normal_form(m);
        if (hermite_normal_form(h) != h) ++bad;
    }

    // degree conservation
    const auto rt = PolyRing::make({"x0", "x1", "x2", "x3", "t"});
    const PointLabels labels{
        {"P", RationalPoint{{0, 1, 0, 0}}}, {"Q", RationalPoint{{0, 0, 1, 0}}}, {"R", RationalPoint{{1, 0, 0, 0}}}};
    const PlaneCurve z1{"Z1", parse_polynomial("x0*x1^4 + x1*x2^4 + x2*x0^4", rt), {"x0", "x1", "x2"}, kCoords};
    const PlaneCurve z2{"Z2", parse_polynomial("x1*x2^4 + x3^5 + t*x3*x1^4", rt), {"x1", "x2", "x3"}, kCoords};
    for (const auto& line : {"x0", "x1", "x2"})
        if (intersection_cycle(z1, line, labels).degree() != 5) ++bad;
    for (const auto& line : {"x1", "x3"})
        if (intersection_cycle(z2, line, labels).degree() != 5) ++bad;
    for (int trial = 0; trial < 30; ++trial) {
        Polynomial f = Polynomial::constant(rt, 1);
        const int deg = 1 + trial % 5;
        for (int k = 0; k < deg; ++k) {
            Polynomial l(rt);
            for (std::size_t i = 0; i < 3; ++i) {
                Monomial m(rt->size());
                m[i] = 1;
                l.add_term(m, entry(rng));
            }
            if (l.is_zero()) l = Polynomial::variable(rt, "x0");
            f *= l;
        }
        const PlaneCurve c{"C", f, {"x0", "x1", "x2"}, {}};
        for (const auto& line : c.plane) {
            try {
                if (binary_form_cycle(c, line, restrict_to_line(c, line)).degree() != f.total_degree()) ++bad;
            } catch (const LineIsComponent&) {
            }
        }
    }
    return {bad == 0, std::to_string(bad) + " violations, " + std::to_string(rings) + " smooth rings"};
}

Outcome determinism() {
    bool ok = true;
    for (const auto& [name, text] : verifier::builtin_scenarios()) {
        const auto a = verifier::machine_report(run_builtin(name));
        const auto b = verifier::machine_report(run_builtin(name));
        ok = ok && a == b;
    }
    return {ok, std::to_string(verifier::builtin_scenarios().size()) + " bundled scenarios"};
}

struct Criterion {
    int id;
    const char* what;
    double limit_s; // 0 = no limit
    std::function<Outcome()> run;
};

} // namespace

int main() {
    const std::vector<Criterion> criteria{
        {1, "quartic Hilbert table", 5, hilbert_table},
        {2, "Macaulay duality on the quartic", 30, macaulay_duality},
        {3, "uniform multiplication rank bound b=3", 5, uniform_bound},
        {4, "Green-Gotzmann instance a=4 b=3", 10, green_gotzmann},
        {5, "quartic pencil identities", 10, pencil},
        {6, "Shioda scenario (modular)", 300, shioda},
        {7, "Picard upper bound by orbit scan", 0, picard},
        {8, "property suites", 0, properties},
        {9, "deterministic machine reports", 0, determinism},
    };
    int failures = 0;
    for (const auto& c : criteria) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        bool ok = o.passed;
        if (c.limit_s > 0 && s >= c.limit_s) {
            ok = false;
            o.detail += ", over the time limit";
        }
        failures += !ok;
        std::printf("criterion %d: %s  %s  (%.2f s)  %s\n", c.id, ok ? "PASS" : "FAIL", c.what, s, o.detail.c_str());
    }
    std::printf("%d of %zu criteria failed\n", failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
