#pragma once

#include "chow/verifier/builtin_scenarios.hpp"
#include "chow/verifier/checks.hpp"
#include "chow/verifier/report.hpp"
#include "chow/verifier/scenario.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <exception>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

namespace chow::verifier {

/// Built-in name or path; a name with no matching file falls back to the
/// bundled scenarios.
inline std::string load_scenario_text(const std::string& what) {
    std::ifstream in(what, std::ios::binary);
    if (in) {
        std::ostringstream buf;
        buf << in.rdbuf();
        return buf.str();
    }
    const auto& table = builtin_scenarios();
    auto it = table.find(what);
    if (it != table.end()) return it->second;
    throw DomainMismatch("no scenario file or built-in scenario named '" + what + "'");
}

inline std::string mode_text(const ScenarioFile& s, const ModeOverride& m) {
    const auto p = m.forced ? m.prime : s.prime;
    return p ? "modular p=" + std::to_string(*p) : "exact";
}

/// Executes every declared check. Steps keep declaration order whatever the
/// completion order; a failing check never stops the run.
inline Report run_scenario(ScenarioFile& s, const ModeOverride& mode = {}, unsigned jobs = 1) {
    Report r;
    r.scenario = s.name;
    r.title = s.title;
    r.mode = mode_text(s, mode);
    if (std::any_of(s.checks.begin(), s.checks.end(), needs_jacobian)) {
        try {
            s.jacobian();
        } catch (const ParseError&) {
            throw;
        } catch (const Error&) {
            // reported per check below
        }
    }

    struct Slot {
        std::vector<VerificationStep> steps;
        double millis = 0;
        std::exception_ptr error;
    };
    std::vector<Slot> slots(s.checks.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i; (i = next.fetch_add(1)) < slots.size();) {
            const auto t0 = std::chrono::steady_clock::now();
            try {
                slots[i].steps = run_check(s, s.checks[i], mode);
            } catch (...) {
                slots[i].error = std::current_exception();
            }
            slots[i].millis = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
        }
    };
    jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(std::max<std::size_t>(1, slots.size()))));
    if (jobs == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned j = 0; j < jobs; ++j) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }

    for (std::size_t i = 0; i < slots.size(); ++i) {
        if (slots[i].error) std::rethrow_exception(slots[i].error);
        const bool mandatory = s.checks[i].get_or("optional", "no") != "yes";
        for (auto& st : slots[i].steps)
            r.entries.push_back({std::move(st), mandatory, slots[i].millis / slots[i].steps.size()});
    }
    return r;
}

struct RingQuery {
    std::string command; // dim | map | duality | smooth
    unsigned degree = 0, a = 0, b = 0;
    std::optional<std::uint64_t> prime = kDefaultCertificatePrime;
};

/// Single ad-hoc computation on a Jacobian ring; the answer is the detail line.
inline VerificationStep ring_query(const HypersurfaceRing& ring, const RingQuery& q) {
    VerificationStep st;
    st.name = "ring." + q.command;
    if (q.command == "dim") {
        st.citation = "dim R_" + std::to_string(q.degree);
        st.detail = std::to_string(ring.dim(q.degree));
        st.passed = true;
    } else if (q.command == "map") {
        st.citation = map_label(q.a, q.b) + " is onto";
        const auto v = is_surjective(multiplication_map(ring, q.a, q.b), q.prime);
        st.passed = v.surjective;
        st.detail = std::string(v.surjective ? "surjective" : "not surjective") + ", rank " +
                    std::to_string(v.certificate.rank) + (v.surjective ? "" : " of " + std::to_string(v.target_dim)) +
                    ", " + v.certificate.describe();
    } else if (q.command == "duality") {
        st.citation = map_label(q.a, q.b) + " has no left kernel";
        const auto v = left_kernel_via_duality(ring, q.a, q.b, q.prime);
        st.passed = v.no_left_kernel();
        st.detail = std::string(st.passed ? "no left kernel" : "not certified") + ", rank " +
                    std::to_string(v.surjectivity.certificate.rank) + ", pairing " +
                    (v.pairing ? "nondegenerate" : "degenerate") + ", " + v.surjectivity.certificate.describe();
    } else if (q.command == "smooth") {
        st.citation = "R_" + std::to_string(ring.socle_degree() + 1) + " = 0";
        RankCertificate c;
        st.passed = is_smooth_artinian(ring, q.prime, &c);
        st.detail = st.passed ? "true" : "false";
        st.data["certificate"] = c.describe();
    } else {
        throw UnknownCheck("ring " + q.command);
    }
    return st;
}

} // namespace chow::verifier
