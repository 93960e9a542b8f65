// chowcheck: exact verification of scenario files and ad-hoc Jacobian ring queries.
//
//   chowcheck verify <scenario-file|builtin> [--report PATH] [--prime P | --exact] [--jobs N]
//   chowcheck ring <dim|map|duality|smooth> (--file F | --form POLY [--coords x0,x1,..])
//             [--degree D] [--a A] [--b B] [--prime P | --exact]
//   chowcheck list
//
// Exit status: 0 all mandatory checks passed, 1 a check failed, 2 input error.

#include "chow/verifier/runner.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

namespace {

constexpr int kPass = 0;
constexpr int kFail = 1;
constexpr int kInputError = 2;

chow::verifier::ModeOverride mode_from(bool exact, const std::optional<std::uint64_t>& prime) {
    chow::verifier::ModeOverride m;
    if (exact) {
        m.forced = true;
    } else if (prime) {
        m.forced = true;
        m.prime = *prime;
    }
    return m;
}

void require_prime(const std::optional<std::uint64_t>& p) {
    if (p && !chow::is_probable_prime(chow::Integer(static_cast<unsigned long>(*p))))
        throw chow::BadPrime(std::to_string(*p) + " is not prime");
}

int verify(const std::string& what, const std::string& report_path, bool exact,
           const std::optional<std::uint64_t>& prime, unsigned jobs) {
    using namespace chow::verifier;
    require_prime(prime);
    ScenarioFile s = parse_scenario(load_scenario_text(what));
    const Report r = run_scenario(s, mode_from(exact, prime), jobs);
    std::cout << human_report(r);
    if (!report_path.empty()) {
        std::ofstream out(report_path, std::ios::binary);
        if (!out) throw chow::DomainMismatch("cannot write report to " + report_path);
        out << machine_report(r);
    }
    return r.passed() ? kPass : kFail;
}

int ring(const std::string& command, const std::string& file, const std::string& form, const std::string& coords,
         unsigned degree, unsigned a, unsigned b, bool exact, const std::optional<std::uint64_t>& prime) {
    using namespace chow::verifier;
    require_prime(prime);
    std::shared_ptr<const chow::HypersurfaceRing> hr;
    if (!file.empty()) {
        ScenarioFile s = parse_scenario(load_scenario_text(file));
        s.jacobian();
        hr = s.hypersurface;
    } else {
        std::vector<std::string> names;
        for (const auto& c : detail::split(coords, ',')) names.push_back(c);
        hr = std::make_shared<const chow::HypersurfaceRing>(
            chow::parse_polynomial(form, chow::PolyRing::make(names)), names);
    }
    RingQuery q;
    q.command = command;
    q.degree = degree;
    q.a = a;
    q.b = b;
    if (exact) {
        q.prime.reset();
    } else if (prime) {
        q.prime = prime;
    }
    const auto st = ring_query(*hr, q);
    std::cout << st.detail << "\n";
    return command == "dim" || st.passed ? kPass : kFail;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact verifier for Jacobian ring and curve computations"};
    app.require_subcommand(1);

    std::string scenario, report_path;
    bool exact = false;
    std::optional<std::uint64_t> prime;
    unsigned jobs = 1;
    auto* verify_cmd = app.add_subcommand("verify", "run every check of a scenario");
    verify_cmd->add_option("scenario", scenario, "scenario file or built-in name")->required();
    verify_cmd->add_option("--report", report_path, "write the machine-readable report here");
    auto* vp = verify_cmd->add_option("--prime", prime, "use modular rank certificates at this prime");
    verify_cmd->add_flag("--exact", exact, "exact elimination only")->excludes(vp);
    verify_cmd->add_option("--jobs", jobs, "worker threads")->check(CLI::Range(1u, 256u));

    std::string command, file, form, coords = "x0,x1,x2,x3";
    unsigned degree = 0, a = 0, b = 0;
    auto* ring_cmd = app.add_subcommand("ring", "single Jacobian ring query");
    ring_cmd->add_option("command", command, "dim | map | duality | smooth")
        ->required()
        ->check(CLI::IsMember({"dim", "map", "duality", "smooth"}));
    auto* fo = ring_cmd->add_option("--file", file, "scenario file or built-in name");
    ring_cmd->add_option("--form", form, "defining form")->excludes(fo);
    ring_cmd->add_option("--coords", coords, "comma-separated coordinates for --form");
    ring_cmd->add_option("--degree", degree, "degree for dim");
    ring_cmd->add_option("--a", a, "first degree");
    ring_cmd->add_option("--b", b, "second degree");
    auto* rp = ring_cmd->add_option("--prime", prime, "modular certificate prime (default 1000003)");
    ring_cmd->add_flag("--exact", exact, "exact elimination only")->excludes(rp);

    app.add_subcommand("list", "list built-in scenarios");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kInputError;
    }

    try {
        if (*verify_cmd) return verify(scenario, report_path, exact, prime, jobs);
        if (*ring_cmd) {
            if (file.empty() && form.empty()) throw chow::DomainMismatch("ring needs --file or --form");
            return ring(command, file, form, coords, degree, a, b, exact, prime);
        }
        for (const auto& [name, text] : chow::verifier::builtin_scenarios()) std::cout << name << "\n";
        return kPass;
    } catch (const std::exception& e) {
        std::cerr << "chowcheck: " << e.what() << "\n";
        return kInputError;
    }
}
