#pragma once

#include "chow/core/step.hpp"

#include <cstdio>
#include <map>
#include <sstream>
#include <string>
#include <vector>

namespace chow::verifier {

struct ReportEntry {
    VerificationStep step;
    bool mandatory = true;
    double millis = 0; // human report only
};

struct Report {
    std::string scenario;
    std::string title;
    std::string mode; // "exact" or "modular p=..."
    std::vector<ReportEntry> entries;

    bool passed() const {
        for (const auto& e : entries)
            if (e.mandatory && !e.step.passed) return false;
        return true;
    }

    std::size_t count_passed() const {
        std::size_t n = 0;
        for (const auto& e : entries) n += e.step.passed;
        return n;
    }
};

namespace detail {

inline std::string escape_value(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '\\') {
            out += "\\\\";
        } else if (c == '\n') {
            out += "\\n";
        } else if (c == '\r') {
            out += "\\r";
        } else {
            out += c;
        }
    }
    return out;
}

inline std::string step_prefix(std::size_t i) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "step.%03zu.", i + 1);
    return buf;
}

} // namespace detail

/// Flat `key = value` document, keys sorted, no timings.
inline std::string machine_report(const Report& r) {
    std::map<std::string, std::string> kv;
    kv["scenario"] = r.scenario;
    kv["mode"] = r.mode;
    kv["steps"] = std::to_string(r.entries.size());
    kv["steps.passed"] = std::to_string(r.count_passed());
    kv["summary"] = r.passed() ? "pass" : "fail";
    for (std::size_t i = 0; i < r.entries.size(); ++i) {
        const auto& e = r.entries[i];
        const std::string p = detail::step_prefix(i);
        kv[p + "name"] = e.step.name;
        kv[p + "passed"] = e.step.passed ? "true" : "false";
        kv[p + "mandatory"] = e.mandatory ? "true" : "false";
        kv[p + "citation"] = e.step.citation;
        kv[p + "detail"] = e.step.detail;
        kv[p + "witness"] = e.step.witness;
        for (const auto& [k, v] : e.step.data) kv[p + "data." + k] = v;
    }
    std::string out;
    for (const auto& [k, v] : kv) out += k + " = " + detail::escape_value(v) + "\n";
    return out;
}

inline std::string human_report(const Report& r) {
    std::ostringstream out;
    out << "scenario " << r.scenario;
    if (!r.title.empty()) out << ": " << r.title;
    out << "\nmode " << r.mode << "\n";
    std::size_t width = 0;
    for (const auto& e : r.entries) width = std::max(width, e.step.name.size());
    for (const auto& e : r.entries) {
        out << (e.step.passed ? "  PASS  " : (e.mandatory ? "  FAIL  " : "  note  ")) << e.step.name
            << std::string(width - e.step.name.size() + 2, ' ');
        char t[32];
        std::snprintf(t, sizeof t, "%9.1f ms", e.millis);
        out << t << "  " << e.step.citation << "\n";
        if (!e.step.detail.empty()) out << std::string(10, ' ') << e.step.detail << "\n";
        if (!e.step.passed && !e.step.witness.empty()) out << std::string(10, ' ') << "witness: " << e.step.witness << "\n";
    }
    out << "summary " << (r.passed() ? "PASS" : "FAIL") << " (" << r.count_passed() << "/" << r.entries.size()
        << " steps passed)\n";
    return out.str();
}

} // namespace chow::verifier
