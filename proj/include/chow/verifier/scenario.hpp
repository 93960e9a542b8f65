#pragma once

#include "chow/characters/characters.hpp"
#include "chow/core/error.hpp"
#include "chow/curves/cycles.hpp"
#include "chow/pencil/pencil.hpp"
#include "chow/poly/parse.hpp"

#include <cctype>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace chow::verifier {

/// One line of the [checks] section: a check name and key=value options.
struct CheckSpec {
    std::string name;
    std::map<std::string, std::string> options;
    std::size_t line = 0;

    bool has(const std::string& k) const { return options.count(k) != 0; }
    const std::string& get(const std::string& k) const { return options.at(k); }
    std::string get_or(const std::string& k, const std::string& fallback) const {
        auto it = options.find(k);
        return it == options.end() ? fallback : it->second;
    }
};

struct CurveSpec {
    PlaneCurve curve;
    std::vector<std::string> lines; // hyperplanes used for relations, in order
};

/// Parsed scenario. Polynomials live in one ring over the declared variables;
/// the [pencil] block lives in the pencil's own tower ring.
struct ScenarioFile {
    std::string name;
    std::string title;
    std::string form_name = "F";
    std::optional<std::uint64_t> prime; // default certificate mode; none = exact

    std::vector<std::string> coords, parameters, auxiliary;
    RingPtr ring;
    std::vector<std::pair<std::string, Polynomial>> polynomials;
    std::vector<std::pair<std::string, CurveSpec>> curves;
    PointLabels points;
    std::optional<DiagonalAutomorphism> automorphism;
    std::vector<Integer> tau;
    std::optional<PencilScenario> pencil;
    std::vector<CheckSpec> checks;

    std::shared_ptr<const HypersurfaceRing> hypersurface; // built lazily from form_name

    const Polynomial* find_polynomial(const std::string& n) const {
        for (const auto& [k, p] : polynomials)
            if (k == n) return &p;
        return nullptr;
    }

    const CurveSpec* find_curve(const std::string& n) const {
        for (const auto& [k, c] : curves)
            if (k == n) return &c;
        return nullptr;
    }

    const RationalPoint* find_point(const std::string& n) const {
        for (const auto& [k, p] : points)
            if (k == n) return &p;
        return nullptr;
    }

    Polynomial parse(const std::string& text, std::size_t line = 1, std::size_t column = 1) const;

    const HypersurfaceRing& jacobian() {
        if (!hypersurface) {
            const Polynomial* f = find_polynomial(form_name);
            if (!f) throw DomainMismatch("scenario declares no polynomial named " + form_name);
            hypersurface = std::make_shared<const HypersurfaceRing>(*f, coords);
        }
        return *hypersurface;
    }
};

namespace detail {

inline std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

inline std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(trim(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(trim(cur));
    return out;
}

inline std::vector<std::string> words(const std::string& s) {
    std::istringstream in(s);
    std::vector<std::string> out;
    for (std::string w; in >> w;) out.push_back(w);
    return out;
}

inline bool is_identifier(const std::string& s) {
    if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
    for (char c : s)
        if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) return false;
    return true;
}

/// Parses text in the ring extended by the names of earlier polynomials, then
/// substitutes those names away.
inline Polynomial parse_with_references(const std::string& text, const RingPtr& ring,
                                        const std::vector<std::pair<std::string, Polynomial>>& defined,
                                        std::size_t line, std::size_t column) {
    if (defined.empty()) return parse_polynomial(text, ring, line, column);
    std::vector<std::string> names = ring->names();
    std::map<std::string, Polynomial> expand;
    for (const auto& [n, p] : defined) {
        names.push_back(n);
        expand.emplace(n, p);
    }
    RingPtr wide;
    switch (ring->domain()) {
    case Domain::rationals: wide = PolyRing::make(names); break;
    case Domain::adjoin_w: wide = PolyRing::adjoin_w(names, ring->name(*ring->w_index())); break;
    case Domain::tower:
        wide = PolyRing::tower(names, ring->name(*ring->w_index()), ring->name(*ring->a_index()),
                               ring->name(*ring->lambda_index()));
        break;
    }
    return substitute(parse_polynomial(text, wide, line, column), expand, ring);
}

inline std::size_t column_of(const std::string& raw, const std::string& piece) {
    const auto pos = raw.find(piece);
    return pos == std::string::npos ? 1 : pos + 1;
}

/// Splits a [checks] line into words, honouring double quotes in values.
inline std::vector<std::pair<std::string, std::size_t>> check_tokens(const std::string& raw, std::size_t line) {
    std::vector<std::pair<std::string, std::size_t>> out;
    std::size_t i = 0;
    while (i < raw.size()) {
        while (i < raw.size() && std::isspace(static_cast<unsigned char>(raw[i]))) ++i;
        if (i >= raw.size()) break;
        const std::size_t start = i;
        std::string tok;
        bool quoted = false;
        while (i < raw.size() && (quoted || !std::isspace(static_cast<unsigned char>(raw[i])))) {
            if (raw[i] == '"') {
                quoted = !quoted;
            } else {
                tok += raw[i];
            }
            ++i;
        }
        if (quoted) throw ParseError("unterminated quote", line, start + 1);
        out.emplace_back(tok, start + 1);
    }
    return out;
}

inline const std::map<std::string, std::set<std::string>>& check_catalogue() {
    // check name -> required options
    static const std::map<std::string, std::set<std::string>> table{
        {"invariance", {}},
        {"smooth", {}},
        {"hilbert", {"expect"}},
        {"pairing", {}},
        {"uniform-bound", {"b"}},
        {"green-gotzmann", {"a", "b", "g"}},
        {"map", {"a", "b"}},
        {"duality", {"a", "b"}},
        {"left-kernel", {"a", "b"}},
        {"hyperplane-section", {"curve", "surface", "hyperplane"}},
        {"cycle", {"curve", "line", "expect"}},
        {"order", {"curve", "points"}},
        {"common-order", {"curves", "points"}},
        {"multiplicity", {"curve", "point", "expect"}},
        {"parametrization", {"curve", "map"}},
        {"picard", {}},
        {"pencil", {}},
        {"degenerations", {}},
        {"tau", {}},
    };
    return table;
}

} // namespace detail

inline Polynomial ScenarioFile::parse(const std::string& text, std::size_t line, std::size_t column) const {
    return detail::parse_with_references(text, ring, polynomials, line, column);
}

/// Parameter assignments written as "t=1; t=2" (one sample per ';').
inline std::vector<std::map<std::string, Rational>> parse_samples(const std::string& text) {
    std::vector<std::map<std::string, Rational>> out;
    if (detail::trim(text).empty()) return out;
    for (const auto& sample : detail::split(text, ';')) {
        std::map<std::string, Rational> s;
        for (const auto& kv : detail::split(sample, ',')) {
            const auto eq = kv.find('=');
            if (eq == std::string::npos) throw DomainMismatch("sample '" + kv + "' is not name=value");
            Rational q;
            try {
                q = Rational(detail::trim(kv.substr(eq + 1)));
            } catch (const std::invalid_argument&) {
                throw DomainMismatch("sample value in '" + kv + "' is not rational");
            }
            if (q.get_den() == 0) throw DomainMismatch("zero denominator in '" + kv + "'");
            q.canonicalize();
            s[detail::trim(kv.substr(0, eq))] = q;
        }
        out.push_back(std::move(s));
    }
    return out;
}

class ScenarioParser {
public:
    explicit ScenarioParser(std::string text) : text_(std::move(text)) {}

    ScenarioFile parse() {
        std::istringstream in(text_);
        std::string raw;
        std::size_t line = 0;
        std::string section;
        while (std::getline(in, raw)) {
            ++line;
            if (!raw.empty() && raw.back() == '\r') raw.pop_back();
            const std::string body = strip_comment(raw);
            const std::string t = detail::trim(body);
            if (t.empty()) continue;
            if (t.front() == '[') {
                if (t.back() != ']') throw ParseError("unterminated section header", line, detail::column_of(raw, t));
                section = detail::trim(t.substr(1, t.size() - 2));
                if (!known_section(section)) throw ParseError("unknown section [" + section + "]", line, 2);
                if (section != "checks" && !seen_.insert(section).second)
                    throw ParseError("section [" + section + "] repeated", line, 1);
                continue;
            }
            if (section.empty()) throw ParseError("entry outside any section", line, 1);
            if (section == "checks") {
                check_line(raw, line);
                continue;
            }
            const auto eq = body.find('=');
            if (eq == std::string::npos) throw ParseError("expected 'key = value'", line, detail::column_of(raw, t));
            const std::string key = detail::trim(body.substr(0, eq));
            const std::string value = detail::trim(body.substr(eq + 1));
            std::size_t v = eq + 1;
            while (v < body.size() && std::isspace(static_cast<unsigned char>(body[v]))) ++v;
            const std::size_t vcol = v + 1;
            entry(section, key, value, line, vcol, raw);
        }
        finish();
        return std::move(s_);
    }

private:
    static std::string strip_comment(const std::string& raw) {
        bool quoted = false;
        for (std::size_t i = 0; i < raw.size(); ++i) {
            if (raw[i] == '"') quoted = !quoted;
            if (raw[i] == '#' && !quoted) return raw.substr(0, i);
        }
        return raw;
    }

    static bool known_section(const std::string& s) {
        static const std::set<std::string> k{"scenario", "variables", "polynomials", "curves", "points",
                                             "automorphism", "cycle", "pencil", "checks"};
        return k.count(s) != 0;
    }

    void need_ring(std::size_t line) {
        if (s_.ring) return;
        if (s_.coords.empty()) throw ParseError("[variables] must declare coords before use", line, 1);
        std::vector<std::string> names = s_.coords;
        names.insert(names.end(), s_.parameters.begin(), s_.parameters.end());
        names.insert(names.end(), s_.auxiliary.begin(), s_.auxiliary.end());
        std::set<std::string> uniq(names.begin(), names.end());
        if (uniq.size() != names.size()) throw ParseError("variable declared twice", line, 1);
        s_.ring = PolyRing::make(names);
    }

    Polynomial poly(const std::string& text, std::size_t line, std::size_t col) {
        need_ring(line);
        return s_.parse(text, line, col);
    }

    Integer integer(const std::string& w, std::size_t line, std::size_t col) {
        Integer z;
        if (w.empty() || z.set_str(w[0] == '+' ? w.substr(1) : w, 10) != 0)
            throw ParseError("expected an integer, got '" + w + "'", line, col);
        return z;
    }

    Rational rational(const std::string& w, std::size_t line, std::size_t col) {
        const auto slash = w.find('/');
        if (slash == std::string::npos) return Rational(integer(w, line, col));
        const Integer d = integer(w.substr(slash + 1), line, col);
        if (d == 0) throw ParseError("zero denominator", line, col);
        return make_rational(integer(w.substr(0, slash), line, col), d);
    }

    void entry(const std::string& section, const std::string& key, const std::string& value, std::size_t line,
               std::size_t vcol, const std::string& raw) {
        if (key.empty()) throw ParseError("missing key", line, 1);
        if (section == "scenario") {
            if (key == "name") {
                s_.name = value;
            } else if (key == "title") {
                s_.title = value;
            } else if (key == "form") {
                s_.form_name = value;
            } else if (key == "prime") {
                if (value == "exact") {
                    s_.prime.reset();
                } else {
                    const Integer p = integer(value, line, vcol);
                    if (p < 2 || !p.fits_ulong_p() || !is_probable_prime(p))
                        throw ParseError("prime must be a machine-size prime", line, vcol);
                    s_.prime = p.get_ui();
                }
            } else {
                throw ParseError("unknown key '" + key + "' in [scenario]", line, 1);
            }
        } else if (section == "variables") {
            if (s_.ring) throw ParseError("[variables] must precede all polynomial data", line, 1);
            auto list = detail::words(value);
            for (const auto& w : list)
                if (!detail::is_identifier(w)) throw ParseError("bad variable name '" + w + "'", line, detail::column_of(raw, w));
            if (key == "coords") {
                s_.coords = list;
            } else if (key == "parameters") {
                s_.parameters = list;
            } else if (key == "auxiliary") {
                s_.auxiliary = list;
            } else {
                throw ParseError("unknown key '" + key + "' in [variables]", line, 1);
            }
        } else if (section == "polynomials") {
            if (!detail::is_identifier(key)) throw ParseError("bad polynomial name '" + key + "'", line, 1);
            need_ring(line);
            if (s_.ring->find(key) || s_.find_polynomial(key))
                throw ParseError("name '" + key + "' already in use", line, 1);
            s_.polynomials.emplace_back(key, poly(value, line, vcol));
        } else if (section == "curves") {
            curve(key, value, line, vcol, raw);
        } else if (section == "points") {
            need_ring(line);
            std::vector<Rational> c;
            for (const auto& w : detail::words(value)) c.push_back(rational(w, line, detail::column_of(raw, w)));
            if (c.size() != s_.coords.size())
                throw ParseError("point needs " + std::to_string(s_.coords.size()) + " coordinates", line, vcol);
            if (std::all_of(c.begin(), c.end(), [](const Rational& x) { return sgn(x) == 0; }))
                throw ParseError("the zero vector is not a projective point", line, vcol);
            s_.points.emplace_back(key, RationalPoint::normalized(c));
        } else if (section == "automorphism") {
            if (key == "modulus") {
                const Integer n = integer(value, line, vcol);
                if (n < 1 || !n.fits_ulong_p()) throw ParseError("modulus out of range", line, vcol);
                modulus_ = n.get_ui();
            } else if (key == "exponents") {
                exponents_.clear();
                for (const auto& w : detail::words(value)) {
                    const Integer e = integer(w, line, detail::column_of(raw, w));
                    if (!e.fits_slong_p()) throw ParseError("exponent out of range", line, detail::column_of(raw, w));
                    exponents_.push_back(e.get_si());
                }
                automorphism_line_ = line;
            } else {
                throw ParseError("unknown key '" + key + "' in [automorphism]", line, 1);
            }
        } else if (section == "cycle") {
            if (key != "tau") throw ParseError("unknown key '" + key + "' in [cycle]", line, 1);
            s_.tau.clear();
            for (const auto& w : detail::words(value)) s_.tau.push_back(integer(w, line, detail::column_of(raw, w)));
        } else if (section == "pencil") {
            pencil(key, value, line, vcol);
        }
    }

    void curve(const std::string& key, const std::string& value, std::size_t line, std::size_t vcol,
               const std::string& raw) {
        // Z = <form> ; plane a b c ; lines l1 l2 ...
        need_ring(line);
        if (!detail::is_identifier(key)) throw ParseError("bad curve name '" + key + "'", line, 1);
        if (s_.find_curve(key)) throw ParseError("curve '" + key + "' declared twice", line, 1);
        const auto parts = detail::split(value, ';');
        CurveSpec c;
        c.curve.name = key;
        c.curve.ambient = s_.coords;
        c.curve.form = poly(parts[0], line, vcol);
        for (std::size_t i = 1; i < parts.size(); ++i) {
            auto w = detail::words(parts[i]);
            if (w.empty()) continue;
            const std::string tag = w.front();
            w.erase(w.begin());
            for (const auto& v : w)
                if (std::find(s_.coords.begin(), s_.coords.end(), v) == s_.coords.end())
                    throw ParseError("'" + v + "' is not a coordinate", line, detail::column_of(raw, v));
            if (tag == "plane") {
                c.curve.plane = w;
            } else if (tag == "lines") {
                c.lines = w;
            } else {
                throw ParseError("expected 'plane' or 'lines', got '" + tag + "'", line, detail::column_of(raw, tag));
            }
        }
        if (c.curve.plane.size() != 3) throw ParseError("curve needs 'plane' with three coordinates", line, vcol);
        for (const auto& l : c.lines)
            if (std::find(c.curve.plane.begin(), c.curve.plane.end(), l) == c.curve.plane.end())
                throw ParseError("line '" + l + "' is not a coordinate of the plane", line, detail::column_of(raw, l));
        s_.curves.emplace_back(key, std::move(c));
    }

    void pencil(const std::string& key, const std::string& value, std::size_t line, std::size_t vcol) {
        if (key == "preset") {
            if (value != "standard") throw ParseError("unknown pencil preset '" + value + "'", line, vcol);
            s_.pencil = PencilScenario::standard();
            pencil_helpers_.clear();
            return;
        }
        if (!s_.pencil) throw ParseError("[pencil] must start with 'preset = standard'", line, 1);
        auto& p = *s_.pencil;
        auto one = [&](const std::string& text, std::size_t col) {
            return detail::parse_with_references(text, p.ring, pencil_helpers_, line, col);
        };
        auto many = [&](std::size_t n) {
            std::vector<Polynomial> out;
            const auto parts = detail::split(value, ',');
            if (n && parts.size() != n) throw ParseError("expected " + std::to_string(n) + " comma-separated entries", line, vcol);
            for (const auto& part : parts) out.push_back(one(part, vcol));
            return out;
        };
        if (key.rfind("let ", 0) == 0) {
            const std::string name = detail::trim(key.substr(4));
            if (!detail::is_identifier(name) || p.ring->find(name))
                throw ParseError("bad helper name '" + name + "'", line, 5);
            pencil_helpers_.emplace_back(name, one(value, vcol));
        } else if (key == "family") {
            p.family = one(value, vcol);
        } else if (key == "blowup") {
            const auto v = many(p.surface_coords.size());
            for (std::size_t i = 0; i < v.size(); ++i) p.blowup[p.surface_coords[i]] = v[i];
        } else if (key == "blowup_factor") {
            p.blowup_factor = one(value, vcol);
        } else if (key == "reduced") {
            p.reduced = one(value, vcol);
            p.declared_partials.clear();
        } else if (key == "partials") {
            p.declared_partials = many(p.plane_coords.size());
        } else if (key == "concurrency") {
            const auto v = many(p.plane_coords.size());
            std::size_t nz = v.size();
            for (std::size_t i = v.size(); i-- > 0;)
                if (v[i].is_constant() && !v[i].is_zero()) nz = i;
            if (nz == v.size()) throw ParseError("concurrency point needs a nonzero constant coordinate", line, vcol);
            p.concurrency = {v, nz};
        } else if (key == "divisors") {
            p.hyperelliptic_divisors = many(0);
        } else if (key == "hyperelliptic") {
            p.hyperelliptic = one(value, vcol);
        } else if (key == "lambda_numerator") {
            p.lambda_numerator = one(value, vcol);
        } else if (key == "lambda_denominator") {
            p.lambda_denominator = one(value, vcol);
        } else {
            throw ParseError("unknown key '" + key + "' in [pencil]", line, 1);
        }
    }

    void check_line(const std::string& raw, std::size_t line) {
        const auto toks = detail::check_tokens(strip_comment(raw), line);
        CheckSpec c;
        c.name = toks.front().first;
        c.line = line;
        const auto& cat = detail::check_catalogue();
        auto it = cat.find(c.name);
        if (it == cat.end()) throw UnknownCheck("line " + std::to_string(line) + ": unknown check '" + c.name + "'");
        for (std::size_t i = 1; i < toks.size(); ++i) {
            const auto& [tok, col] = toks[i];
            const auto eq = tok.find('=');
            if (eq == std::string::npos || eq == 0) throw ParseError("expected option=value", line, col);
            if (!c.options.emplace(tok.substr(0, eq), tok.substr(eq + 1)).second)
                throw ParseError("option '" + tok.substr(0, eq) + "' repeated", line, col);
        }
        for (const auto& req : it->second)
            if (!c.has(req)) throw ParseError("check '" + c.name + "' needs option '" + req + "'", line, 1);
        s_.checks.push_back(std::move(c));
    }

    void finish() {
        if (s_.name.empty()) throw ParseError("[scenario] must set name", 1, 1);
        if (!exponents_.empty() || modulus_) {
            if (!modulus_ || exponents_.empty())
                throw ParseError("[automorphism] needs modulus and exponents", automorphism_line_, 1);
            if (exponents_.size() != s_.coords.size())
                throw ParseError("one exponent per coordinate", automorphism_line_, 1);
            s_.automorphism = DiagonalAutomorphism(modulus_, exponents_);
        }
        // cross references are resolved here so that a bad name is an input error
        for (const auto& c : s_.checks) {
            auto curve = [&](const std::string& n) {
                if (!s_.find_curve(n)) throw ParseError("unknown curve '" + n + "'", c.line, 1);
            };
            auto point = [&](const std::string& n) {
                if (!s_.find_point(n)) throw ParseError("unknown point '" + n + "'", c.line, 1);
            };
            if (c.has("curve")) curve(c.get("curve"));
            if (c.has("curves"))
                for (const auto& n : detail::split(c.get("curves"), ',')) curve(n);
            if (c.has("point")) point(c.get("point"));
            if (c.has("points"))
                for (const auto& n : detail::split(c.get("points"), ',')) point(n);
            if (c.has("surface") && !s_.find_polynomial(c.get("surface")))
                throw ParseError("unknown polynomial '" + c.get("surface") + "'", c.line, 1);
            if ((c.name == "invariance" || c.name == "picard") && !s_.automorphism)
                throw ParseError("check '" + c.name + "' needs an [automorphism] section", c.line, 1);
            if ((c.name == "pencil" || c.name == "degenerations") && !s_.pencil)
                throw ParseError("check '" + c.name + "' needs a [pencil] section", c.line, 1);
            if (c.name == "tau" && s_.tau.empty() && !s_.pencil)
                throw ParseError("check 'tau' needs [cycle] tau", c.line, 1);
            if (c.name == "order" && detail::split(c.get("points"), ',').size() != 2)
                throw ParseError("order needs exactly two points", c.line, 1);
        }
        if (s_.pencil && !s_.tau.empty()) s_.pencil->tau = s_.tau;
    }

    std::string text_;
    ScenarioFile s_;
    std::set<std::string> seen_;
    unsigned long modulus_ = 0;
    std::vector<long> exponents_;
    std::size_t automorphism_line_ = 1;
    std::vector<std::pair<std::string, Polynomial>> pencil_helpers_;
};

inline ScenarioFile parse_scenario(std::string text) { return ScenarioParser(std::move(text)).parse(); }

} // namespace chow::verifier
