#pragma once

#include "chow/core/error.hpp"
#include "chow/core/scalar.hpp"
#include "chow/poly/monomial.hpp"
#include "chow/poly/ring.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace chow {

/// Sparse multivariate polynomial with exact rational coefficients over a
/// PolyRing. Terms are kept in grevlex order (leading term first), never with
/// a zero coefficient, and always reduced modulo the ring's domain relations.
class Polynomial {
public:
    using TermMap = std::map<Monomial, Rational, GrevlexGreater>;

    Polynomial() = default;
    explicit Polynomial(RingPtr ring) : ring_(std::move(ring)) {}

    static Polynomial constant(RingPtr ring, const Rational& c) {
        Polynomial p(std::move(ring));
        p.add_term(Monomial(p.ring_->size()), c);
        return p;
    }

    static Polynomial variable(RingPtr ring, const std::string& name) {
        Polynomial p(ring);
        Monomial m(ring->size());
        m[ring->index(name)] = 1;
        p.add_term(m, 1);
        return p;
    }

    static Polynomial monomial(RingPtr ring, const Monomial& m, const Rational& c = 1) {
        Polynomial p(std::move(ring));
        p.add_term(m, c);
        return p;
    }

    const RingPtr& ring() const noexcept { return ring_; }
    const TermMap& terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }
    std::size_t term_count() const noexcept { return terms_.size(); }

    bool is_constant() const {
        return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.degree() == 0);
    }

    Rational constant_term() const {
        if (!ring_) return 0;
        auto it = terms_.find(Monomial(ring_->size()));
        return it == terms_.end() ? Rational(0) : it->second;
    }

    /// Leading term in grevlex order. Undefined for the zero polynomial.
    const std::pair<const Monomial, Rational>& leading() const { return *terms_.begin(); }

    std::uint64_t total_degree() const {
        std::uint64_t d = 0;
        for (const auto& [m, c] : terms_) d = std::max(d, m.degree());
        return d;
    }

    std::uint32_t degree_in(std::size_t var) const {
        std::uint32_t d = 0;
        for (const auto& [m, c] : terms_) d = std::max(d, m[var]);
        return d;
    }

    std::uint32_t degree_in(const std::string& name) const { return degree_in(ring_->index(name)); }

    /// Degree restricted to the given variable indices, if homogeneous in them.
    std::optional<std::uint64_t> homogeneous_degree(const std::vector<std::size_t>& vars) const {
        std::optional<std::uint64_t> deg;
        for (const auto& [m, c] : terms_) {
            std::uint64_t d = 0;
            for (auto v : vars) d += m[v];
            if (deg && *deg != d) return std::nullopt;
            deg = d;
        }
        return deg;
    }

    std::optional<std::uint64_t> homogeneous_degree() const {
        std::vector<std::size_t> all(ring_->size());
        for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
        return homogeneous_degree(all);
    }

    /// Indices of variables that actually occur.
    std::set<std::size_t> support() const {
        std::set<std::size_t> s;
        for (const auto& [m, c] : terms_)
            for (std::size_t i = 0; i < m.size(); ++i)
                if (m[i]) s.insert(i);
        return s;
    }

    bool uses(const std::string& name) const {
        auto i = ring_->find(name);
        return i && support().count(*i) > 0;
    }

    /// Adds c * m, reducing m modulo the domain relations first.
    void add_term(const Monomial& m, Rational c) {
        if (sgn(c) == 0) return;
        c.canonicalize();
        if (ring_->domain() == Domain::rationals) {
            accumulate(m, c);
            return;
        }
        reduce_and_accumulate(m, c);
    }

    Polynomial& operator+=(const Polynomial& o) {
        check_ring(o);
        for (const auto& [m, c] : o.terms_) accumulate(m, c);
        return *this;
    }

    Polynomial& operator-=(const Polynomial& o) {
        check_ring(o);
        for (const auto& [m, c] : o.terms_) accumulate(m, -c);
        return *this;
    }

    Polynomial& operator*=(const Rational& s) {
        if (sgn(s) == 0) {
            terms_.clear();
            return *this;
        }
        for (auto& [m, c] : terms_) c *= s;
        return *this;
    }

    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    friend Polynomial operator*(Polynomial a, const Rational& s) { return a *= s; }
    friend Polynomial operator*(const Rational& s, Polynomial a) { return a *= s; }

    Polynomial operator-() const {
        Polynomial r = *this;
        for (auto& [m, c] : r.terms_) c = -c;
        return r;
    }

    friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
        a.check_ring(b);
        Polynomial r(a.ring_);
        for (const auto& [ma, ca] : a.terms_)
            for (const auto& [mb, cb] : b.terms_) r.add_term(ma * mb, ca * cb);
        return r;
    }

    Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }

    Polynomial pow(std::uint32_t e) const {
        Polynomial result = constant(ring_, 1);
        Polynomial base = *this;
        while (e) {
            if (e & 1) result *= base;
            e >>= 1;
            if (e) base *= base;
        }
        return result;
    }

    friend bool operator==(const Polynomial& a, const Polynomial& b) {
        return a.terms_ == b.terms_;
    }

    /// Coefficient of var^k, as a polynomial in the remaining variables.
    Polynomial coefficient_of(std::size_t var, std::uint32_t k) const {
        Polynomial r(ring_);
        for (const auto& [m, c] : terms_) {
            if (m[var] != k) continue;
            Monomial mm = m;
            mm[var] = 0;
            r.accumulate(mm, c);
        }
        return r;
    }

    /// Moves the polynomial into another ring by variable name. Variables of
    /// this polynomial missing from `target` raise DomainMismatch.
    Polynomial into(const RingPtr& target) const {
        std::vector<std::size_t> map(ring_->size(), SIZE_MAX);
        for (auto i : support()) {
            auto j = target->find(ring_->name(i));
            if (!j) throw DomainMismatch("variable " + ring_->name(i) + " not in target ring");
            map[i] = *j;
        }
        if (ring_->domain() != Domain::rationals && target->domain() == Domain::rationals) {
            for (auto i : support())
                if (ring_->is_generator(i))
                    throw DomainMismatch("generator " + ring_->name(i) + " has no image over Q");
        }
        Polynomial r(target);
        for (const auto& [m, c] : terms_) {
            Monomial mm(target->size());
            for (std::size_t i = 0; i < m.size(); ++i)
                if (m[i]) mm[map[i]] = m[i];
            r.add_term(mm, c);
        }
        return r;
    }

    std::string to_string() const {
        if (terms_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (const auto& [m, c] : terms_) {
            Rational mag = abs(c);
            if (first) {
                if (sgn(c) < 0) os << '-';
            } else {
                os << (sgn(c) < 0 ? " - " : " + ");
            }
            first = false;
            bool wrote = false;
            if (mag != 1 || m.degree() == 0) {
                os << chow::to_string(mag);
                wrote = true;
            }
            for (std::size_t i = 0; i < m.size(); ++i) {
                if (!m[i]) continue;
                os << (wrote ? "*" : "") << ring_->name(i);
                if (m[i] > 1) os << '^' << m[i];
                wrote = true;
            }
        }
        return os.str();
    }

    friend std::ostream& operator<<(std::ostream& os, const Polynomial& p) { return os << p.to_string(); }

private:
    void check_ring(const Polynomial& o) const {
        if (ring_ != o.ring_ && !(ring_ && o.ring_ && ring_->same_as(*o.ring_)))
            throw DomainMismatch("polynomials live in different rings");
    }

    void accumulate(const Monomial& m, const Rational& c) {
        auto [it, inserted] = terms_.try_emplace(m, c);
        if (!inserted) {
            it->second += c;
            if (sgn(it->second) == 0) terms_.erase(it);
        }
    }

    // Rewrite rules: a^3 -> -lambda and w^3 -> 1, w^2 -> -1 - w. They act on
    // disjoint variables, so applying them in one pass gives the normal form.
    void reduce_and_accumulate(Monomial m, Rational c) {
        if (auto a = ring_->a_index()) {
            const std::uint32_t q = m[*a] / 3;
            if (q) {
                m[*a] %= 3;
                m[*ring_->lambda_index()] += q;
                if (q % 2) c = -c;
            }
        }
        if (auto w = ring_->w_index()) {
            m[*w] %= 3;
            if (m[*w] == 2) {
                m[*w] = 0;
                accumulate(m, -c);
                m[*w] = 1;
                accumulate(m, -c);
                return;
            }
        }
        accumulate(m, c);
    }

    RingPtr ring_;
    TermMap terms_;
};

using SparsePoly = Polynomial;

/// Formal partial derivative. Differentiating by a domain generator (w, a) or,
/// in the tower, by lambda (a depends on it) is refused.
inline Polynomial partial_derivative(const Polynomial& f, const std::string& var) {
    const auto& ring = f.ring();
    const std::size_t v = ring->index(var);
    if (ring->is_generator(v) || (ring->lambda_index() && *ring->lambda_index() == v))
        throw DomainMismatch("cannot differentiate by domain symbol " + var);
    Polynomial r(ring);
    for (const auto& [m, c] : f.terms()) {
        if (!m[v]) continue;
        Monomial mm = m;
        --mm[v];
        r.add_term(mm, c * Rational(m[v]));
    }
    return r;
}

/// Gradient with respect to the named variables.
inline std::vector<Polynomial> gradient(const Polynomial& f, const std::vector<std::string>& vars) {
    std::vector<Polynomial> g;
    g.reserve(vars.size());
    for (const auto& v : vars) g.push_back(partial_derivative(f, v));
    return g;
}

/// Substitution `var -> image`; images live in `target`. Variables of f not in
/// the assignment map to the same-named variable of the target ring, and raise
/// DomainMismatch if there is none.
inline Polynomial substitute(const Polynomial& f, const std::map<std::string, Polynomial>& assignment,
                             const RingPtr& target) {
    const auto& src = *f.ring();
    std::vector<std::optional<Polynomial>> images(src.size());
    for (const auto& [name, img] : assignment) {
        auto i = src.find(name);
        if (!i) continue;
        if (!img.ring()->same_as(*target))
            throw DomainMismatch("image of " + name + " is not in the target ring");
        images[*i] = img;
    }
    for (auto i : f.support()) {
        if (images[i]) continue;
        if (src.is_generator(i) && target->domain() == Domain::rationals)
            throw DomainMismatch("generator " + src.name(i) + " has no image over Q");
        if (!target->find(src.name(i)))
            throw DomainMismatch("no image for variable " + src.name(i));
        images[i] = Polynomial::variable(target, src.name(i));
    }
    std::vector<std::unordered_map<std::uint32_t, Polynomial>> powers(src.size());
    auto power = [&](std::size_t i, std::uint32_t e) -> const Polynomial& {
        auto it = powers[i].find(e);
        if (it != powers[i].end()) return it->second;
        return powers[i].emplace(e, images[i]->pow(e)).first->second;
    };
    Polynomial r(target);
    for (const auto& [m, c] : f.terms()) {
        Polynomial t = Polynomial::constant(target, c);
        for (std::size_t i = 0; i < m.size(); ++i)
            if (m[i]) t *= power(i, m[i]);
        r += t;
    }
    return r;
}

/// Substitution within the same ring.
inline Polynomial substitute(const Polynomial& f, const std::map<std::string, Polynomial>& assignment) {
    return substitute(f, assignment, f.ring());
}

/// Replaces named variables by rational constants.
inline Polynomial evaluate(const Polynomial& f, const std::map<std::string, Rational>& values) {
    std::map<std::string, Polynomial> a;
    for (const auto& [k, v] : values)
        if (f.ring()->find(k)) a.emplace(k, Polynomial::constant(f.ring(), v));
    return substitute(f, a);
}

/// Failed exact division. Carries the nonzero remainder as a witness.
class NotDivisible : public Error {
public:
    NotDivisible(const Polynomial& f, const Polynomial& g, Polynomial remainder)
        : Error("NotDivisible", "(" + f.to_string() + ") / (" + g.to_string() +
                                    ") leaves remainder " + remainder.to_string()),
          remainder_(std::move(remainder)) {}

    const Polynomial& remainder() const noexcept { return remainder_; }

private:
    Polynomial remainder_;
};

/// q with q * g == f exactly, or NotDivisible with the remainder of the
/// grevlex division algorithm. Never approximate.
inline Polynomial exact_divide(const Polynomial& f, const Polynomial& g) {
    if (g.is_zero()) throw DivisionByZero("division by the zero polynomial");
    if (!f.ring()->same_as(*g.ring())) throw DomainMismatch("division across rings");
    const auto& ring = f.ring();
    // Division runs with the domain symbols treated as free variables; the
    // final product check below restores the domain relations.
    Polynomial::TermMap rem = f.terms();
    Polynomial::TermMap quot;
    Polynomial remainder(ring);
    const auto& [lm, lc] = g.leading();
    while (!rem.empty()) {
        auto [m, c] = *rem.begin();
        if (!lm.divides(m)) {
            remainder.add_term(m, c);
            rem.erase(rem.begin());
            continue;
        }
        const Monomial qm = m / lm;
        const Rational qc = c / lc;
        quot[qm] += qc;
        for (const auto& [gm, gc] : g.terms()) {
            Monomial pm = qm * gm;
            auto [it, inserted] = rem.try_emplace(pm, -qc * gc);
            if (!inserted) {
                it->second -= qc * gc;
                if (sgn(it->second) == 0) rem.erase(it);
            }
        }
    }
    Polynomial q(ring);
    for (const auto& [m, c] : quot) q.add_term(m, c);
    if (!remainder.is_zero()) throw NotDivisible(f, g, remainder);
    const Polynomial check = f - q * g;
    if (!check.is_zero()) throw NotDivisible(f, g, check);
    return q;
}

} // namespace chow
