#pragma once

#include "chow/core/error.hpp"
#include "chow/core/scalar.hpp"
#include "chow/poly/polynomial.hpp"

#include <algorithm>
#include <vector>

namespace chow {

/// Dense univariate polynomial over Q, coefficients low degree first.
/// The zero polynomial is the empty vector.
struct UniPoly {
    std::vector<Rational> c;

    UniPoly() = default;
    explicit UniPoly(std::vector<Rational> coeffs) : c(std::move(coeffs)) { trim(); }

    void trim() {
        while (!c.empty() && sgn(c.back()) == 0) c.pop_back();
    }
    bool is_zero() const { return c.empty(); }
    int degree() const { return static_cast<int>(c.size()) - 1; }
    const Rational& lead() const { return c.back(); }

    Rational operator()(const Rational& x) const {
        Rational acc = 0;
        for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
        return acc;
    }

    friend bool operator==(const UniPoly&, const UniPoly&) = default;
};

inline UniPoly derivative(const UniPoly& p) {
    std::vector<Rational> d;
    for (std::size_t i = 1; i < p.c.size(); ++i) d.push_back(p.c[i] * Rational(static_cast<long>(i)));
    return UniPoly(std::move(d));
}

struct UniDivision {
    UniPoly quotient;
    UniPoly remainder;
};

inline UniDivision divide(const UniPoly& a, const UniPoly& b) {
    if (b.is_zero()) throw DivisionByZero("univariate division by zero");
    std::vector<Rational> r = a.c;
    const int db = b.degree();
    std::vector<Rational> q(std::max(0, a.degree() - db + 1));
    for (int k = a.degree() - db; k >= 0; --k) {
        const Rational f = r[k + db] / b.lead();
        q[k] = f;
        if (sgn(f) == 0) continue;
        for (int j = 0; j <= db; ++j) r[k + j] -= f * b.c[j];
    }
    return {UniPoly(std::move(q)), UniPoly(std::move(r))};
}

inline UniPoly monic(UniPoly p) {
    if (p.is_zero()) return p;
    const Rational l = p.lead();
    for (auto& x : p.c) x /= l;
    return p;
}

inline UniPoly gcd(UniPoly a, UniPoly b) {
    while (!b.is_zero()) {
        UniPoly r = divide(a, b).remainder;
        a = std::move(b);
        b = std::move(r);
    }
    return monic(std::move(a));
}

/// Square-free decomposition (Yun): p = lead * prod_i f_i^i, each f_i monic,
/// square-free and pairwise coprime. Entry i-1 holds f_i.
inline std::vector<UniPoly> squarefree_decomposition(const UniPoly& p) {
    std::vector<UniPoly> out;
    if (p.degree() < 1) return out;
    UniPoly a = monic(p);
    UniPoly d = derivative(a);
    UniPoly g = gcd(a, d);
    UniPoly b = divide(a, g).quotient;
    UniPoly c = divide(d, g).quotient;
    UniPoly dd = [&] {
        UniPoly db = derivative(b);
        std::vector<Rational> v(std::max(c.c.size(), db.c.size()));
        for (std::size_t i = 0; i < v.size(); ++i)
            v[i] = (i < c.c.size() ? c.c[i] : Rational(0)) - (i < db.c.size() ? db.c[i] : Rational(0));
        return UniPoly(std::move(v));
    }();
    while (b.degree() > 0) {
        UniPoly f = gcd(b, dd);
        out.push_back(f);
        b = divide(b, f).quotient;
        c = divide(dd, f).quotient;
        UniPoly db = derivative(b);
        std::vector<Rational> v(std::max(c.c.size(), db.c.size()));
        for (std::size_t i = 0; i < v.size(); ++i)
            v[i] = (i < c.c.size() ? c.c[i] : Rational(0)) - (i < db.c.size() ? db.c[i] : Rational(0));
        dd = UniPoly(std::move(v));
    }
    while (!out.empty() && out.back().degree() == 0) out.pop_back();
    return out;
}

namespace detail {

inline std::vector<Integer> positive_divisors(Integer n) {
    if (n < 0) n = -n;
    std::vector<Integer> small, large;
    for (Integer d = 1; d * d <= n; ++d) {
        if (n % d != 0) continue;
        small.push_back(d);
        if (d * d != n) large.push_back(n / d);
    }
    small.insert(small.end(), large.rbegin(), large.rend());
    return small;
}

} // namespace detail

struct RationalRoot {
    Rational value;
    unsigned multiplicity;
};

/// Rational roots with multiplicity, in increasing order, and the cofactor
/// left after dividing out every rational linear factor.
struct RationalRootSplit {
    std::vector<RationalRoot> roots;
    UniPoly cofactor;
};

inline RationalRootSplit rational_roots(const UniPoly& p) {
    if (p.is_zero()) throw DivisionByZero("roots of the zero polynomial");
    RationalRootSplit out;
    UniPoly rest = p;
    // Candidates from the rational root theorem on the integer-scaled polynomial.
    auto candidates = [](const UniPoly& q) {
        Integer den = 1;
        for (const auto& x : q.c) den = lcm(den, x.get_den());
        std::vector<Integer> z;
        for (const auto& x : q.c) z.push_back(x.get_num() * (den / x.get_den()));
        std::size_t low = 0;
        while (low < z.size() && sgn(z[low]) == 0) ++low;
        std::vector<Rational> cand;
        if (low > 0) cand.emplace_back(0);
        if (low + 1 >= z.size()) return cand;
        for (const auto& num : detail::positive_divisors(z[low]))
            for (const auto& d : detail::positive_divisors(z.back())) {
                cand.push_back(make_rational(num, d));
                cand.push_back(make_rational(-num, d));
            }
        std::sort(cand.begin(), cand.end());
        cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
        return cand;
    };
    for (const auto& r : candidates(rest)) {
        unsigned mult = 0;
        while (rest.degree() >= 1 && sgn(rest(r)) == 0) {
            rest = divide(rest, UniPoly({-r, Rational(1)})).quotient;
            ++mult;
        }
        if (mult) out.roots.push_back({r, mult});
    }
    out.cofactor = rest;
    return out;
}

/// Univariate view of a polynomial that only involves `var`.
inline UniPoly to_univariate(const Polynomial& f, std::size_t var) {
    std::vector<Rational> c(f.degree_in(var) + 1);
    for (const auto& [m, coeff] : f.terms()) {
        for (std::size_t i = 0; i < m.size(); ++i)
            if (i != var && m[i]) throw DomainMismatch("polynomial is not univariate in " + f.ring()->name(var));
        c[m[var]] += coeff;
    }
    return UniPoly(std::move(c));
}

} // namespace chow
