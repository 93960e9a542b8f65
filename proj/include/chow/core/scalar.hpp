#pragma once

#include <gmpxx.h>

#include <string>

namespace chow {

using Integer = mpz_class;
/// Canonical rational: gcd(num, den) = 1, den > 0, zero is 0/1. Every value
/// produced by the library is canonicalized before it escapes.
using Rational = mpq_class;

inline Rational make_rational(const Integer& num, const Integer& den = 1) {
    Rational r(num, den);
    r.canonicalize();
    return r;
}

inline Integer gcd(const Integer& a, const Integer& b) {
    Integer g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

inline Integer lcm(const Integer& a, const Integer& b) {
    Integer l;
    mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return l;
}

/// Floor division, rounding toward minus infinity.
inline Integer floor_div(const Integer& a, const Integer& b) {
    Integer q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

struct ExtendedGcd {
    Integer g; // non-negative
    Integer s;
    Integer t; // s*a + t*b = g
};

inline ExtendedGcd xgcd(const Integer& a, const Integer& b) {
    ExtendedGcd r;
    mpz_gcdext(r.g.get_mpz_t(), r.s.get_mpz_t(), r.t.get_mpz_t(), a.get_mpz_t(),
               b.get_mpz_t());
    return r;
}

inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

inline std::string to_string(const Integer& z) { return z.get_str(); }

inline std::string to_string(const Rational& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

inline bool is_probable_prime(const Integer& p) {
    return p > 1 && mpz_probab_prime_p(p.get_mpz_t(), 30) > 0;
}

/// Exact square root if `n` is a perfect square.
inline bool exact_sqrt(const Integer& n, Integer& root) {
    if (n < 0) return false;
    if (mpz_perfect_square_p(n.get_mpz_t()) == 0) return false;
    mpz_sqrt(root.get_mpz_t(), n.get_mpz_t());
    return true;
}

} // namespace chow
