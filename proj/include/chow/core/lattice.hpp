#pragma once

#include "chow/core/error.hpp"
#include "chow/core/matrix.hpp"
#include "chow/core/scalar.hpp"

#include <optional>
#include <vector>

namespace chow {

/// Row-style Hermite normal form with the unimodular transform that produced it.
///
/// Convention: only nonzero rows are kept; pivot columns strictly increase;
/// pivots are positive; entries above a pivot lie in [0, pivot). With these
/// rules the form is unique for a given row lattice.
struct HermiteForm {
    IntMatrix basis;     // r x n, the HNF rows
    IntMatrix transform; // r x m, basis = transform * input
    std::vector<std::size_t> pivots;
};

inline HermiteForm hermite_form(const IntMatrix& input) {
    const std::size_t m = input.rows();
    const std::size_t n = input.cols();
    IntMatrix a = input;
    IntMatrix u = IntMatrix::identity(m);

    auto combine = [&](std::size_t r, std::size_t i, const Integer& s, const Integer& t,
                       const Integer& x, const Integer& y) {
        // (row_r, row_i) <- (s*row_r + t*row_i, x*row_i - y*row_r)
        for (auto* mat : {&a, &u}) {
            for (std::size_t k = 0; k < mat->cols(); ++k) {
                const Integer vr = (*mat)(r, k);
                const Integer vi = (*mat)(i, k);
                (*mat)(r, k) = s * vr + t * vi;
                (*mat)(i, k) = x * vi - y * vr;
            }
        }
    };
    auto swap_rows = [&](std::size_t r, std::size_t i) {
        for (auto* mat : {&a, &u})
            for (std::size_t k = 0; k < mat->cols(); ++k) std::swap((*mat)(r, k), (*mat)(i, k));
    };
    auto add_multiple = [&](std::size_t target, std::size_t src, const Integer& q) {
        for (auto* mat : {&a, &u})
            for (std::size_t k = 0; k < mat->cols(); ++k) (*mat)(target, k) -= q * (*mat)(src, k);
    };

    HermiteForm out;
    std::size_t row = 0;
    for (std::size_t col = 0; col < n && row < m; ++col) {
        std::size_t first = row;
        while (first < m && sgn(a(first, col)) == 0) ++first;
        if (first == m) continue;
        if (first != row) swap_rows(row, first);
        for (std::size_t i = row + 1; i < m; ++i) {
            if (sgn(a(i, col)) == 0) continue;
            const Integer pa = a(row, col);
            const Integer pb = a(i, col);
            const auto e = xgcd(pa, pb);
            // det [[s, t], [-pb/g, pa/g]] = (s*pa + t*pb)/g = 1
            combine(row, i, e.s, e.t, pa / e.g, pb / e.g);
        }
        if (sgn(a(row, col)) < 0)
            for (auto* mat : {&a, &u})
                for (std::size_t k = 0; k < mat->cols(); ++k) (*mat)(row, k) = -(*mat)(row, k);
        for (std::size_t k = 0; k < row; ++k) {
            const Integer q = floor_div(a(k, col), a(row, col));
            if (sgn(q) != 0) add_multiple(k, row, q);
        }
        out.pivots.push_back(col);
        ++row;
    }
    out.basis = IntMatrix(row, n);
    out.transform = IntMatrix(row, m);
    for (std::size_t i = 0; i < row; ++i) {
        for (std::size_t k = 0; k < n; ++k) out.basis(i, k) = a(i, k);
        for (std::size_t k = 0; k < m; ++k) out.transform(i, k) = u(i, k);
    }
    return out;
}

inline IntMatrix hermite_normal_form(const IntMatrix& lattice) { return hermite_form(lattice).basis; }

/// Smallest n >= 1 with n*v in the row lattice, plus an integer combination of
/// the ORIGINAL rows that reproduces n*v.
struct LatticeMultiple {
    Integer n;
    std::vector<Integer> witness; // length = lattice.rows()
};

inline std::vector<Integer> combine_rows(const IntMatrix& lattice, const std::vector<Integer>& coeffs) {
    return lattice.left_apply(std::span<const Integer>(coeffs));
}

inline std::optional<LatticeMultiple> minimal_multiple_in_lattice(const IntMatrix& lattice,
                                                                  const std::vector<Integer>& v) {
    if (v.size() != lattice.cols())
        throw ShapeMismatch("target vector length differs from lattice dimension");
    const HermiteForm h = hermite_form(lattice);
    const std::size_t r = h.pivots.size();

    // Coordinates of v in the HNF basis: triangular solve over Q. The set of
    // valid n is the ideal generated by the lcm of the coordinate denominators.
    std::vector<Rational> c(r);
    for (std::size_t j = 0; j < r; ++j) {
        Rational acc = Rational(v[h.pivots[j]]);
        for (std::size_t k = 0; k < j; ++k) acc -= c[k] * Rational(h.basis(k, h.pivots[j]));
        c[j] = acc / Rational(h.basis(j, h.pivots[j]));
    }
    for (std::size_t col = 0; col < v.size(); ++col) {
        Rational acc = 0;
        for (std::size_t k = 0; k < r; ++k) acc += c[k] * Rational(h.basis(k, col));
        if (acc != Rational(v[col])) return std::nullopt;
    }
    bool all_zero = true;
    for (const auto& x : v) all_zero = all_zero && sgn(x) == 0;
    LatticeMultiple out;
    out.n = 1;
    for (const auto& q : c) out.n = lcm(out.n, q.get_den());
    std::vector<Integer> hnf_coeffs(r);
    for (std::size_t k = 0; k < r; ++k) {
        const Rational scaled = c[k] * Rational(out.n);
        hnf_coeffs[k] = scaled.get_num();
    }
    out.witness = h.transform.left_apply(std::span<const Integer>(hnf_coeffs));
    if (all_zero) out.witness.assign(lattice.rows(), Integer(0));
    return out;
}

} // namespace chow
