#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <vector>

namespace chow {

/// Exponent vector, one entry per ring variable.
struct Monomial {
    std::vector<std::uint32_t> exps;

    Monomial() = default;
    explicit Monomial(std::size_t nvars) : exps(nvars, 0) {}
    explicit Monomial(std::vector<std::uint32_t> e) : exps(std::move(e)) {}

    std::size_t size() const noexcept { return exps.size(); }
    std::uint32_t operator[](std::size_t i) const { return exps[i]; }
    std::uint32_t& operator[](std::size_t i) { return exps[i]; }

    std::uint64_t degree() const {
        return std::accumulate(exps.begin(), exps.end(), std::uint64_t{0});
    }

    bool divides(const Monomial& other) const {
        for (std::size_t i = 0; i < exps.size(); ++i)
            if (exps[i] > other.exps[i]) return false;
        return true;
    }

    friend Monomial operator*(const Monomial& a, const Monomial& b) {
        Monomial r(a.size());
        for (std::size_t i = 0; i < a.size(); ++i) r.exps[i] = a.exps[i] + b.exps[i];
        return r;
    }

    /// a / b, assuming b divides a.
    friend Monomial operator/(const Monomial& a, const Monomial& b) {
        Monomial r(a.size());
        for (std::size_t i = 0; i < a.size(); ++i) r.exps[i] = a.exps[i] - b.exps[i];
        return r;
    }

    friend bool operator==(const Monomial&, const Monomial&) = default;
};

/// Graded reverse-lexicographic order as a "greater than" predicate, so that
/// ordered containers iterate from the leading monomial down.
struct GrevlexGreater {
    bool operator()(const Monomial& a, const Monomial& b) const {
        const auto da = a.degree(), db = b.degree();
        if (da != db) return da > db;
        for (std::size_t i = a.size(); i-- > 0;)
            if (a.exps[i] != b.exps[i]) return a.exps[i] < b.exps[i];
        return false;
    }
};

struct MonomialHash {
    std::size_t operator()(const Monomial& m) const noexcept {
        std::size_t h = 1469598103934665603ull;
        for (auto e : m.exps) h = (h ^ e) * 1099511628211ull;
        return h;
    }
};

/// All monomials of exact total degree `degree` in `nvars` variables, leading
/// (grevlex-largest) first. Count is C(degree + nvars - 1, nvars - 1).
inline std::vector<Monomial> enumerate_monomials(std::size_t nvars, std::size_t degree) {
    std::vector<Monomial> out;
    if (nvars == 0) {
        if (degree == 0) out.emplace_back(0);
        return out;
    }
    Monomial cur(nvars);
    std::function<void(std::size_t, std::uint32_t)> rec = [&](std::size_t i, std::uint32_t left) {
        if (i + 1 == nvars) {
            cur.exps[i] = left;
            out.push_back(cur);
            return;
        }
        for (std::uint32_t e = 0; e <= left; ++e) {
            cur.exps[i] = e;
            rec(i + 1, left - e);
        }
    };
    rec(0, static_cast<std::uint32_t>(degree));
    std::sort(out.begin(), out.end(), GrevlexGreater{});
    return out;
}

} // namespace chow
