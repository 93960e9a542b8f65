#pragma once

#include "chow/core/error.hpp"
#include "chow/core/matrix.hpp"
#include "chow/core/scalar.hpp"

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace chow {

/// Default prime for modular rank certificates.
inline constexpr std::uint64_t kDefaultCertificatePrime = 1000003;

struct RankCertificate {
    enum class Mode { exact, modular };

    std::size_t rank = 0;
    Mode mode = Mode::exact;
    std::uint64_t prime = 0; // meaningful only in modular mode
    std::string note;

    bool is_exact() const noexcept { return mode == Mode::exact; }

    std::string describe() const {
        if (is_exact()) return "exact elimination";
        return "modular certificate p=" + std::to_string(prime);
    }
};

namespace detail {

using IntRow = std::vector<Integer>;

inline void make_primitive(IntRow& row) {
    Integer g = 0;
    for (const auto& x : row) {
        if (sgn(x) == 0) continue;
        g = gcd(g, x);
        if (g == 1) return;
    }
    if (g > 1)
        for (auto& x : row)
            if (sgn(x) != 0) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
}

inline std::size_t count_nonzeros(const IntRow& row) {
    return static_cast<std::size_t>(
        std::count_if(row.begin(), row.end(), [](const Integer& x) { return sgn(x) != 0; }));
}

// target <- (p/g) * target - (t/g) * pivot, where p = pivot[col], t = target[col].
inline void eliminate(IntRow& target, const IntRow& pivot, const std::vector<std::size_t>& pivot_nz,
                      std::size_t col) {
    const Integer g = gcd(pivot[col], target[col]);
    const Integer ps = pivot[col] / g;
    const Integer ts = target[col] / g;
    if (ps != 1)
        for (auto& x : target)
            if (sgn(x) != 0) x *= ps;
    for (std::size_t k : pivot_nz) target[k] -= ts * pivot[k];
    make_primitive(target);
}

struct IntegerEchelon {
    std::vector<IntRow> rows; // first pivots.size() rows carry the pivots
    std::vector<std::size_t> pivots;
};

// Fraction-free Gauss(-Jordan) elimination over Z. Every row update is an
// integer cross-multiplication followed by removal of the row content, so
// entries stay primitive and no rational arithmetic is needed. Rows whose
// pivot-column entry is already zero are never touched, which keeps sparse
// Jacobian matrices sparse. Pivot choice: fewest nonzeros, then smallest
// magnitude, then lowest index, so the result is deterministic.
inline IntegerEchelon integer_echelon(std::vector<IntRow> rows, std::size_t cols, bool reduced) {
    IntegerEchelon out;
    std::vector<std::size_t> nnz(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        make_primitive(rows[i]);
        nnz[i] = count_nonzeros(rows[i]);
    }
    std::size_t r = 0;
    std::vector<std::size_t> pivot_nz;
    for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
        std::size_t best = rows.size();
        for (std::size_t i = r; i < rows.size(); ++i) {
            if (sgn(rows[i][c]) == 0) continue;
            if (best == rows.size() || nnz[i] < nnz[best] ||
                (nnz[i] == nnz[best] &&
                 mpz_cmpabs(rows[i][c].get_mpz_t(), rows[best][c].get_mpz_t()) < 0))
                best = i;
        }
        if (best == rows.size()) continue;
        std::swap(rows[r], rows[best]);
        std::swap(nnz[r], nnz[best]);
        if (sgn(rows[r][c]) < 0)
            for (auto& x : rows[r]) x = -x;

        pivot_nz.clear();
        for (std::size_t k = 0; k < cols; ++k)
            if (sgn(rows[r][k]) != 0) pivot_nz.push_back(k);

        const std::size_t begin = reduced ? 0 : r + 1;
        for (std::size_t i = begin; i < rows.size(); ++i) {
            if (i == r || sgn(rows[i][c]) == 0) continue;
            eliminate(rows[i], rows[r], pivot_nz, c);
            nnz[i] = count_nonzeros(rows[i]);
        }
        out.pivots.push_back(c);
        ++r;
    }
    rows.resize(r);
    out.rows = std::move(rows);
    return out;
}

inline std::vector<IntRow> integer_rows(const ExactMatrix& m) {
    std::vector<IntRow> rows(m.rows(), IntRow(m.cols()));
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Integer den = 1;
        for (std::size_t j = 0; j < m.cols(); ++j) den = lcm(den, m(i, j).get_den());
        for (std::size_t j = 0; j < m.cols(); ++j) {
            const Rational& q = m(i, j);
            if (sgn(q) != 0) rows[i][j] = q.get_num() * (den / q.get_den());
        }
    }
    return rows;
}

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % p);
}

inline std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
    std::uint64_t r = 1 % p;
    while (e) {
        if (e & 1) r = mulmod(r, a, p);
        a = mulmod(a, a, p);
        e >>= 1;
    }
    return r;
}

inline std::uint64_t reduce_mod(const Integer& z, std::uint64_t p) {
    Integer r;
    mpz_fdiv_r_ui(r.get_mpz_t(), z.get_mpz_t(), p);
    return r.get_ui();
}

} // namespace detail

/// Reduced row echelon form over Q.
struct RowEchelon {
    ExactMatrix rows;                // rank x cols, pivot entries equal to 1
    std::vector<std::size_t> pivots; // pivot column of each row, increasing

    std::size_t rank() const noexcept { return pivots.size(); }
};

/// Reduced row echelon form of the row space of integer rows of length `cols`.
inline RowEchelon reduced_row_echelon(std::vector<std::vector<Integer>> rows, std::size_t cols) {
    auto ech = detail::integer_echelon(std::move(rows), cols, /*reduced=*/true);
    // Gauss-Jordan in integer_echelon leaves rows in pivot order already.
    RowEchelon out;
    out.pivots = ech.pivots;
    out.rows = ExactMatrix(ech.rows.size(), cols);
    for (std::size_t i = 0; i < ech.rows.size(); ++i) {
        const Integer& p = ech.rows[i][ech.pivots[i]];
        for (std::size_t j = 0; j < cols; ++j)
            if (sgn(ech.rows[i][j]) != 0) out.rows(i, j) = make_rational(ech.rows[i][j], p);
    }
    return out;
}

inline RowEchelon reduced_row_echelon(const ExactMatrix& m) {
    return reduced_row_echelon(detail::integer_rows(m), m.cols());
}

/// Rank over Q via fraction-free elimination. Deterministic; empty matrix has rank 0.
inline std::size_t rank(const ExactMatrix& m) {
    if (m.empty()) return 0;
    return detail::integer_echelon(detail::integer_rows(m), m.cols(), false).pivots.size();
}

inline std::size_t rank(const IntMatrix& m) {
    if (m.empty()) return 0;
    std::vector<detail::IntRow> rows(m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i) rows[i] = m.row_vector(i);
    return detail::integer_echelon(std::move(rows), m.cols(), false).pivots.size();
}

inline std::size_t rank(std::vector<std::vector<Integer>> rows, std::size_t cols) {
    if (rows.empty() || cols == 0) return 0;
    return detail::integer_echelon(std::move(rows), cols, false).pivots.size();
}

inline RankCertificate exact_rank_certificate(const ExactMatrix& m) {
    return {rank(m), RankCertificate::Mode::exact, 0, "exact fraction-free elimination"};
}

/// Basis of the right null space {k : m k = 0}, one vector per free column,
/// normalized to carry 1 in that free column.
inline std::vector<std::vector<Rational>> kernel_basis(const ExactMatrix& m) {
    std::vector<std::vector<Rational>> basis;
    if (m.cols() == 0) return basis;
    const RowEchelon ech = reduced_row_echelon(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto p : ech.pivots) is_pivot[p] = true;
    for (std::size_t f = 0; f < m.cols(); ++f) {
        if (is_pivot[f]) continue;
        std::vector<Rational> v(m.cols());
        v[f] = 1;
        for (std::size_t i = 0; i < ech.rank(); ++i) v[ech.pivots[i]] = -ech.rows(i, f);
        basis.push_back(std::move(v));
    }
    return basis;
}

namespace detail {

inline void check_prime(std::uint64_t p) {
    if (p < 2 || p >= (std::uint64_t{1} << 62) || !is_probable_prime(Integer(std::to_string(p))))
        throw BadPrime(std::to_string(p) + " is not a usable prime");
}

inline RankCertificate rank_mod_p(std::vector<std::vector<std::uint64_t>> a, std::size_t cols,
                                  std::uint64_t p) {
    const std::size_t nrows = a.size();
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < nrows; ++c) {
        std::size_t piv = r;
        while (piv < nrows && a[piv][c] == 0) ++piv;
        if (piv == nrows) continue;
        std::swap(a[r], a[piv]);
        const std::uint64_t inv = powmod(a[r][c], p - 2, p);
        for (std::size_t k = c; k < cols; ++k) a[r][k] = mulmod(a[r][k], inv, p);
        for (std::size_t i = r + 1; i < nrows; ++i) {
            const std::uint64_t f = a[i][c];
            if (f == 0) continue;
            for (std::size_t k = c; k < cols; ++k) {
                if (a[r][k] == 0) continue;
                a[i][k] = (a[i][k] + p - mulmod(f, a[r][k], p)) % p;
            }
        }
        ++r;
    }
    RankCertificate cert{r, RankCertificate::Mode::modular, p, {}};
    cert.note = r == std::min(nrows, cols) ? "modular rank meets min(rows, cols): certifies exact rank"
                                          : "lower bound only";
    return cert;
}

} // namespace detail

/// Rank over F_p. A valid lower bound on the rank over Q. Throws BadPrime when
/// p is not prime, too large for the word-size kernel, or divides a denominator.
inline RankCertificate modular_rank(const ExactMatrix& m, std::uint64_t p) {
    detail::check_prime(p);
    std::vector<std::vector<std::uint64_t>> a(m.rows(), std::vector<std::uint64_t>(m.cols()));
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) {
            const Rational& q = m(i, j);
            if (sgn(q) == 0) continue;
            const std::uint64_t den = detail::reduce_mod(q.get_den(), p);
            if (den == 0)
                throw BadPrime("denominator " + q.get_den().get_str() + " vanishes mod " +
                               std::to_string(p));
            a[i][j] = detail::mulmod(detail::reduce_mod(q.get_num(), p),
                                     detail::powmod(den, p - 2, p), p);
        }
    return detail::rank_mod_p(std::move(a), m.cols(), p);
}

inline RankCertificate modular_rank(const std::vector<std::vector<Integer>>& rows, std::size_t cols,
                                    std::uint64_t p) {
    detail::check_prime(p);
    std::vector<std::vector<std::uint64_t>> a(rows.size(), std::vector<std::uint64_t>(cols));
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < cols; ++j)
            if (sgn(rows[i][j]) != 0) a[i][j] = detail::reduce_mod(rows[i][j], p);
    return detail::rank_mod_p(std::move(a), cols, p);
}

/// Whether a modular rank settles the exact rank for a claimed target.
inline bool certifies(const RankCertificate& cert, std::size_t target) {
    return cert.rank >= target;
}

/// Rank with an optional modular shortcut: the modular rank is trusted only
/// when it reaches `target` (a-priori upper bound); otherwise falls back to
/// exact elimination.
inline RankCertificate certified_rank(const ExactMatrix& m, std::size_t target,
                                      std::optional<std::uint64_t> prime) {
    if (prime) {
        try {
            RankCertificate cert = modular_rank(m, *prime);
            if (certifies(cert, target)) return cert;
        } catch (const BadPrime&) {
            // denominator collapsed mod p; exact route below
        }
    }
    return exact_rank_certificate(m);
}

} // namespace chow
