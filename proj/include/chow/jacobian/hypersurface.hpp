#pragma once

#include "chow/core/elimination.hpp"
#include "chow/core/error.hpp"
#include "chow/core/scalar.hpp"
#include "chow/poly/monomial.hpp"
#include "chow/poly/polynomial.hpp"

#include <cstdint>
#include <exception>
#include <future>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace chow {

/// Degree-k slice of S / J_F. Ambient monomials are listed leading-first, so
/// the non-pivot columns of the reduced ideal basis are exactly the standard
/// monomials for grevlex; those are the quotient representatives.
class GradedPiece {
public:
    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

    GradedPiece(unsigned degree, std::vector<Monomial> ambient, RowEchelon ideal)
        : degree_(degree), ambient_(std::move(ambient)), ideal_(std::move(ideal)) {
        for (std::size_t i = 0; i < ambient_.size(); ++i) index_.emplace(ambient_[i], i);
        slot_.assign(ambient_.size(), npos);
        pivot_row_.assign(ambient_.size(), npos);
        for (std::size_t r = 0; r < ideal_.pivots.size(); ++r) pivot_row_[ideal_.pivots[r]] = r;
        for (std::size_t j = 0; j < ambient_.size(); ++j)
            if (pivot_row_[j] == npos) {
                slot_[j] = standard_.size();
                standard_.push_back(j);
            }
    }

    unsigned degree() const noexcept { return degree_; }
    const std::vector<Monomial>& ambient_basis() const noexcept { return ambient_; }
    std::size_t ambient_dim() const noexcept { return ambient_.size(); }
    const ExactMatrix& ideal_basis() const noexcept { return ideal_.rows; }
    std::size_t ideal_dim() const noexcept { return ideal_.rank(); }
    std::size_t quotient_dim() const noexcept { return standard_.size(); }

    std::vector<Monomial> representatives() const {
        std::vector<Monomial> reps;
        for (auto j : standard_) reps.push_back(ambient_[j]);
        return reps;
    }

    const Monomial& representative(std::size_t slot) const { return ambient_[standard_[slot]]; }

    std::size_t index_of(const Monomial& m) const {
        auto it = index_.find(m);
        if (it == index_.end()) throw BadDegree("monomial not of degree " + std::to_string(degree_));
        return it->second;
    }

    /// Quotient coordinates of an ambient monomial.
    std::vector<Rational> reduce_monomial(const Monomial& m) const {
        std::vector<Rational> q(quotient_dim());
        add_reduced(q, index_of(m), 1);
        return q;
    }

    /// Quotient coordinates of an ambient coordinate vector.
    std::vector<Rational> reduce(const std::vector<Rational>& v) const {
        if (v.size() != ambient_.size()) throw ShapeMismatch("ambient vector has wrong length");
        std::vector<Rational> q(quotient_dim());
        for (std::size_t j = 0; j < v.size(); ++j)
            if (sgn(v[j]) != 0) add_reduced(q, j, v[j]);
        return q;
    }

    /// q += c * (class of ambient monomial j).
    void add_reduced(std::vector<Rational>& q, std::size_t j, const Rational& c) const {
        if (slot_[j] != npos) {
            q[slot_[j]] += c;
            return;
        }
        const std::size_t r = pivot_row_[j];
        for (std::size_t s = 0; s < standard_.size(); ++s) {
            const Rational& e = ideal_.rows(r, standard_[s]);
            if (sgn(e) != 0) q[s] -= c * e;
        }
    }

private:
    unsigned degree_;
    std::vector<Monomial> ambient_;
    RowEchelon ideal_;
    std::unordered_map<Monomial, std::size_t, MonomialHash> index_;
    std::vector<std::size_t> standard_;
    std::vector<std::size_t> slot_;
    std::vector<std::size_t> pivot_row_;
};

using PiecePtr = std::shared_ptr<const GradedPiece>;

struct HilbertTable {
    std::vector<std::size_t> dims; // degrees 0..socle
    RankCertificate::Mode mode = RankCertificate::Mode::exact;
    std::uint64_t prime = 0;
    std::string note;
};

/// Jacobian ring R = S / J_F of a homogeneous form F in the given coordinates.
/// Graded pieces are built lazily, once, and shared; concurrent queries are safe.
class HypersurfaceRing {
public:
    using Term = std::pair<Monomial, Rational>;

    HypersurfaceRing(const Polynomial& f, std::vector<std::string> coords)
        : coords_(std::move(coords)), cache_(std::make_unique<Cache>()) {
        if (coords_.empty()) throw DomainMismatch("hypersurface needs at least one coordinate");
        if (f.ring()->domain() != Domain::rationals)
            throw DomainMismatch("Jacobian ring needs rational coefficients");
        std::vector<std::size_t> idx;
        for (const auto& c : coords_) idx.push_back(f.ring()->index(c));
        for (auto v : f.support())
            if (std::find(idx.begin(), idx.end(), v) == idx.end())
                throw DomainMismatch("defining form uses non-coordinate variable " + f.ring()->name(v));
        if (f.is_zero()) throw NotHomogeneous("zero form");
        auto deg = f.homogeneous_degree(idx);
        if (!deg) throw NotHomogeneous(f.to_string());
        if (*deg < 2) throw BadDegree("defining form must have degree at least 2");
        degree_ = static_cast<unsigned>(*deg);
        form_ = f;
        for (const auto& [m, c] : f.terms()) f_terms_.emplace_back(project(m, idx), c);
        for (std::size_t i = 0; i < coords_.size(); ++i) {
            std::vector<Term> d;
            for (const auto& [m, c] : f_terms_) {
                if (m[i] == 0) continue;
                Monomial mm = m;
                mm[i] -= 1;
                d.emplace_back(mm, c * m[i]);
            }
            partials_.push_back(std::move(d));
        }
    }

    HypersurfaceRing(HypersurfaceRing&&) noexcept = default;
    HypersurfaceRing& operator=(HypersurfaceRing&&) noexcept = default;

    std::size_t nvars() const noexcept { return coords_.size(); }
    unsigned degree() const noexcept { return degree_; }
    unsigned socle_degree() const noexcept { return static_cast<unsigned>(nvars() * (degree_ - 2)); }
    const std::vector<std::string>& coords() const noexcept { return coords_; }
    const Polynomial& form() const noexcept { return form_; }
    const std::vector<Term>& form_terms() const noexcept { return f_terms_; }
    const std::vector<std::vector<Term>>& partials() const noexcept { return partials_; }

    /// (d-1)^n, the total dimension of R when F is smooth.
    Integer milnor_number() const {
        Integer r;
        mpz_ui_pow_ui(r.get_mpz_t(), degree_ - 1, nvars());
        return r;
    }

    /// Rows m * dF/dx_i for all monomials m of degree k - (d-1), integer-scaled,
    /// in the coordinates of enumerate_monomials(nvars, k).
    std::vector<std::vector<Integer>> span_rows(unsigned k) const {
        std::vector<std::vector<Integer>> rows;
        if (k + 1 < degree_) return rows;
        const auto ambient = enumerate_monomials(nvars(), k);
        std::unordered_map<Monomial, std::size_t, MonomialHash> index;
        for (std::size_t j = 0; j < ambient.size(); ++j) index.emplace(ambient[j], j);
        const auto multipliers = enumerate_monomials(nvars(), k - (degree_ - 1));
        for (const auto& partial : partials_) {
            if (partial.empty()) continue;
            Integer den = 1;
            for (const auto& [m, c] : partial) den = lcm(den, c.get_den());
            for (const auto& mult : multipliers) {
                std::vector<Integer> row(ambient.size());
                for (const auto& [m, c] : partial) row[index.at(m * mult)] = c.get_num() * (den / c.get_den());
                rows.push_back(std::move(row));
            }
        }
        return rows;
    }

    /// Graded piece R_k, memoized.
    PiecePtr piece(unsigned k) const {
        std::promise<PiecePtr> promise;
        std::shared_future<PiecePtr> future;
        bool owner = false;
        {
            std::lock_guard lock(cache_->mutex);
            auto it = cache_->pieces.find(k);
            if (it == cache_->pieces.end()) {
                future = promise.get_future().share();
                cache_->pieces.emplace(k, future);
                owner = true;
            } else {
                future = it->second;
            }
        }
        if (owner) {
            try {
                promise.set_value(build_piece(k));
            } catch (...) {
                promise.set_exception(std::current_exception());
            }
        }
        return future.get();
    }

    std::size_t dim(unsigned k) const { return piece(k)->quotient_dim(); }

    /// Rank of the degree-k Jacobian span, exactly or with a modular lower bound.
    RankCertificate span_rank(unsigned k, std::optional<std::uint64_t> prime = std::nullopt) const {
        const std::size_t cols = enumerate_monomials(nvars(), k).size();
        if (prime) return modular_rank(span_rows(k), cols, *prime);
        return {rank(span_rows(k), cols), RankCertificate::Mode::exact, 0, "exact fraction-free elimination"};
    }

    /// Homogeneous polynomial in the coordinates -> ambient vector in degree k.
    std::vector<Rational> to_ambient(const Polynomial& p, unsigned k) const {
        std::vector<std::size_t> idx;
        for (const auto& c : coords_) idx.push_back(p.ring()->index(c));
        const auto ambient = enumerate_monomials(nvars(), k);
        std::unordered_map<Monomial, std::size_t, MonomialHash> index;
        for (std::size_t j = 0; j < ambient.size(); ++j) index.emplace(ambient[j], j);
        std::vector<Rational> v(ambient.size());
        for (const auto& [m, c] : p.terms()) {
            if (m.degree() != k) throw DegreeMismatch(p.to_string() + " is not homogeneous of degree " + std::to_string(k));
            Monomial mm = project(m, idx);
            if (mm.degree() != k) throw DomainMismatch(p.to_string() + " uses non-coordinate variables");
            v[index.at(mm)] += c;
        }
        return v;
    }

    std::vector<Rational> to_quotient(const Polynomial& p, unsigned k) const {
        return piece(k)->reduce(to_ambient(p, k));
    }

private:
    struct Cache {
        std::mutex mutex;
        std::map<unsigned, std::shared_future<PiecePtr>> pieces;
    };

    static Monomial project(const Monomial& m, const std::vector<std::size_t>& idx) {
        Monomial r(idx.size());
        for (std::size_t i = 0; i < idx.size(); ++i) r[i] = m[idx[i]];
        return r;
    }

    PiecePtr build_piece(unsigned k) const {
        auto ambient = enumerate_monomials(nvars(), k);
        const std::size_t cols = ambient.size();
        return std::make_shared<const GradedPiece>(k, std::move(ambient),
                                                   reduced_row_echelon(span_rows(k), cols));
    }

    std::vector<std::string> coords_;
    Polynomial form_;
    unsigned degree_ = 0;
    std::vector<Term> f_terms_;
    std::vector<std::vector<Term>> partials_;
    std::unique_ptr<Cache> cache_;
};

/// Exact Hilbert function, degrees 0..socle.
inline HilbertTable hilbert_function(const HypersurfaceRing& ring) {
    HilbertTable t;
    for (unsigned k = 0; k <= ring.socle_degree(); ++k) t.dims.push_back(ring.dim(k));
    t.note = "exact elimination";
    return t;
}

/// dim R_{socle+1} = 0. With a prime, a full modular rank settles the
/// question; anything short of full rank is redone exactly.
inline bool is_smooth_artinian(const HypersurfaceRing& ring, std::optional<std::uint64_t> prime,
                               RankCertificate* cert = nullptr) {
    const unsigned k = ring.socle_degree() + 1;
    const std::size_t cols = enumerate_monomials(ring.nvars(), k).size();
    RankCertificate c;
    if (prime) {
        c = ring.span_rank(k, prime);
        if (c.rank < cols) c = ring.span_rank(k);
    } else {
        c = ring.span_rank(k);
    }
    if (cert) *cert = c;
    return c.rank == cols;
}

inline bool is_smooth_artinian(const HypersurfaceRing& ring) { return is_smooth_artinian(ring, std::nullopt); }

/// Hilbert function from modular ranks. Each modular dimension bounds the
/// exact one from above, so once smoothness is certified and the modular
/// dimensions already sum to (d-1)^n they are all exact. Otherwise falls back
/// to exact elimination.
inline HilbertTable hilbert_function(const HypersurfaceRing& ring, std::uint64_t prime) {
    RankCertificate smooth;
    if (is_smooth_artinian(ring, prime, &smooth)) {
        HilbertTable t;
        Integer total = 0;
        for (unsigned k = 0; k <= ring.socle_degree(); ++k) {
            const std::size_t cols = enumerate_monomials(ring.nvars(), k).size();
            t.dims.push_back(cols - ring.span_rank(k, prime).rank);
            total += static_cast<unsigned long>(t.dims.back());
        }
        if (total == ring.milnor_number()) {
            t.mode = RankCertificate::Mode::modular;
            t.prime = prime;
            t.note = "modular certificate p=" + std::to_string(prime) + " (smooth, total " +
                     total.get_str() + " = (d-1)^n)";
            return t;
        }
    }
    return hilbert_function(ring);
}

} // namespace chow
