#pragma once

#include "chow/core/error.hpp"

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace chow {

/// Coefficient domain of a polynomial ring.
///
///  - rationals: plain Q.
///  - adjoin_w:  Q(w) with w^2 + w + 1 = 0 (w a primitive cube root of unity).
///  - tower:     Q(w)[a] with a^3 = -lambda, where lambda is an ordinary ring variable.
///
/// The generators w and a are stored as ring variables and kept reduced
/// (w-degree <= 1, a-degree <= 2) by every arithmetic operation.
enum class Domain { rationals, adjoin_w, tower };

class PolyRing;
using RingPtr = std::shared_ptr<const PolyRing>;

class PolyRing {
public:
    static RingPtr make(std::vector<std::string> names) {
        return RingPtr(new PolyRing(std::move(names), Domain::rationals, {}, {}, {}));
    }

    static RingPtr adjoin_w(std::vector<std::string> names, const std::string& w = "w") {
        auto ring = new PolyRing(std::move(names), Domain::adjoin_w, {}, {}, {});
        ring->w_ = ring->index(w);
        return RingPtr(ring);
    }

    static RingPtr tower(std::vector<std::string> names, const std::string& w = "w",
                         const std::string& a = "a", const std::string& lambda = "lambda") {
        auto ring = new PolyRing(std::move(names), Domain::tower, {}, {}, {});
        ring->w_ = ring->index(w);
        ring->a_ = ring->index(a);
        ring->lambda_ = ring->index(lambda);
        return RingPtr(ring);
    }

    std::size_t size() const noexcept { return names_.size(); }
    const std::vector<std::string>& names() const noexcept { return names_; }
    const std::string& name(std::size_t i) const { return names_.at(i); }
    Domain domain() const noexcept { return domain_; }

    std::optional<std::size_t> w_index() const noexcept { return w_; }
    std::optional<std::size_t> a_index() const noexcept { return a_; }
    std::optional<std::size_t> lambda_index() const noexcept { return lambda_; }

    std::optional<std::size_t> find(const std::string& n) const {
        for (std::size_t i = 0; i < names_.size(); ++i)
            if (names_[i] == n) return i;
        return std::nullopt;
    }

    std::size_t index(const std::string& n) const {
        if (auto i = find(n)) return *i;
        throw UnknownVariable("'" + n + "' is not a variable of this ring");
    }

    /// True for w and a: symbols of the coefficient domain rather than free variables.
    bool is_generator(std::size_t i) const noexcept { return (w_ && *w_ == i) || (a_ && *a_ == i); }

    bool same_as(const PolyRing& other) const {
        return names_ == other.names_ && domain_ == other.domain_ && w_ == other.w_ &&
               a_ == other.a_ && lambda_ == other.lambda_;
    }

private:
    PolyRing(std::vector<std::string> names, Domain d, std::optional<std::size_t> w,
             std::optional<std::size_t> a, std::optional<std::size_t> lambda)
        : names_(std::move(names)), domain_(d), w_(w), a_(a), lambda_(lambda) {
        for (std::size_t i = 0; i < names_.size(); ++i)
            for (std::size_t j = i + 1; j < names_.size(); ++j)
                if (names_[i] == names_[j]) throw DomainMismatch("duplicate variable " + names_[i]);
    }

    std::vector<std::string> names_;
    Domain domain_;
    std::optional<std::size_t> w_, a_, lambda_;
};

} // namespace chow
