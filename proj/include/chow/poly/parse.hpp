#pragma once

#include "chow/core/error.hpp"
#include "chow/poly/polynomial.hpp"

#include <cctype>
#include <string>
#include <string_view>

namespace chow {

// Polynomial text grammar (shared with scenario files):
//
//   expr    := ['+'|'-'] term (('+'|'-') term)*
//   term    := factor ('*' factor | '/' factor)*      division only by nonzero constants
//   factor  := primary ('^' integer)?
//   primary := integer | identifier | '(' expr ')'
//
// Identifiers are [A-Za-z_][A-Za-z0-9_]* and must be ring variables. The
// Unicode minus sign U+2212 is accepted as '-'. Whitespace is ignored.
class PolynomialParser {
public:
    PolynomialParser(std::string_view text, RingPtr ring, std::size_t line = 1, std::size_t column = 1)
        : text_(normalize(text)), ring_(std::move(ring)), line_(line), column_(column) {}

    Polynomial parse() {
        Polynomial p = expr();
        skip_ws();
        if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
        return p;
    }

private:
    static std::string normalize(std::string_view in) {
        std::string out;
        out.reserve(in.size());
        for (std::size_t i = 0; i < in.size(); ++i) {
            // U+2212 MINUS SIGN, UTF-8 E2 88 92
            if (i + 2 < in.size() && static_cast<unsigned char>(in[i]) == 0xE2 &&
                static_cast<unsigned char>(in[i + 1]) == 0x88 &&
                static_cast<unsigned char>(in[i + 2]) == 0x92) {
                out.push_back('-');
                i += 2;
                continue;
            }
            out.push_back(in[i]);
        }
        return out;
    }

    [[noreturn]] void fail(const std::string& what) const {
        throw ParseError(what + " in polynomial '" + text_ + "'", line_, column_ + pos_);
    }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool accept(char c) {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    Polynomial expr() {
        Polynomial acc(ring_);
        bool negate = false;
        if (accept('-')) negate = true;
        else accept('+');
        Polynomial t = term();
        acc = negate ? -t : t;
        while (true) {
            if (accept('+')) acc += term();
            else if (accept('-')) acc -= term();
            else break;
        }
        return acc;
    }

    Polynomial term() {
        Polynomial acc = factor();
        while (true) {
            if (accept('*')) {
                acc *= factor();
            } else if (accept('/')) {
                const std::size_t at = pos_;
                Polynomial d = factor();
                if (!d.is_constant() || d.is_zero()) {
                    pos_ = at;
                    fail("division only by nonzero constants");
                }
                acc *= Rational(1) / d.constant_term();
            } else {
                break;
            }
        }
        return acc;
    }

    Polynomial factor() {
        Polynomial base = primary();
        if (accept('^')) {
            skip_ws();
            const std::size_t start = pos_;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
            if (start == pos_) fail("expected exponent");
            const unsigned long e = std::stoul(text_.substr(start, pos_ - start));
            base = base.pow(static_cast<std::uint32_t>(e));
        }
        return base;
    }

    Polynomial primary() {
        skip_ws();
        if (pos_ >= text_.size()) fail("unexpected end of input");
        const char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            Polynomial inner = expr();
            if (!accept(')')) fail("expected ')'");
            return inner;
        }
        if (c == '-' || c == '+') {
            // unary sign inside a product, e.g. "2*-x"
            ++pos_;
            Polynomial f = factor();
            return c == '-' ? -f : f;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            const std::size_t start = pos_;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
            return Polynomial::constant(ring_, Rational(Integer(text_.substr(start, pos_ - start))));
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            const std::size_t start = pos_;
            while (pos_ < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
                ++pos_;
            const std::string name = text_.substr(start, pos_ - start);
            if (!ring_->find(name)) {
                pos_ = start;
                fail("undeclared variable '" + name + "'");
            }
            return Polynomial::variable(ring_, name);
        }
        fail("unexpected '" + std::string(1, c) + "'");
    }

    std::string text_;
    RingPtr ring_;
    std::size_t line_;
    std::size_t column_;
    std::size_t pos_ = 0;
};

inline Polynomial parse_polynomial(std::string_view text, const RingPtr& ring, std::size_t line = 1,
                                   std::size_t column = 1) {
    return PolynomialParser(text, ring, line, column).parse();
}

} // namespace chow
