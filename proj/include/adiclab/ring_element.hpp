#pragma once

#include <cctype>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "adiclab/error.hpp"
#include "adiclab/numeric.hpp"

namespace adiclab {

enum class ElemKind { rational, poly, laurent };

// Widest of two declared element kinds.
inline ElemKind kind_join(ElemKind a, ElemKind b) {
    if (a == ElemKind::laurent || b == ElemKind::laurent) return ElemKind::laurent;
    if (a == ElemKind::poly || b == ElemKind::poly) return ElemKind::poly;
    return ElemKind::rational;
}

/**
 * Element of one of the shipped coefficient rings: a rational number, a
 * polynomial in X over the rationals, or a Laurent polynomial (finitely
 * many negative exponents).  The kind records which ring the element was
 * declared in; arithmetic joins kinds and never silently narrows them, so
 * domain checks in the valuation layer stay meaningful.
 */
class RingElement {
public:
    RingElement() : kind_(ElemKind::rational) {}

    static RingElement rational(Rational q) {
        RingElement e;
        e.kind_ = ElemKind::rational;
        if (q != 0) e.coeffs_[0] = std::move(q);
        return e;
    }

    static RingElement variable() {
        RingElement e;
        e.kind_ = ElemKind::poly;
        e.coeffs_[1] = 1;
        return e;
    }

    static RingElement monomial(Rational c, long exp, ElemKind kind) {
        RingElement e;
        e.kind_ = kind;
        if (c != 0) e.coeffs_[exp] = std::move(c);
        e.check_kind();
        return e;
    }

    static RingElement from_coeffs(std::map<long, Rational> coeffs, ElemKind kind) {
        RingElement e;
        e.kind_ = kind;
        for (auto& [k, c] : coeffs)
            if (c != 0) e.coeffs_.emplace(k, std::move(c));
        e.check_kind();
        return e;
    }

    ElemKind kind() const { return kind_; }
    bool is_zero() const { return coeffs_.empty(); }
    bool is_constant() const { return coeffs_.empty() || (coeffs_.size() == 1 && coeffs_.begin()->first == 0); }

    // The element as a rational; requires a constant.
    Rational as_rational() const {
        if (is_zero()) return 0;
        if (!is_constant()) throw DomainMismatchError("as_rational: element is not constant");
        return coeffs_.begin()->second;
    }

    Rational coefficient(long k) const {
        auto it = coeffs_.find(k);
        return it == coeffs_.end() ? Rational(0) : it->second;
    }

    long low_degree() const {
        if (is_zero()) throw Error("low_degree: zero element");
        return coeffs_.begin()->first;
    }

    long degree() const {
        if (is_zero()) throw Error("degree: zero element");
        return coeffs_.rbegin()->first;
    }

    const std::map<long, Rational>& coeffs() const { return coeffs_; }

    friend bool operator==(const RingElement& a, const RingElement& b) {
        return a.kind_ == b.kind_ && a.coeffs_ == b.coeffs_;
    }

private:
    void check_kind() const {
        if (coeffs_.empty()) return;
        long lo = coeffs_.begin()->first;
        long hi = coeffs_.rbegin()->first;
        if (kind_ == ElemKind::rational && (lo != 0 || hi != 0))
            throw DomainMismatchError("RingElement: rational kind with X terms");
        if (kind_ == ElemKind::poly && lo < 0)
            throw DomainMismatchError("RingElement: poly kind with negative exponents");
    }

    ElemKind kind_;
    std::map<long, Rational> coeffs_; // exponent -> nonzero coefficient
};

inline RingElement add(const RingElement& a, const RingElement& b) {
    std::map<long, Rational> out = a.coeffs();
    for (const auto& [k, c] : b.coeffs()) {
        auto [it, fresh] = out.emplace(k, c);
        if (!fresh && (it->second += c) == 0) out.erase(it);
    }
    return RingElement::from_coeffs(std::move(out), kind_join(a.kind(), b.kind()));
}

inline RingElement neg(const RingElement& a) {
    std::map<long, Rational> out;
    for (const auto& [k, c] : a.coeffs()) out[k] = -c;
    return RingElement::from_coeffs(std::move(out), a.kind());
}

inline RingElement sub(const RingElement& a, const RingElement& b) { return add(a, neg(b)); }

inline RingElement mul(const RingElement& a, const RingElement& b) {
    std::map<long, Rational> out;
    for (const auto& [i, c] : a.coeffs())
        for (const auto& [j, d] : b.coeffs()) {
            auto [it, fresh] = out.emplace(i + j, c * d);
            if (!fresh && (it->second += c * d) == 0) out.erase(it);
        }
    if (out.size() > 4096) throw BudgetError("mul: term count exceeds budget");
    return RingElement::from_coeffs(std::move(out), kind_join(a.kind(), b.kind()));
}

// a^n; negative n only for nonzero constants and monomials, which are the
// units of the Laurent ring.
inline RingElement pow(const RingElement& a, long n) {
    if (n < -1024 || n > 1024) throw BudgetError("pow: exponent exceeds budget");
    if (n == 0) return RingElement::monomial(1, 0, a.kind());
    if (n < 0) {
        if (a.is_zero()) throw Error("pow: negative power of zero");
        if (a.coeffs().size() != 1)
            throw Error("pow: negative power of a non-monomial");
        auto [exp, c] = *a.coeffs().begin();
        long e = exp * n;
        ElemKind k = a.kind();
        if (e < 0) k = ElemKind::laurent;
        Rational cr = 1;
        for (long i = 0; i < -n; ++i) cr /= c;
        return RingElement::monomial(cr, e, k);
    }
    RingElement acc = RingElement::monomial(1, 0, a.kind());
    RingElement base = a;
    for (long k = n; k > 0; k >>= 1) {
        if (k & 1) acc = mul(acc, base);
        if (k > 1) base = mul(base, base);
    }
    return acc;
}

inline RingElement div(const RingElement& a, const RingElement& b) {
    if (!b.is_constant()) throw Error("div: divisor must be a nonzero constant");
    Rational q = b.as_rational();
    if (q == 0) throw Error("div: division by zero");
    return mul(a, RingElement::monomial(Rational(1) / q, 0, b.kind()));
}

// f evaluated at q; Laurent elements demand q != 0.
inline Rational eval_at_rational(const RingElement& f, const Rational& q) {
    Rational acc = 0;
    for (const auto& [k, c] : f.coeffs()) {
        if (k >= 0) {
            Rational t = c;
            for (long i = 0; i < k; ++i) t *= q;
            acc += t;
        } else {
            if (q == 0) throw Error("eval_at_rational: negative exponent at zero");
            Rational t = c;
            for (long i = 0; i < -k; ++i) t /= q;
            acc += t;
        }
    }
    return acc;
}

// Coefficients c_i with f = sum c_i (X - a)^i, i.e. the expansion of
// f(Y + a); polynomial kinds only.
inline std::map<long, Rational> taylor_coeffs(const RingElement& f, const Rational& a) {
    if (f.kind() == ElemKind::laurent)
        throw DomainMismatchError("taylor_coeffs: Laurent element");
    std::map<long, Rational> out;
    for (const auto& [n, c] : f.coeffs()) {
        // c (Y + a)^n expanded by the binomial theorem.
        Rational binom = 1;
        Rational apow = 1;
        std::vector<Rational> pows(static_cast<std::size_t>(n) + 1);
        for (long i = n; i >= 0; --i) {
            pows[static_cast<std::size_t>(i)] = apow;
            apow *= a;
        }
        for (long i = 0; i <= n; ++i) {
            Rational term = c * binom * pows[static_cast<std::size_t>(i)];
            if (term != 0) {
                auto [it, fresh] = out.emplace(i, term);
                if (!fresh && (it->second += term) == 0) out.erase(it);
            }
            binom = binom * Rational(n - i) / Rational(i + 1);
        }
    }
    return out;
}

/**
 * Recursive-descent parser for element expressions: rationals, the
 * variable X, parentheses, + - * / ^, and optionally the symbol p bound
 * to a caller-supplied prime.  Examples: "3/2", "3 + 9*X", "X^-2 + 1",
 * "(1+3)^2", "1/(1-3)".
 */
class ElementParser {
public:
    ElementParser(std::string text, std::optional<Int> prime)
        : s_(std::move(text)), prime_(std::move(prime)) {}

    RingElement parse() {
        RingElement e = expr();
        skip_ws();
        if (pos_ != s_.size())
            throw ParseError("parse_element: trailing input at position " + std::to_string(pos_));
        return e;
    }

private:
    RingElement expr() {
        RingElement acc = term();
        while (true) {
            skip_ws();
            if (peek() == '+') {
                ++pos_;
                acc = add(acc, term());
            } else if (peek() == '-') {
                ++pos_;
                acc = sub(acc, term());
            } else {
                return acc;
            }
        }
    }

    RingElement term() {
        RingElement acc = factor();
        while (true) {
            skip_ws();
            if (peek() == '*') {
                ++pos_;
                acc = mul(acc, factor());
            } else if (peek() == '/') {
                ++pos_;
                acc = div(acc, factor());
            } else {
                return acc;
            }
        }
    }

    RingElement factor() {
        skip_ws();
        if (peek() == '-') {
            ++pos_;
            return neg(factor());
        }
        RingElement base = atom();
        skip_ws();
        if (peek() == '^') {
            ++pos_;
            return pow(base, exponent());
        }
        return base;
    }

    RingElement atom() {
        skip_ws();
        char c = peek();
        if (c == '(') {
            ++pos_;
            RingElement e = expr();
            skip_ws();
            if (peek() != ')') throw ParseError("parse_element: missing ')'");
            ++pos_;
            return e;
        }
        if (c == 'X') {
            ++pos_;
            return RingElement::variable();
        }
        if (c == 'p') {
            if (!prime_) throw ParseError("parse_element: symbol p needs a prime in context");
            ++pos_;
            return RingElement::rational(Rational(*prime_));
        }
        if (std::isdigit(static_cast<unsigned char>(c))) return RingElement::rational(Rational(integer()));
        throw ParseError("parse_element: unexpected character at position " + std::to_string(pos_));
    }

    long exponent() {
        skip_ws();
        bool negative = false;
        if (peek() == '-') {
            negative = true;
            ++pos_;
        }
        skip_ws();
        if (!std::isdigit(static_cast<unsigned char>(peek())))
            throw ParseError("parse_element: integer exponent expected");
        Int n = integer();
        if (n > 1024) throw BudgetError("parse_element: exponent exceeds budget");
        long v = static_cast<long>(n);
        return negative ? -v : v;
    }

    Int integer() {
        std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (start == pos_) throw ParseError("parse_element: digits expected");
        return Int(s_.substr(start, pos_ - start));
    }

    char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }
    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    std::string s_;
    std::optional<Int> prime_;
    std::size_t pos_ = 0;
};

inline RingElement parse_element(const std::string& s, std::optional<Int> prime = std::nullopt) {
    return ElementParser(s, std::move(prime)).parse();
}

// Canonical printing: terms in ascending exponent order, matching the
// grammar accepted by parse_element.
inline std::string to_string(const RingElement& e) {
    if (e.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [k, c] : e.coeffs()) {
        bool negative = c < 0;
        Rational mag = negative ? Rational(-c) : c;
        if (first) {
            if (negative) out += "-";
            first = false;
        } else {
            out += negative ? " - " : " + ";
        }
        std::string coeff = to_string(mag);
        if (k == 0) {
            out += coeff;
        } else {
            if (mag != 1) out += coeff + "*";
            out += "X";
            if (k != 1) out += "^" + std::to_string(k);
        }
    }
    return out;
}

} // namespace adiclab
