#pragma once

#include <compare>
#include <string>

#include "adiclab/error.hpp"
#include "adiclab/numeric.hpp"

namespace adiclab {

enum class Rank { one, two };

/**
 * Element of a totally ordered abelian group, stored additively and
 * exposed multiplicatively through ValueMonoidElement.  Rank one is a
 * rational coordinate q (the element "p^(q)"); rank two adds an integer
 * coordinate e for an infinitesimal factor "eps^(e)" ordered
 * lexicographically below any change in q.
 */
struct GroupElement {
    Rank rank;
    Rational q;
    Int e; // rank-two coordinate only; zero otherwise

    static GroupElement rank1(Rational q) { return {Rank::one, std::move(q), 0}; }
    static GroupElement rank2(Rational q, Int e) { return {Rank::two, std::move(q), std::move(e)}; }

    bool is_identity() const { return q == 0 && e == 0; }

    friend bool operator==(const GroupElement& a, const GroupElement& b) {
        return a.rank == b.rank && a.q == b.q && a.e == b.e;
    }
};

// Componentwise addition of additive coordinates.
inline GroupElement compose(const GroupElement& a, const GroupElement& b) {
    if (a.rank != b.rank)
        throw RankMismatchError("compose: rank mismatch between Unit operands");
    return {a.rank, a.q + b.q, a.e + b.e};
}

// Lexicographic order, first coordinate dominant.
inline std::strong_ordering cmp(const GroupElement& a, const GroupElement& b) {
    if (a.rank != b.rank)
        throw RankMismatchError("cmp: rank mismatch between Unit operands");
    if (a.q != b.q) return a.q < b.q ? std::strong_ordering::less : std::strong_ordering::greater;
    if (a.e != b.e) return a.e < b.e ? std::strong_ordering::less : std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

/**
 * Element of the value monoid: either the absorbing bottom element Zero
 * or a Unit wrapping a group element.  Multiplication and comparison
 * follow the two monoid laws "0 * g = 0" and "0 <= g".
 */
class ValueMonoidElement {
public:
    static ValueMonoidElement zero() { return ValueMonoidElement(); }
    static ValueMonoidElement unit(GroupElement g) { return ValueMonoidElement(std::move(g)); }
    static ValueMonoidElement one(Rank r = Rank::one) {
        return unit(r == Rank::one ? GroupElement::rank1(0) : GroupElement::rank2(0, 0));
    }

    bool is_zero() const { return zero_; }
    bool is_unit() const { return !zero_; }
    bool is_one() const { return !zero_ && g_.is_identity(); }

    const GroupElement& unit_part() const {
        if (zero_) throw Error("unit_part: Zero has no unit part");
        return g_;
    }

private:
    ValueMonoidElement() : zero_(true), g_{Rank::one, 0, 0} {}
    explicit ValueMonoidElement(GroupElement g) : zero_(false), g_(std::move(g)) {}

    bool zero_;
    GroupElement g_;
};

inline ValueMonoidElement mul(const ValueMonoidElement& a, const ValueMonoidElement& b) {
    if (a.is_zero() || b.is_zero()) return ValueMonoidElement::zero();
    return ValueMonoidElement::unit(compose(a.unit_part(), b.unit_part()));
}

inline std::strong_ordering cmp(const ValueMonoidElement& a, const ValueMonoidElement& b) {
    if (a.is_zero() && b.is_zero()) return std::strong_ordering::equal;
    if (a.is_zero()) return std::strong_ordering::less;
    if (b.is_zero()) return std::strong_ordering::greater;
    return cmp(a.unit_part(), b.unit_part());
}

inline bool leq(const ValueMonoidElement& a, const ValueMonoidElement& b) {
    return cmp(a, b) != std::strong_ordering::greater;
}

inline bool lt(const ValueMonoidElement& a, const ValueMonoidElement& b) {
    return cmp(a, b) == std::strong_ordering::less;
}

inline bool eq(const ValueMonoidElement& a, const ValueMonoidElement& b) {
    if (a.is_zero() || b.is_zero()) return a.is_zero() == b.is_zero();
    return a.unit_part() == b.unit_part();
}

// a^n for integer n.  Zero^n = Zero for n > 0, Zero^0 = One (empty
// product, rank-one identity); Zero^n for n < 0 is undefined.
inline ValueMonoidElement pow(const ValueMonoidElement& a, const Int& n) {
    if (a.is_zero()) {
        if (n > 0) return ValueMonoidElement::zero();
        if (n == 0) return ValueMonoidElement::one();
        throw Error("pow: negative power of Zero");
    }
    const GroupElement& g = a.unit_part();
    return ValueMonoidElement::unit({g.rank, g.q * Rational(n), g.e * n});
}

inline std::string to_string(const ValueMonoidElement& a) {
    if (a.is_zero()) return "0";
    const GroupElement& g = a.unit_part();
    std::string s = "p^(" + to_string(g.q) + ")";
    if (g.rank == Rank::two) s += "*eps^(" + to_string(g.e) + ")";
    return s;
}

// Parses the canonical forms "0", "p^(q)" and "p^(q)*eps^(e)".
inline ValueMonoidElement parse_value(const std::string& s) {
    if (s == "0") return ValueMonoidElement::zero();
    auto body = [&](std::size_t from, const std::string& head) -> std::pair<std::string, std::size_t> {
        if (s.compare(from, head.size(), head) != 0)
            throw ParseError("parse_value: expected \"" + head + "\" in \"" + s + "\"");
        std::size_t open = from + head.size();
        std::size_t close = s.find(')', open);
        if (close == std::string::npos)
            throw ParseError("parse_value: missing ')' in \"" + s + "\"");
        return {s.substr(open, close - open), close + 1};
    };
    auto [qtext, next] = body(0, "p^(");
    Rational q = parse_rational(qtext);
    if (next == s.size()) return ValueMonoidElement::unit(GroupElement::rank1(q));
    auto [etext, end] = body(next, "*eps^(");
    if (end != s.size()) throw ParseError("parse_value: trailing input in \"" + s + "\"");
    Rational e = parse_rational(etext);
    if (!is_integer(e)) throw ParseError("parse_value: eps exponent must be an integer");
    return ValueMonoidElement::unit(GroupElement::rank2(q, numerator(e)));
}

} // namespace adiclab
