#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "adiclab/error.hpp"
#include "adiclab/gamma.hpp"
#include "adiclab/numeric.hpp"
#include "adiclab/ring_element.hpp"

namespace adiclab {

/**
 * A point of the adic closed unit disc over Q_p, given by exact parameters.
 *
 * Three kinds are representable:
 *   - classical:  evaluation at a p-integral rational a, v(f) = |f(a)|_p;
 *   - gauss:      the disc of center a and radius |p|^r (rational r >= 0),
 *                 v(f) = max_i |c_i|_p * |p|^(i r) for f = sum c_i (X-a)^i;
 *   - rank_two:   the rank-2 refinement of a Gauss point that records on
 *                 which side of radius |p|^r the point sits (side = +1 means
 *                 infinitesimally smaller radius, -1 infinitesimally larger).
 *
 * Every point satisfies the integrality condition v(p) <= One and
 * v(X) <= One; multiplicativity and the ultrametric inequality propagate
 * the bound from these two generators to every integral polynomial.
 * Construction rejects parameter combinations that violate it.
 */
class DiscPoint {
public:
    enum class Kind { classical, gauss, rank_two };

    static DiscPoint classical(Int p, Rational a) {
        return validated(DiscPoint(Kind::classical, std::move(p), std::move(a), 0, +1));
    }
    static DiscPoint gauss_pt(Int p, Rational a, Rational r) {
        if (r < 0) throw DomainMismatchError("DiscPoint: Gauss radius exponent r must be >= 0");
        return validated(DiscPoint(Kind::gauss, std::move(p), std::move(a), std::move(r), +1));
    }
    static DiscPoint rank_two(Int p, Rational a, Rational r, int side) {
        if (side != +1 && side != -1)
            throw DomainMismatchError("DiscPoint: rank-two side must be +1 or -1");
        if (r < 0) throw DomainMismatchError("DiscPoint: rank-two radius exponent r must be >= 0");
        return validated(DiscPoint(Kind::rank_two, std::move(p), std::move(a), std::move(r), side));
    }

    Kind kind() const { return kind_; }
    const Int& p() const { return p_; }
    const Rational& center() const { return a_; }
    const Rational& radius_exponent() const { return r_; }
    int side() const { return side_; }

    Rank value_rank() const { return kind_ == Kind::rank_two ? Rank::two : Rank::one; }

    bool operator==(const DiscPoint& o) const {
        return kind_ == o.kind_ && p_ == o.p_ && a_ == o.a_ && r_ == o.r_ && side_ == o.side_;
    }

private:
    DiscPoint(Kind kind, Int p, Rational a, Rational r, int side)
        : kind_(kind), p_(std::move(p)), a_(std::move(a)), r_(std::move(r)), side_(side) {
        require_prime(p_, "DiscPoint");
    }

    // invariant: v(p) <= One and v(X) <= One, checked on the two generators.
    static DiscPoint validated(DiscPoint pt);

    Kind kind_;
    Int p_;
    Rational a_;
    Rational r_;
    int side_;
};

/**
 * Valuation of a polynomial (or constant) at a disc point.  Values for
 * classical and Gauss points live in Rank1, rank-two points in Rank2; the
 * multiplicative exposure negates the additive value, so bigger additive
 * valuation means smaller element (v(p) = Unit(p^(-1)) < One).
 */
inline ValueMonoidElement point_eval(const DiscPoint& x, const RingElement& f) {
    if (f.kind() == ElemKind::laurent)
        throw DomainMismatchError("point_eval: disc points act on polynomials, not Laurent elements");
    if (f.is_zero()) return ValueMonoidElement::zero();

    if (x.kind() == DiscPoint::Kind::classical) {
        Rational y = eval_at_rational(f, x.center());
        if (y == 0) return ValueMonoidElement::zero();
        long v = rational_val_p(y, x.p());
        return ValueMonoidElement::unit(GroupElement::rank1(Rational(-v)));
    }

    std::map<long, Rational> c = taylor_coeffs(f, x.center());
    if (c.empty()) return ValueMonoidElement::zero();

    if (x.kind() == DiscPoint::Kind::gauss) {
        // additive value: min_i (val_p(c_i) + i*r) over nonzero coefficients.
        std::optional<Rational> best;
        for (const auto& [i, ci] : c) {
            Rational cand = Rational(rational_val_p(ci, x.p())) + Rational(i) * x.radius_exponent();
            if (!best || cand < *best) best = cand;
        }
        return ValueMonoidElement::unit(GroupElement::rank1(-*best));
    }

    // rank-two: lex-min over (val_p(c_i) + i*r, side*i); both coordinates negate.
    std::optional<std::pair<Rational, Int>> best;
    for (const auto& [i, ci] : c) {
        std::pair<Rational, Int> cand{
            Rational(rational_val_p(ci, x.p())) + Rational(i) * x.radius_exponent(),
            Int(x.side()) * i};
        if (!best || cand < *best) best = cand;
    }
    return ValueMonoidElement::unit(GroupElement::rank2(-best->first, -best->second));
}

inline DiscPoint DiscPoint::validated(DiscPoint pt) {
    ValueMonoidElement one = ValueMonoidElement::one(pt.value_rank());
    ValueMonoidElement vp = point_eval(pt, RingElement::rational(Rational(pt.p_)));
    ValueMonoidElement vx = point_eval(pt, RingElement::variable());
    if (!leq(vp, one) || !leq(vx, one))
        throw DomainMismatchError(
            "DiscPoint: parameters violate the integrality condition v(p) <= 1, v(X) <= 1");
    return pt;
}

// Textual forms: "cl:1/3", "gauss:0:1/2", "rk2:0:1:+".  The prime is ambient
// context (a CLI flag), not part of the syntax.
inline std::string to_string(const DiscPoint& x) {
    switch (x.kind()) {
        case DiscPoint::Kind::classical:
            return "cl:" + to_string(x.center());
        case DiscPoint::Kind::gauss:
            return "gauss:" + to_string(x.center()) + ":" + to_string(x.radius_exponent());
        default:
            return "rk2:" + to_string(x.center()) + ":" + to_string(x.radius_exponent()) +
                   (x.side() > 0 ? ":+" : ":-");
    }
}

inline DiscPoint parse_disc_point(const std::string& s, const Int& p) {
    std::vector<std::string> f = detail::split_fields(s, ':');
    try {
        if (f.at(0) == "cl") {
            if (f.size() != 2) throw ParseError("point syntax: cl:<a>");
            return DiscPoint::classical(p, parse_rational(f[1]));
        }
        if (f[0] == "gauss") {
            if (f.size() != 3) throw ParseError("point syntax: gauss:<a>:<r>");
            return DiscPoint::gauss_pt(p, parse_rational(f[1]), parse_rational(f[2]));
        }
        if (f[0] == "rk2") {
            if (f.size() != 4 || (f[3] != "+" && f[3] != "-"))
                throw ParseError("point syntax: rk2:<a>:<r>:<+|->");
            return DiscPoint::rank_two(p, parse_rational(f[1]), parse_rational(f[2]),
                                       f[3] == "+" ? +1 : -1);
        }
    } catch (const ParseError&) {
        throw;
    } catch (const DomainMismatchError&) {
        throw;
    } catch (const Error& e) {
        throw ParseError(std::string("bad point '") + s + "': " + e.what());
    }
    throw ParseError("unknown point kind '" + f[0] + "' (expected cl, gauss or rk2)");
}

}  // namespace adiclab
