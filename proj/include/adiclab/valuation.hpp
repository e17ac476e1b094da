#pragma once

#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "adiclab/disc_point.hpp"
#include "adiclab/error.hpp"
#include "adiclab/gamma.hpp"
#include "adiclab/numeric.hpp"
#include "adiclab/ring_element.hpp"

namespace adiclab {

/**
 * A valuation from one of the shipped exactly-computable families.
 *
 *   padic(p, scale)   v(x) = Unit(-scale * val_p(x)) on rationals; the scale
 *                     rescales the value group (order-isomorphic image).
 *   xadic_q()         X-adic order of vanishing on Q[X] / Laurent elements.
 *   xadic_fp(p)       the same after reducing coefficients mod p.
 *   gauss(p, a, r)    Gauss valuation of radius |p|^r centered at a on Q[X].
 *   trivial()         v(x) = One for x != 0.
 *   from_point(pt)    the valuation of a disc point (rank 2 when the point is).
 *
 * Values are multiplicative: additive valuation k is exposed as Unit(p^(-k)),
 * so v(p) < One and the ultrametric reads v(x+y) <= max(v(x), v(y)).
 */
class ValuationDescriptor {
public:
    enum class Kind { padic, xadic, gauss, trivial, point };

    static ValuationDescriptor padic(Int p, Rational scale = 1) {
        require_prime(p, "ValuationDescriptor::padic");
        if (scale <= 0) throw DomainMismatchError("padic: scale must be a positive rational");
        ValuationDescriptor v(Kind::padic);
        v.p_ = std::move(p);
        v.scale_ = std::move(scale);
        return v;
    }
    static ValuationDescriptor xadic_q() { return ValuationDescriptor(Kind::xadic); }
    static ValuationDescriptor xadic_fp(Int p) {
        require_prime(p, "ValuationDescriptor::xadic_fp");
        ValuationDescriptor v(Kind::xadic);
        v.p_ = std::move(p);
        v.mod_p_ = true;
        return v;
    }
    static ValuationDescriptor gauss(Int p, Rational a, Rational r) {
        require_prime(p, "ValuationDescriptor::gauss");
        if (r < 0) throw DomainMismatchError("gauss: radius exponent r must be >= 0");
        ValuationDescriptor v(Kind::gauss);
        v.p_ = std::move(p);
        v.a_ = std::move(a);
        v.r_ = std::move(r);
        return v;
    }
    static ValuationDescriptor trivial() { return ValuationDescriptor(Kind::trivial); }
    static ValuationDescriptor from_point(DiscPoint pt) {
        ValuationDescriptor v(Kind::point);
        v.point_ = std::move(pt);
        return v;
    }

    Kind kind() const { return kind_; }
    const Int& p() const { return p_; }
    const Rational& scale() const { return scale_; }
    const Rational& center() const { return a_; }
    const Rational& radius_exponent() const { return r_; }
    bool coefficients_mod_p() const { return mod_p_; }
    const DiscPoint& point() const {
        if (!point_) throw Error("ValuationDescriptor: not a point valuation");
        return *point_;
    }

    Rank value_rank() const {
        return kind_ == Kind::point ? point_->value_rank() : Rank::one;
    }

    std::string domain_name() const {
        switch (kind_) {
            case Kind::padic: return "Q";
            case Kind::xadic: return mod_p_ ? "Laurent(F_p)" : "Laurent(Q)";
            case Kind::gauss: return "Q[X]";
            case Kind::trivial: return "Q[X]";
            default: return "Q[X]";
        }
    }

    bool operator==(const ValuationDescriptor& o) const {
        if (kind_ != o.kind_) return false;
        switch (kind_) {
            case Kind::padic: return p_ == o.p_ && scale_ == o.scale_;
            case Kind::xadic: return mod_p_ == o.mod_p_ && (!mod_p_ || p_ == o.p_);
            case Kind::gauss: return p_ == o.p_ && a_ == o.a_ && r_ == o.r_;
            case Kind::trivial: return true;
            default: return *point_ == *o.point_;
        }
    }

private:
    explicit ValuationDescriptor(Kind kind) : kind_(kind) {}

    Kind kind_;
    Int p_ = 0;
    Rational scale_ = 1;
    Rational a_ = 0;
    Rational r_ = 0;
    bool mod_p_ = false;
    std::optional<DiscPoint> point_;
};

namespace detail {

// X-adic order over F_p: lowest exponent whose coefficient is nonzero mod p.
// Coefficients must be p-integral; an element that vanishes mod p entirely is
// zero in F_p[X] and has value Zero.
inline ValueMonoidElement xadic_fp_value(const RingElement& x, const Int& p) {
    std::optional<long> ord;
    for (const auto& [k, c] : x.coeffs()) {
        if (rational_val_p(c, p) < 0)
            throw DomainMismatchError(
                "xadic_fp: coefficient " + to_string(c) + " is not p-integral for p = " + to_string(p));
        Int num = mod_reduce(numerator(c), p);
        Int den = mod_reduce(denominator(c), p);
        if (num != 0 && den != 0 && !ord) ord = k;
    }
    if (!ord) return ValueMonoidElement::zero();
    return ValueMonoidElement::unit(GroupElement::rank1(Rational(-*ord)));
}

}  // namespace detail

inline ValueMonoidElement eval(const ValuationDescriptor& v, const RingElement& x) {
    if (x.is_zero()) return ValueMonoidElement::zero();
    switch (v.kind()) {
        case ValuationDescriptor::Kind::padic: {
            if (!x.is_constant())
                throw DomainMismatchError("padic: valuation is defined on rationals only");
            long k = rational_val_p(x.as_rational(), v.p());
            return ValueMonoidElement::unit(GroupElement::rank1(-v.scale() * Rational(k)));
        }
        case ValuationDescriptor::Kind::xadic: {
            if (v.coefficients_mod_p()) return detail::xadic_fp_value(x, v.p());
            return ValueMonoidElement::unit(GroupElement::rank1(Rational(-x.low_degree())));
        }
        case ValuationDescriptor::Kind::gauss: {
            std::map<long, Rational> c = taylor_coeffs(x, v.center());
            std::optional<Rational> best;
            for (const auto& [i, ci] : c) {
                Rational cand =
                    Rational(rational_val_p(ci, v.p())) + Rational(i) * v.radius_exponent();
                if (!best || cand < *best) best = cand;
            }
            if (!best) return ValueMonoidElement::zero();
            return ValueMonoidElement::unit(GroupElement::rank1(-*best));
        }
        case ValuationDescriptor::Kind::trivial:
            return ValueMonoidElement::one();
        default:
            return point_eval(v.point(), x);
    }
}

/** Outcome of an exact property sweep: every violation is recorded verbatim. */
struct PropertyReport {
    long cases_checked = 0;
    std::vector<std::string> violations;

    bool ok() const { return violations.empty(); }
    void record(std::string what) {
        if (violations.size() < 10) violations.push_back(std::move(what));
        else if (violations.size() == 10) violations.push_back("... further violations suppressed");
    }
};

/**
 * Exact check of the valuation axioms on the given pairs:
 * v(0) = Zero, v(1) = One, v(xy) = v(x)v(y) and v(x+y) <= max(v(x), v(y)).
 */
inline PropertyReport check_axioms(const ValuationDescriptor& v,
                                   const std::vector<std::pair<RingElement, RingElement>>& pairs) {
    PropertyReport rep;
    rep.cases_checked += 2;
    if (!eval(v, RingElement::rational(0)).is_zero()) rep.record("v(0) != Zero");
    if (!eval(v, RingElement::rational(1)).is_one()) rep.record("v(1) != One");
    for (const auto& [x, y] : pairs) {
        ++rep.cases_checked;
        ValueMonoidElement vx = eval(v, x);
        ValueMonoidElement vy = eval(v, y);
        ValueMonoidElement vxy = eval(v, mul(x, y));
        if (!eq(vxy, mul(vx, vy)))
            rep.record("multiplicativity fails at x=" + to_string(x) + ", y=" + to_string(y));
        ValueMonoidElement vsum = eval(v, add(x, y));
        const ValueMonoidElement& mx = leq(vx, vy) ? vy : vx;
        if (!leq(vsum, mx))
            rep.record("ultrametric fails at x=" + to_string(x) + ", y=" + to_string(y));
    }
    return rep;
}

inline bool support_member(const ValuationDescriptor& v, const RingElement& x) {
    return eval(v, x).is_zero();
}

/**
 * Verifies on samples that supp(v) = {x | v(x) = Zero} behaves as a prime
 * ideal: xy in supp implies x or y in supp, supp is closed under addition,
 * and absorbs multiplication; 0 lies in supp and 1 does not.
 */
inline PropertyReport support_prime_check(const ValuationDescriptor& v,
                                          const std::vector<RingElement>& samples) {
    PropertyReport rep;
    rep.cases_checked += 2;
    if (!support_member(v, RingElement::rational(0))) rep.record("0 not in supp");
    if (support_member(v, RingElement::rational(1))) rep.record("1 in supp");
    for (const RingElement& x : samples) {
        for (const RingElement& y : samples) {
            ++rep.cases_checked;
            bool sx = support_member(v, x);
            bool sy = support_member(v, y);
            bool sxy = support_member(v, mul(x, y));
            if (sxy && !sx && !sy)
                rep.record("primality fails at x=" + to_string(x) + ", y=" + to_string(y));
            if (sx && sy && !support_member(v, add(x, y)))
                rep.record("additive closure fails at x=" + to_string(x) + ", y=" + to_string(y));
            if (sx && !sxy)
                rep.record("ideal absorption fails at x=" + to_string(x) + ", y=" + to_string(y));
        }
    }
    return rep;
}

/**
 * Equivalence of valuations: same induced preorder a <= b on the domain.
 * Within the p-adic family (and for structurally equal descriptors) the
 * result is an exact decision; otherwise the sampled pairs either yield a
 * disagreeing witness (an exact refutation) or sampled agreement.
 */
struct EquivalenceResult {
    bool equivalent = false;
    bool exact = false;
    std::string method;  // "family", "witness" or "sampled"
    std::optional<std::pair<RingElement, RingElement>> witness;
};

inline EquivalenceResult equivalent(const ValuationDescriptor& v, const ValuationDescriptor& w,
                                    const std::vector<std::pair<RingElement, RingElement>>& pairs) {
    auto scan = [&]() -> std::optional<std::pair<RingElement, RingElement>> {
        for (const auto& [a, b] : pairs) {
            bool lv = leq(eval(v, a), eval(v, b));
            bool lw = leq(eval(w, a), eval(w, b));
            if (lv != lw) return std::make_pair(a, b);
        }
        return std::nullopt;
    };

    // exact family decisions: rescaling the value group by a positive rational
    // is an order isomorphism, so two p-adic valuations are equivalent iff
    // they share the prime, independent of scale.
    if (v.kind() == ValuationDescriptor::Kind::padic &&
        w.kind() == ValuationDescriptor::Kind::padic) {
        if (v.p() == w.p()) return {true, true, "family", std::nullopt};
        return {false, true, scan() ? "witness" : "family", scan()};
    }
    if (v == w) return {true, true, "family", std::nullopt};

    if (auto wit = scan()) return {false, true, "witness", wit};
    return {true, false, "sampled", std::nullopt};
}

/**
 * Continuity of v for the ambient_p-adic topology on Q, per value gamma:
 * the set S = {a | v(a) < gamma} must contain a ball x + p^n Z_(p) around
 * each of its members.  For the p-adic family this is decided exactly: when
 * the primes agree the ultrametric gives one exponent n that works for every
 * member of S simultaneously; when they differ an explicit escape family
 * delta(n) = ambient^n / q^M refutes openness at a checked witness point.
 * Verification sweeps re-check both conclusions sample by sample.
 */
struct ContinuityEntry {
    ValueMonoidElement gamma = ValueMonoidElement::one();
    bool ok = false;
    long n = -1;              // uniform ball exponent when ok
    std::string witness;      // refutation description when !ok
};

struct ContinuityReport {
    std::vector<ContinuityEntry> entries;
    long samples_checked = 0;
    bool all_ok() const {
        for (const auto& e : entries)
            if (!e.ok) return false;
        return !entries.empty();
    }
};

inline ContinuityReport is_continuous_check(const ValuationDescriptor& v, const Int& ambient_p,
                                            const std::vector<ValueMonoidElement>& gammas,
                                            long n_bound) {
    require_prime(ambient_p, "is_continuous_check");
    if (n_bound < 1) throw DomainMismatchError("is_continuous_check: n_bound must be >= 1");
    if (v.kind() != ValuationDescriptor::Kind::padic &&
        v.kind() != ValuationDescriptor::Kind::trivial)
        throw UnsupportedInstanceError(
            "is_continuous_check: only p-adic and trivial valuations are supported");

    ContinuityReport rep;
    for (const ValueMonoidElement& gamma : gammas) {
        if (gamma.is_zero())
            throw DomainMismatchError("is_continuous_check: gamma must be a nonzero value");
        if (gamma.unit_part().rank != Rank::one)
            throw DomainMismatchError("is_continuous_check: gamma must be a Rank1 unit");
        ContinuityEntry entry;
        entry.gamma = gamma;
        const Rational g = gamma.unit_part().q;

        if (v.kind() == ValuationDescriptor::Kind::trivial) {
            if (lt(ValueMonoidElement::one(), gamma)) {
                entry.ok = true;  // S is all of Q
                entry.n = 1;
            } else {
                // S = {0}: every ball around 0 leaks out.
                entry.witness = "S = {0}; 0 + " + to_string(ambient_p) + "^n never stays in S";
                for (long n = 1; n <= n_bound; ++n) {
                    ++rep.samples_checked;
                    Rational y = Rational(pow_int(ambient_p, n));
                    if (lt(eval(v, RingElement::rational(y)), gamma))
                        throw Error("is_continuous_check: internal witness verification failed");
                }
            }
            rep.entries.push_back(entry);
            continue;
        }

        const Int& q = v.p();
        // additive picture: S = {a | val_q(a) > tau} with tau = -g / scale.
        const Rational tau = -g / v.scale();
        if (q == ambient_p) {
            Int n_exact = floor_rational(tau) + 1;
            if (n_exact < 1) n_exact = 1;
            if (n_exact > n_bound) {
                entry.witness = "uniform ball exponent " + to_string(n_exact) +
                                " exceeds bound " + std::to_string(n_bound);
            } else {
                entry.ok = true;
                entry.n = static_cast<long>(n_exact);
                // sweep: members x of S, offsets delta in p^n Z stay in S.
                for (long j = 0; j <= 2 && entry.ok; ++j) {
                    Rational x = j == 0 ? Rational(0)
                                        : Rational(pow_int(q, static_cast<long>(n_exact) + j));
                    if (x != 0 && !lt(eval(v, RingElement::rational(x)), gamma))
                        throw Error("is_continuous_check: sample point escaped S");
                    for (long k = 1; k <= 3; ++k) {
                        ++rep.samples_checked;
                        Rational y = x + Rational(pow_int(ambient_p, entry.n)) * k;
                        if (!lt(eval(v, RingElement::rational(y)), gamma)) entry.ok = false;
                    }
                }
                if (!entry.ok) entry.witness = "verification sweep found an escaping offset";
            }
        } else {
            // different primes: x = q^e lies in S, yet every ball x + P^n Z_(P)
            // contains x + P^n / q^M whose q-value -M drops out of S.
            Int e = floor_rational(tau) + 1;
            if (e < 0) e = 0;
            Int m = floor_rational(tau);
            if (m < 0) m = -m;
            m += 2;
            Rational x = Rational(pow_int(q, static_cast<long>(e)));
            if (!lt(eval(v, RingElement::rational(x)), gamma))
                throw Error("is_continuous_check: internal witness point not in S");
            bool refuted = true;
            for (long n = 1; n <= n_bound; ++n) {
                ++rep.samples_checked;
                Rational delta =
                    Rational(pow_int(ambient_p, n)) / Rational(pow_int(q, static_cast<long>(m)));
                if (lt(eval(v, RingElement::rational(x + delta)), gamma)) refuted = false;
            }
            if (!refuted) throw Error("is_continuous_check: internal refutation failed");
            entry.witness = "x = " + to_string(x) + " is in S but x + " + to_string(ambient_p) +
                            "^n / " + to_string(q) + "^" + to_string(Int(m)) +
                            " escapes for every n <= " + std::to_string(n_bound);
        }
        rep.entries.push_back(entry);
    }
    return rep;
}

// Textual forms: "padic:3", "padic:3:2" (rescaled), "xadic", "xadic:fp:3",
// "gauss:3:0:1/2", "trivial", "point:cl:0" (point forms need the ambient prime).
inline std::string to_string(const ValuationDescriptor& v) {
    switch (v.kind()) {
        case ValuationDescriptor::Kind::padic:
            return "padic:" + to_string(v.p()) +
                   (v.scale() == 1 ? "" : ":" + to_string(v.scale()));
        case ValuationDescriptor::Kind::xadic:
            return v.coefficients_mod_p() ? "xadic:fp:" + to_string(v.p()) : "xadic";
        case ValuationDescriptor::Kind::gauss:
            return "gauss:" + to_string(v.p()) + ":" + to_string(v.center()) + ":" +
                   to_string(v.radius_exponent());
        case ValuationDescriptor::Kind::trivial:
            return "trivial";
        default:
            return "point:" + to_string(v.point());
    }
}

inline ValuationDescriptor parse_valuation(const std::string& s,
                                           std::optional<Int> ambient_p = std::nullopt) {
    std::vector<std::string> f = detail::split_fields(s, ':');
    try {
        if (f.at(0) == "padic") {
            if (f.size() == 2) return ValuationDescriptor::padic(Int(f[1]));
            if (f.size() == 3) return ValuationDescriptor::padic(Int(f[1]), parse_rational(f[2]));
            throw ParseError("valuation syntax: padic:<p>[:<scale>]");
        }
        if (f[0] == "xadic") {
            if (f.size() == 1) return ValuationDescriptor::xadic_q();
            if (f.size() == 3 && f[1] == "fp") return ValuationDescriptor::xadic_fp(Int(f[2]));
            throw ParseError("valuation syntax: xadic or xadic:fp:<p>");
        }
        if (f[0] == "gauss") {
            if (f.size() != 4) throw ParseError("valuation syntax: gauss:<p>:<a>:<r>");
            return ValuationDescriptor::gauss(Int(f[1]), parse_rational(f[2]), parse_rational(f[3]));
        }
        if (f[0] == "trivial") {
            if (f.size() != 1) throw ParseError("valuation syntax: trivial");
            return ValuationDescriptor::trivial();
        }
        if (f[0] == "point") {
            if (!ambient_p)
                throw ParseError("point valuations need an ambient prime (pass --p)");
            return ValuationDescriptor::from_point(
                parse_disc_point(s.substr(std::string("point:").size()), *ambient_p));
        }
    } catch (const ParseError&) {
        throw;
    } catch (const DomainMismatchError&) {
        throw;
    } catch (const std::exception& e) {
        throw ParseError(std::string("bad valuation '") + s + "': " + e.what());
    }
    throw ParseError("unknown valuation kind '" + f[0] + "'");
}

}  // namespace adiclab
