#pragma once

#include <compare>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "adiclab/disc_point.hpp"
#include "adiclab/valuation.hpp"

namespace adiclab {

/**
 * Metadata for the shipped Huber pairs (A, A+).  Each descriptor names its
 * ring of definition A0 and the principal generator of the defining ideal I,
 * so the hypothesis "the topology on A0 is I-adic for a finitely generated
 * ideal" is witnessed by construction rather than re-derived.  The generator
 * is a topologically nilpotent unit of A in every shipped pair, so each pair
 * is Tate.
 */
class HuberPairDescriptor {
public:
    enum class Kind { qp_zp, tate_algebra, laurent_series };

    // (Q_p, Z_p) with A0 = Z_p, I = (p)
    static HuberPairDescriptor qp_zp(Int p) {
        return HuberPairDescriptor(Kind::qp_zp, std::move(p));
    }
    // (Q_p<X>, Z_p<X>) with A0 = Z_p<X>, I = (p)
    static HuberPairDescriptor tate_algebra(Int p) {
        return HuberPairDescriptor(Kind::tate_algebra, std::move(p));
    }
    // (F_p((X)), F_p[[X]]) with A0 = F_p[[X]], I = (X)
    static HuberPairDescriptor laurent_series(Int p) {
        return HuberPairDescriptor(Kind::laurent_series, std::move(p));
    }

    Kind kind() const { return kind_; }
    const Int& p() const { return p_; }

    std::string ring_name() const {
        const std::string ps = p_.str();
        switch (kind_) {
            case Kind::qp_zp: return "Q_" + ps;
            case Kind::tate_algebra: return "Q_" + ps + "<X>";
            case Kind::laurent_series: return "F_" + ps + "((X))";
        }
        return {};
    }

    std::string plus_ring_name() const {
        const std::string ps = p_.str();
        switch (kind_) {
            case Kind::qp_zp: return "Z_" + ps;
            case Kind::tate_algebra: return "Z_" + ps + "<X>";
            case Kind::laurent_series: return "F_" + ps + "[[X]]";
        }
        return {};
    }

    // A0 = A+ for every shipped pair
    std::string ring_of_definition_name() const { return plus_ring_name(); }

    RingElement ideal_generator() const {
        return kind_ == Kind::laurent_series ? RingElement::variable()
                                             : RingElement::rational(Rational(p_));
    }

    bool is_tate() const { return true; }

    bool operator==(const HuberPairDescriptor& o) const {
        return kind_ == o.kind_ && p_ == o.p_;
    }

private:
    HuberPairDescriptor(Kind kind, Int p) : kind_(kind), p_(std::move(p)) {
        require_prime(p_, "HuberPairDescriptor");
    }

    Kind kind_;
    Int p_;
};

inline std::string to_string(const HuberPairDescriptor& h) {
    switch (h.kind()) {
        case HuberPairDescriptor::Kind::qp_zp: return "qpzp:" + h.p().str();
        case HuberPairDescriptor::Kind::tate_algebra: return "tate:" + h.p().str();
        case HuberPairDescriptor::Kind::laurent_series: return "laurent:" + h.p().str();
    }
    return {};
}

inline HuberPairDescriptor parse_huber_pair(const std::string& s) {
    std::vector<std::string> parts = detail::split_fields(s, ':');
    if (parts.size() != 2) throw ParseError("parse_huber_pair: expected kind:prime");
    Int p;
    try {
        p = Int(parts[1]);
    } catch (const std::exception&) {
        throw ParseError("parse_huber_pair: bad prime " + parts[1]);
    }
    try {
        if (parts[0] == "qpzp") return HuberPairDescriptor::qp_zp(p);
        if (parts[0] == "tate") return HuberPairDescriptor::tate_algebra(p);
        if (parts[0] == "laurent") return HuberPairDescriptor::laurent_series(p);
    } catch (const ParseError&) {
        throw;
    } catch (const Error& e) {
        throw ParseError(std::string("parse_huber_pair: ") + e.what());
    }
    throw ParseError("parse_huber_pair: unknown pair kind " + parts[0]);
}

namespace detail {

// mathematical equality of sparse elements; the kind tag is a domain label
inline bool same_element(const RingElement& a, const RingElement& b) {
    return a.coeffs() == b.coeffs();
}

} // namespace detail

/**
 * R(T/s): the rational subset of points v with v(s) != Zero and
 * v(t) <= v(s) for every t in T.  Construction normalizes s into T; since
 * every shipped ambient ring is Tate and s is itself a listed numerator,
 * the openness hypothesis "T.A is open" holds by that witness.
 *
 * Textual form "R(t1,...,tk/s)": the last '/' separates the numerator list
 * from s, so only numerators left of it may carry fractional coefficients.
 * Membership is invariant under common scaling, hence every descriptor has
 * an integral-coefficient textual form.
 */
class RationalSubsetDescriptor {
public:
    RationalSubsetDescriptor(RingElement s, std::vector<RingElement> numerators)
        : s_(std::move(s)), ts_(std::move(numerators)) {
        if (s_.kind() == ElemKind::laurent)
            throw DomainMismatchError("rational subset: s must be a polynomial");
        if (s_.is_zero())
            throw DomainMismatchError("rational subset: s = 0 is in every support");
        bool have_s = false;
        for (const RingElement& t : ts_) {
            if (t.kind() == ElemKind::laurent)
                throw DomainMismatchError("rational subset: numerators must be polynomials");
            have_s = have_s || detail::same_element(t, s_);
        }
        if (!have_s) ts_.push_back(s_);
    }

    const RingElement& s() const { return s_; }
    const std::vector<RingElement>& numerators() const { return ts_; }

private:
    RingElement s_;
    std::vector<RingElement> ts_;
};

inline std::string to_string(const RationalSubsetDescriptor& r) {
    std::string out = "R(";
    for (std::size_t i = 0; i < r.numerators().size(); ++i) {
        if (i) out += ',';
        out += to_string(r.numerators()[i]);
    }
    out += '/';
    out += to_string(r.s());
    out += ')';
    return out;
}

// "R(t1,...,tk/s)" with the ambient prime bound to the symbol p.
inline RationalSubsetDescriptor parse_rational_subset(const std::string& text, const Int& p) {
    if (text.size() < 4 || text.substr(0, 2) != "R(" || text.back() != ')')
        throw ParseError("parse_rational_subset: expected R(.../...)");
    const std::string inner = text.substr(2, text.size() - 3);
    const std::size_t slash = inner.rfind('/');
    if (slash == std::string::npos)
        throw ParseError("parse_rational_subset: missing '/' before the denominator");
    try {
        RingElement s = parse_element(inner.substr(slash + 1), p);
        std::vector<RingElement> ts;
        for (const std::string& part : detail::split_fields(inner.substr(0, slash), ','))
            ts.push_back(parse_element(part, p));
        return RationalSubsetDescriptor(std::move(s), std::move(ts));
    } catch (const ParseError&) {
        throw;
    } catch (const Error& e) {
        throw ParseError(std::string("parse_rational_subset: ") + e.what());
    }
}

/** Membership verdict with the evaluations behind it, for reporting. */
struct RationalSubsetMembership {
    bool member = false;
    ValueMonoidElement v_s = ValueMonoidElement::zero();
    std::vector<std::pair<std::string, ValueMonoidElement>> v_t;
};

inline RationalSubsetMembership rational_subset_report(const DiscPoint& x,
                                                       const RationalSubsetDescriptor& r) {
    RationalSubsetMembership out;
    out.v_s = point_eval(x, r.s());
    bool ok = !out.v_s.is_zero();
    for (const RingElement& t : r.numerators()) {
        ValueMonoidElement vt = point_eval(x, t);
        ok = ok && leq(vt, out.v_s);
        out.v_t.emplace_back(to_string(t), vt);
    }
    out.member = ok;
    return out;
}

inline bool rational_subset_member(const DiscPoint& x, const RationalSubsetDescriptor& r) {
    return rational_subset_report(x, r).member;
}

// R(T1.T2 / s1 s2) with T1.T2 the set of pairwise products; s1 s2 is among
// them because each descriptor lists its own denominator.
inline RationalSubsetDescriptor intersection_product(const RationalSubsetDescriptor& a,
                                                     const RationalSubsetDescriptor& b) {
    std::vector<RingElement> prods;
    prods.reserve(a.numerators().size() * b.numerators().size());
    for (const RingElement& ta : a.numerators())
        for (const RingElement& tb : b.numerators()) prods.push_back(mul(ta, tb));
    return RationalSubsetDescriptor(mul(a.s(), b.s()), std::move(prods));
}

// Pointwise check of R(T1/s1) ∩ R(T2/s2) = R(T1.T2/s1 s2) on sampled points.
inline PropertyReport intersection_identity_check(const RationalSubsetDescriptor& a,
                                                  const RationalSubsetDescriptor& b,
                                                  const std::vector<DiscPoint>& points) {
    const RationalSubsetDescriptor rhs = intersection_product(a, b);
    PropertyReport rep;
    for (const DiscPoint& x : points) {
        ++rep.cases_checked;
        const bool both = rational_subset_member(x, a) && rational_subset_member(x, b);
        if (both != rational_subset_member(x, rhs))
            rep.record("intersection identity fails at " + to_string(x));
    }
    return rep;
}

/**
 * Desk verification that v defines a point of Spa(Q_p, Z_p): v(x) <= One on
 * sampled members of Z_(p) (the bound on A+), and v continuous for the
 * p-adic topology.  Samples outside Z_(p) are skipped, not errors.
 */
struct SpaPairCheckResult {
    bool bounded = false;
    bool continuous = false;
    long samples_used = 0;
    std::optional<Rational> witness;  // member of Z_(p) with v(x) > One
    std::string detail;

    bool ok() const { return bounded && continuous; }
};

inline SpaPairCheckResult spa_qp_zp_check(const ValuationDescriptor& v, const Int& p,
                                          const std::vector<Rational>& samples,
                                          long n_bound = 8) {
    require_prime(p, "spa_qp_zp_check");
    SpaPairCheckResult out;
    out.bounded = true;
    for (const Rational& x : samples) {
        if (x != 0 && rational_val_p(x, p) < 0) continue;
        ++out.samples_used;
        ValueMonoidElement val = eval(v, RingElement::rational(x));
        if (val.is_zero()) continue;
        if (lt(ValueMonoidElement::one(val.unit_part().rank), val)) {
            out.bounded = false;
            if (!out.witness) {
                out.witness = x;
                out.detail = "v(" + to_string(x) + ") > One on Z_(" + p.str() + ")";
            }
        }
    }
    const std::vector<ValueMonoidElement> gammas = {
        ValueMonoidElement::one(), ValueMonoidElement::unit(GroupElement::rank1(-2))};
    try {
        ContinuityReport cr = is_continuous_check(v, p, gammas, n_bound);
        out.continuous = cr.all_ok();
        for (const ContinuityEntry& e : cr.entries)
            if (!e.ok && out.detail.empty()) out.detail = "continuity: " + e.witness;
    } catch (const UnsupportedInstanceError& e) {
        out.continuous = false;
        if (out.detail.empty()) out.detail = e.what();
    }
    return out;
}

/**
 * Stalk-side valuation of the fraction a / s^n at the point x, defined as
 * v_x(a) . v_x(s)^(-n).  Well defined exactly because v_x(s) is invertible
 * in the value group; s in the support of v_x is refused.
 */
inline ValueMonoidElement germ_valuation(const DiscPoint& x, const RingElement& a,
                                         const RingElement& s, long n) {
    ValueMonoidElement vs = point_eval(x, s);
    if (vs.is_zero())
        throw SupportViolationError("germ_valuation: s lies in the support of v_x");
    return mul(point_eval(x, a), pow(vs, Int(-n)));
}

/**
 * Valuation-level shadow of the universal property of A -> A(T/s): at a
 * point of R(T/s) the germ of s is invertible (germ(s).germ(1/s) = One) and
 * every t/s is power bounded (v_x(t/s) <= One, stable under the sampled
 * powers).
 */
inline PropertyReport localization_universal_check(const DiscPoint& x,
                                                   const RationalSubsetDescriptor& r,
                                                   const std::vector<long>& power_sample) {
    if (!rational_subset_member(x, r))
        throw DomainMismatchError("localization_universal_check: point lies outside R(T/s)");
    PropertyReport rep;
    const ValueMonoidElement one = ValueMonoidElement::one(x.value_rank());
    ValueMonoidElement germ_s = germ_valuation(x, r.s(), r.s(), 0);
    ValueMonoidElement germ_inv = germ_valuation(x, RingElement::rational(1), r.s(), 1);
    ++rep.cases_checked;
    if (!eq(mul(germ_s, germ_inv), one))
        rep.record("germ of s times germ of 1/s is not One at " + to_string(x));
    for (const RingElement& t : r.numerators()) {
        ValueMonoidElement g = germ_valuation(x, t, r.s(), 1);
        ++rep.cases_checked;
        if (!leq(g, one))
            rep.record("t/s not power bounded at " + to_string(x) + ": t = " + to_string(t));
        for (long n : power_sample) {
            if (n < 0) throw DomainMismatchError("localization_universal_check: powers must be >= 0");
            ++rep.cases_checked;
            if (!leq(pow(g, Int(n)), one))
                rep.record("(t/s)^" + std::to_string(n) + " unbounded at " + to_string(x));
        }
    }
    return rep;
}

/**
 * For a Gauss point with radius exponent r = u/w > 0, the pair
 * f = (X - a)^w, g = p^u has v(f) = v(g) at the Gauss point while the two
 * rank-two refinements order {f, g} oppositely; the pair exhibits the points
 * the rank-one picture cannot separate.
 */
struct SeparationWitness {
    RingElement f;
    RingElement g;
    std::strong_ordering at_gauss = std::strong_ordering::equal;
    std::strong_ordering above = std::strong_ordering::equal;  // side +1
    std::strong_ordering below = std::strong_ordering::equal;  // side -1

    bool separated() const {
        return at_gauss == std::strong_ordering::equal && above != below;
    }
};

inline SeparationWitness rank_two_separation_witness(const Int& p, const Rational& a,
                                                     const Rational& r) {
    if (r <= 0)
        throw DomainMismatchError("rank_two_separation_witness: needs radius exponent r > 0");
    const Int un = numerator(r);
    const Int wd = denominator(r);
    if (un > 512 || wd > 512)
        throw BudgetError("rank_two_separation_witness: exponent exceeds budget");
    const long u = un.convert_to<long>();
    const long w = wd.convert_to<long>();
    SeparationWitness out;
    out.f = pow(sub(RingElement::variable(), RingElement::rational(a)), w);
    out.g = RingElement::rational(Rational(pow_int(p, u)));
    const DiscPoint gauss = DiscPoint::gauss_pt(p, a, r);
    const DiscPoint up = DiscPoint::rank_two(p, a, r, +1);
    const DiscPoint dn = DiscPoint::rank_two(p, a, r, -1);
    out.at_gauss = cmp(point_eval(gauss, out.f), point_eval(gauss, out.g));
    out.above = cmp(point_eval(up, out.f), point_eval(up, out.g));
    out.below = cmp(point_eval(dn, out.f), point_eval(dn, out.g));
    return out;
}

} // namespace adiclab
