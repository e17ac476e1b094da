#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "adiclab/error.hpp"
#include "adiclab/gamma.hpp"
#include "adiclab/numeric.hpp"
#include "adiclab/ring_element.hpp"
#include "adiclab/valuation.hpp"

namespace adiclab {

/**
 * A ring carrying an adic topology with a principal defining ideal and
 * decidable ideal-power membership:
 *
 *   int_with_p(p)       Z with the p-adic topology, I = (p);
 *   poly_over_fp(p)     F_p[X] with the X-adic topology, I = (X);
 *   rationals_padic(p)  Q with the p-adic topology (neighborhood base
 *                       p^n Z_(p); a field, so no proper ideal arithmetic).
 */
class AdicRingInstance {
public:
    enum class Kind { int_with_p, poly_over_fp, rationals_padic };

    static AdicRingInstance int_with_p(Int p) { return AdicRingInstance(Kind::int_with_p, std::move(p)); }
    static AdicRingInstance poly_over_fp(Int p) { return AdicRingInstance(Kind::poly_over_fp, std::move(p)); }
    static AdicRingInstance rationals_padic(Int p) {
        return AdicRingInstance(Kind::rationals_padic, std::move(p));
    }

    Kind kind() const { return kind_; }
    const Int& p() const { return p_; }
    bool is_pid() const { return kind_ != Kind::rationals_padic; }
    std::string ideal_generator_name() const { return kind_ == Kind::poly_over_fp ? "X" : "p"; }

    bool operator==(const AdicRingInstance& o) const { return kind_ == o.kind_ && p_ == o.p_; }

private:
    AdicRingInstance(Kind kind, Int p) : kind_(kind), p_(std::move(p)) {
        require_prime(p_, "AdicRingInstance");
    }

    Kind kind_;
    Int p_;
};

struct BoundedSearchBudget {
    long max_power = 16;  // invariant: >= 1
};

namespace detail {

// Dense F_p[X] coefficients, ascending, residues in [0, p), trimmed.
using FpPoly = std::vector<Int>;

inline void fp_trim(FpPoly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

inline FpPoly fp_from_element(const RingElement& x, const Int& p) {
    if (x.low_degree() < 0)
        throw DomainMismatchError("F_p[X] instance: Laurent elements are outside the domain");
    FpPoly a;
    for (const auto& [k, c] : x.coeffs()) {
        if (rational_val_p(c, p) < 0)
            throw DomainMismatchError("F_p[X] instance: coefficient " + to_string(c) +
                                      " is not p-integral for p = " + to_string(p));
        Int r = mod_reduce(numerator(c), p) * mod_inverse(denominator(c), p) % p;
        if (a.size() <= static_cast<std::size_t>(k)) a.resize(static_cast<std::size_t>(k) + 1, 0);
        a[static_cast<std::size_t>(k)] = r;
    }
    fp_trim(a);
    return a;
}

inline FpPoly fp_mod(FpPoly a, const FpPoly& b, const Int& p) {
    Int lead_inv = mod_inverse(b.back(), p);
    while (a.size() >= b.size()) {
        Int q = a.back() * lead_inv % p;
        std::size_t shift = a.size() - b.size();
        for (std::size_t i = 0; i < b.size(); ++i)
            a[shift + i] = mod_reduce(a[shift + i] - q * b[i], p);
        fp_trim(a);
        if (a.empty()) break;
    }
    return a;
}

inline FpPoly fp_gcd(FpPoly a, FpPoly b, const Int& p) {
    fp_trim(a);
    fp_trim(b);
    while (!b.empty()) {
        FpPoly r = fp_mod(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.empty()) {
        Int inv = mod_inverse(a.back(), p);
        for (Int& c : a) c = c * inv % p;  // monic normal form
    }
    return a;
}

// The instance's additive valuation of x; nullopt for the zero element.
inline std::optional<long> instance_valuation(const AdicRingInstance& R, const RingElement& x) {
    switch (R.kind()) {
        case AdicRingInstance::Kind::int_with_p: {
            if (!x.is_constant() || !is_integer(x.as_rational()))
                throw DomainMismatchError("Z instance: element must be an integer");
            Rational q = x.as_rational();
            if (q == 0) return std::nullopt;
            return rational_val_p(q, R.p());
        }
        case AdicRingInstance::Kind::poly_over_fp: {
            FpPoly a = fp_from_element(x, R.p());
            for (std::size_t i = 0; i < a.size(); ++i)
                if (a[i] != 0) return static_cast<long>(i);
            return std::nullopt;
        }
        default: {
            if (!x.is_constant())
                throw DomainMismatchError("Q instance: element must be a rational");
            Rational q = x.as_rational();
            if (q == 0) return std::nullopt;
            return rational_val_p(q, R.p());
        }
    }
}

}  // namespace detail

// Decides x in I^n by exact divisibility (valuation >= n).  For the PID
// instances I^0 = R; for the field instance Q the "powers" are the basic
// subgroups p^n Z_(p), whose n = 0 member is Z_(p), not all of Q.
inline bool in_ideal_power(const AdicRingInstance& R, const RingElement& x, long n) {
    if (n < 0) throw DomainMismatchError("in_ideal_power: n must be >= 0");
    std::optional<long> v = detail::instance_valuation(R, x);
    return !v || *v >= n;
}

/**
 * Bounded search for topological nilpotence: Yes iff for every n <= max_power
 * some power x^k with k <= max_power lands in I^n, together with the witness
 * map n -> least such k.  A negative answer is a budget exhaustion report,
 * not a disproof.
 */
struct NilpotenceResult {
    bool yes = false;
    std::map<long, long> witness;  // n -> least k with x^k in I^n
    long failed_n = -1;            // first n with no k within budget
    long k_cap = 0;
};

inline NilpotenceResult is_topologically_nilpotent(const AdicRingInstance& R, const RingElement& x,
                                                   const BoundedSearchBudget& budget) {
    if (budget.max_power < 1) throw DomainMismatchError("budget: max_power must be >= 1");
    NilpotenceResult res;
    res.k_cap = budget.max_power;
    long k = 1;
    RingElement cur = x;
    for (long n = 1; n <= budget.max_power; ++n) {
        while (k <= budget.max_power && !in_ideal_power(R, cur, n)) {
            ++k;
            cur = mul(cur, x);
        }
        if (k > budget.max_power) {
            res.failed_n = n;
            return res;
        }
        res.witness[n] = k;
    }
    res.yes = true;
    return res;
}

/**
 * Power-boundedness via the instance valuation: {x^k} is bounded iff
 * val(x) >= 0, which is exact for every shipped instance.  The negative
 * case carries evidence (n, k): x^k has valuation -n < 0, i.e. it escapes
 * the unit ball.
 */
struct PowerBoundedResult {
    bool yes = false;
    long n = 0;
    long k = 0;
};

inline PowerBoundedResult is_power_bounded(const AdicRingInstance& R, const RingElement& x,
                                           const BoundedSearchBudget& budget) {
    if (budget.max_power < 1) throw DomainMismatchError("budget: max_power must be >= 1");
    std::optional<long> v = detail::instance_valuation(R, x);
    if (!v || *v >= 0) return {true, 0, 0};
    return {false, -*v, 1};
}

// Decides v(y - x) < gamma; the empty set carved out by gamma = Zero is not
// a neighborhood, so that argument is rejected.
inline bool valuation_ball_member(const ValuationDescriptor& v, const RingElement& x,
                                  const ValueMonoidElement& gamma, const RingElement& y) {
    if (gamma.is_zero())
        throw DomainMismatchError("valuation_ball_member: gamma = Zero gives the empty ball");
    return lt(eval(v, sub(y, x)), gamma);
}

/**
 * The openness lemma for products, decided exactly in PID instances: with
 * span(T) = (gcd T) and U = (u), the product T . span(U) is the ideal
 * (gcd(T) * u), and an ideal (g) is I-adically open iff g is a unit times
 * pi^j (pi the ideal generator).  Both hypotheses are checked first; when
 * they hold the conclusion is exact with n = j_T + j_U minimal, so
 * Inconclusive cannot occur.
 */
struct OpenCheckResult {
    enum class Verdict { verified, refuted };
    Verdict verdict = Verdict::refuted;
    long n = -1;         // minimal n with I^n inside T . span(U), when verified
    std::string reason;  // "span_T_not_open" or "U_not_open", when refuted
    std::string detail;
};

namespace detail {

// j such that gen = unit * pi^j in the instance, if any.
inline std::optional<long> pi_power_exponent(const AdicRingInstance& R, const RingElement& gen) {
    if (R.kind() == AdicRingInstance::Kind::int_with_p) {
        Int g = numerator(gen.as_rational());
        if (g < 0) g = -g;
        if (g == 0) return std::nullopt;
        long j = int_val_p(g, R.p());
        return g == pow_int(R.p(), j) ? std::optional<long>(j) : std::nullopt;
    }
    FpPoly a = fp_from_element(gen, R.p());
    std::optional<long> j;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        if (j) return std::nullopt;  // two terms: not a monomial
        j = static_cast<long>(i);
    }
    return j;
}

}  // namespace detail

inline OpenCheckResult mul_T_open_check(const AdicRingInstance& R,
                                        const std::vector<RingElement>& T,
                                        const RingElement& u_gen) {
    if (!R.is_pid())
        throw UnsupportedInstanceError(
            "mul_T_open_check: Q is a field, its only ideals are 0 and Q; the span "
            "arithmetic needs a PID instance");

    OpenCheckResult res;
    RingElement span_gen = RingElement::rational(0);
    if (R.kind() == AdicRingInstance::Kind::int_with_p) {
        Int g = 0;
        for (const RingElement& t : T) {
            if (!t.is_constant() || !is_integer(t.as_rational()))
                throw DomainMismatchError("Z instance: elements of T must be integers");
            g = boost::multiprecision::gcd(g, numerator(t.as_rational()));
        }
        span_gen = RingElement::rational(Rational(g));
        if (!u_gen.is_constant() || !is_integer(u_gen.as_rational()))
            throw DomainMismatchError("Z instance: the subgroup generator must be an integer");
    } else {
        detail::FpPoly g;
        for (const RingElement& t : T) g = detail::fp_gcd(g, detail::fp_from_element(t, R.p()), R.p());
        std::map<long, Rational> c;
        for (std::size_t i = 0; i < g.size(); ++i)
            if (g[i] != 0) c[static_cast<long>(i)] = Rational(g[i]);
        span_gen = RingElement::from_coeffs(std::move(c), ElemKind::poly);
        detail::fp_from_element(u_gen, R.p());  // domain check
    }

    std::optional<long> j_t = detail::pi_power_exponent(R, span_gen);
    if (!j_t) {
        res.reason = "span_T_not_open";
        res.detail = "span(T) = (" + to_string(span_gen) + ") contains no power of the ideal " +
                     R.ideal_generator_name();
        return res;
    }
    std::optional<long> j_u = detail::pi_power_exponent(R, u_gen);
    if (!j_u) {
        res.reason = "U_not_open";
        res.detail = "U = (" + to_string(u_gen) + ") contains no power of the ideal " +
                     R.ideal_generator_name();
        return res;
    }
    res.verdict = OpenCheckResult::Verdict::verified;
    res.n = *j_t + *j_u;
    res.detail = "T . span(U) = (" + R.ideal_generator_name() + "^" + std::to_string(res.n) +
                 ") up to a unit";
    return res;
}

// Textual forms: "int:3", "polyfp:2", "rat:3".
inline std::string to_string(const AdicRingInstance& R) {
    switch (R.kind()) {
        case AdicRingInstance::Kind::int_with_p: return "int:" + to_string(R.p());
        case AdicRingInstance::Kind::poly_over_fp: return "polyfp:" + to_string(R.p());
        default: return "rat:" + to_string(R.p());
    }
}

inline AdicRingInstance parse_adic_ring(const std::string& s) {
    std::vector<std::string> f = detail::split_fields(s, ':');
    try {
        if (f.size() == 2 && f[0] == "int") return AdicRingInstance::int_with_p(Int(f[1]));
        if (f.size() == 2 && f[0] == "polyfp") return AdicRingInstance::poly_over_fp(Int(f[1]));
        if (f.size() == 2 && f[0] == "rat") return AdicRingInstance::rationals_padic(Int(f[1]));
    } catch (const std::exception& e) {
        throw ParseError(std::string("bad ring '") + s + "': " + e.what());
    }
    throw ParseError("ring syntax: int:<p>, polyfp:<p> or rat:<p>");
}

}  // namespace adiclab
