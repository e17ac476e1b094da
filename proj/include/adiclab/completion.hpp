#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "adiclab/error.hpp"
#include "adiclab/gamma.hpp"
#include "adiclab/numeric.hpp"
#include "adiclab/padic.hpp"
#include "adiclab/ring_element.hpp"
#include "adiclab/valuation.hpp"

namespace adiclab {

/**
 * A Cauchy sequence of rationals for the p-adic metric, bundled with its
 * convergence certificates: a modulus m with val_p(a_i - a_j) >= k for all
 * i, j >= m(k), and a lower bound L on val_p of every term.  Both travel
 * through arithmetic so that sums and products stay certified; nothing is
 * ever inferred from finitely many terms.
 */
class CauchySequenceCompletion {
public:
    CauchySequenceCompletion(Int p, std::function<Rational(long)> term,
                             std::function<long(long)> modulus, long val_lower_bound)
        : p_(std::move(p)),
          term_(std::move(term)),
          modulus_(std::move(modulus)),
          val_lb_(val_lower_bound) {
        require_prime(p_, "CauchySequenceCompletion");
    }

    static CauchySequenceCompletion constant(Int p, Rational q) {
        long lb = q == 0 ? 0 : rational_val_p(q, p);
        return CauchySequenceCompletion(
            std::move(p), [q](long) { return q; }, [](long) { return 0; }, lb);
    }

    const Int& p() const { return p_; }
    Rational term(long n) const { return term_(n < 0 ? 0 : n); }
    long valuation_lower_bound() const { return val_lb_; }

    // monotone in k; negative targets need no lookahead at all
    long modulus_at(long k) const { return k <= 0 ? modulus_(0) : std::max(modulus_(k), 0L); }

private:
    Int p_;
    std::function<Rational(long)> term_;
    std::function<long(long)> modulus_;
    long val_lb_;
};

inline CauchySequenceCompletion cauchy_add(const CauchySequenceCompletion& s,
                                           const CauchySequenceCompletion& t) {
    if (s.p() != t.p()) throw DomainMismatchError("cauchy_add: prime mismatch");
    return CauchySequenceCompletion(
        s.p(), [s, t](long n) { return s.term(n) + t.term(n); },
        [s, t](long k) { return std::max(s.modulus_at(k), t.modulus_at(k)); },
        std::min(s.valuation_lower_bound(), t.valuation_lower_bound()));
}

inline CauchySequenceCompletion cauchy_mul(const CauchySequenceCompletion& s,
                                           const CauchySequenceCompletion& t) {
    if (s.p() != t.p()) throw DomainMismatchError("cauchy_mul: prime mismatch");
    long ls = s.valuation_lower_bound();
    long lt = t.valuation_lower_bound();
    // val(s_i t_i - s_j t_j) >= min(val(s_i) + val(t_i - t_j), val(t_j) + val(s_i - s_j))
    return CauchySequenceCompletion(
        s.p(), [s, t](long n) { return s.term(n) * t.term(n); },
        [s, t, ls, lt](long k) { return std::max(s.modulus_at(k - lt), t.modulus_at(k - ls)); },
        ls + lt);
}

// The limit, determined to absolute precision N by the single term the
// modulus certifies; any later index would give the same digits.
inline PadicNumber limit_of_cauchy(const CauchySequenceCompletion& s, long n) {
    return PadicNumber::from_rational(s.p(), s.term(s.modulus_at(n)), n);
}

/**
 * Desk-scale instance of completion uniqueness: the digit model and the
 * Cauchy-sequence model of Z_p are compared through the canonical map
 * limit_of_cauchy on randomized certified sequences.  Checks that the map
 * is a ring morphism to precision N, sends constants to the rational
 * embedding, and preserves the valuation.
 */
inline PropertyReport compare_completions(const Int& p, long n, int count,
                                          unsigned long long seed) {
    require_prime(p, "compare_completions");
    if (n < 1) throw DomainMismatchError("compare_completions: precision must be >= 1");
    PropertyReport rep;
    std::mt19937_64 rng(seed);
    Int mod = pow_int(p, n);
    std::uniform_int_distribution<unsigned long long> dist;
    std::uniform_int_distribution<int> noise(0, 1000);

    auto random_sequence = [&]() {
        Int q = Int(dist(rng)) % mod;
        std::vector<long> jitter;
        for (long i = 0; i < n + 2; ++i) jitter.push_back(noise(rng));
        Rational base(q);
        Int prime = p;
        return CauchySequenceCompletion(
            p,
            [base, jitter, prime](long i) {
                std::size_t idx = std::min<std::size_t>(static_cast<std::size_t>(i < 0 ? 0 : i),
                                                        jitter.size() - 1);
                return base + Rational(pow_int(prime, static_cast<long>(idx))) *
                                  Rational(jitter[idx]);
            },
            [](long k) { return k; }, 0);
    };

    for (int i = 0; i < count; ++i) {
        CauchySequenceCompletion s = random_sequence();
        CauchySequenceCompletion t = random_sequence();
        PadicNumber xs = limit_of_cauchy(s, n);
        PadicNumber xt = limit_of_cauchy(t, n);

        ++rep.cases_checked;
        if (!padic_agree(limit_of_cauchy(cauchy_add(s, t), n), padic_add(xs, xt)))
            rep.record("limit(s+t) != limit(s) + limit(t) at case " + std::to_string(i));
        ++rep.cases_checked;
        if (!padic_agree(limit_of_cauchy(cauchy_mul(s, t), n), padic_mul(xs, xt)))
            rep.record("limit(s*t) != limit(s) * limit(t) at case " + std::to_string(i));

        // iota sends the rational q to the limit of its constant sequence
        Rational q = s.term(s.modulus_at(n));
        ++rep.cases_checked;
        if (!(limit_of_cauchy(CauchySequenceCompletion::constant(p, q), n) ==
              PadicNumber::from_rational(p, q, n)))
            rep.record("iota disagrees with from_rational at case " + std::to_string(i));

        // the valuation of the limit is the eventual valuation of the terms
        ++rep.cases_checked;
        if (!xs.is_zero_form()) {
            Rational far = s.term(s.modulus_at(n) + 7);
            if (far == 0 || rational_val_p(far, p) != xs.exponent())
                rep.record("valuation not preserved at case " + std::to_string(i));
        }
    }
    return rep;
}

/**
 * Extension of a function on the dense subring Q to the completion, driven
 * by a caller-supplied modulus of continuity: modulus(N) is the input
 * precision that pins the output to N digits.  The argument is truncated to
 * an exact rational, f applied exactly, and the result reduced to N; if the
 * argument does not carry modulus(N) digits the call refuses loudly rather
 * than guessing.
 */
inline PadicNumber extend_by_continuity(const std::function<Rational(const Rational&)>& f,
                                        const std::function<long(long)>& modulus,
                                        const PadicNumber& x, long n) {
    long needed = modulus(n);
    if (x.abs_precision() < needed)
        throw PrecisionError("extend_by_continuity: argument carries " +
                                 std::to_string(x.abs_precision()) + " digits, modulus demands " +
                                 std::to_string(needed),
                             needed, x.abs_precision());
    Rational q = 0;
    if (!x.is_zero_form()) {
        long e = static_cast<long>(x.exponent());
        q = e >= 0 ? Rational(x.unit_residue()) * Rational(pow_int(x.p(), e))
                   : Rational(x.unit_residue()) / Rational(pow_int(x.p(), -e));
    }
    return PadicNumber::from_rational(x.p(), f(q), n);
}

/** Valuation extended to the completion: exact on unit forms, a one-sided
 * bound on zero forms (all that precision N can assert). */
struct ValuationBound {
    bool exact = false;
    ValueMonoidElement value = ValueMonoidElement::zero();  // exact value, or the upper bound
};

inline ValuationBound extend_valuation(const ValuationDescriptor& v, const PadicNumber& x) {
    if (v.kind() != ValuationDescriptor::Kind::padic)
        throw UnsupportedInstanceError("extend_valuation: only p-adic valuations extend here");
    if (v.p() != x.p())
        throw DomainMismatchError("extend_valuation: valuation prime differs from the operand's");
    if (x.is_zero_form())
        return {false, ValueMonoidElement::unit(GroupElement::rank1(
                           -v.scale() * Rational(x.abs_precision())))};
    return {true, ValueMonoidElement::unit(GroupElement::rank1(
                      -v.scale() * Rational(x.exponent())))};
}

/**
 * A power series truncation known modulo X^N, over Q or over F_p.
 * Arithmetic never claims coefficients beyond the shared precision.
 */
class TruncatedSeries {
public:
    static TruncatedSeries over_q(std::vector<Rational> coeffs) {
        return TruncatedSeries(std::nullopt, std::move(coeffs));
    }
    static TruncatedSeries over_fp(Int p, std::vector<Rational> coeffs) {
        require_prime(p, "TruncatedSeries");
        for (Rational& c : coeffs) c = reduce_coeff(c, p);
        return TruncatedSeries(std::move(p), std::move(coeffs));
    }

    long precision() const { return static_cast<long>(coeffs_.size()); }
    const std::optional<Int>& base_p() const { return p_; }
    const Rational& coefficient(long i) const {
        if (i < 0 || i >= precision())
            throw PrecisionError("TruncatedSeries: coefficient index beyond precision", i,
                                 precision());
        return coeffs_[static_cast<std::size_t>(i)];
    }

    // index of the first nonzero coefficient; nullopt when zero to precision
    std::optional<long> low_index() const {
        for (long i = 0; i < precision(); ++i)
            if (coeffs_[static_cast<std::size_t>(i)] != 0) return i;
        return std::nullopt;
    }

    bool operator==(const TruncatedSeries& o) const { return p_ == o.p_ && coeffs_ == o.coeffs_; }

private:
    TruncatedSeries(std::optional<Int> p, std::vector<Rational> coeffs)
        : p_(std::move(p)), coeffs_(std::move(coeffs)) {}

    static Rational reduce_coeff(const Rational& c, const Int& p) {
        if (c == 0) return c;
        if (rational_val_p(c, p) < 0)
            throw DomainMismatchError("TruncatedSeries: coefficient not p-integral");
        return Rational(mod_reduce(numerator(c), p) * mod_inverse(denominator(c), p) % p);
    }

    friend TruncatedSeries series_add(const TruncatedSeries&, const TruncatedSeries&);
    friend TruncatedSeries series_neg(const TruncatedSeries&);
    friend TruncatedSeries series_mul(const TruncatedSeries&, const TruncatedSeries&);

    std::optional<Int> p_;
    std::vector<Rational> coeffs_;
};

namespace detail {

inline void require_same_series_base(const TruncatedSeries& a, const TruncatedSeries& b,
                                     const char* who) {
    if (a.base_p() != b.base_p()) throw DomainMismatchError(std::string(who) + ": base mismatch");
}

}  // namespace detail

inline TruncatedSeries series_add(const TruncatedSeries& a, const TruncatedSeries& b) {
    detail::require_same_series_base(a, b, "series_add");
    long n = std::min(a.precision(), b.precision());
    std::vector<Rational> c(static_cast<std::size_t>(n));
    for (long i = 0; i < n; ++i) {
        c[static_cast<std::size_t>(i)] = a.coefficient(i) + b.coefficient(i);
        if (a.base_p())
            c[static_cast<std::size_t>(i)] =
                Rational(mod_reduce(numerator(c[static_cast<std::size_t>(i)]), *a.base_p()));
    }
    return a.base_p() ? TruncatedSeries::over_fp(*a.base_p(), std::move(c))
                      : TruncatedSeries::over_q(std::move(c));
}

inline TruncatedSeries series_neg(const TruncatedSeries& a) {
    std::vector<Rational> c;
    for (long i = 0; i < a.precision(); ++i) c.push_back(-a.coefficient(i));
    return a.base_p() ? TruncatedSeries::over_fp(*a.base_p(), std::move(c))
                      : TruncatedSeries::over_q(std::move(c));
}

inline TruncatedSeries series_sub(const TruncatedSeries& a, const TruncatedSeries& b) {
    return series_add(a, series_neg(b));
}

inline TruncatedSeries series_mul(const TruncatedSeries& a, const TruncatedSeries& b) {
    detail::require_same_series_base(a, b, "series_mul");
    long n = std::min(a.precision(), b.precision());
    std::vector<Rational> c(static_cast<std::size_t>(n), Rational(0));
    for (long i = 0; i < n; ++i)
        for (long j = 0; i + j < n && j < b.precision(); ++j)
            c[static_cast<std::size_t>(i + j)] += a.coefficient(i) * b.coefficient(j);
    if (a.base_p())
        for (Rational& x : c) x = Rational(mod_reduce(numerator(x), *a.base_p()));
    return a.base_p() ? TruncatedSeries::over_fp(*a.base_p(), std::move(c))
                      : TruncatedSeries::over_q(std::move(c));
}

/**
 * A polynomial member of the Tate algebra Q_p<X>, held exactly.  Its Gauss
 * norm is the maximum coefficient norm; it lies in the integral subring
 * Z_p<X> iff every coefficient is p-integral.
 */
class TatePolynomial {
public:
    TatePolynomial(Int p, const RingElement& f) : p_(std::move(p)) {
        require_prime(p_, "TatePolynomial");
        if (f.kind() == ElemKind::laurent || (!f.is_zero() && f.low_degree() < 0))
            throw DomainMismatchError("TatePolynomial: Laurent elements are outside Q_p<X>");
        coeffs_ = f.coeffs();
    }

    const Int& p() const { return p_; }
    const std::map<long, Rational>& coeffs() const { return coeffs_; }

    bool is_integral() const {
        for (const auto& [k, c] : coeffs_)
            if (rational_val_p(c, p_) < 0) return false;
        return true;
    }

private:
    Int p_;
    std::map<long, Rational> coeffs_;
};

inline ValueMonoidElement gauss_norm(const TatePolynomial& f) {
    std::optional<long> best;
    for (const auto& [k, c] : f.coeffs()) {
        long v = rational_val_p(c, f.p());
        if (!best || v < *best) best = v;
    }
    if (!best) return ValueMonoidElement::zero();
    return ValueMonoidElement::unit(GroupElement::rank1(Rational(-*best)));
}

/**
 * Horner evaluation at an integral point of Z_p, with coefficients injected
 * at enough working precision that only the argument's own precision and
 * the target N limit the answer; the result is clamped to N digits.
 */
inline PadicNumber eval_at(const TatePolynomial& f, const PadicNumber& a, long n) {
    if (f.p() != a.p()) throw DomainMismatchError("eval_at: prime mismatch");
    bool integral = a.is_zero_form() ? a.abs_precision() >= 0 : a.exponent() >= 0;
    if (!integral)
        throw DomainMismatchError("eval_at: the point must be integral (valuation >= 0)");

    long slack = 0;
    for (const auto& [k, c] : f.coeffs())
        slack = std::max(slack, -rational_val_p(c, f.p()));
    long w = n + slack;

    long top = f.coeffs().empty() ? 0 : f.coeffs().rbegin()->first;
    PadicNumber acc = PadicNumber::zero_to_precision(f.p(), w);
    for (long k = top; k >= 0; --k) {
        if (k != top) acc = padic_mul(acc, a);
        auto it = f.coeffs().find(k);
        if (it != f.coeffs().end())
            acc = padic_add(acc, PadicNumber::from_rational(f.p(), it->second, w));
    }
    return reduce_to_absolute(acc, n);
}

}  // namespace adiclab
