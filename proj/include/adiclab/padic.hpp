#pragma once

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "adiclab/error.hpp"
#include "adiclab/gamma.hpp"
#include "adiclab/numeric.hpp"

namespace adiclab {

/**
 * A p-adic number with explicit precision tracking.  Two forms:
 *
 *   unit form   u * p^e with p not dividing u, the unit residue known
 *               modulo p^N (N >= 1 relative digits); the value is known
 *               modulo p^(e+N) and its valuation is exactly e;
 *   zero form   ZeroToPrecision(N): indistinguishable from 0 at absolute
 *               precision N, i.e. valuation >= N and nothing more is known.
 *
 * The zero form is honest partiality: "= 0" is not decidable in a
 * completion, so cancellation degrades to a zero form instead of inventing
 * digits.  Arithmetic tracks worst-case precision through every operation.
 */
class PadicNumber {
public:
    static PadicNumber zero_to_precision(Int p, long n) {
        require_prime(p, "PadicNumber");
        PadicNumber x(std::move(p));
        x.abs_n_ = n;
        return x;
    }

    // Normalizing constructor for u * p^e mod p^(e+N): strips p-factors of u
    // into the exponent and collapses to the zero form when nothing survives.
    static PadicNumber unit_form(Int p, Int e, Int u, long n) {
        require_prime(p, "PadicNumber");
        if (n < 1) throw PrecisionError("unit form needs at least one digit", 1, n);
        PadicNumber x(std::move(p));
        u = mod_reduce(u, pow_int(x.p_, n));
        if (u == 0) return zero_to_precision(x.p_, static_cast<long>(e) + n);
        long t = int_val_p(u, x.p_);
        if (t >= n) return zero_to_precision(x.p_, static_cast<long>(e) + n);
        x.zero_form_ = false;
        x.e_ = e + t;
        x.u_ = u / pow_int(x.p_, t);
        x.rel_n_ = n - t;
        x.abs_n_ = static_cast<long>(x.e_) + x.rel_n_;
        return x;
    }

    // The image of an exact rational at absolute precision abs_n.
    static PadicNumber from_rational(const Int& p, const Rational& q, long abs_n) {
        if (q == 0) return zero_to_precision(p, abs_n);
        require_prime(p, "PadicNumber");
        long e = rational_val_p(q, p);
        if (e >= abs_n) return zero_to_precision(p, abs_n);
        long n = abs_n - e;
        Int mod = pow_int(p, n);
        Rational unit = e >= 0 ? q / Rational(pow_int(p, e)) : q * Rational(pow_int(p, -e));
        Int u = mod_reduce(numerator(unit), mod) * mod_inverse(denominator(unit), mod) % mod;
        return unit_form(p, e, u, n);
    }

    const Int& p() const { return p_; }
    bool is_zero_form() const { return zero_form_; }
    const Int& exponent() const {
        if (zero_form_) throw PrecisionError("zero form has no determined exponent", 1, 0);
        return e_;
    }
    const Int& unit_residue() const {
        if (zero_form_) throw PrecisionError("zero form has no unit residue", 1, 0);
        return u_;
    }
    long rel_precision() const {
        if (zero_form_) throw PrecisionError("zero form has no relative precision", 1, 0);
        return rel_n_;
    }
    long abs_precision() const { return abs_n_; }

    // structural equality, precision included
    bool operator==(const PadicNumber& o) const {
        return p_ == o.p_ && zero_form_ == o.zero_form_ && abs_n_ == o.abs_n_ &&
               (zero_form_ || (e_ == o.e_ && u_ == o.u_ && rel_n_ == o.rel_n_));
    }

private:
    explicit PadicNumber(Int p) : p_(std::move(p)) {}

    Int p_;
    bool zero_form_ = true;
    Int e_ = 0;   // unit form: exact valuation
    Int u_ = 0;   // unit form: residue in [1, p^rel_n), p does not divide u
    long rel_n_ = 0;
    long abs_n_ = 0;  // invariant: unit form has abs_n = e + rel_n
};

namespace detail {

inline void require_same_prime(const PadicNumber& a, const PadicNumber& b, const char* who) {
    if (a.p() != b.p())
        throw DomainMismatchError(std::string(who) + ": prime mismatch (" + to_string(a.p()) +
                                  " vs " + to_string(b.p()) + ")");
}

}  // namespace detail

inline PadicNumber padic_add(const PadicNumber& a, const PadicNumber& b) {
    detail::require_same_prime(a, b, "padic_add");
    const Int& p = a.p();
    if (a.is_zero_form() && b.is_zero_form())
        return PadicNumber::zero_to_precision(p, std::min(a.abs_precision(), b.abs_precision()));
    if (a.is_zero_form() || b.is_zero_form()) {
        const PadicNumber& z = a.is_zero_form() ? a : b;
        const PadicNumber& u = a.is_zero_form() ? b : a;
        long abs = std::min(z.abs_precision(), u.abs_precision());
        if (u.exponent() >= abs) return PadicNumber::zero_to_precision(p, abs);
        long n = abs - static_cast<long>(u.exponent());
        return PadicNumber::unit_form(p, u.exponent(), u.unit_residue() % pow_int(p, n), n);
    }
    const PadicNumber& lo = a.exponent() <= b.exponent() ? a : b;
    const PadicNumber& hi = a.exponent() <= b.exponent() ? b : a;
    long abs = std::min(lo.abs_precision(), hi.abs_precision());
    long room = abs - static_cast<long>(lo.exponent());  // >= 1 always
    Int mod = pow_int(p, room);
    Int shift = pow_int(p, static_cast<long>(hi.exponent() - lo.exponent()));
    Int w = (lo.unit_residue() + hi.unit_residue() * shift) % mod;
    return PadicNumber::unit_form(p, lo.exponent(), w, room);
}

inline PadicNumber padic_neg(const PadicNumber& a) {
    if (a.is_zero_form()) return a;
    Int mod = pow_int(a.p(), a.rel_precision());
    return PadicNumber::unit_form(a.p(), a.exponent(), mod - a.unit_residue(), a.rel_precision());
}

inline PadicNumber padic_sub(const PadicNumber& a, const PadicNumber& b) {
    return padic_add(a, padic_neg(b));
}

inline PadicNumber padic_mul(const PadicNumber& a, const PadicNumber& b) {
    detail::require_same_prime(a, b, "padic_mul");
    const Int& p = a.p();
    if (a.is_zero_form() && b.is_zero_form())
        return PadicNumber::zero_to_precision(p, a.abs_precision() + b.abs_precision());
    if (a.is_zero_form() || b.is_zero_form()) {
        const PadicNumber& z = a.is_zero_form() ? a : b;
        const PadicNumber& u = a.is_zero_form() ? b : a;
        return PadicNumber::zero_to_precision(
            p, z.abs_precision() + static_cast<long>(u.exponent()));
    }
    long n = std::min(a.rel_precision(), b.rel_precision());
    Int u = a.unit_residue() * b.unit_residue() % pow_int(p, n);
    return PadicNumber::unit_form(p, a.exponent() + b.exponent(), u, n);
}

namespace detail {

// Hensel/Newton inverse of the unit u mod p^n: the Fermat inverse mod p is
// lifted with x <- x(2 - ux), doubling the correct digits each round.
inline Int newton_unit_inverse(const Int& u, const Int& p, long n) {
    Int x = mod_pow(u, p - 2, p);  // Fermat inverse mod p seeds the lift
    long k = 1;
    while (k < n) {
        k = std::min(2 * k, n);
        Int mod = pow_int(p, k);
        x = x * mod_reduce(2 - u * x, mod) % mod;
    }
    return mod_reduce(x, pow_int(p, n));
}

}  // namespace detail

// Total by convention: the zero form maps to itself ("0^-1 = 0").
inline PadicNumber padic_inv(const PadicNumber& a) {
    if (a.is_zero_form()) return a;
    Int u = detail::newton_unit_inverse(a.unit_residue(), a.p(), a.rel_precision());
    return PadicNumber::unit_form(a.p(), -a.exponent(), u, a.rel_precision());
}

// Forgets digits beyond absolute precision abs_n (never invents any).
inline PadicNumber reduce_to_absolute(const PadicNumber& a, long abs_n) {
    if (a.is_zero_form())
        return PadicNumber::zero_to_precision(a.p(), std::min(a.abs_precision(), abs_n));
    if (a.exponent() >= abs_n) return PadicNumber::zero_to_precision(a.p(), abs_n);
    long n = std::min<long>(a.rel_precision(), abs_n - static_cast<long>(a.exponent()));
    return PadicNumber::unit_form(a.p(), a.exponent(), a.unit_residue() % pow_int(a.p(), n), n);
}

// True when a and b carry the same digits up to the shared precision, i.e.
// their difference is indistinguishable from zero.
inline bool padic_agree(const PadicNumber& a, const PadicNumber& b) {
    return padic_sub(a, b).is_zero_form();
}

/**
 * Textual form: unit digits little-endian d0.. printed reversed behind an
 * ellipsis, e.g. 16 = 1 + 2*3 + 1*9 at five 3-adic digits is
 * "…00121;p=3;N=5"; a nonzero exponent appends ";e=k"; the zero form prints
 * "0;p=3;N=5".  Parsing round-trips bit-exactly.  For p > 10 the digits are
 * dot-separated decimal numbers.
 */
inline std::string to_string(const PadicNumber& a) {
    std::string tail = ";p=" + to_string(a.p()) + ";N=" +
                       std::to_string(a.is_zero_form() ? a.abs_precision() : a.rel_precision());
    if (a.is_zero_form()) return "0" + tail;
    std::vector<Int> digits;
    Int u = a.unit_residue();
    for (long i = 0; i < a.rel_precision(); ++i) {
        digits.push_back(u % a.p());
        u /= a.p();
    }
    std::string s = "…";
    for (auto it = digits.rbegin(); it != digits.rend(); ++it) {
        s += to_string(*it);
        if (a.p() > 10 && std::next(it) != digits.rend()) s += '.';
    }
    if (a.exponent() != 0) tail += ";e=" + to_string(a.exponent());
    return s + tail;
}

inline PadicNumber parse_padic(const std::string& s) {
    std::vector<std::string> fields = detail::split_fields(s, ';');
    if (fields.size() < 3) throw ParseError("p-adic syntax: <digits>;p=<p>;N=<n>[;e=<k>]");
    Int p = 0;
    long n = 0;
    Int e = 0;
    bool have_p = false, have_n = false;
    for (std::size_t i = 1; i < fields.size(); ++i) {
        const std::string& f = fields[i];
        try {
            if (f.rfind("p=", 0) == 0) { p = Int(f.substr(2)); have_p = true; }
            else if (f.rfind("N=", 0) == 0) { n = std::stol(f.substr(2)); have_n = true; }
            else if (f.rfind("e=", 0) == 0) e = Int(f.substr(2));
            else throw ParseError("unknown p-adic field '" + f + "'");
        } catch (const ParseError&) {
            throw;
        } catch (const std::exception&) {
            throw ParseError("bad p-adic field '" + f + "'");
        }
    }
    if (!have_p || !have_n) throw ParseError("p-adic form needs p= and N= fields");

    const std::string& body = fields[0];
    if (body == "0") {
        if (e != 0) throw ParseError("the zero form carries no exponent");
        return PadicNumber::zero_to_precision(p, n);
    }
    std::string digits = body;
    if (digits.rfind("…", 0) == 0) digits = digits.substr(std::string("…").size());
    else if (digits.rfind("...", 0) == 0) digits = digits.substr(3);
    else throw ParseError("unit form must start with an ellipsis");
    if (digits.empty()) throw ParseError("unit form has no digits");

    std::vector<Int> ds;  // most significant first, as printed
    try {
        if (p > 10) {
            for (const std::string& d : detail::split_fields(digits, '.')) ds.push_back(Int(d));
        } else {
            for (char c : digits) {
                if (c < '0' || c > '9') throw ParseError("bad digit");
                ds.push_back(Int(c - '0'));
            }
        }
    } catch (const ParseError&) {
        throw;
    } catch (const std::exception&) {
        throw ParseError("bad p-adic digits '" + digits + "'");
    }
    if (static_cast<long>(ds.size()) != n)
        throw ParseError("digit count " + std::to_string(ds.size()) + " does not match N=" +
                         std::to_string(n));
    Int u = 0;
    for (const Int& d : ds) {
        if (d < 0 || d >= p) throw ParseError("digit out of range for p = " + to_string(p));
        u = u * p + d;
    }
    if (u % p == 0) throw ParseError("unit form must have a nonzero last digit (p does not divide u)");
    return PadicNumber::unit_form(p, e, u, n);
}

}  // namespace adiclab
