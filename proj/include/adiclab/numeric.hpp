#pragma once

#include <boost/integer/extended_euclidean.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "adiclab/error.hpp"

namespace adiclab {

using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Int numerator(const Rational& q) { return boost::multiprecision::numerator(q); }
inline Int denominator(const Rational& q) { return boost::multiprecision::denominator(q); }

inline bool is_integer(const Rational& q) { return denominator(q) == 1; }

// x^e for e >= 0.
inline Int pow_int(const Int& x, long e) {
    if (e < 0) throw Error("pow_int: negative exponent");
    Int acc = 1, base = x;
    for (long k = e; k > 0; k >>= 1) {
        if (k & 1) acc *= base;
        if (k > 1) base *= base;
    }
    return acc;
}

namespace detail {

inline std::vector<std::string> split_fields(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        std::size_t pos = s.find(sep, start);
        if (pos == std::string::npos) {
            out.push_back(s.substr(start));
            return out;
        }
        out.push_back(s.substr(start, pos - start));
        start = pos + 1;
    }
}

}  // namespace detail

// Largest integer <= q.
inline Int floor_rational(const Rational& q) {
    Int n = numerator(q);
    Int d = denominator(q);  // > 0 in canonical form
    Int f = n / d;
    if (n % d != 0 && n < 0) --f;
    return f;
}

// Canonical representative of x mod m in [0, m).
inline Int mod_reduce(const Int& x, const Int& m) {
    Int r = x % m;
    if (r < 0) r += m;
    return r;
}

// Inverse of a mod m for gcd(a, m) = 1.
inline Int mod_inverse(const Int& a, const Int& m) {
    auto r = boost::integer::extended_euclidean(mod_reduce(a, m), m);
    if (r.gcd != 1) throw Error("mod_inverse: argument not a unit");
    return mod_reduce(r.x, m);
}

// a^e mod m for e >= 0.
inline Int mod_pow(const Int& a, const Int& e, const Int& m) {
    return boost::multiprecision::powm(mod_reduce(a, m), e, m);
}

// Multiplicity of the prime p in the nonzero integer x.
inline long int_val_p(Int x, const Int& p) {
    if (x == 0) throw Error("int_val_p: zero has no finite valuation");
    long v = 0;
    while (x % p == 0) {
        x /= p;
        ++v;
    }
    return v;
}

// Additive p-adic valuation of a nonzero rational.
inline long rational_val_p(const Rational& q, const Int& p) {
    if (q == 0) throw Error("rational_val_p: zero has no finite valuation");
    return int_val_p(numerator(q), p) - int_val_p(denominator(q), p);
}

// Trial division; sufficient for the desk-scale primes used here.
inline bool is_prime(const Int& n) {
    if (n < 2) return false;
    for (Int d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

inline void require_prime(const Int& p, const char* who) {
    if (!is_prime(p)) throw Error(std::string(who) + ": p must be prime");
}

inline std::string to_string(const Rational& q) {
    std::ostringstream os;
    os << q;
    return os.str();
}

inline std::string to_string(const Int& n) {
    std::ostringstream os;
    os << n;
    return os.str();
}

// Parses "n" or "n/d" with optional leading minus; lowest terms enforced
// by the rational type itself.
inline Rational parse_rational(const std::string& s) {
    if (s.empty()) throw ParseError("parse_rational: empty input");
    std::size_t slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rational(Int(s));
        Int num(s.substr(0, slash));
        Int den(s.substr(slash + 1));
        if (den == 0) throw ParseError("parse_rational: zero denominator");
        return Rational(num, den);
    } catch (const std::runtime_error& e) {
        throw ParseError(std::string("parse_rational: bad input \"") + s + "\"");
    }
}

} // namespace adiclab
