#pragma once

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "adiclab/disc_point.hpp"
#include "adiclab/numeric.hpp"
#include "adiclab/ring_element.hpp"

namespace adiclab {

/**
 * Deterministic sample stream for property runs: a fixed seed fixes every
 * draw, so any report assembled from a Sampler is reproducible byte for byte.
 * All draws share one mt19937_64 stream and consume it in call order.
 */
class Sampler {
public:
    explicit Sampler(std::uint64_t seed) : rng_(seed) {}

    std::mt19937_64& rng() { return rng_; }

    // invariant: lo <= hi
    long integer(long lo, long hi) {
        return std::uniform_int_distribution<long>(lo, hi)(rng_);
    }

    Rational rational(long num_bound = 1000, long den_bound = 30) {
        Int num = integer(-num_bound, num_bound);
        Int den = integer(1, den_bound);
        return Rational(num, den);
    }

    Rational nonzero_rational(long num_bound = 1000, long den_bound = 30) {
        for (;;) {
            Rational q = rational(num_bound, den_bound);
            if (q != 0) return q;
        }
    }

    // p-integral rationals (val_p >= 0, zero included): the unit-ball domain
    Rational integral_rational(const Int& p, long num_bound = 1000, long den_bound = 30) {
        for (;;) {
            Rational q = rational(num_bound, den_bound);
            if (q == 0 || rational_val_p(q, p) >= 0) return q;
        }
    }

    // polynomial in Q[X] with integer coefficients; may collapse to a constant
    RingElement poly(long max_deg, long coeff_bound) {
        long d = integer(0, max_deg);
        RingElement acc = RingElement::rational(0);
        for (long i = 0; i <= d; ++i) {
            Rational c(integer(-coeff_bound, coeff_bound));
            if (c == 0) continue;
            acc = add(acc, RingElement::monomial(c, i, ElemKind::poly));
        }
        return acc;
    }

    std::pair<RingElement, RingElement> poly_pair(long max_deg, long coeff_bound) {
        RingElement a = poly(max_deg, coeff_bound);
        RingElement b = poly(max_deg, coeff_bound);
        return {a, b};
    }

    // disc points with integral centers and radii in [0, 3]: all satisfy the
    // Spa condition, so the constructor cannot reject a draw
    DiscPoint point(const Int& p) {
        Rational a(integer(-10, 10));
        switch (integer(0, 2)) {
            case 0:
                return DiscPoint::classical(p, a);
            case 1:
                return DiscPoint::gauss_pt(p, a, Rational(integer(0, 6), 2));
            default:
                return DiscPoint::rank_two(p, a, Rational(integer(1, 6), 2),
                                           integer(0, 1) == 0 ? 1 : -1);
        }
    }

private:
    std::mt19937_64 rng_;
};

}  // namespace adiclab
