#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "adiclab/padic.hpp"

using namespace adiclab;

namespace {

PadicNumber fr(const Int& p, const Rational& q, long abs_n) {
    return PadicNumber::from_rational(p, q, abs_n);
}

}  // namespace

TEST_CASE("construction and normal form") {
    SECTION("unit form strips p-factors into the exponent") {
        PadicNumber x = PadicNumber::unit_form(3, 0, 18, 4);
        CHECK(!x.is_zero_form());
        CHECK(x.exponent() == 2);
        CHECK(x.unit_residue() == 2);
        CHECK(x.rel_precision() == 2);
        CHECK(x.abs_precision() == 4);
    }

    SECTION("a residue that is all p-factors collapses to the zero form") {
        PadicNumber x = PadicNumber::unit_form(3, 1, 81, 4);
        CHECK(x.is_zero_form());
        CHECK(x.abs_precision() == 5);
    }

    SECTION("from_rational") {
        PadicNumber a = fr(3, 40, 4);
        CHECK(a.exponent() == 0);
        CHECK(a.unit_residue() == 40);
        CHECK(a.rel_precision() == 4);

        // -1/2 = 1 + 3 + 9 + 27 + ... in Z_3
        PadicNumber b = fr(3, Rational(-1, 2), 4);
        CHECK(b.unit_residue() == 40);

        PadicNumber c = fr(3, Rational(9, 2), 5);
        CHECK(c.exponent() == 2);
        CHECK(c.unit_residue() == 14);  // 1/2 mod 27
        CHECK(c.rel_precision() == 3);

        CHECK(fr(5, 0, 7).is_zero_form());
        CHECK(fr(3, 81, 3).is_zero_form());  // valuation beyond the window
        PadicNumber d = fr(3, Rational(1, 9), -1);
        CHECK(!d.is_zero_form());
        CHECK(d.exponent() == -2);
        CHECK(d.rel_precision() == 1);

        CHECK_THROWS(fr(4, 1, 3));
    }
}

TEST_CASE("addition and multiplication track precision") {
    SECTION("frozen example: 4 + 2 = 2*3 with one digit lost to carry") {
        PadicNumber a = fr(3, 4, 4);
        PadicNumber b = fr(3, 2, 4);
        PadicNumber s = padic_add(a, b);
        CHECK(s.exponent() == 1);
        CHECK(s.unit_residue() == 2);
        CHECK(s.rel_precision() == 3);
        CHECK(s.abs_precision() == 4);
    }

    SECTION("neutral elements") {
        PadicNumber a = fr(3, 7, 6);
        CHECK(padic_add(a, fr(3, 0, 6)) == a);
        CHECK(padic_mul(a, fr(3, 1, 6)) == a);
        // adding a shallow zero form trims the known digits
        PadicNumber t = padic_add(a, PadicNumber::zero_to_precision(3, 2));
        CHECK(t.abs_precision() == 2);
        CHECK(t.unit_residue() == 7 % 9);
    }

    SECTION("cancellation degrades to the zero form") {
        PadicNumber a = fr(3, 11, 5);
        PadicNumber z = padic_sub(a, a);
        CHECK(z.is_zero_form());
        CHECK(z.abs_precision() == 5);
        CHECK(padic_agree(a, a));
        CHECK(!padic_agree(a, fr(3, 12, 5)));
    }

    SECTION("zero-form precision algebra") {
        PadicNumber z1 = PadicNumber::zero_to_precision(3, 2);
        PadicNumber z2 = PadicNumber::zero_to_precision(3, 5);
        CHECK(padic_add(z1, z2).abs_precision() == 2);
        CHECK(padic_mul(z1, z2).abs_precision() == 7);
        PadicNumber u = fr(3, 9, 6);  // exponent 2
        CHECK(padic_mul(z1, u).abs_precision() == 4);
        CHECK(padic_mul(z1, u).is_zero_form());
    }

    SECTION("prime mismatch") {
        CHECK_THROWS_AS(padic_add(fr(3, 1, 4), fr(5, 1, 4)), DomainMismatchError);
        CHECK_THROWS_AS(padic_mul(fr(3, 1, 4), fr(5, 1, 4)), DomainMismatchError);
    }

    SECTION("big-integer oracle on random integral inputs") {
        std::mt19937_64 rng(431);
        const Int p = 3;
        const long N = 16;
        const Int mod = pow_int(p, N);
        std::uniform_int_distribution<unsigned long long> dist;
        for (int i = 0; i < 300; ++i) {
            Int x = Int(dist(rng)) % mod;
            Int y = Int(dist(rng)) % mod;
            PadicNumber a = fr(p, Rational(x), N);
            PadicNumber b = fr(p, Rational(y), N);
            CHECK(padic_agree(padic_add(a, b), fr(p, Rational(x + y), N)));
            CHECK(padic_agree(padic_mul(a, b), fr(p, Rational(x * y), N)));
            CHECK(padic_agree(padic_sub(a, b), fr(p, Rational(x - y), N)));
        }
    }
}

TEST_CASE("inversion") {
    SECTION("frozen: inv(2) = 313 mod 5^4") {
        PadicNumber x = padic_inv(fr(5, 2, 4));
        CHECK(x.unit_residue() == 313);
        CHECK(x.exponent() == 0);
        CHECK(2 * 313 % 625 == 1);
    }

    SECTION("conventions and exponent negation") {
        CHECK(padic_inv(fr(3, 1, 5)) == fr(3, 1, 5));
        PadicNumber z = PadicNumber::zero_to_precision(3, 4);
        CHECK(padic_inv(z) == z);
        CHECK(padic_inv(fr(3, 9, 5)).exponent() == -2);
    }

    SECTION("Newton lift agrees with the extended-gcd oracle") {
        std::mt19937_64 rng(432);
        std::uniform_int_distribution<unsigned long long> dist;
        for (const Int& p : {Int(2), Int(3), Int(5), Int(7)}) {
            for (int i = 0; i < 50; ++i) {
                long n = 1 + static_cast<long>(dist(rng) % 20);
                Int mod = pow_int(p, n);
                Int u = Int(dist(rng)) % mod;
                if (u % p == 0) u += 1;
                if (u % p == 0) continue;  // p = 2 can bump into the next even
                PadicNumber a = PadicNumber::unit_form(p, 0, u, n);
                PadicNumber inv = padic_inv(a);
                CHECK(inv.unit_residue() == mod_inverse(u, mod));
                CHECK(padic_agree(padic_mul(a, inv), fr(p, 1, n)));
            }
        }
    }
}

TEST_CASE("reduction to a coarser absolute precision") {
    PadicNumber a = fr(3, 40, 4);
    PadicNumber b = reduce_to_absolute(a, 2);
    CHECK(b.rel_precision() == 2);
    CHECK(b.unit_residue() == 4);
    CHECK(reduce_to_absolute(a, 9) == a);  // never invents digits
    CHECK(reduce_to_absolute(fr(3, 9, 5), 2).is_zero_form());
    CHECK(reduce_to_absolute(PadicNumber::zero_to_precision(3, 5), 3).abs_precision() == 3);
}

TEST_CASE("textual digits round-trip bit-exactly") {
    SECTION("frozen strings") {
        CHECK(to_string(fr(3, 16, 5)) == "…00121;p=3;N=5");
        CHECK(to_string(fr(3, Rational(-1, 2), 4)) == "…1111;p=3;N=4");
        CHECK(to_string(PadicNumber::zero_to_precision(3, 5)) == "0;p=3;N=5");
        PadicNumber carry = padic_add(fr(3, 4, 4), fr(3, 2, 4));
        CHECK(to_string(carry) == "…002;p=3;N=3;e=1");
        CHECK(to_string(fr(3, Rational(1, 9), 1)) == "…001;p=3;N=3;e=-2");
    }

    SECTION("parse inverts print") {
        std::mt19937_64 rng(433);
        std::uniform_int_distribution<unsigned long long> dist;
        std::uniform_int_distribution<long> edist(-6, 6);
        for (const Int& p : {Int(2), Int(3), Int(7), Int(13)}) {
            for (int i = 0; i < 60; ++i) {
                long n = 1 + static_cast<long>(dist(rng) % 12);
                Int u = Int(dist(rng)) % pow_int(p, n);
                PadicNumber x = PadicNumber::unit_form(p, edist(rng), u, n);
                CHECK(parse_padic(to_string(x)) == x);
            }
            PadicNumber z = PadicNumber::zero_to_precision(p, 9);
            CHECK(parse_padic(to_string(z)) == z);
        }
        // ASCII ellipsis alias
        CHECK(parse_padic("...00121;p=3;N=5") == fr(3, 16, 5));
        // dot-separated digits beyond base 10
        PadicNumber big = fr(13, 160, 2);
        CHECK(to_string(big) == "…12.4;p=13;N=2");
        CHECK(parse_padic(to_string(big)) == big);
    }

    SECTION("malformed forms are rejected") {
        CHECK_THROWS_AS(parse_padic("00121;p=3;N=5"), ParseError);
        CHECK_THROWS_AS(parse_padic("…0012;p=3;N=5"), ParseError);   // digit count
        CHECK_THROWS_AS(parse_padic("…00321;p=3;N=5"), ParseError);  // digit >= p
        CHECK_THROWS_AS(parse_padic("…00120;p=3;N=5"), ParseError);  // unit ends in 0
        CHECK_THROWS_AS(parse_padic("…1;N=5"), ParseError);
        CHECK_THROWS_AS(parse_padic("…1;p=3"), ParseError);
        CHECK_THROWS_AS(parse_padic("0;p=3;N=2;e=1"), ParseError);
        CHECK_THROWS_AS(parse_padic("…1;p=3;N=1;q=2"), ParseError);
        CHECK_THROWS_AS(parse_padic("1"), ParseError);
    }
}
