#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "adiclab/completion.hpp"

using namespace adiclab;

namespace {

PadicNumber fr(const Int& p, const Rational& q, long abs_n) {
    return PadicNumber::from_rational(p, q, abs_n);
}

// partial sums of the geometric series 1 + 3 + 9 + ...
CauchySequenceCompletion geometric_sums_base3() {
    return CauchySequenceCompletion(
        3,
        [](long n) {
            Rational s = 0;
            for (long i = 0; i <= n; ++i) s += Rational(pow_int(3, i));
            return s;
        },
        [](long k) { return std::max(k - 1, 0L); }, 0);
}

}  // namespace

TEST_CASE("limits of certified Cauchy sequences") {
    SECTION("constant sequences embed the rationals") {
        CauchySequenceCompletion c = CauchySequenceCompletion::constant(2, 7);
        CHECK(limit_of_cauchy(c, 5) == fr(2, 7, 5));
    }

    SECTION("geometric partial sums: 1+3+9+27 = 40 mod 81") {
        CauchySequenceCompletion s = geometric_sums_base3();
        PadicNumber x = limit_of_cauchy(s, 4);
        CHECK(x.exponent() == 0);
        CHECK(x.unit_residue() == 40);
        CHECK(x.rel_precision() == 4);
        // -1/2 is the closed form of the limit
        CHECK(x == fr(3, Rational(-1, 2), 4));
    }

    SECTION("the limit is independent of the representative index") {
        CauchySequenceCompletion s = geometric_sums_base3();
        long base = s.modulus_at(4);
        for (long j = 0; j <= 5; ++j)
            CHECK(fr(3, s.term(base + j), 4) == limit_of_cauchy(s, 4));
    }

    SECTION("geometric identity against Hensel inversion at high precision") {
        PadicNumber lim = limit_of_cauchy(geometric_sums_base3(), 16);
        PadicNumber inv = padic_inv(fr(3, -2, 16));  // 1/(1-3)
        CHECK(padic_agree(lim, inv));
        CHECK(lim == inv);
    }

    SECTION("arithmetic on sequences matches arithmetic on limits") {
        CauchySequenceCompletion s = geometric_sums_base3();
        CauchySequenceCompletion t = CauchySequenceCompletion::constant(3, Rational(5, 2));
        CHECK(padic_agree(limit_of_cauchy(cauchy_add(s, t), 6),
                          padic_add(limit_of_cauchy(s, 6), limit_of_cauchy(t, 6))));
        CHECK(padic_agree(limit_of_cauchy(cauchy_mul(s, t), 6),
                          padic_mul(limit_of_cauchy(s, 6), limit_of_cauchy(t, 6))));
        CHECK_THROWS_AS(cauchy_add(s, CauchySequenceCompletion::constant(5, 1)),
                        DomainMismatchError);
    }
}

TEST_CASE("the two completions agree on randomized sequences") {
    for (const Int& p : {Int(2), Int(3), Int(5)}) {
        PropertyReport rep = compare_completions(p, 16, 150, 20260814);
        CAPTURE(p, rep.violations);
        CHECK(rep.ok());
        CHECK(rep.cases_checked == 600);
    }
    CHECK_THROWS_AS(compare_completions(3, 0, 1, 1), DomainMismatchError);
}

TEST_CASE("extension by continuity") {
    auto identity_modulus = [](long n) { return n; };

    SECTION("squaring: (1+3+9)^2 = 169 = 7 mod 27") {
        PadicNumber x = fr(3, 13, 5);
        PadicNumber y = extend_by_continuity([](const Rational& q) { return q * q; },
                                             identity_modulus, x, 3);
        CHECK(y.unit_residue() == 7);
        CHECK(y.exponent() == 0);
        CHECK(y.rel_precision() == 3);
    }

    SECTION("identity extends to the identity") {
        std::mt19937_64 rng(441);
        std::uniform_int_distribution<long> dist(-4000, 4000);
        for (int i = 0; i < 100; ++i) {
            Rational q(dist(rng));
            PadicNumber x = fr(3, q, 9);
            CHECK(extend_by_continuity([](const Rational& r) { return r; }, identity_modulus, x,
                                       5) == fr(3, q, 5));
        }
    }

    SECTION("the extension agrees with f on the dense image") {
        std::mt19937_64 rng(442);
        std::uniform_int_distribution<long> num(-300, 300);
        std::uniform_int_distribution<long> den(1, 40);
        int used = 0;
        for (int i = 0; used < 100 && i < 1000; ++i) {
            Rational q(num(rng), den(rng));
            if (q != 0 && rational_val_p(q, 3) < 0) continue;  // stay in Z_(3)
            ++used;
            PadicNumber x = fr(3, q, 10);
            PadicNumber lhs = extend_by_continuity([](const Rational& r) { return r * r; },
                                                   identity_modulus, x, 6);
            CHECK(lhs == fr(3, q * q, 6));
        }
        CHECK(used == 100);
    }

    SECTION("locally constant functions become exact: val_3(18) = 2") {
        PadicNumber x = fr(3, 18, 5);
        PadicNumber v = extend_by_continuity(
            [](const Rational& q) { return q == 0 ? Rational(0) : Rational(rational_val_p(q, 3)); },
            [](long) { return 3L; }, x, 4);
        CHECK(v.unit_residue() == 2);
        CHECK(v.exponent() == 0);
    }

    SECTION("insufficient precision refuses with the shortfall") {
        PadicNumber x = fr(3, 7, 2);
        try {
            extend_by_continuity([](const Rational& q) { return q; }, [](long) { return 5L; }, x,
                                 4);
            FAIL("expected PrecisionError");
        } catch (const PrecisionError& e) {
            CHECK(e.needed == 5);
            CHECK(e.available == 2);
        }
    }
}

TEST_CASE("valuation extended to the completion") {
    ValuationDescriptor v3 = ValuationDescriptor::padic(3);

    SECTION("exact on unit forms") {
        ValuationBound a = extend_valuation(v3, fr(3, 9, 5));
        CHECK(a.exact);
        CHECK(eq(a.value, ValueMonoidElement::unit(GroupElement::rank1(-2))));
        ValuationBound b = extend_valuation(v3, fr(3, 1, 5));
        CHECK(b.exact);
        CHECK(b.value.is_one());
    }

    SECTION("one-sided bound on zero forms") {
        ValuationBound z = extend_valuation(v3, PadicNumber::zero_to_precision(3, 4));
        CHECK(!z.exact);
        CHECK(eq(z.value, ValueMonoidElement::unit(GroupElement::rank1(-4))));
    }

    SECTION("scale and guards") {
        ValuationBound s = extend_valuation(ValuationDescriptor::padic(3, 2), fr(3, 9, 5));
        CHECK(eq(s.value, ValueMonoidElement::unit(GroupElement::rank1(-4))));
        CHECK_THROWS_AS(extend_valuation(v3, fr(5, 1, 3)), DomainMismatchError);
        CHECK_THROWS_AS(extend_valuation(ValuationDescriptor::xadic_q(), fr(3, 1, 3)),
                        UnsupportedInstanceError);
    }

    SECTION("ultrametric inequality on determined values") {
        std::mt19937_64 rng(443);
        std::uniform_int_distribution<long> dist(1, 5000);
        for (int i = 0; i < 200; ++i) {
            PadicNumber a = fr(3, dist(rng), 12);
            PadicNumber b = fr(3, dist(rng), 12);
            PadicNumber sum = padic_add(a, b);
            if (sum.is_zero_form()) continue;
            ValueMonoidElement va = extend_valuation(v3, a).value;
            ValueMonoidElement vb = extend_valuation(v3, b).value;
            ValueMonoidElement vs = extend_valuation(v3, sum).value;
            CHECK(leq(vs, leq(va, vb) ? vb : va));
        }
    }
}

TEST_CASE("truncated power series") {
    SECTION("arithmetic respects the precision window") {
        TruncatedSeries a = TruncatedSeries::over_q({1, 2, 3});
        TruncatedSeries b = TruncatedSeries::over_q({0, 1, 0, 5});
        TruncatedSeries s = series_add(a, b);
        CHECK(s.precision() == 3);
        CHECK(s.coefficient(1) == 3);
        TruncatedSeries m = series_mul(a, b);
        CHECK(m.precision() == 3);
        CHECK(m.coefficient(0) == 0);
        CHECK(m.coefficient(1) == 1);
        CHECK(m.coefficient(2) == 2);
        CHECK_THROWS_AS(s.coefficient(3), PrecisionError);
        CHECK_THROWS_AS(series_add(a, TruncatedSeries::over_fp(3, {1})), DomainMismatchError);
    }

    SECTION("coefficients over F_p are reduced residues") {
        TruncatedSeries a = TruncatedSeries::over_fp(3, {4, Rational(1, 2), -1});
        CHECK(a.coefficient(0) == 1);
        CHECK(a.coefficient(1) == 2);  // 1/2 = 2 mod 3
        CHECK(a.coefficient(2) == 2);
        CHECK_THROWS_AS(TruncatedSeries::over_fp(3, {Rational(1, 3)}), DomainMismatchError);
    }

    SECTION("partial sums of a series converge to it X-adically") {
        std::vector<Rational> cs = {1, 0, 2, 1, 0, 0, 2, 1, 1, 2};
        TruncatedSeries s = TruncatedSeries::over_fp(3, cs);
        for (long k = 0; k <= s.precision(); ++k) {
            std::vector<Rational> head(cs.begin(), cs.begin() + k);
            head.resize(cs.size(), Rational(0));
            TruncatedSeries sk = TruncatedSeries::over_fp(3, head);
            std::optional<long> low = series_sub(s, sk).low_index();
            if (k >= s.precision()) {
                CHECK(!low);
            } else if (low) {
                CHECK(*low >= k);
            }
        }
        // zero tail to full precision means convergence achieved
        CHECK(!series_sub(s, s).low_index());
    }
}

TEST_CASE("Tate polynomials: Gauss norm and evaluation") {
    SECTION("Gauss norm is the best coefficient norm") {
        CHECK(gauss_norm(TatePolynomial(3, parse_element("3 + X"))).is_one());
        CHECK(gauss_norm(TatePolynomial(3, RingElement::rational(0))).is_zero());
        CHECK(eq(gauss_norm(TatePolynomial(3, parse_element("1/3*X + 9"))),
                 ValueMonoidElement::unit(GroupElement::rank1(1))));
        CHECK(TatePolynomial(3, parse_element("3 + X")).is_integral());
        CHECK(!TatePolynomial(3, parse_element("1/3*X")).is_integral());
        CHECK_THROWS_AS(TatePolynomial(3, parse_element("X^-1")), DomainMismatchError);
    }

    SECTION("frozen evaluation: (X^2+1)(3) = 10 mod 3^4") {
        TatePolynomial f(3, parse_element("X^2 + 1"));
        PadicNumber r = eval_at(f, fr(3, 3, 4), 4);
        CHECK(r == fr(3, 10, 4));
    }

    SECTION("evaluation agrees with exact rational evaluation") {
        std::mt19937_64 rng(444);
        std::uniform_int_distribution<long> coef(-9, 9);
        std::uniform_int_distribution<long> pt(0, 2000);
        for (int i = 0; i < 100; ++i) {
            std::map<long, Rational> c;
            for (long k = 0; k <= 4; ++k) c[k] = Rational(coef(rng));
            RingElement fe = RingElement::from_coeffs(std::move(c), ElemKind::poly);
            TatePolynomial f(3, fe);
            Rational a(pt(rng));
            PadicNumber r = eval_at(f, fr(3, a, 12), 8);
            CHECK(padic_agree(r, fr(3, eval_at_rational(fe, a), 8)));
        }
    }

    SECTION("non-integral coefficients still evaluate, with slack digits") {
        TatePolynomial f(3, parse_element("1/3*X"));
        PadicNumber r = eval_at(f, fr(3, 3, 6), 4);
        CHECK(r == fr(3, 1, 4));
    }

    SECTION("the point must be integral") {
        TatePolynomial f(3, parse_element("X + 1"));
        CHECK_THROWS_AS(eval_at(f, fr(3, Rational(1, 3), 4), 3), DomainMismatchError);
        CHECK_NOTHROW(eval_at(f, PadicNumber::zero_to_precision(3, 4), 3));
        CHECK_THROWS_AS(eval_at(f, PadicNumber::zero_to_precision(3, -1), 3),
                        DomainMismatchError);
        CHECK_THROWS_AS(eval_at(f, fr(5, 1, 4), 3), DomainMismatchError);
    }
}
