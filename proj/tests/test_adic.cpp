#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <vector>

#include "adiclab/adic.hpp"

using namespace adiclab;

namespace {

RingElement rat(const Rational& q) { return RingElement::rational(q); }

RingElement parse(const std::string& s) { return parse_element(s); }

// Oracle: the subgroup mZ is open in the p-adic topology iff some p^n is a
// multiple of m.  Checked by raw divisibility up to a generous bound.
bool subgroup_open_oracle(const Int& m, const Int& p, long n_bound = 64) {
    if (m == 0) return false;
    for (long n = 0; n <= n_bound; ++n)
        if (pow_int(p, n) % m == 0) return true;
    return false;
}

}  // namespace

TEST_CASE("ideal power membership") {
    AdicRingInstance z3 = AdicRingInstance::int_with_p(3);
    CHECK(in_ideal_power(z3, rat(18), 2));
    CHECK(!in_ideal_power(z3, rat(18), 3));
    CHECK(in_ideal_power(z3, rat(0), 7));
    CHECK(in_ideal_power(z3, rat(5), 0));
    CHECK_THROWS_AS(in_ideal_power(z3, rat(Rational(1, 2)), 1), DomainMismatchError);
    CHECK_THROWS_AS(in_ideal_power(z3, rat(2), -1), DomainMismatchError);

    AdicRingInstance f2 = AdicRingInstance::poly_over_fp(2);
    CHECK(!in_ideal_power(f2, parse("X^3 + X^2"), 3));
    CHECK(in_ideal_power(f2, parse("X^3 + X^2"), 2));
    // 2X^3 + X^2 reduces to X^2 mod 2
    CHECK(!in_ideal_power(f2, parse("2*X^3 + X^2"), 3));
    CHECK(in_ideal_power(f2, parse("2*X^2"), 100));  // zero in F_2[X]
    CHECK_THROWS_AS(in_ideal_power(f2, parse("1/2*X"), 1), DomainMismatchError);
    CHECK_THROWS_AS(in_ideal_power(f2, parse("X^-1"), 1), DomainMismatchError);

    AdicRingInstance q3 = AdicRingInstance::rationals_padic(3);
    CHECK(in_ideal_power(q3, rat(Rational(9, 2)), 2));
    CHECK(!in_ideal_power(q3, rat(Rational(1, 3)), 1));
    // the n = 0 basic subgroup of Q is Z_(3), and 1/3 is not 3-integral
    CHECK(!in_ideal_power(q3, rat(Rational(1, 3)), 0));
    CHECK(in_ideal_power(q3, rat(Rational(1, 2)), 0));
    CHECK_THROWS_AS(in_ideal_power(q3, RingElement::variable(), 1), DomainMismatchError);
}

TEST_CASE("topological nilpotence within a budget") {
    BoundedSearchBudget budget{12};

    SECTION("frozen instances") {
        NilpotenceResult r =
            is_topologically_nilpotent(AdicRingInstance::int_with_p(5), rat(10), budget);
        CHECK(r.yes);
        for (long n = 1; n <= 12; ++n) CHECK(r.witness.at(n) == n);

        NilpotenceResult one =
            is_topologically_nilpotent(AdicRingInstance::int_with_p(5), rat(1), budget);
        CHECK(!one.yes);
        CHECK(one.failed_n == 1);
        CHECK(one.k_cap == 12);

        NilpotenceResult zero =
            is_topologically_nilpotent(AdicRingInstance::int_with_p(5), rat(0), budget);
        CHECK(zero.yes);
        CHECK(zero.witness.at(12) == 1);

        NilpotenceResult poly = is_topologically_nilpotent(AdicRingInstance::poly_over_fp(2),
                                                           parse("X + X^2"), budget);
        CHECK(poly.yes);
        for (long n = 1; n <= 12; ++n) CHECK(poly.witness.at(n) == n);

        // val_3(9) = 2: k(n) = ceil(n/2)
        NilpotenceResult nine =
            is_topologically_nilpotent(AdicRingInstance::int_with_p(3), rat(9), budget);
        CHECK(nine.yes);
        CHECK(nine.witness.at(1) == 1);
        CHECK(nine.witness.at(4) == 2);
        CHECK(nine.witness.at(5) == 3);

        NilpotenceResult frac = is_topologically_nilpotent(
            AdicRingInstance::rationals_padic(3), rat(Rational(3, 5)), budget);
        CHECK(frac.yes);
        CHECK(frac.witness.at(7) == 7);

        CHECK(!is_topologically_nilpotent(AdicRingInstance::rationals_padic(3),
                                          rat(Rational(1, 3)), budget)
                   .yes);
    }

    SECTION("witness map matches the valuation formula k(n) = ceil(n / val)") {
        std::mt19937_64 rng(421);
        std::uniform_int_distribution<long> coef(1, 40);
        AdicRingInstance q5 = AdicRingInstance::rationals_padic(5);
        for (int i = 0; i < 60; ++i) {
            long v = 1 + static_cast<long>(i % 3);
            Rational x = Rational(pow_int(5, v)) * Rational(coef(rng) * 5 + 1, coef(rng) * 5 + 2);
            NilpotenceResult r = is_topologically_nilpotent(q5, rat(x), budget);
            REQUIRE(r.yes);
            for (long n = 1; n <= budget.max_power; ++n)
                CHECK(r.witness.at(n) == (n + v - 1) / v);
        }
    }
}

TEST_CASE("power boundedness via the instance valuation") {
    BoundedSearchBudget budget{8};
    AdicRingInstance q3 = AdicRingInstance::rationals_padic(3);

    CHECK(is_power_bounded(q3, rat(Rational(1, 2)), budget).yes);
    PowerBoundedResult bad = is_power_bounded(q3, rat(Rational(1, 3)), budget);
    CHECK(!bad.yes);
    CHECK(bad.n == 1);
    CHECK(bad.k == 1);
    PowerBoundedResult worse = is_power_bounded(q3, rat(Rational(2, 27)), budget);
    CHECK(!worse.yes);
    CHECK(worse.n == 3);
    CHECK(is_power_bounded(q3, rat(0), budget).yes);

    // Z and F_p[X] have no elements of negative valuation
    CHECK(is_power_bounded(AdicRingInstance::int_with_p(3), rat(-14), budget).yes);
    CHECK(is_power_bounded(AdicRingInstance::poly_over_fp(2), parse("X^5 + 1"), budget).yes);
}

TEST_CASE("valuation balls") {
    ValuationDescriptor v3 = ValuationDescriptor::padic(3);
    CHECK(valuation_ball_member(v3, rat(0), ValueMonoidElement::one(), rat(3)));
    CHECK(!valuation_ball_member(v3, rat(0), ValueMonoidElement::one(), rat(1)));
    // y = x is in every ball: v(0) = Zero is the bottom
    CHECK(valuation_ball_member(v3, rat(7), ValueMonoidElement::unit(GroupElement::rank1(-50)),
                                rat(7)));
    // strictness: v(3) = Unit(-1) is not < Unit(-1)
    CHECK(!valuation_ball_member(v3, rat(0), ValueMonoidElement::unit(GroupElement::rank1(-1)),
                                 rat(3)));
    CHECK_THROWS_AS(valuation_ball_member(v3, rat(0), ValueMonoidElement::zero(), rat(3)),
                    DomainMismatchError);

    // ball at a disc point: v(f - x) with polynomial entries
    ValuationDescriptor g = ValuationDescriptor::from_point(DiscPoint::gauss_pt(3, 0, 1));
    CHECK(valuation_ball_member(g, parse("X"), ValueMonoidElement::one(), parse("X + 3")));
}

TEST_CASE("openness of T times an open subgroup in PID instances") {
    AdicRingInstance z3 = AdicRingInstance::int_with_p(3);

    SECTION("frozen verdicts") {
        OpenCheckResult a = mul_T_open_check(z3, {rat(9), rat(6)}, rat(3));
        CHECK(a.verdict == OpenCheckResult::Verdict::verified);
        CHECK(a.n == 2);

        OpenCheckResult b = mul_T_open_check(z3, {rat(1)}, rat(1));
        CHECK(b.verdict == OpenCheckResult::Verdict::verified);
        CHECK(b.n == 0);

        // span_Z({2}) = 2Z contains no power of 3, so the lemma's hypothesis
        // fails; see docs/notes/open-subgroup-products.md.
        OpenCheckResult c = mul_T_open_check(z3, {rat(2)}, rat(9));
        CHECK(c.verdict == OpenCheckResult::Verdict::refuted);
        CHECK(c.reason == "span_T_not_open");
        CHECK(!subgroup_open_oracle(2, 3));   // span itself
        CHECK(!subgroup_open_oracle(18, 3));  // and the product 2 * 9

        OpenCheckResult d = mul_T_open_check(z3, {rat(9), rat(6)}, rat(2));
        CHECK(d.verdict == OpenCheckResult::Verdict::refuted);
        CHECK(d.reason == "U_not_open");

        OpenCheckResult e = mul_T_open_check(z3, {}, rat(3));
        CHECK(e.verdict == OpenCheckResult::Verdict::refuted);
        CHECK(e.reason == "span_T_not_open");
    }

    SECTION("polynomial instance") {
        AdicRingInstance f2 = AdicRingInstance::poly_over_fp(2);
        OpenCheckResult a = mul_T_open_check(f2, {parse("X^2"), parse("X^3 + X^2")}, parse("X"));
        CHECK(a.verdict == OpenCheckResult::Verdict::verified);
        CHECK(a.n == 3);

        OpenCheckResult b = mul_T_open_check(f2, {parse("X + 1")}, parse("X"));
        CHECK(b.verdict == OpenCheckResult::Verdict::refuted);
        CHECK(b.reason == "span_T_not_open");

        // gcd(X^2 + X, X^2) = X in F_2[X]
        OpenCheckResult c = mul_T_open_check(f2, {parse("X^2 + X"), parse("X^2")}, parse("1"));
        CHECK(c.verdict == OpenCheckResult::Verdict::verified);
        CHECK(c.n == 1);
    }

    SECTION("the field instance is rejected") {
        CHECK_THROWS_AS(mul_T_open_check(AdicRingInstance::rationals_padic(3), {rat(1)}, rat(1)),
                        UnsupportedInstanceError);
    }

    SECTION("generated instances agree with the divisibility oracle") {
        std::mt19937_64 rng(422);
        std::uniform_int_distribution<long> jdist(0, 5);
        std::uniform_int_distribution<long> unit(1, 20);
        const Int p = 3;
        for (int i = 0; i < 100; ++i) {
            long jt = jdist(rng);
            long ju = jdist(rng);
            // T holds p^jt itself plus noisy multiples, so gcd(T) = p^jt
            std::vector<RingElement> T = {rat(Rational(pow_int(p, jt))),
                                          rat(Rational(pow_int(p, jt) * unit(rng))),
                                          rat(Rational(pow_int(p, jt + 1) * unit(rng)))};
            Int u = pow_int(p, ju);
            OpenCheckResult r = mul_T_open_check(z3, T, rat(Rational(u)));
            REQUIRE(r.verdict == OpenCheckResult::Verdict::verified);
            CHECK(r.n == jt + ju);
            // oracle: I^n is inside (gcd(T)*u) and n is minimal
            Int m = pow_int(p, jt) * u;
            CHECK(pow_int(p, r.n) % m == 0);
            if (r.n > 0) CHECK(pow_int(p, r.n - 1) % m != 0);
            CHECK(subgroup_open_oracle(m, p));
        }
    }
}

TEST_CASE("adic ring textual forms") {
    for (const char* s : {"int:3", "polyfp:2", "rat:5"}) {
        AdicRingInstance R = parse_adic_ring(s);
        CHECK(to_string(R) == s);
        CHECK(parse_adic_ring(to_string(R)) == R);
    }
    CHECK_THROWS_AS(parse_adic_ring("int"), ParseError);
    CHECK_THROWS_AS(parse_adic_ring("int:4"), ParseError);
    CHECK_THROWS_AS(parse_adic_ring("ring:3"), ParseError);
}
