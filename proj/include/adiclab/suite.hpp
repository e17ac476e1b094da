#pragma once

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "adiclab/json_io.hpp"
#include "adiclab/sampling.hpp"

namespace adiclab {

/**
 * Configuration for the batch property run behind `suite`: the same battery
 * as the acceptance gate, scaled by the sample count.  A fixed config gives
 * a byte-identical JSON report.
 */
struct SuiteConfig {
    long samples = 200;
    unsigned long seed = 20260814;
    long precision = 16;
    long budget = 16;
    std::vector<long> primes = {2, 3, 5};
};

namespace detail {

inline Json suite_gamma_section() {
    PropertyReport rep;
    auto grid_check = [&](const std::vector<ValueMonoidElement>& vals) {
        for (const auto& x : vals)
            for (const auto& y : vals)
                for (const auto& z : vals) {
                    ++rep.cases_checked;
                    if (!z.is_zero() && lt(mul(x, z), mul(y, z)) && !lt(x, y))
                        rep.record("cancellation fails at " + to_string(x) + ", " +
                                   to_string(y) + ", " + to_string(z));
                    if (leq(x, y) && !leq(mul(x, z), mul(y, z)))
                        rep.record("monotonicity fails at " + to_string(x) + ", " +
                                   to_string(y) + ", " + to_string(z));
                }
    };
    std::vector<ValueMonoidElement> rank1;
    for (long q = -3; q <= 3; ++q)
        rank1.push_back(ValueMonoidElement::unit(GroupElement::rank1(q)));
    rank1.push_back(ValueMonoidElement::zero());
    grid_check(rank1);
    std::vector<ValueMonoidElement> rank2;
    for (long q = -1; q <= 1; ++q)
        for (long e = -1; e <= 1; ++e)
            rank2.push_back(ValueMonoidElement::unit(GroupElement::rank2(q, e)));
    rank2.push_back(ValueMonoidElement::zero());
    grid_check(rank2);
    return to_json(rep);
}

inline Json suite_filter_section() {
    std::vector<IdentityReport> reps = {
        check_galois(3),     check_functoriality(3),    check_monotone(3),
        check_nhds_prod(3),  check_map_prod(3),         check_prod_mk_lemma(2),
        check_cauchy_convergence(3)};
    Json arr = Json::array();
    bool ok = true;
    for (const auto& r : reps) {
        arr.push_back(to_json(r));
        ok = ok && r.ok();
    }
    return Json{{"identities", arr}, {"ok", ok}};
}

inline Json suite_valuation_section(const SuiteConfig& cfg) {
    Sampler s(cfg.seed + 1);
    Json arr = Json::array();
    bool ok = true;
    auto run = [&](const ValuationDescriptor& v, bool polys) {
        std::vector<std::pair<RingElement, RingElement>> pairs;
        for (long i = 0; i < cfg.samples; ++i) {
            if (polys)
                pairs.push_back(s.poly_pair(4, 20));
            else
                pairs.emplace_back(RingElement::rational(s.rational()),
                                   RingElement::rational(s.rational()));
        }
        PropertyReport rep = check_axioms(v, pairs);
        Json j = to_json(rep);
        j["valuation"] = to_string(v);
        arr.push_back(j);
        ok = ok && rep.ok();
    };
    for (long p : cfg.primes) run(ValuationDescriptor::padic(p), false);
    run(ValuationDescriptor::trivial(), false);
    run(ValuationDescriptor::xadic_q(), true);
    run(ValuationDescriptor::gauss(3, 0, 1), true);
    for (int i = 0; i < 3; ++i)
        run(ValuationDescriptor::from_point(s.point(3)), true);
    return Json{{"valuations", arr}, {"ok", ok}};
}

inline Json suite_padic_section(const SuiteConfig& cfg) {
    Sampler s(cfg.seed + 2);
    long n = std::max<long>(4, cfg.precision);
    Json arr = Json::array();
    bool all_ok = true;
    for (long pl : cfg.primes) {
        Int p = pl;
        long cases = 0;
        long violations = 0;
        for (long i = 0; i < cfg.samples; ++i) {
            Rational a = s.integral_rational(p);
            Rational b = s.integral_rational(p);
            PadicNumber xa = PadicNumber::from_rational(p, a, n);
            PadicNumber xb = PadicNumber::from_rational(p, b, n);
            ++cases;
            if (!(padic_add(xa, xb) == PadicNumber::from_rational(p, a + b, n))) ++violations;
            // multiplication keeps relative precision, so the product can carry
            // more digits than the fixed-N oracle: compare on the overlap
            ++cases;
            if (!padic_agree(padic_mul(xa, xb), PadicNumber::from_rational(p, a * b, n)))
                ++violations;
            if (a != 0 && rational_val_p(a, p) == 0) {
                ++cases;
                if (!(padic_inv(xa) == PadicNumber::from_rational(p, Rational(1) / a, n)))
                    ++violations;
                ++cases;
                if (!padic_agree(padic_mul(xa, padic_inv(xa)),
                                 PadicNumber::from_rational(p, 1, n)))
                    ++violations;
            }
        }
        arr.push_back(Json{{"p", to_json(p)},
                           {"precision", n},
                           {"cases_checked", cases},
                           {"violations", violations},
                           {"ok", violations == 0}});
        all_ok = all_ok && violations == 0;
    }
    return Json{{"primes", arr}, {"ok", all_ok}};
}

inline Json suite_completion_section(const SuiteConfig& cfg) {
    Json arr = Json::array();
    bool ok = true;
    long n = std::min<long>(16, std::max<long>(4, cfg.precision));
    int count = static_cast<int>(std::max<long>(10, cfg.samples / 5));
    for (long pl : cfg.primes) {
        PropertyReport rep = compare_completions(pl, n, count, cfg.seed);
        Json j = to_json(rep);
        j["p"] = std::to_string(pl);
        arr.push_back(j);
        ok = ok && rep.ok();
    }
    // geometric series: lim_n sum_{i<n} 3^i = -1/2 = 1/(1-3) in Z_3
    CauchySequenceCompletion geo(
        3,
        [](long m) {
            Rational acc = 0;
            Int pw = 1;
            for (long i = 0; i < m; ++i) {
                acc += Rational(pw);
                pw *= 3;
            }
            return acc;
        },
        [](long k) { return k; }, 0);
    PadicNumber lim = limit_of_cauchy(geo, 16);
    bool geo_ok = lim == PadicNumber::from_rational(3, Rational(-1, 2), 16) &&
                  padic_agree(lim, padic_inv(PadicNumber::from_rational(3, -2, 16)));
    ok = ok && geo_ok;
    return Json{{"primes", arr}, {"geometric_identity_ok", geo_ok}, {"ok", ok}};
}

inline Json suite_extension_section(const SuiteConfig& cfg) {
    Sampler s(cfg.seed + 3);
    Int p = 3;
    long cases = 0, violations = 0;
    long rounds = std::max<long>(10, cfg.samples / 2);
    for (long i = 0; i < rounds; ++i) {
        Rational q = s.integral_rational(p, 500, 20);
        PadicNumber x = PadicNumber::from_rational(p, q, 8);
        // squaring is 1-Lipschitz on the unit ball, so the identity modulus works
        PadicNumber sq = extend_by_continuity([](const Rational& r) { return r * r; },
                                              [](long k) { return k; }, x, 8);
        ++cases;
        if (!(sq == PadicNumber::from_rational(p, q * q, 8))) ++violations;
        if (q != 0 && rational_val_p(q, p) <= 3) {
            // val_p is constant on balls of radius p^-4 around points of valuation <= 3
            PadicNumber vl = extend_by_continuity(
                [&p](const Rational& r) { return Rational(rational_val_p(r, p)); },
                [](long) { return 4; }, x, 4);
            ++cases;
            if (!(vl == PadicNumber::from_rational(p, rational_val_p(q, p), 4))) ++violations;
        }
    }
    return Json{{"p", "3"},
                {"cases_checked", cases},
                {"violations", violations},
                {"ok", violations == 0}};
}

inline Json suite_spa_subset_section(const SuiteConfig& cfg) {
    Sampler s(cfg.seed + 4);
    long cases = 0, violations = 0;
    for (long pl : cfg.primes) {
        Int p = pl;
        RationalSubsetDescriptor annulus = parse_rational_subset("R(p,X/X)", p);
        std::vector<Rational> centers = {0};
        for (long j = 0; j <= 3; ++j)
            for (long u : {1L, 2L, 7L}) {
                if (Int(u) % p == 0) continue;
                Rational a = Rational(pow_int(p, j)) * u;
                centers.push_back(a);
                centers.push_back(-a);
            }
        for (const Rational& a : centers) {
            bool expect = a != 0 && rational_val_p(a, p) <= 1;
            ++cases;
            if (rational_subset_member(DiscPoint::classical(p, a), annulus) != expect)
                ++violations;
        }
    }
    // intersections as single rational subsets, on sampled points
    long rounds = std::max<long>(5, cfg.samples / 10);
    bool inter_ok = true;
    long inter_cases = 0;
    for (long i = 0; i < rounds; ++i) {
        Int p = cfg.primes[static_cast<std::size_t>(i) % cfg.primes.size()];
        RationalSubsetDescriptor a = parse_rational_subset("R(p,X/X)", p);
        RingElement sx = sub(RingElement::variable(), RingElement::rational(1));
        RationalSubsetDescriptor b(sx, {RingElement::rational(Rational(Int(p)))});
        std::vector<DiscPoint> pts;
        for (int k = 0; k < 10; ++k) pts.push_back(s.point(p));
        PropertyReport rep = intersection_identity_check(a, b, pts);
        inter_cases += rep.cases_checked;
        inter_ok = inter_ok && rep.ok();
    }
    return Json{{"annulus_cases", cases},
                {"annulus_violations", violations},
                {"intersection_cases", inter_cases},
                {"intersection_ok", inter_ok},
                {"ok", violations == 0 && inter_ok}};
}

inline Json suite_spa_pair_section(const SuiteConfig& cfg) {
    Sampler s(cfg.seed + 5);
    std::vector<Rational> samples = {Rational(1, 2), Rational(1, 3), Rational(1, 5),
                                     Rational(1, 7)};
    for (long i = 0; i < cfg.samples; ++i) samples.push_back(s.rational());
    Json arr = Json::array();
    bool ok = true;
    for (long pl : cfg.primes) {
        Int p = pl;
        SpaPairCheckResult good = spa_qp_zp_check(ValuationDescriptor::padic(p), p, samples);
        Int q = pl == 2 ? 3 : 2;
        SpaPairCheckResult bad = spa_qp_zp_check(ValuationDescriptor::padic(q), p, samples);
        bool section_ok = good.ok() && !bad.ok() && bad.witness.has_value();
        arr.push_back(Json{{"p", to_json(p)},
                           {"matching", to_json(good)},
                           {"mismatched_prime", to_json(q)},
                           {"mismatched", to_json(bad)},
                           {"ok", section_ok}});
        ok = ok && section_ok;
    }
    return Json{{"pairs", arr}, {"ok", ok}};
}

inline Json suite_adic_section(const SuiteConfig& cfg) {
    Sampler s(cfg.seed + 6);
    long count = std::min<long>(cfg.samples, 100);
    long matched = 0;
    for (long i = 0; i < count; ++i) {
        const long primes[] = {2, 3, 5, 7};
        Int p = primes[s.integer(0, 3)];
        long jt = s.integer(0, 3);
        long ju = s.integer(0, 3);
        if (i % 2 == 0) {
            AdicRingInstance R = AdicRingInstance::int_with_p(p);
            long u1 = 0, u2 = 0;
            while (u1 == 0 || Int(u1) % p == 0) u1 = s.integer(1, 9);
            while (u2 == 0 || Int(u2) % p == 0) u2 = s.integer(1, 9);
            Rational base(pow_int(p, jt));
            std::vector<RingElement> T = {
                RingElement::rational(base),
                RingElement::rational(base * u1),
                RingElement::rational(base * Rational(Int(p)) * u2)};
            long sign = s.integer(0, 1) == 0 ? 1 : -1;
            RingElement u_gen = RingElement::rational(Rational(pow_int(p, ju)) * sign);
            OpenCheckResult res = mul_T_open_check(R, T, u_gen);
            if (res.verdict == OpenCheckResult::Verdict::verified && res.n == jt + ju) ++matched;
        } else {
            AdicRingInstance R = AdicRingInstance::poly_over_fp(p);
            RingElement Xjt = RingElement::monomial(1, jt, ElemKind::poly);
            std::vector<RingElement> T = {
                Xjt, mul(Xjt, add(RingElement::variable(), RingElement::rational(1)))};
            long c = s.integer(1, static_cast<long>(p) - 1 > 0 ? static_cast<long>(p) - 1 : 1);
            RingElement u_gen = RingElement::monomial(c, ju, ElemKind::poly);
            OpenCheckResult res = mul_T_open_check(R, T, u_gen);
            if (res.verdict == OpenCheckResult::Verdict::verified && res.n == jt + ju) ++matched;
        }
    }
    return Json{{"instances", count}, {"verified_with_exact_n", matched}, {"ok", matched == count}};
}

inline Json suite_perfectoid_section(const SuiteConfig& cfg) {
    PerfectoidRunConfig pc;
    pc.samples = std::min<long>(cfg.samples, 100);
    pc.power_budget = 10;
    pc.seed = cfg.seed;
    PerfectoidCheckReport tower =
        perfectoid_report(PerfectoidModelDescriptor::level_tower(3, 1), pc);
    PerfectoidCheckReport qp = perfectoid_report(PerfectoidModelDescriptor::qp_model(3), pc);
    bool ok = tower.perfectoid_consistent() && !qp.perfectoid_consistent() &&
              qp.ramified.failed() && !qp.complete.failed() && !qp.uniform.failed() &&
              !qp.tate.failed() && !qp.frobenius.failed();
    return Json{{"tower_3_1", to_json(tower)}, {"qp_3", to_json(qp)}, {"ok", ok}};
}

}  // namespace detail

/** Full scaled battery; deterministic for a fixed config. */
inline Json run_suite(const SuiteConfig& cfg) {
    if (cfg.samples < 1) throw DomainMismatchError("run_suite: samples must be >= 1");
    if (cfg.precision < 1) throw DomainMismatchError("run_suite: precision must be >= 1");
    for (long p : cfg.primes) require_prime(p, "run_suite");

    Json sections;
    sections["gamma_cancellation"] = detail::suite_gamma_section();
    sections["filter_identities"] = detail::suite_filter_section();
    sections["valuation_axioms"] = detail::suite_valuation_section(cfg);
    sections["padic_oracle"] = detail::suite_padic_section(cfg);
    sections["completion_compare"] = detail::suite_completion_section(cfg);
    sections["continuity_extension"] = detail::suite_extension_section(cfg);
    sections["spa_rational_subsets"] = detail::suite_spa_subset_section(cfg);
    sections["spa_pairs"] = detail::suite_spa_pair_section(cfg);
    sections["adic_open_products"] = detail::suite_adic_section(cfg);
    sections["perfectoid"] = detail::suite_perfectoid_section(cfg);

    bool ok = true;
    for (const auto& [name, sec] : sections.items()) ok = ok && sec.at("ok").get<bool>();

    Json out;
    out["tool"] = "adiclab suite";
    out["config"] = Json{{"samples", cfg.samples},
                         {"seed", cfg.seed},
                         {"precision", cfg.precision},
                         {"budget", cfg.budget},
                         {"primes", cfg.primes}};
    out["sections"] = sections;
    out["ok"] = ok;
    return out;
}

}  // namespace adiclab
