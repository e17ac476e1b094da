#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "adiclab/json_io.hpp"
#include "adiclab/sampling.hpp"
#include "adiclab/suite.hpp"

/**
 * One function per CLI verb, returning exactly the JSON body the tool prints.
 * The binary and the schema tests both call these, so the shipped schemas can
 * never drift from the shipped output.
 */
namespace adiclab::reports {

inline Json padic_eval(const std::string& expr, const Int& p, long prec) {
    RingElement e = parse_element(expr, p);
    if (!e.is_constant())
        throw DomainMismatchError("padic eval: expression must reduce to a rational constant");
    PadicNumber x = PadicNumber::from_rational(p, e.as_rational(), prec);
    Json j = to_json(x);
    j["expr"] = expr;
    j["prec"] = prec;
    return j;
}

inline Json filter_verify(const std::string& identity, int size) {
    IdentityReport rep;
    if (identity == "galois") rep = check_galois(size);
    else if (identity == "functoriality") rep = check_functoriality(size);
    else if (identity == "monotonicity") rep = check_monotone(size);
    else if (identity == "nhds_prod") rep = check_nhds_prod(size);
    else if (identity == "map_prod") rep = check_map_prod(size);
    else if (identity == "prod_mk") rep = check_prod_mk_lemma(size);
    else if (identity == "cauchy") rep = check_cauchy_convergence(size);
    else
        throw ParseError("filter verify: unknown identity '" + identity +
                         "' (expected galois, functoriality, monotonicity, nhds_prod, "
                         "map_prod, prod_mk or cauchy)");
    return to_json(rep);
}

namespace detail {

// padic valuations only read constants; every other family also takes polynomials
inline bool wants_constants(const ValuationDescriptor& v) {
    return v.kind() == ValuationDescriptor::Kind::padic;
}

inline std::vector<std::pair<RingElement, RingElement>> sample_pairs(Sampler& s, long count,
                                                                     bool constants) {
    std::vector<std::pair<RingElement, RingElement>> pairs;
    pairs.reserve(static_cast<std::size_t>(count));
    for (long i = 0; i < count; ++i) {
        if (constants)
            pairs.emplace_back(RingElement::rational(s.rational()),
                               RingElement::rational(s.rational()));
        else
            pairs.push_back(s.poly_pair(4, 20));
    }
    return pairs;
}

}  // namespace detail

inline Json valuation_check(const std::string& vspec, std::optional<Int> p, long samples,
                            unsigned long seed) {
    if (samples < 1) throw DomainMismatchError("valuation check: samples must be >= 1");
    ValuationDescriptor v = parse_valuation(vspec, p);
    Sampler s(seed);
    PropertyReport rep = check_axioms(v, detail::sample_pairs(s, samples, detail::wants_constants(v)));
    Json j = to_json(rep);
    j["valuation"] = to_string(v);
    j["samples"] = samples;
    j["seed"] = seed;
    return j;
}

inline Json valuation_equivalent(const std::string& vspec, const std::string& wspec,
                                 std::optional<Int> p, long samples, unsigned long seed) {
    if (samples < 1) throw DomainMismatchError("valuation equivalent: samples must be >= 1");
    ValuationDescriptor v = parse_valuation(vspec, p);
    ValuationDescriptor w = parse_valuation(wspec, p);
    Sampler s(seed);
    bool constants = detail::wants_constants(v) || detail::wants_constants(w);
    EquivalenceResult res = equivalent(v, w, detail::sample_pairs(s, samples, constants));
    Json j = to_json(res);
    j["v"] = to_string(v);
    j["w"] = to_string(w);
    j["samples"] = samples;
    j["seed"] = seed;
    return j;
}

inline Json valuation_continuous(const std::string& vspec, const Int& ambient_p,
                                 const std::vector<std::string>& gamma_specs, long bound) {
    ValuationDescriptor v = parse_valuation(vspec, ambient_p);
    std::vector<ValueMonoidElement> gammas;
    if (gamma_specs.empty()) {
        gammas.push_back(ValueMonoidElement::one());
        gammas.push_back(ValueMonoidElement::unit(GroupElement::rank1(-2)));
        gammas.push_back(ValueMonoidElement::unit(GroupElement::rank1(1)));
    } else {
        for (const auto& g : gamma_specs) gammas.push_back(parse_value(g));
    }
    ContinuityReport rep = is_continuous_check(v, ambient_p, gammas, bound);
    Json j = to_json(rep);
    j["valuation"] = to_string(v);
    j["p"] = to_json(ambient_p);
    j["n_bound"] = bound;
    return j;
}

inline Json adic_nilpotent(const std::string& ring, const std::string& elt, long budget) {
    AdicRingInstance R = parse_adic_ring(ring);
    RingElement x = parse_element(elt, R.p());
    NilpotenceResult res = is_topologically_nilpotent(R, x, BoundedSearchBudget{budget});
    Json j = to_json(res);
    j["ring"] = to_string(R);
    j["elt"] = to_string(x);
    j["budget"] = budget;
    return j;
}

inline Json adic_powerbounded(const std::string& ring, const std::string& elt, long budget) {
    AdicRingInstance R = parse_adic_ring(ring);
    RingElement x = parse_element(elt, R.p());
    PowerBoundedResult res = is_power_bounded(R, x, BoundedSearchBudget{budget});
    Json j = to_json(res);
    j["ring"] = to_string(R);
    j["elt"] = to_string(x);
    j["budget"] = budget;
    return j;
}

inline Json adic_multopen(const std::string& ring, const std::vector<std::string>& t_specs,
                          const std::string& u_spec) {
    AdicRingInstance R = parse_adic_ring(ring);
    if (t_specs.empty()) throw DomainMismatchError("adic multopen: T must be nonempty");
    std::vector<RingElement> T;
    Json t_echo = Json::array();
    for (const auto& t : t_specs) {
        T.push_back(parse_element(t, R.p()));
        t_echo.push_back(to_string(T.back()));
    }
    RingElement u = parse_element(u_spec, R.p());
    OpenCheckResult res = mul_T_open_check(R, T, u);
    Json j = to_json(res);
    j["ring"] = to_string(R);
    j["T"] = t_echo;
    j["u"] = to_string(u);
    return j;
}

inline Json adic_ball(const std::string& vspec, std::optional<Int> p, const std::string& center,
                      const std::string& gamma, const std::string& y_spec) {
    ValuationDescriptor v = parse_valuation(vspec, p);
    std::optional<Int> ctx = p;
    if (!ctx) {
        switch (v.kind()) {
            case ValuationDescriptor::Kind::padic:
            case ValuationDescriptor::Kind::gauss:
                ctx = v.p();
                break;
            case ValuationDescriptor::Kind::point:
                ctx = v.point().p();
                break;
            case ValuationDescriptor::Kind::xadic:
                if (v.coefficients_mod_p()) ctx = v.p();
                break;
            default:
                break;
        }
    }
    RingElement x = parse_element(center, ctx);
    RingElement y = parse_element(y_spec, ctx);
    ValueMonoidElement g = parse_value(gamma);
    bool member = valuation_ball_member(v, x, g, y);
    return Json{{"valuation", to_string(v)},
                {"center", to_string(x)},
                {"gamma", to_string(g)},
                {"y", to_string(y)},
                {"member", member}};
}

inline Json spa_member(const Int& p, const std::string& point, const std::string& subset) {
    DiscPoint x = parse_disc_point(point, p);
    RationalSubsetDescriptor r = parse_rational_subset(subset, p);
    RationalSubsetMembership rep = rational_subset_report(x, r);
    Json j = to_json(rep);
    j["p"] = to_json(p);
    j["point"] = to_string(x);
    j["subset"] = to_string(r);
    return j;
}

inline Json spa_germ(const Int& p, const std::string& point, const std::string& num,
                     const std::string& den, long n) {
    DiscPoint x = parse_disc_point(point, p);
    RingElement a = parse_element(num, p);
    RingElement s = parse_element(den, p);
    ValueMonoidElement g = germ_valuation(x, a, s, n);
    return Json{{"p", to_json(p)},
                {"point", to_string(x)},
                {"numerator", to_string(a)},
                {"denominator", to_string(s)},
                {"n", n},
                {"value", to_string(g)}};
}

inline Json spa_localize(const Int& p, const std::string& point, const std::string& subset,
                         const std::vector<long>& powers) {
    DiscPoint x = parse_disc_point(point, p);
    RationalSubsetDescriptor r = parse_rational_subset(subset, p);
    PropertyReport rep = localization_universal_check(x, r, powers);
    Json j = to_json(rep);
    j["p"] = to_json(p);
    j["point"] = to_string(x);
    j["subset"] = to_string(r);
    j["powers"] = powers;
    return j;
}

inline Json spa_pair(const std::string& vspec, const Int& p, long samples, unsigned long seed) {
    if (samples < 1) throw DomainMismatchError("spa pair: samples must be >= 1");
    ValuationDescriptor v = parse_valuation(vspec, p);
    Sampler s(seed);
    std::vector<Rational> xs = {Rational(1, 2), Rational(1, 3), Rational(1, 5), Rational(1, 7)};
    for (long i = 0; i < samples; ++i) xs.push_back(s.rational());
    SpaPairCheckResult res = spa_qp_zp_check(v, p, xs);
    Json j = to_json(res);
    j["valuation"] = to_string(v);
    j["p"] = to_json(p);
    j["samples"] = samples;
    j["seed"] = seed;
    return j;
}

inline Json spa_separate(const Int& p, const std::string& center, const std::string& radius) {
    Rational a = parse_rational(center);
    Rational r = parse_rational(radius);
    SeparationWitness w = rank_two_separation_witness(p, a, r);
    Json j = to_json(w);
    j["p"] = to_json(p);
    j["center"] = to_json(a);
    j["radius_exponent"] = to_json(r);
    return j;
}

inline Json perfectoid_check(const std::string& model, long samples, long budget, long depth,
                             long precision, unsigned long seed) {
    PerfectoidModelDescriptor d = parse_perfectoid_model(model);
    PerfectoidRunConfig cfg;
    cfg.samples = samples;
    cfg.power_budget = budget;
    cfg.search_depth = depth;
    cfg.precision = precision;
    cfg.seed = seed;
    PerfectoidCheckReport rep = perfectoid_report(d, cfg);
    Json j = to_json(rep);
    j["model"] = to_string(d);
    j["samples"] = samples;
    j["seed"] = seed;
    return j;
}

inline Json suite(const SuiteConfig& cfg) { return run_suite(cfg); }

// diagnostics printed on a failed run (exit code 1)
inline Json error_envelope(const std::string& type, const std::string& message) {
    return Json{{"error", Json{{"type", type}, {"message", message}}}};
}

}  // namespace adiclab::reports
