#pragma once

#include <compare>
#include <string>

#include <json.hpp>

#include "adiclab/adic.hpp"
#include "adiclab/completion.hpp"
#include "adiclab/finite_filters.hpp"
#include "adiclab/gamma.hpp"
#include "adiclab/padic.hpp"
#include "adiclab/perfectoid.hpp"
#include "adiclab/spa.hpp"
#include "adiclab/valuation.hpp"

namespace adiclab {

using Json = nlohmann::json;

// Exact quantities travel as canonical strings: JSON numbers would silently
// round anything past 2^53.
inline Json to_json(const Int& n) { return to_string(n); }
inline Json to_json(const Rational& q) { return to_string(q); }
inline Json to_json(const ValueMonoidElement& a) { return to_string(a); }
inline Json to_json(const RingElement& e) { return to_string(e); }

inline Json to_json(const PadicNumber& x) {
    Json j;
    j["text"] = to_string(x);
    j["p"] = to_json(x.p());
    j["zero_form"] = x.is_zero_form();
    j["abs_precision"] = x.abs_precision();
    if (x.is_zero_form()) {
        j["exponent"] = nullptr;
        j["unit_residue"] = nullptr;
        j["rel_precision"] = nullptr;
    } else {
        j["exponent"] = to_json(x.exponent());
        j["unit_residue"] = to_json(x.unit_residue());
        j["rel_precision"] = x.rel_precision();
    }
    return j;
}

inline Json to_json(const PropertyReport& r) {
    return Json{{"cases_checked", r.cases_checked},
                {"violations", r.violations},
                {"ok", r.ok()}};
}

inline Json to_json(const IdentityReport& r) {
    return Json{{"identity", r.identity},
                {"carrier_size", r.max_carrier_size},
                {"cases_checked", r.cases_checked},
                {"counterexamples", r.counterexamples},
                {"ok", r.ok()}};
}

inline Json to_json(const NilpotenceResult& r) {
    Json w = Json::object();
    for (const auto& [n, k] : r.witness) w[std::to_string(n)] = k;
    return Json{{"answer", r.yes},
                {"witnesses", w},
                {"failed_n", r.failed_n},
                {"k_cap", r.k_cap}};
}

inline Json to_json(const PowerBoundedResult& r) {
    return Json{{"answer", r.yes}, {"n", r.n}, {"k", r.k}};
}

inline Json to_json(const OpenCheckResult& r) {
    return Json{{"verdict", r.verdict == OpenCheckResult::Verdict::verified ? "verified" : "refuted"},
                {"n", r.n},
                {"reason", r.reason},
                {"detail", r.detail}};
}

inline Json to_json(const EquivalenceResult& r) {
    Json j{{"equivalent", r.equivalent}, {"exact", r.exact}, {"method", r.method}};
    if (r.witness)
        j["witness"] = Json{{"f", to_string(r.witness->first)}, {"g", to_string(r.witness->second)}};
    else
        j["witness"] = nullptr;
    return j;
}

inline Json to_json(const ContinuityReport& r) {
    Json entries = Json::array();
    for (const auto& e : r.entries)
        entries.push_back(Json{{"gamma", to_string(e.gamma)},
                               {"ok", e.ok},
                               {"n", e.n},
                               {"witness", e.witness}});
    return Json{{"entries", entries},
                {"samples_checked", r.samples_checked},
                {"all_ok", r.all_ok()}};
}

inline Json to_json(const SpaPairCheckResult& r) {
    Json j{{"bounded", r.bounded},
           {"continuous", r.continuous},
           {"samples_used", r.samples_used},
           {"detail", r.detail},
           {"ok", r.ok()}};
    j["witness"] = r.witness ? to_json(*r.witness) : Json(nullptr);
    return j;
}

inline Json to_json(const RationalSubsetMembership& r) {
    Json vt = Json::object();
    for (const auto& [name, val] : r.v_t) vt[name] = to_string(val);
    return Json{{"member", r.member}, {"v_of_s", to_string(r.v_s)}, {"v_of_t", vt}};
}

inline Json ordering_to_json(std::strong_ordering o) {
    if (o == std::strong_ordering::less) return "less";
    if (o == std::strong_ordering::greater) return "greater";
    return "equal";
}

inline Json to_json(const SeparationWitness& w) {
    return Json{{"f", to_string(w.f)},
                {"g", to_string(w.g)},
                {"at_gauss", ordering_to_json(w.at_gauss)},
                {"above", ordering_to_json(w.above)},
                {"below", ordering_to_json(w.below)},
                {"separated", w.separated()}};
}

inline Json to_json(const CheckVerdict& v) {
    return Json{{"verdict", to_string(v.kind)},
                {"samples", v.samples},
                {"witness", v.witness}};
}

inline Json to_json(const PerfectoidCheckReport& r) {
    return Json{{"complete", to_json(r.complete)},
                {"uniform", to_json(r.uniform)},
                {"tate", to_json(r.tate)},
                {"ramified", to_json(r.ramified)},
                {"frobenius", to_json(r.frobenius)},
                {"ok", r.perfectoid_consistent()}};
}

}  // namespace adiclab
