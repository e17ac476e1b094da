#include <catch2/catch_amalgamated.hpp>

#include <fstream>
#include <string>
#include <vector>

#include "adiclab/reports.hpp"

using namespace adiclab;

namespace {

Json load_schema(const std::string& name) {
    std::string path = std::string(ADICLAB_SOURCE_DIR) + "/docs/schemas/" + name;
    std::ifstream in(path);
    REQUIRE(in.good());
    return Json::parse(in);
}

bool type_matches(const std::string& t, const Json& v) {
    if (t == "object") return v.is_object();
    if (t == "array") return v.is_array();
    if (t == "string") return v.is_string();
    if (t == "integer") return v.is_number_integer();
    if (t == "number") return v.is_number();
    if (t == "boolean") return v.is_boolean();
    if (t == "null") return v.is_null();
    return false;
}

// the subset documented in docs/schemas/README.md: type, enum, properties,
// required, items, additionalProperties (boolean or schema)
void validate(const Json& schema, const Json& value, const std::string& path,
              std::vector<std::string>& errors) {
    if (schema.contains("type")) {
        const Json& t = schema.at("type");
        bool ok = false;
        if (t.is_string())
            ok = type_matches(t.get<std::string>(), value);
        else
            for (const auto& alt : t) ok = ok || type_matches(alt.get<std::string>(), value);
        if (!ok) {
            errors.push_back(path + ": type mismatch, got " + value.dump());
            return;
        }
    }
    if (schema.contains("enum")) {
        bool ok = false;
        for (const auto& alt : schema.at("enum")) ok = ok || alt == value;
        if (!ok) errors.push_back(path + ": value " + value.dump() + " not in enum");
    }
    if (value.is_object()) {
        if (schema.contains("required"))
            for (const auto& k : schema.at("required"))
                if (!value.contains(k.get<std::string>()))
                    errors.push_back(path + ": missing required key " + k.get<std::string>());
        const Json props = schema.value("properties", Json::object());
        for (const auto& [k, v] : value.items()) {
            if (props.contains(k)) {
                validate(props.at(k), v, path + "." + k, errors);
            } else if (schema.contains("additionalProperties")) {
                const Json& ap = schema.at("additionalProperties");
                if (ap.is_boolean() && !ap.get<bool>())
                    errors.push_back(path + ": unexpected key " + k);
                else if (ap.is_object())
                    validate(ap, v, path + "." + k, errors);
            }
        }
    }
    if (value.is_array() && schema.contains("items"))
        for (std::size_t i = 0; i < value.size(); ++i)
            validate(schema.at("items"), value[i], path + "[" + std::to_string(i) + "]",
                     errors);
}

std::vector<std::string> errors_for(const std::string& schema_name, const Json& payload) {
    std::vector<std::string> errors;
    validate(load_schema(schema_name), payload, "$", errors);
    return errors;
}

void expect_valid(const std::string& schema_name, const Json& payload) {
    std::vector<std::string> errors;
    validate(load_schema(schema_name), payload, "$", errors);
    CAPTURE(schema_name, errors, payload.dump(2));
    REQUIRE(errors.empty());
}

constexpr unsigned long kSeed = 20260814;

}  // namespace

TEST_CASE("padic eval payloads validate") {
    Json unit = reports::padic_eval("1/(1-3)", 3, 4);
    expect_valid("padic_eval.json", unit);
    CHECK(unit.at("unit_residue") == "40");
    CHECK(unit.at("text") == "…1111;p=3;N=4");

    Json zero = reports::padic_eval("3-3", 3, 5);
    expect_valid("padic_eval.json", zero);
    CHECK(zero.at("zero_form") == true);
    CHECK(zero.at("exponent").is_null());
}

TEST_CASE("filter verify payloads validate") {
    Json j = reports::filter_verify("galois", 2);
    expect_valid("filter_verify.json", j);
    CHECK(j.at("ok") == true);
    CHECK(j.at("counterexamples").empty());
    REQUIRE_THROWS_AS(reports::filter_verify("modus_ponens", 2), ParseError);
}

TEST_CASE("valuation payloads validate") {
    expect_valid("valuation_check.json", reports::valuation_check("padic:3", std::nullopt, 20, kSeed));
    expect_valid("valuation_check.json",
                 reports::valuation_check("point:gauss:0:1", Int(3), 10, kSeed));

    Json fam = reports::valuation_equivalent("padic:3", "padic:3:2", std::nullopt, 20, kSeed);
    expect_valid("valuation_equivalent.json", fam);
    CHECK(fam.at("equivalent") == true);
    CHECK(fam.at("exact") == true);
    CHECK(fam.at("method") == "family");
    expect_valid("valuation_equivalent.json",
                 reports::valuation_equivalent("gauss:3:0:1", "trivial", std::nullopt, 20, kSeed));

    Json cont = reports::valuation_continuous("padic:3", 3, {}, 6);
    expect_valid("valuation_continuous.json", cont);
    CHECK(cont.at("all_ok") == true);
    Json refuted = reports::valuation_continuous("trivial", 3, {"p^(-2)"}, 6);
    expect_valid("valuation_continuous.json", refuted);
    CHECK(refuted.at("all_ok") == false);
}

TEST_CASE("adic payloads validate") {
    Json nil = reports::adic_nilpotent("int:3", "p", 8);
    expect_valid("adic_nilpotent.json", nil);
    CHECK(nil.at("answer") == true);
    CHECK(nil.at("witnesses").size() == 8);

    Json pb = reports::adic_powerbounded("rat:3", "1/3", 8);
    expect_valid("adic_powerbounded.json", pb);
    CHECK(pb.at("answer") == false);

    Json open = reports::adic_multopen("int:3", {"9", "18"}, "3");
    expect_valid("adic_multopen.json", open);
    CHECK(open.at("verdict") == "verified");
    CHECK(open.at("n") == 3);
    Json refuted = reports::adic_multopen("int:3", {"10"}, "3");
    expect_valid("adic_multopen.json", refuted);
    CHECK(refuted.at("verdict") == "refuted");

    Json ball_in = reports::adic_ball("padic:3", std::nullopt, "0", "p^(-2)", "27");
    expect_valid("adic_ball.json", ball_in);
    CHECK(ball_in.at("member") == true);
    Json ball_out = reports::adic_ball("padic:3", std::nullopt, "0", "p^(-2)", "3");
    expect_valid("adic_ball.json", ball_out);
    CHECK(ball_out.at("member") == false);
}

TEST_CASE("spa payloads validate") {
    Json member = reports::spa_member(3, "gauss:0:0", "R(p,X/X)");
    expect_valid("spa_member.json", member);
    CHECK(member.at("member") == true);
    CHECK(member.at("v_of_t").contains("X"));

    expect_valid("spa_germ.json", reports::spa_germ(3, "gauss:0:1", "X", "p", 1));
    expect_valid("spa_localize.json",
                 reports::spa_localize(3, "gauss:0:0", "R(p,X/X)", {1, 2}));

    Json good = reports::spa_pair("padic:3", 3, 20, kSeed);
    expect_valid("spa_pair.json", good);
    CHECK(good.at("ok") == true);
    CHECK(good.at("witness").is_null());
    Json bad = reports::spa_pair("padic:2", 3, 20, kSeed);
    expect_valid("spa_pair.json", bad);
    CHECK(bad.at("ok") == false);
    CHECK(bad.at("witness").is_string());

    Json sep = reports::spa_separate(3, "0", "1");
    expect_valid("spa_separate.json", sep);
    CHECK(sep.at("separated") == true);
    CHECK(sep.at("f") == "X");
    CHECK(sep.at("g") == "3");
}

TEST_CASE("perfectoid and suite payloads validate") {
    Json tower = reports::perfectoid_check("tower:2:1", 10, 8, 4, 2, kSeed);
    expect_valid("perfectoid_check.json", tower);
    CHECK(tower.at("ok") == true);
    Json qp = reports::perfectoid_check("qp:3", 10, 8, 4, 2, kSeed);
    expect_valid("perfectoid_check.json", qp);
    CHECK(qp.at("ok") == false);
    CHECK(qp.at("ramified").at("verdict") == "fail");

    SuiteConfig cfg;
    cfg.samples = 10;
    expect_valid("suite.json", reports::suite(cfg));

    expect_valid("error.json", reports::error_envelope("domain", "element outside the ring"));
}

TEST_CASE("the validator itself rejects malformed payloads") {
    CHECK_FALSE(errors_for("error.json", reports::error_envelope("weird-kind", "x")).empty());

    Json missing = reports::spa_member(3, "cl:0", "R(p,X/X)");
    missing.erase("member");
    CHECK_FALSE(errors_for("spa_member.json", missing).empty());

    Json wrong_type = reports::filter_verify("galois", 2);
    wrong_type["cases_checked"] = "lots";
    CHECK_FALSE(errors_for("filter_verify.json", wrong_type).empty());

    Json extra = reports::adic_ball("padic:3", std::nullopt, "0", "p^(-1)", "9");
    extra["stray"] = 1;
    CHECK_FALSE(errors_for("adic_ball.json", extra).empty());
}
