#include <functional>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "adiclab/reports.hpp"

namespace {

using adiclab::Json;

void print_text(const Json& j, std::ostream& os, const std::string& indent) {
    auto scalar = [](const Json& v) {
        return v.is_string() ? v.get<std::string>() : v.dump();
    };
    if (j.is_object()) {
        for (const auto& [k, v] : j.items()) {
            if (v.is_object() || v.is_array()) {
                os << indent << k << ":\n";
                print_text(v, os, indent + "  ");
            } else {
                os << indent << k << ": " << scalar(v) << "\n";
            }
        }
    } else if (j.is_array()) {
        for (const auto& v : j) {
            if (v.is_object() || v.is_array()) {
                os << indent << "-\n";
                print_text(v, os, indent + "  ");
            } else {
                os << indent << "- " << scalar(v) << "\n";
            }
        }
    } else {
        os << indent << scalar(j) << "\n";
    }
}

// check-style reports carry "ok"; a false value is a check failure (exit 1)
int emit(const Json& j, const std::string& format) {
    if (format == "text")
        print_text(j, std::cout, "");
    else
        std::cout << j.dump(2) << "\n";
    if (j.is_object() && j.contains("ok") && j.at("ok").is_boolean() && !j.at("ok").get<bool>())
        return 1;
    return 0;
}

const char* error_type(const adiclab::Error& e) {
    if (dynamic_cast<const adiclab::PrecisionError*>(&e)) return "precision";
    if (dynamic_cast<const adiclab::BudgetError*>(&e)) return "budget";
    if (dynamic_cast<const adiclab::DomainMismatchError*>(&e)) return "domain";
    if (dynamic_cast<const adiclab::UnsupportedInstanceError*>(&e)) return "unsupported";
    if (dynamic_cast<const adiclab::SupportViolationError*>(&e)) return "support";
    if (dynamic_cast<const adiclab::RankMismatchError*>(&e)) return "rank";
    return "error";
}

std::optional<adiclab::Int> opt_prime(const std::string& s) {
    if (s.empty()) return std::nullopt;
    return adiclab::Int(s);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"adiclab: exact arithmetic for value monoids, valuations, adic topologies,\n"
                 "completions, adic-spectrum points and the perfectoid-ring predicate"};
    app.require_subcommand(1);

    std::string format = "json";
    app.add_option("--format", format, "output format")->check(CLI::IsMember({"json", "text"}));

    Json result;
    bool ran = false;
    auto done = [&](Json j) {
        result = std::move(j);
        ran = true;
    };

    // shared flag storage; each verb reads the slice it documents
    std::string p_str = "3";
    std::string p_opt;  // empty = not given
    long prec = 8;
    long budget = 16;
    long samples = 200;
    unsigned long seed = 20260814;

    // ---- padic ----
    auto* padic = app.add_subcommand("padic", "precision-tracked p-adic arithmetic");
    padic->require_subcommand(1);
    {
        auto* eval = padic->add_subcommand("eval", "evaluate a rational expression to N digits");
        static std::string expr;
        eval->add_option("--p", p_str, "prime");
        eval->add_option("--expr", expr, "expression, e.g. \"1/(1-3)\"")->required();
        eval->add_option("--prec", prec, "absolute precision N");
        eval->callback([&]() { done(adiclab::reports::padic_eval(expr, adiclab::Int(p_str), prec)); });
    }

    // ---- filter ----
    auto* filter = app.add_subcommand("filter", "finite filter calculus");
    filter->require_subcommand(1);
    {
        auto* verify = filter->add_subcommand("verify", "exhaustively verify a filter identity");
        static std::string identity;
        static int size = 3;
        verify->add_option("--identity", identity,
                           "galois | functoriality | monotonicity | nhds_prod | map_prod | "
                           "prod_mk | cauchy")
            ->required();
        verify->add_option("--size", size, "carrier size bound (prod_mk: budget)");
        verify->callback([&]() { done(adiclab::reports::filter_verify(identity, size)); });
    }

    // ---- valuation ----
    auto* valuation = app.add_subcommand("valuation", "valuations on desk-scale rings");
    valuation->require_subcommand(1);
    {
        auto* check = valuation->add_subcommand("check", "sample the valuation axioms");
        static std::string v;
        check->add_option("--v", v, "valuation, e.g. padic:3 or gauss:3:0:1")->required();
        check->add_option("--p", p_opt, "ambient prime for point syntax");
        check->add_option("--samples", samples, "sample pairs");
        check->add_option("--seed", seed, "random seed");
        check->callback([&]() {
            done(adiclab::reports::valuation_check(v, opt_prime(p_opt), samples, seed));
        });

        auto* equiv = valuation->add_subcommand("equivalent", "compare two valuations on samples");
        static std::string ev, ew;
        equiv->add_option("--v", ev, "first valuation")->required();
        equiv->add_option("--w", ew, "second valuation")->required();
        equiv->add_option("--p", p_opt, "ambient prime for point syntax");
        equiv->add_option("--samples", samples, "sample pairs");
        equiv->add_option("--seed", seed, "random seed");
        equiv->callback([&]() {
            done(adiclab::reports::valuation_equivalent(ev, ew, opt_prime(p_opt), samples, seed));
        });

        auto* cont = valuation->add_subcommand("continuous", "decide continuity below gamma");
        static std::string cv;
        static std::vector<std::string> gammas;
        static long bound = 8;
        cont->add_option("--v", cv, "valuation (padic or trivial)")->required();
        cont->add_option("--p", p_str, "ambient prime");
        cont->add_option("--gamma", gammas, "value cutoffs, e.g. p^(-2); repeatable");
        cont->add_option("--bound", bound, "exponent search bound");
        cont->callback([&]() {
            done(adiclab::reports::valuation_continuous(cv, adiclab::Int(p_str), gammas, bound));
        });
    }

    // ---- adic ----
    auto* adic = app.add_subcommand("adic", "I-adic topology checks");
    adic->require_subcommand(1);
    {
        static std::string ring = "int:3";
        static std::string elt;
        auto* nil = adic->add_subcommand("nilpotent", "bounded topological-nilpotence search");
        nil->add_option("--ring", ring, "int:p | polyfp:p | rat:p")->required();
        nil->add_option("--elt", elt, "ring element")->required();
        nil->add_option("--budget", budget, "max power searched");
        nil->callback([&]() { done(adiclab::reports::adic_nilpotent(ring, elt, budget)); });

        static std::string pring, pelt;
        auto* pow = adic->add_subcommand("powerbounded", "decide power-boundedness");
        pow->add_option("--ring", pring, "int:p | polyfp:p | rat:p")->required();
        pow->add_option("--elt", pelt, "ring element")->required();
        pow->add_option("--budget", budget, "max power searched");
        pow->callback([&]() { done(adiclab::reports::adic_powerbounded(pring, pelt, budget)); });

        static std::string mring, mu;
        static std::vector<std::string> mt;
        auto* mul = adic->add_subcommand("multopen", "openness of T . span(U) in a PID instance");
        mul->add_option("--ring", mring, "int:p | polyfp:p")->required();
        mul->add_option("--t", mt, "generators of T; repeatable")->required();
        mul->add_option("--u", mu, "generator of U")->required();
        mul->callback([&]() { done(adiclab::reports::adic_multopen(mring, mt, mu)); });

        static std::string bv, bc = "0", bg, by;
        auto* ball = adic->add_subcommand("ball", "valuation-ball membership v(y - x) < gamma");
        ball->add_option("--v", bv, "valuation")->required();
        ball->add_option("--p", p_opt, "ambient prime for element syntax");
        ball->add_option("--center", bc, "ball center x");
        ball->add_option("--gamma", bg, "radius, e.g. p^(-2)")->required();
        ball->add_option("--y", by, "candidate member")->required();
        ball->callback([&]() {
            done(adiclab::reports::adic_ball(bv, opt_prime(p_opt), bc, bg, by));
        });
    }

    // ---- spa ----
    auto* spa = app.add_subcommand("spa", "adic-spectrum points and rational subsets");
    spa->require_subcommand(1);
    {
        static std::string mpoint, msubset;
        auto* member = spa->add_subcommand("member", "rational-subset membership at a point");
        member->add_option("--p", p_str, "prime");
        member->add_option("--point", mpoint, "cl:a | gauss:a:r | rk2:a:r:+|-")->required();
        member->add_option("--subset", msubset, "descriptor R(t1,...,tk/s)")->required();
        member->callback([&]() {
            done(adiclab::reports::spa_member(adiclab::Int(p_str), mpoint, msubset));
        });

        static std::string gpoint, gnum, gden;
        static long gn = 0;
        auto* germ = spa->add_subcommand("germ", "germ valuation v(a) v(s)^(-n)");
        germ->add_option("--p", p_str, "prime");
        germ->add_option("--point", gpoint, "disc point")->required();
        germ->add_option("--num", gnum, "numerator a")->required();
        germ->add_option("--den", gden, "localized element s")->required();
        germ->add_option("--n", gn, "power of s");
        germ->callback([&]() {
            done(adiclab::reports::spa_germ(adiclab::Int(p_str), gpoint, gnum, gden, gn));
        });

        static std::string lpoint, lsubset;
        static std::vector<long> lpowers = {1, 2, 3};
        auto* local = spa->add_subcommand("localize", "localization universal-property check");
        local->add_option("--p", p_str, "prime");
        local->add_option("--point", lpoint, "disc point")->required();
        local->add_option("--subset", lsubset, "descriptor R(t1,...,tk/s)")->required();
        local->add_option("--powers", lpowers, "powers of t/s to bound; repeatable");
        local->callback([&]() {
            done(adiclab::reports::spa_localize(adiclab::Int(p_str), lpoint, lsubset, lpowers));
        });

        static std::string pv;
        auto* pair = spa->add_subcommand("pair", "continuity + boundedness over (Q_p, Z_p)");
        pair->add_option("--v", pv, "candidate valuation (default padic:<p>)");
        pair->add_option("--p", p_str, "prime");
        pair->add_option("--samples", samples, "sampled rationals");
        pair->add_option("--seed", seed, "random seed");
        pair->callback([&]() {
            std::string vs = pv.empty() ? "padic:" + p_str : pv;
            done(adiclab::reports::spa_pair(vs, adiclab::Int(p_str), samples, seed));
        });

        static std::string scenter = "0", sradius = "1";
        auto* sep = spa->add_subcommand("separate", "rank-two separation witness at radius r");
        sep->add_option("--p", p_str, "prime");
        sep->add_option("--center", scenter, "disc center a");
        sep->add_option("--radius", sradius, "radius exponent r > 0, rational");
        sep->callback([&]() {
            done(adiclab::reports::spa_separate(adiclab::Int(p_str), scenter, sradius));
        });
    }

    // ---- perfectoid ----
    auto* perfectoid = app.add_subcommand("perfectoid", "perfectoid-ring predicate on models");
    perfectoid->require_subcommand(1);
    {
        static std::string model;
        static long depth = 4;
        static long level_prec = 2;
        auto* check = perfectoid->add_subcommand("check", "run the five-clause predicate");
        check->add_option("--model", model, "qp:p | tower:p:k")->required();
        check->add_option("--samples", samples, "sampled elements per clause");
        check->add_option("--budget", budget, "power budget for uniformity");
        check->add_option("--depth", depth, "pseudo-uniformizer search depth");
        check->add_option("--prec", level_prec, "coefficient digits per level ring");
        check->add_option("--seed", seed, "random seed");
        check->callback([&]() {
            done(adiclab::reports::perfectoid_check(model, samples, budget, depth, level_prec,
                                                    seed));
        });
    }

    // ---- suite ----
    {
        auto* suite = app.add_subcommand("suite", "scaled acceptance battery over all modules");
        static long sprec = 16;
        suite->add_option("--samples", samples, "samples per section");
        suite->add_option("--seed", seed, "random seed");
        suite->add_option("--prec", sprec, "p-adic working precision");
        suite->add_option("--budget", budget, "search budget");
        suite->callback([&]() {
            adiclab::SuiteConfig cfg;
            cfg.samples = samples;
            cfg.seed = seed;
            cfg.precision = sprec;
            cfg.budget = budget;
            done(adiclab::reports::suite(cfg));
        });
    }

    // --format may follow any subcommand: let unmatched options bubble up
    std::function<void(CLI::App*)> bubble = [&](CLI::App* node) {
        for (CLI::App* sub : node->get_subcommands([](CLI::App*) { return true; })) {
            sub->fallthrough();
            bubble(sub);
        }
    };
    bubble(&app);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const adiclab::ParseError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const adiclab::Error& e) {
        std::cout << adiclab::reports::error_envelope(error_type(e), e.what()).dump(2) << "\n";
        return 1;
    }

    if (!ran) {
        std::cerr << "error: no subcommand executed\n";
        return 2;
    }
    return emit(result, format);
}
