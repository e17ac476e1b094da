#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "adiclab/finite_filters.hpp"

using namespace adiclab;

namespace {

// Oracle: every intersection-closed upward-closed family containing the
// carrier, found by scanning all 2^(2^n) candidate families.
std::vector<SubsetFamily> scan_all_filters(FiniteCarrier X) {
    std::size_t nsub = std::size_t(1) << X.size;
    std::vector<SubsetFamily> out;
    for (std::uint64_t fambits = 0; fambits < (std::uint64_t(1) << nsub); ++fambits) {
        if (!((fambits >> (nsub - 1)) & 1)) continue; // carrier member
        bool good = true;
        for (std::size_t a = 0; a < nsub && good; ++a) {
            if (!((fambits >> a) & 1)) continue;
            for (std::size_t b = a; b < nsub && good; ++b) {
                if (!((fambits >> b) & 1)) continue;
                if (!((fambits >> (a & b)) & 1)) good = false;
            }
            for (std::size_t s = a; s < nsub && good; ++s)
                if ((s & a) == a && !((fambits >> s) & 1)) good = false;
        }
        if (!good) continue;
        SubsetFamily fam(X.size);
        for (std::size_t a = 0; a < nsub; ++a)
            if ((fambits >> a) & 1) fam.set(static_cast<Mask>(a));
        out.push_back(std::move(fam));
    }
    return out;
}

} // namespace

TEST_CASE("filter enumeration matches the exhaustive family scan") {
    for (int n = 2; n <= 4; ++n) {
        FiniteCarrier X(n);
        auto scanned = scan_all_filters(X);
        const auto& enumerated = enumerate_filters(X);
        REQUIRE(scanned.size() == enumerated.size());
        REQUIRE(enumerated.size() == (std::size_t(1) << n));
        for (const auto& fam : scanned) {
            bool found = false;
            for (const auto& F : enumerated)
                if (F.family() == fam) found = true;
            REQUIRE(found);
        }
    }
}

TEST_CASE("topology enumeration finds the known counts") {
    REQUIRE(enumerate_topologies(FiniteCarrier(2)).size() == 4);
    REQUIRE(enumerate_topologies(FiniteCarrier(3)).size() == 29);
    REQUIRE(enumerate_topologies(FiniteCarrier(4)).size() == 355);
    REQUIRE_THROWS_AS(enumerate_topologies(FiniteCarrier(5)), BudgetError);
}

TEST_CASE("pushforward on point examples") {
    FiniteCarrier X(2);
    auto F1 = FiniteFilter::principal(X, 0b10); // principal({1})
    auto f0 = FunctionTable::constant(2, 2, 0);
    REQUIRE(pushforward(f0, F1) == FiniteFilter::principal(X, 0b01));
    for (const auto& F : enumerate_filters(X))
        REQUIRE(pushforward(FunctionTable::identity(2), F) == F);
    // (f.g)_* = f_*.g_* on all filters of a 3-element carrier
    FiniteCarrier Z(3);
    for (const auto& g : detail::all_functions(3, 3))
        for (const auto& f : detail::all_functions(3, 3))
            for (const auto& F : enumerate_filters(Z))
                REQUIRE(pushforward(f.after(g), F) ==
                        pushforward(f, pushforward(g, F)));
}

TEST_CASE("pullback on point examples") {
    FiniteCarrier X(2);
    for (const auto& G : enumerate_filters(X))
        REQUIRE(pullback(FunctionTable::identity(2), G) == G);
    auto f0 = FunctionTable::constant(2, 2, 0);
    auto G1 = FiniteFilter::principal(X, 0b10);
    auto pulled = pullback(f0, G1);
    REQUIRE_FALSE(pulled.proper());
    REQUIRE(pulled == FiniteFilter::improper(X));
}

TEST_CASE("galois connection and functoriality are exhaustive and clean") {
    auto galois = check_galois(3);
    REQUIRE(galois.ok());
    REQUIRE(galois.cases_checked > 0);
    auto functorial = check_functoriality(3);
    REQUIRE(functorial.ok());
    auto monotone = check_monotone(3);
    REQUIRE(monotone.ok());
}

TEST_CASE("leq is the finer-than order") {
    FiniteCarrier X(2);
    auto P0 = FiniteFilter::principal(X, 0b01);
    auto P01 = FiniteFilter::principal(X, 0b11);
    for (const auto& F : enumerate_filters(X)) {
        REQUIRE(leq(F, F));
        REQUIRE(leq(FiniteFilter::improper(X), F));
    }
    REQUIRE(leq(P0, P01));
    REQUIRE_FALSE(leq(P01, P0));
    REQUIRE_THROWS_AS(leq(P0, FiniteFilter::principal(FiniteCarrier(3), 1)),
                      DomainMismatchError);
}

TEST_CASE("product matches the generated description and absorbs improper") {
    FiniteCarrier X(2), Y(2);
    for (const auto& F : enumerate_filters(X)) {
        for (const auto& G : enumerate_filters(Y)) {
            auto P = product(F, G);
            // Oracle: upward closure of the boxes a x b over members.
            SubsetFamily fam(4);
            for (Mask a : F.family().members())
                for (Mask b : G.family().members()) {
                    Mask box = 0;
                    for (int x = 0; x < 2; ++x)
                        if ((a >> x) & 1)
                            for (int y = 0; y < 2; ++y)
                                if ((b >> y) & 1) box |= Mask(1) << (x * 2 + y);
                    fam.set_upward(box, 0b1111);
                }
            REQUIRE(P.family() == fam);
        }
        REQUIRE_FALSE(product(F, FiniteFilter::improper(Y)).proper());
    }
    REQUIRE_THROWS_AS(product(FiniteFilter::principal(FiniteCarrier(4), 1),
                              FiniteFilter::principal(FiniteCarrier(4), 1)),
                      BudgetError);
}

TEST_CASE("map_prod inequality holds on all size-2 models") {
    auto rep = check_map_prod(2);
    REQUIRE(rep.ok());
    REQUIRE(rep.cases_checked == 4ull * 4 * 4 * 4); // f, g, F, G each range over 4
}

TEST_CASE("nhds on named topologies") {
    FiniteCarrier X(2);
    auto disc = FiniteTopology::discrete(X);
    auto indisc = FiniteTopology::indiscrete(X);
    for (int x = 0; x < 2; ++x) {
        REQUIRE(nhds(disc, x) == FiniteFilter::principal(X, Mask(1) << x));
        REQUIRE(nhds(indisc, x) == FiniteFilter::principal(X, X.full()));
    }
    // Sierpinski space: opens are {}, {0}, {0,1}.
    SubsetFamily opens(2);
    opens.set(0b00);
    opens.set(0b01);
    opens.set(0b11);
    auto sierpinski = FiniteTopology::from_family(X, std::move(opens));
    REQUIRE(nhds(sierpinski, 1) == FiniteFilter::principal(X, 0b11));
    REQUIRE(nhds(sierpinski, 1).family().count() == 1);
    REQUIRE(nhds(sierpinski, 0) == FiniteFilter::principal(X, 0b01));
}

TEST_CASE("nhds of the product topology is the product of nhds") {
    auto rep = check_nhds_prod(2);
    REQUIRE(rep.ok());
    REQUIRE(rep.cases_checked == 4 * 4 * 4);
}

TEST_CASE("prod_mk lemma verified exhaustively at budget 2") {
    auto rep = check_prod_mk_lemma(2);
    REQUIRE(rep.ok());
    REQUIRE(rep.cases_checked > 0);
    REQUIRE_THROWS_AS(check_prod_mk_lemma(4), BudgetError);

    // Constants are continuous, identity on discrete space is continuous.
    FiniteCarrier Z(3);
    for (const auto& TZ : enumerate_topologies(Z)) {
        for (int z0 = 0; z0 < 3; ++z0) {
            REQUIRE(continuous_at(FunctionTable::constant(3, 3, 1), TZ,
                                  FiniteTopology::indiscrete(Z), z0));
            REQUIRE(continuous_at(FunctionTable::constant(3, 3, 1), TZ, TZ, z0));
        }
    }
    auto disc = FiniteTopology::discrete(Z);
    for (int z0 = 0; z0 < 3; ++z0)
        REQUIRE(continuous_at(FunctionTable::identity(3), disc, disc, z0));
}

TEST_CASE("prod_mk driver agrees with the general filter ops on size 2") {
    FiniteCarrier C(2);
    const auto& Ts = enumerate_topologies(C);
    for (const auto& TZ : Ts)
        for (const auto& TX : Ts)
            for (const auto& TY : Ts)
                for (const auto& f : detail::all_functions(2, 2))
                    for (const auto& g : detail::all_functions(2, 2))
                        for (int z0 = 0; z0 < 2; ++z0) {
                            bool fc = continuous_at(f, TZ, TX, z0);
                            bool gc = continuous_at(g, TZ, TY, z0);
                            if (!fc || !gc) continue;
                            FiniteTopology TP = product_topology(TX, TY);
                            FunctionTable h = pair_map(f, g);
                            REQUIRE(leq(pushforward(h, nhds(TZ, z0)),
                                        nhds(TP, h.map[z0])));
                        }
}

TEST_CASE("Cauchy filters on finite uniform models converge") {
    auto rep = check_cauchy_convergence(3);
    REQUIRE(rep.ok());
    REQUIRE(rep.cases_checked > 0);
}

TEST_CASE("filter validation rejects bad families") {
    FiniteCarrier X(2);
    SubsetFamily notup(2);
    notup.set(0b11);
    notup.set(0b01);
    notup.set(0b00); // missing {1}: not upward closed above the empty set
    REQUIRE_THROWS_AS(FiniteFilter::from_family(X, notup), Error);
    SubsetFamily nofull(2);
    nofull.set(0b01);
    REQUIRE_THROWS_AS(FiniteFilter::from_family(X, nofull), Error);
    SubsetFamily ok(2);
    ok.set(0b01);
    ok.set(0b11);
    REQUIRE(FiniteFilter::from_family(X, ok) == FiniteFilter::principal(X, 0b01));
}
