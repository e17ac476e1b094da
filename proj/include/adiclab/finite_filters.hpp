#pragma once

#include <cstdint>
#include <map>
#include <mutex>
#include <string>
#include <vector>

#include "adiclab/error.hpp"

namespace adiclab {

// Subset of a finite carrier, one bit per element.
using Mask = std::uint32_t;

// Carriers stay small: exhaustive enumeration is bounded at size 5 and
// product carriers (needed for filters on X x Y) at size 12.
inline constexpr int kEnumCarrierBound = 5;
inline constexpr int kMaxCarrierSize = 12;

struct FiniteCarrier {
    int size;

    explicit FiniteCarrier(int n) : size(n) {
        if (n < 1 || n > kMaxCarrierSize)
            throw BudgetError("FiniteCarrier: size out of range");
    }
    Mask full() const { return static_cast<Mask>((1u << size) - 1); }
    friend bool operator==(FiniteCarrier a, FiniteCarrier b) { return a.size == b.size; }
};

/**
 * A set of subsets of a carrier, stored as one bit per subset mask.
 * This is the representation behind both filter families and topologies.
 */
class SubsetFamily {
public:
    explicit SubsetFamily(int carrier_size)
        : n_(carrier_size), bits_((std::size_t(1) << carrier_size) / 64 + 1, 0) {
        if (carrier_size < 1 || carrier_size > kMaxCarrierSize)
            throw BudgetError("SubsetFamily: carrier size out of range");
    }

    int carrier_size() const { return n_; }
    std::size_t universe() const { return std::size_t(1) << n_; }

    bool test(Mask s) const { return (bits_[s >> 6] >> (s & 63)) & 1; }
    void set(Mask s) { bits_[s >> 6] |= std::uint64_t(1) << (s & 63); }

    // Adds every superset of m within the carrier.
    void set_upward(Mask m, Mask full) {
        for (Mask s = m;; s = (s + 1) | m) {
            set(s);
            if (s == full) break;
        }
    }

    std::size_t count() const {
        std::size_t c = 0;
        for (std::uint64_t w : bits_) c += static_cast<std::size_t>(__builtin_popcountll(w));
        return c;
    }

    std::vector<Mask> members() const {
        std::vector<Mask> out;
        for (std::size_t s = 0; s < universe(); ++s)
            if (test(static_cast<Mask>(s))) out.push_back(static_cast<Mask>(s));
        return out;
    }

    // True iff other's bits are a subset of ours.
    bool contains_family(const SubsetFamily& other) const {
        for (std::size_t i = 0; i < bits_.size(); ++i)
            if (other.bits_[i] & ~bits_[i]) return false;
        return true;
    }

    friend bool operator==(const SubsetFamily& a, const SubsetFamily& b) {
        return a.n_ == b.n_ && a.bits_ == b.bits_;
    }

private:
    int n_;
    std::vector<std::uint64_t> bits_;
};

/**
 * Filter on a finite carrier: a family of subsets containing the carrier,
 * stable under pairwise intersection and upward closed.  The improper
 * filter (the full power set) is a legal value and is the bottom element
 * of the "finer than" order.
 */
class FiniteFilter {
public:
    static FiniteFilter principal(FiniteCarrier X, Mask m) {
        SubsetFamily fam(X.size);
        fam.set_upward(m & X.full(), X.full());
        return FiniteFilter(X, std::move(fam));
    }

    static FiniteFilter improper(FiniteCarrier X) { return principal(X, 0); }

    static FiniteFilter from_family(FiniteCarrier X, SubsetFamily fam) {
        validate(X, fam);
        return FiniteFilter(X, std::move(fam));
    }

    FiniteCarrier carrier() const { return X_; }
    const SubsetFamily& family() const { return fam_; }
    bool contains(Mask s) const { return fam_.test(s & X_.full()); }
    bool proper() const { return !fam_.test(0); }

    // Intersection of all members; on a finite carrier the family is
    // exactly the set of supersets of this mask.
    Mask min_member() const {
        Mask m = X_.full();
        for (std::size_t s = 0; s < fam_.universe(); ++s)
            if (fam_.test(static_cast<Mask>(s))) m &= static_cast<Mask>(s);
        return m;
    }

    friend bool operator==(const FiniteFilter& a, const FiniteFilter& b) {
        return a.X_ == b.X_ && a.fam_ == b.fam_;
    }

private:
    FiniteFilter(FiniteCarrier X, SubsetFamily fam) : X_(X), fam_(std::move(fam)) {}

    static void validate(FiniteCarrier X, const SubsetFamily& fam) {
        if (fam.carrier_size() != X.size)
            throw DomainMismatchError("FiniteFilter: family carrier mismatch");
        if (!fam.test(X.full()))
            throw Error("FiniteFilter: family must contain the carrier");
        auto ms = fam.members();
        for (Mask a : ms) {
            for (Mask b : ms)
                if (!fam.test(a & b))
                    throw Error("FiniteFilter: family not intersection closed");
            for (int x = 0; x < X.size; ++x)
                if (!fam.test(a | (Mask(1) << x)))
                    throw Error("FiniteFilter: family not upward closed");
        }
    }

    friend FiniteFilter trusted_filter(FiniteCarrier, SubsetFamily);

    FiniteCarrier X_;
    SubsetFamily fam_;
};

// Internal constructor for results that are filters by construction.
inline FiniteFilter trusted_filter(FiniteCarrier X, SubsetFamily fam) {
    return FiniteFilter(X, std::move(fam));
}

/**
 * Total function between carriers, stored as a table of element indices.
 */
struct FunctionTable {
    int dom, cod;
    std::vector<int> map;

    FunctionTable(int dom, int cod, std::vector<int> map)
        : dom(dom), cod(cod), map(std::move(map)) {
        if (static_cast<int>(this->map.size()) != dom)
            throw Error("FunctionTable: table size mismatch");
        for (int y : this->map)
            if (y < 0 || y >= cod) throw Error("FunctionTable: value out of range");
    }

    static FunctionTable identity(int n) {
        std::vector<int> t(n);
        for (int i = 0; i < n; ++i) t[i] = i;
        return FunctionTable(n, n, std::move(t));
    }

    static FunctionTable constant(int dom, int cod, int y) {
        return FunctionTable(dom, cod, std::vector<int>(dom, y));
    }

    // this after g, i.e. (this . g)(x) = this(g(x)).
    FunctionTable after(const FunctionTable& g) const {
        if (g.cod != dom) throw DomainMismatchError("FunctionTable: composition mismatch");
        std::vector<int> t(g.dom);
        for (int i = 0; i < g.dom; ++i) t[i] = map[g.map[i]];
        return FunctionTable(g.dom, cod, std::move(t));
    }

    Mask preimage(Mask s) const {
        Mask out = 0;
        for (int x = 0; x < dom; ++x)
            if ((s >> map[x]) & 1) out |= Mask(1) << x;
        return out;
    }

    Mask image(Mask s) const {
        Mask out = 0;
        for (int x = 0; x < dom; ++x)
            if ((s >> x) & 1) out |= Mask(1) << map[x];
        return out;
    }
};

// Pairing z |-> (f z, g z) into the product carrier (x, y) = x*ny + y.
inline FunctionTable pair_map(const FunctionTable& f, const FunctionTable& g) {
    if (f.dom != g.dom) throw DomainMismatchError("pair_map: domain mismatch");
    std::vector<int> t(f.dom);
    for (int z = 0; z < f.dom; ++z) t[z] = f.map[z] * g.cod + g.map[z];
    return FunctionTable(f.dom, f.cod * g.cod, std::move(t));
}

// Componentwise (f x g)(x, y) = (f x, g y) between product carriers.
inline FunctionTable product_map(const FunctionTable& f, const FunctionTable& g) {
    std::vector<int> t(f.dom * g.dom);
    for (int x = 0; x < f.dom; ++x)
        for (int y = 0; y < g.dom; ++y)
            t[x * g.dom + y] = f.map[x] * g.cod + g.map[y];
    return FunctionTable(f.dom * g.dom, f.cod * g.cod, std::move(t));
}

inline FunctionTable projection_first(int nx, int ny) {
    std::vector<int> t(nx * ny);
    for (int x = 0; x < nx; ++x)
        for (int y = 0; y < ny; ++y) t[x * ny + y] = x;
    return FunctionTable(nx * ny, nx, std::move(t));
}

inline FunctionTable projection_second(int nx, int ny) {
    std::vector<int> t(nx * ny);
    for (int x = 0; x < nx; ++x)
        for (int y = 0; y < ny; ++y) t[x * ny + y] = y;
    return FunctionTable(nx * ny, ny, std::move(t));
}

// f_* F = { S | f^{-1}(S) in F }.
inline FiniteFilter pushforward(const FunctionTable& f, const FiniteFilter& F) {
    if (f.dom != F.carrier().size)
        throw DomainMismatchError("pushforward: carrier mismatch");
    FiniteCarrier Y(f.cod);
    SubsetFamily fam(Y.size);
    for (std::size_t s = 0; s < fam.universe(); ++s)
        if (F.contains(f.preimage(static_cast<Mask>(s)))) fam.set(static_cast<Mask>(s));
    return trusted_filter(Y, std::move(fam));
}

// f^* G = { S | exists T in G with f^{-1}(T) subset of S }.
inline FiniteFilter pullback(const FunctionTable& f, const FiniteFilter& G) {
    if (f.cod != G.carrier().size)
        throw DomainMismatchError("pullback: carrier mismatch");
    FiniteCarrier X(f.dom);
    SubsetFamily fam(X.size);
    for (Mask t : G.family().members()) fam.set_upward(f.preimage(t), X.full());
    return trusted_filter(X, std::move(fam));
}

// F finer than G: G's family is a subset of F's family.
inline bool leq(const FiniteFilter& F, const FiniteFilter& G) {
    if (!(F.carrier() == G.carrier()))
        throw DomainMismatchError("leq: carrier mismatch");
    return F.family().contains_family(G.family());
}

// Greatest lower bound in the finer-than order: the filter generated by
// pairwise intersections of members.
inline FiniteFilter inf(const FiniteFilter& F, const FiniteFilter& G) {
    if (!(F.carrier() == G.carrier()))
        throw DomainMismatchError("inf: carrier mismatch");
    FiniteCarrier X = F.carrier();
    SubsetFamily fam(X.size);
    auto fs = F.family().members();
    auto gs = G.family().members();
    for (Mask a : fs)
        for (Mask b : gs)
            if (!fam.test(a & b)) fam.set_upward(a & b, X.full());
    return trusted_filter(X, std::move(fam));
}

// F x G = inf(pr1^* F, pr2^* G) on the product carrier.
inline FiniteFilter product(const FiniteFilter& F, const FiniteFilter& G) {
    int nx = F.carrier().size, ny = G.carrier().size;
    if (nx * ny > kMaxCarrierSize)
        throw BudgetError("product: product carrier exceeds size bound");
    return inf(pullback(projection_first(nx, ny), F),
               pullback(projection_second(nx, ny), G));
}

/**
 * Topology on a finite carrier: a family of opens containing the empty
 * set and the carrier, closed under union and intersection.
 */
class FiniteTopology {
public:
    static FiniteTopology from_family(FiniteCarrier X, SubsetFamily opens) {
        if (opens.carrier_size() != X.size)
            throw DomainMismatchError("FiniteTopology: family carrier mismatch");
        if (!opens.test(0) || !opens.test(X.full()))
            throw Error("FiniteTopology: must contain the empty set and the carrier");
        auto ms = opens.members();
        for (Mask a : ms)
            for (Mask b : ms)
                if (!opens.test(a | b) || !opens.test(a & b))
                    throw Error("FiniteTopology: opens not closed under union/intersection");
        return FiniteTopology(X, std::move(opens));
    }

    static FiniteTopology discrete(FiniteCarrier X) {
        SubsetFamily opens(X.size);
        for (std::size_t s = 0; s < opens.universe(); ++s) opens.set(static_cast<Mask>(s));
        return FiniteTopology(X, std::move(opens));
    }

    static FiniteTopology indiscrete(FiniteCarrier X) {
        SubsetFamily opens(X.size);
        opens.set(0);
        opens.set(X.full());
        return FiniteTopology(X, std::move(opens));
    }

    FiniteCarrier carrier() const { return X_; }
    const SubsetFamily& opens() const { return opens_; }
    bool is_open(Mask s) const { return opens_.test(s & X_.full()); }

    // Smallest open set containing x; exists because opens are closed
    // under intersection on a finite carrier.
    Mask min_open_at(int x) const {
        Mask m = X_.full();
        for (std::size_t s = 0; s < opens_.universe(); ++s)
            if (opens_.test(static_cast<Mask>(s)) && ((s >> x) & 1))
                m &= static_cast<Mask>(s);
        return m;
    }

private:
    FiniteTopology(FiniteCarrier X, SubsetFamily opens) : X_(X), opens_(std::move(opens)) {}

    friend FiniteTopology trusted_topology(FiniteCarrier, SubsetFamily);

    FiniteCarrier X_;
    SubsetFamily opens_;
};

inline FiniteTopology trusted_topology(FiniteCarrier X, SubsetFamily opens) {
    return FiniteTopology(X, std::move(opens));
}

// Neighborhood filter: { S | exists open U with x in U and U subset S }.
inline FiniteFilter nhds(const FiniteTopology& T, int x) {
    FiniteCarrier X = T.carrier();
    if (x < 0 || x >= X.size) throw Error("nhds: point outside carrier");
    SubsetFamily fam(X.size);
    for (Mask u : T.opens().members())
        if ((u >> x) & 1) fam.set_upward(u, X.full());
    return trusted_filter(X, std::move(fam));
}

// Product topology: opens are the unions of boxes U x V.
inline FiniteTopology product_topology(const FiniteTopology& TX, const FiniteTopology& TY) {
    int nx = TX.carrier().size, ny = TY.carrier().size;
    if (nx * ny > kMaxCarrierSize)
        throw BudgetError("product_topology: product carrier exceeds size bound");
    FiniteCarrier P(nx * ny);
    std::vector<Mask> boxes;
    for (Mask u : TX.opens().members())
        for (Mask v : TY.opens().members()) {
            Mask box = 0;
            for (int x = 0; x < nx; ++x)
                if ((u >> x) & 1)
                    for (int y = 0; y < ny; ++y)
                        if ((v >> y) & 1) box |= Mask(1) << (x * ny + y);
            boxes.push_back(box);
        }
    SubsetFamily opens(P.size);
    opens.set(0);
    // Close the box family under union by fixed-point iteration.
    std::vector<Mask> frontier = boxes;
    for (Mask b : boxes) opens.set(b);
    while (!frontier.empty()) {
        std::vector<Mask> next;
        for (Mask w : frontier)
            for (Mask b : boxes) {
                Mask u = w | b;
                if (!opens.test(u)) {
                    opens.set(u);
                    next.push_back(u);
                }
            }
        frontier = std::move(next);
    }
    return trusted_topology(P, std::move(opens));
}

// Continuity of f at x: f_*(nhds x) finer than nhds(f x).
inline bool continuous_at(const FunctionTable& f, const FiniteTopology& TX,
                          const FiniteTopology& TY, int x) {
    return leq(pushforward(f, nhds(TX, x)), nhds(TY, f.map[x]));
}

/**
 * Enumeration of all filters on a carrier.  Every filter on a finite
 * carrier is principal (the intersection of its finitely many members is
 * itself a member), so generating all intersection-closed upward-closed
 * families amounts to choosing the minimal member; the brute-force family
 * scan in the test suite confirms this for sizes up to 4.
 */
inline const std::vector<FiniteFilter>& enumerate_filters(FiniteCarrier X) {
    static std::mutex mu;
    static std::map<int, std::vector<FiniteFilter>> memo;
    std::lock_guard<std::mutex> lock(mu);
    auto it = memo.find(X.size);
    if (it != memo.end()) return it->second;
    if (X.size > kEnumCarrierBound)
        throw BudgetError("enumerate_filters: carrier above enumeration bound");
    std::vector<FiniteFilter> out;
    for (Mask m = 0; m <= X.full(); ++m) out.push_back(FiniteFilter::principal(X, m));
    return memo.emplace(X.size, std::move(out)).first->second;
}

// All topologies on a carrier by exhaustive family scan; feasible to
// size 4 (65536 candidate families).
inline const std::vector<FiniteTopology>& enumerate_topologies(FiniteCarrier X) {
    static std::mutex mu;
    static std::map<int, std::vector<FiniteTopology>> memo;
    std::lock_guard<std::mutex> lock(mu);
    auto it = memo.find(X.size);
    if (it != memo.end()) return it->second;
    if (X.size > 4)
        throw BudgetError("enumerate_topologies: carrier above enumeration bound");
    std::vector<FiniteTopology> out;
    std::size_t nsub = std::size_t(1) << X.size;
    for (std::uint64_t fambits = 0; fambits < (std::uint64_t(1) << nsub); ++fambits) {
        if (!(fambits & 1) || !((fambits >> (nsub - 1)) & 1)) continue; // need 0 and full
        bool closed = true;
        for (std::size_t a = 0; a < nsub && closed; ++a) {
            if (!((fambits >> a) & 1)) continue;
            for (std::size_t b = a; b < nsub && closed; ++b) {
                if (!((fambits >> b) & 1)) continue;
                if (!((fambits >> (a | b)) & 1) || !((fambits >> (a & b)) & 1)) closed = false;
            }
        }
        if (!closed) continue;
        SubsetFamily opens(X.size);
        for (std::size_t a = 0; a < nsub; ++a)
            if ((fambits >> a) & 1) opens.set(static_cast<Mask>(a));
        out.push_back(trusted_topology(X, std::move(opens)));
    }
    return memo.emplace(X.size, std::move(out)).first->second;
}

struct IdentityReport {
    std::string identity;
    int max_carrier_size = 0;
    std::uint64_t cases_checked = 0;
    std::vector<std::string> counterexamples;

    bool ok() const { return counterexamples.empty(); }
    void record(const std::string& cex) {
        if (counterexamples.size() < 10) counterexamples.push_back(cex);
    }
};

namespace detail {

inline std::string mask_to_string(Mask m, int n) {
    std::string s = "{";
    bool first = true;
    for (int i = 0; i < n; ++i)
        if ((m >> i) & 1) {
            if (!first) s += ",";
            s += std::to_string(i);
            first = false;
        }
    return s + "}";
}

inline std::vector<FunctionTable> all_functions(int dom, int cod) {
    std::vector<FunctionTable> out;
    std::vector<int> t(dom, 0);
    while (true) {
        out.emplace_back(dom, cod, t);
        int i = 0;
        while (i < dom && ++t[i] == cod) t[i++] = 0;
        if (i == dom) break;
    }
    return out;
}

} // namespace detail

// f_* F <= G  iff  F <= f^* G, exhaustively over small carriers.
inline IdentityReport check_galois(int size_bound) {
    IdentityReport rep{"galois", size_bound, 0, {}};
    for (int nx = 2; nx <= size_bound; ++nx)
        for (int ny = 2; ny <= size_bound; ++ny) {
            FiniteCarrier X(nx), Y(ny);
            for (const auto& f : detail::all_functions(nx, ny))
                for (const auto& F : enumerate_filters(X))
                    for (const auto& G : enumerate_filters(Y)) {
                        ++rep.cases_checked;
                        if (leq(pushforward(f, F), G) != leq(F, pullback(f, G)))
                            rep.record("f table size " + std::to_string(nx) + "->" +
                                       std::to_string(ny));
                    }
        }
    return rep;
}

// (f.g)_* = f_*.g_* and (f.g)^* = g^*.f^* over small carriers.
inline IdentityReport check_functoriality(int size_bound) {
    IdentityReport rep{"functoriality", size_bound, 0, {}};
    for (int nx = 2; nx <= size_bound; ++nx)
        for (int ny = 2; ny <= size_bound; ++ny)
            for (int nz = 2; nz <= size_bound; ++nz) {
                FiniteCarrier X(nx), Z(nz);
                for (const auto& g : detail::all_functions(nx, ny))
                    for (const auto& f : detail::all_functions(ny, nz)) {
                        FunctionTable fg = f.after(g);
                        for (const auto& F : enumerate_filters(X)) {
                            ++rep.cases_checked;
                            if (!(pushforward(fg, F) == pushforward(f, pushforward(g, F))))
                                rep.record("pushforward functoriality");
                        }
                        for (const auto& H : enumerate_filters(Z)) {
                            ++rep.cases_checked;
                            if (!(pullback(fg, H) == pullback(g, pullback(f, H))))
                                rep.record("pullback functoriality");
                        }
                    }
            }
    return rep;
}

// Monotonicity of pushforward and pullback in the finer-than order.
inline IdentityReport check_monotone(int size_bound) {
    IdentityReport rep{"monotonicity", size_bound, 0, {}};
    for (int nx = 2; nx <= size_bound; ++nx)
        for (int ny = 2; ny <= size_bound; ++ny) {
            FiniteCarrier X(nx), Y(ny);
            for (const auto& f : detail::all_functions(nx, ny)) {
                for (const auto& F1 : enumerate_filters(X))
                    for (const auto& F2 : enumerate_filters(X)) {
                        ++rep.cases_checked;
                        if (leq(F1, F2) && !leq(pushforward(f, F1), pushforward(f, F2)))
                            rep.record("pushforward monotonicity");
                    }
                for (const auto& G1 : enumerate_filters(Y))
                    for (const auto& G2 : enumerate_filters(Y)) {
                        ++rep.cases_checked;
                        if (leq(G1, G2) && !leq(pullback(f, G1), pullback(f, G2)))
                            rep.record("pullback monotonicity");
                    }
            }
        }
    return rep;
}

// nhds(x, y) on the product topology equals nhds(x) x nhds(y).
inline IdentityReport check_nhds_prod(int size_bound) {
    IdentityReport rep{"nhds_prod", size_bound, 0, {}};
    for (int nx = 2; nx <= size_bound; ++nx)
        for (int ny = 2; ny <= size_bound; ++ny) {
            FiniteCarrier X(nx), Y(ny);
            for (const auto& TX : enumerate_topologies(X))
                for (const auto& TY : enumerate_topologies(Y)) {
                    FiniteTopology TP = product_topology(TX, TY);
                    for (int x = 0; x < nx; ++x)
                        for (int y = 0; y < ny; ++y) {
                            ++rep.cases_checked;
                            if (!(nhds(TP, x * ny + y) == product(nhds(TX, x), nhds(TY, y))))
                                rep.record("point (" + std::to_string(x) + "," +
                                           std::to_string(y) + ")");
                        }
                }
        }
    return rep;
}

// h_*(F x G) <= f_* F x g_* G for h = f x g, exhaustively on size-2 models.
inline IdentityReport check_map_prod(int size_bound) {
    IdentityReport rep{"map_prod", size_bound, 0, {}};
    int n = 2;
    if (size_bound < n) return rep;
    FiniteCarrier C(n);
    for (const auto& f : detail::all_functions(n, n))
        for (const auto& g : detail::all_functions(n, n)) {
            FunctionTable h = product_map(f, g);
            for (const auto& F : enumerate_filters(C))
                for (const auto& G : enumerate_filters(C)) {
                    ++rep.cases_checked;
                    if (!leq(pushforward(h, product(F, G)),
                             product(pushforward(f, F), pushforward(g, G))))
                        rep.record("map_prod violation");
                }
        }
    return rep;
}

/**
 * The paired-continuity lemma: if f and g are continuous at z0 then so is
 * z |-> (f z, g z) into the product topology.  Exhaustive over all
 * topology triples and function pairs within the size budget.
 *
 * The driver exploits two facts about finite models, both covered by the
 * unit suite: every neighborhood filter is principal at its minimal open
 * set, and the minimal open set of the product topology at (x, y) is the
 * box of minimal opens.  Continuity of h at z0 therefore reduces to
 * h^{-1}(min_open(h z0)) being a neighborhood of z0.
 */
inline IdentityReport check_prod_mk_lemma(int budget) {
    if (budget > 3) throw BudgetError("check_prod_mk_lemma: budget above 3");
    IdentityReport rep{"prod_mk", budget, 0, {}};
    for (int nz = 2; nz <= budget; ++nz)
        for (int nx = 2; nx <= budget; ++nx)
            for (int ny = 2; ny <= budget; ++ny) {
                FiniteCarrier Z(nz), X(nx), Y(ny);
                const auto& TZs = enumerate_topologies(Z);
                const auto& TXs = enumerate_topologies(X);
                const auto& TYs = enumerate_topologies(Y);
                auto fs = detail::all_functions(nz, nx);
                auto gs = detail::all_functions(nz, ny);
                // min_open tables per topology.
                auto min_opens = [](const std::vector<FiniteTopology>& Ts) {
                    std::vector<std::vector<Mask>> m(Ts.size());
                    for (std::size_t i = 0; i < Ts.size(); ++i)
                        for (int x = 0; x < Ts[i].carrier().size; ++x)
                            m[i].push_back(Ts[i].min_open_at(x));
                    return m;
                };
                auto mz = min_opens(TZs), mx = min_opens(TXs), my = min_opens(TYs);
                for (std::size_t tz = 0; tz < TZs.size(); ++tz)
                    for (std::size_t tx = 0; tx < TXs.size(); ++tx)
                        for (std::size_t ty = 0; ty < TYs.size(); ++ty)
                            for (const auto& f : fs)
                                for (const auto& g : gs)
                                    for (int z0 = 0; z0 < nz; ++z0) {
                                        Mask base = mz[tz][z0];
                                        // continuity of f and g at z0
                                        if ((f.preimage(mx[tx][f.map[z0]]) & base) != base)
                                            continue;
                                        if ((g.preimage(my[ty][g.map[z0]]) & base) != base)
                                            continue;
                                        ++rep.cases_checked;
                                        Mask mo = 0;
                                        Mask bx = mx[tx][f.map[z0]], by = my[ty][g.map[z0]];
                                        FunctionTable h = pair_map(f, g);
                                        for (int x = 0; x < nx; ++x)
                                            if ((bx >> x) & 1)
                                                for (int y = 0; y < ny; ++y)
                                                    if ((by >> y) & 1)
                                                        mo |= Mask(1) << (x * ny + y);
                                        if ((h.preimage(mo) & base) != base)
                                            rep.record("prod_mk violation at z0=" +
                                                       std::to_string(z0));
                                    }
            }
    return rep;
}

/**
 * Cauchy filters on finite models converge: for every entourage filter U
 * on X x X whose members contain the diagonal, every proper filter F with
 * F x F <= U converges to some point, where nhds(x) is the pullback of U
 * along y |-> (x, y).
 */
inline IdentityReport check_cauchy_convergence(int size_bound) {
    IdentityReport rep{"cauchy", size_bound, 0, {}};
    for (int n = 2; n <= size_bound; ++n) {
        FiniteCarrier X(n), XX(n * n);
        Mask diag = 0;
        for (int i = 0; i < n; ++i) diag |= Mask(1) << (i * n + i);
        // Entourage filters: principal filters of supersets of the diagonal.
        Mask offdiag = XX.full() & ~diag;
        for (Mask extra = offdiag;; extra = (extra - 1) & offdiag) {
            FiniteFilter U = FiniteFilter::principal(XX, diag | extra);
            // nhds(x) via pullback of U along y |-> (x, y).
            std::vector<FiniteFilter> nx;
            for (int x = 0; x < n; ++x) {
                std::vector<int> t(n);
                for (int y = 0; y < n; ++y) t[y] = x * n + y;
                nx.push_back(pullback(FunctionTable(n, n * n, std::move(t)), U));
            }
            for (const auto& F : enumerate_filters(X)) {
                if (!F.proper() || !leq(product(F, F), U)) continue;
                ++rep.cases_checked;
                bool converges = false;
                for (int x = 0; x < n && !converges; ++x)
                    if (leq(F, nx[x])) converges = true;
                if (!converges) rep.record("non-converging Cauchy filter, carrier size " +
                                           std::to_string(n));
            }
            if (extra == 0) break;
        }
    }
    return rep;
}

} // namespace adiclab
