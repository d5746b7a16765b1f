#ifndef SERRE_WEIGHT_RECIPE_HPP
#define SERRE_WEIGHT_RECIPE_HPP

#include <optional>
#include <string>
#include <vector>

#include "serre/char_arith.hpp"
#include "serre/errors.hpp"
#include "serre/weight_core.hpp"

namespace serre {

// Restriction-to-inertia data of a two-dimensional mod-p representation,
// up to semisimplification: a pair of niveau-1 characters in the reducible
// cases, a niveau-2 character with its q-power conjugate when irreducible.
struct InertialDatum {
    enum Case { ReducibleSplit, Irreducible, Indecomposable };
    LocalPlace place;
    Case kind = ReducibleSplit;
    TameCharacter chi1, chi2; // reducible-split / indecomposable
    TameCharacter phi;        // irreducible, canonical exponent min(n, nq)
};

inline const char* case_name(InertialDatum::Case c) {
    switch (c) {
    case InertialDatum::ReducibleSplit: return "reducible_split";
    case InertialDatum::Irreducible: return "irreducible";
    case InertialDatum::Indecomposable: return "indecomposable";
    }
    return "?";
}

inline InertialDatum make_reducible_split(const TameCharacter& chi1,
                                          const TameCharacter& chi2) {
    if (chi1.place != chi2.place)
        throw ValidationError("inertial datum: characters at different places");
    if (chi1.niveau != 1 || chi2.niveau != 1)
        throw ValidationError("inertial datum: reducible case needs niveau-1 characters");
    InertialDatum d;
    d.place = chi1.place;
    d.kind = InertialDatum::ReducibleSplit;
    d.chi1 = chi1;
    d.chi2 = chi2;
    d.phi = trivial_character(chi1.place);
    return d;
}

inline InertialDatum make_indecomposable(const TameCharacter& chi1,
                                         const TameCharacter& chi2) {
    InertialDatum d = make_reducible_split(chi1, chi2);
    d.kind = InertialDatum::Indecomposable;
    return d;
}

inline InertialDatum make_irreducible(const TameCharacter& phi) {
    // a canonical niveau-2 character already has (q+1) not dividing its
    // exponent; anything that reduced to niveau 1 is not irreducible
    if (phi.niveau != 2)
        throw NotIrreducibleError("inertial datum: phi satisfies phi^q = phi");
    InertialDatum d;
    d.place = phi.place;
    d.kind = InertialDatum::Irreducible;
    d.chi1 = trivial_character(phi.place);
    d.chi2 = trivial_character(phi.place);
    // store the smaller of the conjugate pair {n, nq}
    TameCharacter conj = conjugate_q(phi);
    d.phi = conj.exponent < phi.exponent ? conj : phi;
    return d;
}

inline InertialDatum make_irreducible(const LocalPlace& place, const BigInt& n) {
    return make_irreducible(make_character(place, 2, n));
}

// Choice of (A, delta) -- and of niveau-2 lifts in the irreducible case --
// exhibiting a weight inside the recipe congruence.
struct WitnessAssignment {
    std::vector<long long> A;     // subset of embedding indices, ascending
    std::vector<long long> delta; // f entries, each in [0, e-1]
    std::vector<int> lifts;       // f bits, irreducible case only
    bool has_lifts = false;
};

struct WeightWithWitness {
    SerreWeightLocal weight;
    WitnessAssignment witness;
};

struct LocalWeightSet {
    std::vector<WeightWithWitness> entries; // sorted by weight
    bool exact = true; // false for the indecomposable superset
};

namespace detail {

struct RecipeContext {
    long long p, e, f, q;
    long long qm1;  // q - 1
    long long n2;   // q^2 - 1
    std::vector<long long> pj;  // p^j mod (q^2 - 1), j in [0, 2f)
};

inline RecipeContext recipe_context(const LocalPlace& place) {
    if (!place.q.fits_ll() || place.q.to_ll() > (1LL << 15))
        throw ValidationError("weight recipe: place too large for exhaustive search");
    RecipeContext c;
    c.p = place.p;
    c.e = place.e;
    c.f = place.f;
    c.q = place.q.to_ll();
    c.qm1 = c.q - 1;
    c.n2 = c.q * c.q - 1;
    c.pj.resize(2 * c.f);
    long long cur = 1;
    for (long long j = 0; j < 2 * c.f; ++j) {
        c.pj[j] = cur % c.n2;
        cur = detail::mulmod(cur, c.p, c.n2);
    }
    return c;
}

// sum over j of (w_j + r_j + 1 + d_j) p^j for j in A,
// plus (w_j + e - 1 - d_j) p^j for j not in A, all mod q-1
inline long long reducible_exponent(const RecipeContext& c, const std::vector<int>& r,
                                    const std::vector<int>& w,
                                    const std::vector<long long>& d, unsigned mask) {
    long long s = 0;
    for (long long j = 0; j < c.f; ++j) {
        long long t = (mask >> j) & 1 ? w[j] + r[j] + 1 + d[j]
                                      : w[j] + c.e - 1 - d[j];
        s = (s + detail::mulmod(t % c.qm1, c.pj[j] % c.qm1, c.qm1)) % c.qm1;
    }
    return s;
}

// sum over j of p^(j + f*l_j) ((q+1) w_j + r_j + 1 + d_j + q (e-1-d_j)) mod q^2-1
inline long long irreducible_exponent(const RecipeContext& c, const std::vector<int>& r,
                                      const std::vector<int>& w,
                                      const std::vector<long long>& d,
                                      const std::vector<int>& lifts) {
    long long s = 0;
    for (long long j = 0; j < c.f; ++j) {
        long long t = ((c.q + 1) % c.n2) * w[j] % c.n2;
        t = (t + r[j] + 1 + d[j] + c.q % c.n2 * ((c.e - 1 - d[j]) % c.n2)) % c.n2;
        s = (s + detail::mulmod(t, c.pj[j + (lifts[j] ? c.f : 0)], c.n2)) % c.n2;
    }
    return s;
}

inline bool next_tuple(std::vector<long long>& t, long long bound) {
    // advance in lexicographic order: last index fastest
    for (size_t j = t.size(); j-- > 0;) {
        if (t[j] + 1 < bound) { ++t[j]; return true; }
        t[j] = 0;
    }
    return false;
}
inline bool next_bits(std::vector<int>& t) {
    for (size_t j = t.size(); j-- > 0;) {
        if (t[j] == 0) { t[j] = 1; return true; }
        t[j] = 0;
    }
    return false;
}

inline std::vector<long long> mask_to_subset(unsigned mask, long long f) {
    std::vector<long long> a;
    for (long long j = 0; j < f; ++j)
        if ((mask >> j) & 1) a.push_back(j);
    return a;
}

} // namespace detail

// The conjectural local weight set.  Full enumeration over all weights,
// subsets A, integers delta, and (in the irreducible case) niveau-2 lifts;
// no pruning.  Each weight is returned with the least witness in
// (A bitmask, delta, lifts) order.
inline LocalWeightSet weights_local(const InertialDatum& datum) {
    detail::RecipeContext c = detail::recipe_context(datum.place);
    std::map<SerreWeightLocal, WitnessAssignment> found;

    if (datum.kind == InertialDatum::Irreducible) {
        long long n = datum.phi.exponent.to_ll();
        long long nq = detail::mulmod(n, c.q, c.n2);
        for (const auto& sigma : all_weights(datum.place)) {
            std::optional<WitnessAssignment> best;
            std::vector<long long> d(c.f, 0);
            do {
                std::vector<int> lifts(c.f, 0);
                bool more_lifts = true;
                while (more_lifts) {
                    long long ex = detail::irreducible_exponent(c, sigma.r, sigma.w, d, lifts);
                    if (ex == n || ex == nq) {
                        best = WitnessAssignment{{}, d, lifts, true};
                        break;
                    }
                    more_lifts = detail::next_bits(lifts);
                }
                if (best) break;
            } while (detail::next_tuple(d, c.e));
            if (best) found.emplace(sigma, *best);
        }
    } else {
        long long c1 = datum.chi1.exponent.to_ll() % c.qm1;
        long long c2 = datum.chi2.exponent.to_ll() % c.qm1;
        for (const auto& sigma : all_weights(datum.place)) {
            std::optional<WitnessAssignment> best;
            for (unsigned mask = 0; mask < (1u << c.f) && !best; ++mask) {
                std::vector<long long> d(c.f, 0);
                do {
                    long long ea = detail::reducible_exponent(c, sigma.r, sigma.w, d, mask);
                    long long eb = detail::reducible_exponent(
                        c, sigma.r, sigma.w, d, ~mask & ((1u << c.f) - 1));
                    if ((ea == c1 && eb == c2) || (ea == c2 && eb == c1)) {
                        best = WitnessAssignment{detail::mask_to_subset(mask, c.f), d, {}, false};
                        break;
                    }
                } while (detail::next_tuple(d, c.e));
            }
            if (best) found.emplace(sigma, *best);
        }
    }

    LocalWeightSet out;
    out.exact = datum.kind != InertialDatum::Indecomposable;
    for (auto& [sigma, wit] : found) out.entries.push_back({sigma, wit});
    return out;
}

inline std::vector<SerreWeightLocal> weight_set(const LocalWeightSet& s) {
    std::vector<SerreWeightLocal> v;
    for (const auto& e : s.entries) v.push_back(e.weight);
    return v;
}

// Re-evaluates the defining congruence for one explicit assignment,
// independently of the search loop.
inline bool witness_check(const InertialDatum& datum, const SerreWeightLocal& sigma,
                          const WitnessAssignment& wit) {
    if (sigma.place != datum.place)
        throw ValidationError("witness_check: weight at the wrong place");
    detail::RecipeContext c = detail::recipe_context(datum.place);
    if (static_cast<long long>(wit.delta.size()) != c.f)
        throw ValidationError("witness_check: delta must have f entries");
    for (long long dj : wit.delta)
        if (dj < 0 || dj >= c.e)
            throw ValidationError("witness_check: delta out of range");
    if (wit.has_lifts != (datum.kind == InertialDatum::Irreducible))
        throw ValidationError("witness_check: lifts present iff the datum is irreducible");
    unsigned mask = 0;
    for (long long j : wit.A) {
        if (j < 0 || j >= c.f) throw ValidationError("witness_check: A index out of range");
        mask |= 1u << j;
    }
    if (datum.kind == InertialDatum::Irreducible) {
        if (static_cast<long long>(wit.lifts.size()) != c.f)
            throw ValidationError("witness_check: lifts must have f entries");
        long long n = datum.phi.exponent.to_ll();
        long long nq = detail::mulmod(n, c.q, c.n2);
        long long ex = detail::irreducible_exponent(c, sigma.r, sigma.w, wit.delta, wit.lifts);
        return ex == n || ex == nq;
    }
    long long c1 = datum.chi1.exponent.to_ll() % c.qm1;
    long long c2 = datum.chi2.exponent.to_ll() % c.qm1;
    long long ea = detail::reducible_exponent(c, sigma.r, sigma.w, wit.delta, mask);
    long long eb = detail::reducible_exponent(c, sigma.r, sigma.w, wit.delta,
                                              ~mask & ((1u << c.f) - 1));
    return (ea == c1 && eb == c2) || (ea == c2 && eb == c1);
}

// ---------------------------------------------------------------------------
// Global weight sets: one local set per place, Cartesian product in
// lexicographic order.
// ---------------------------------------------------------------------------

struct GlobalEntry {
    std::string label;
    InertialDatum datum;
};

struct GlobalDatum {
    std::vector<GlobalEntry> entries;
    std::optional<long long> declared_degree; // [F:Q], checked against sum e*f
};

struct GlobalWeightSet {
    std::vector<std::vector<SerreWeightLocal>> tuples;
    bool exact = true;
};

template <class T>
std::vector<std::vector<T>> cartesian_product(const std::vector<std::vector<T>>& factors) {
    std::vector<std::vector<T>> out;
    if (factors.empty()) return out;
    for (const auto& f : factors)
        if (f.empty()) return out;
    std::vector<size_t> idx(factors.size(), 0);
    for (;;) {
        std::vector<T> tup;
        for (size_t i = 0; i < factors.size(); ++i) tup.push_back(factors[i][idx[i]]);
        out.push_back(std::move(tup));
        size_t i = factors.size();
        for (; i-- > 0;) {
            if (++idx[i] < factors[i].size()) break;
            idx[i] = 0;
        }
        if (i == static_cast<size_t>(-1)) break;
    }
    return out;
}

inline GlobalWeightSet weights_global(const GlobalDatum& g) {
    if (g.entries.empty())
        throw ValidationError("weights_global: no places given");
    long long degree = 0;
    for (size_t i = 0; i < g.entries.size(); ++i) {
        degree += g.entries[i].datum.place.e * g.entries[i].datum.place.f;
        for (size_t j = i + 1; j < g.entries.size(); ++j)
            if (g.entries[i].label == g.entries[j].label)
                throw ValidationError("weights_global: duplicate place label");
    }
    if (g.declared_degree && *g.declared_degree != degree)
        throw ValidationError("weights_global: declared degree does not match sum of e*f");
    GlobalWeightSet out;
    std::vector<std::vector<SerreWeightLocal>> factors;
    for (const auto& ent : g.entries) {
        LocalWeightSet ls = weights_local(ent.datum);
        out.exact = out.exact && ls.exact;
        factors.push_back(weight_set(ls));
    }
    out.tuples = cartesian_product(factors);
    return out;
}

// ---------------------------------------------------------------------------
// Serre's minimal weight k for F = Q: the least k >= 2 such that some
// constituent of Sym^(k-2) lies in the local weight set.  Every weight
// det^w Sym^r occurs among the constituents of Sym^(r + w(p+1)), so the
// search is complete by k = 2 + (p-1) + (p-2)(p+1).
// ---------------------------------------------------------------------------
inline long long minimal_weight(const InertialDatum& datum) {
    const LocalPlace& v = datum.place;
    if (v.e != 1 || v.f != 1)
        throw UnsupportedPlaceError("minimal_weight: requires e = f = 1");
    LocalWeightSet ws = weights_local(datum);
    std::vector<SerreWeightLocal> set = weight_set(ws);
    long long bound = 2 + (v.p - 1) + (v.p - 2) * (v.p + 1);
    for (long long k = 2; k <= bound; ++k) {
        WeightMultiset jh = jh_sym(v.p, k - 2);
        for (const auto& [s, mult] : jh)
            if (std::find(set.begin(), set.end(), s) != set.end()) return k;
    }
    throw DomainError("minimal_weight: no constituent found below the search bound");
}

// All inertial data of one case at a place, in deterministic order by
// exponent; irreducible data are listed by canonical exponent only.
inline std::vector<InertialDatum> enumerate_data(const LocalPlace& place,
                                                 InertialDatum::Case kind) {
    detail::RecipeContext c = detail::recipe_context(place);
    std::vector<InertialDatum> out;
    if (kind == InertialDatum::Irreducible) {
        for (long long n = 1; n < c.n2; ++n) {
            if (n % (c.q + 1) == 0) continue;
            if (detail::mulmod(n, c.q, c.n2) < n) continue;
            out.push_back(make_irreducible(place, BigInt(n)));
        }
    } else {
        for (long long c1 = 0; c1 < c.qm1; ++c1)
            for (long long c2 = 0; c2 < c.qm1; ++c2) {
                TameCharacter x1 = make_character(place, 1, BigInt(c1));
                TameCharacter x2 = make_character(place, 1, BigInt(c2));
                out.push_back(kind == InertialDatum::ReducibleSplit
                                  ? make_reducible_split(x1, x2)
                                  : make_indecomposable(x1, x2));
            }
    }
    return out;
}

} // namespace serre

#endif
