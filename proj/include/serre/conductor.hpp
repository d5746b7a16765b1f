#ifndef SERRE_CONDUCTOR_HPP
#define SERRE_CONDUCTOR_HPP

#include <algorithm>
#include <string>
#include <vector>

#include "serre/bigint.hpp"
#include "serre/errors.hpp"

namespace serre {

// Ramification-group data for a local extension: |G_i| and dim V^(G_i) for
// the listed indices i = 0, 1, ...; the groups are trivial from the end of
// the list onward.
struct RamificationFiltration {
    long long dim = 2;
    std::vector<std::pair<long long, long long>> groups; // (order_i, fix_i)
};

inline void validate_filtration(const RamificationFiltration& filt) {
    if (filt.dim < 1)
        throw ValidationError("filtration: dim must be >= 1");
    if (filt.groups.empty())
        throw ValidationError("filtration: at least G_0 must be given");
    for (size_t i = 0; i < filt.groups.size(); ++i) {
        auto [order, fix] = filt.groups[i];
        if (order < 1) throw ValidationError("filtration: group orders must be >= 1");
        if (fix < 0 || fix > filt.dim)
            throw ValidationError("filtration: fixed-space dimension out of range");
        if (order == 1 && fix != filt.dim)
            throw ValidationError("filtration: the trivial group fixes everything");
        if (i > 0) {
            auto [prev_order, prev_fix] = filt.groups[i - 1];
            if (order > prev_order || prev_order % order != 0)
                throw ValidationError("filtration: each G_(i+1) must be a subgroup of G_i");
            if (fix < prev_fix)
                throw ValidationError("filtration: fixed spaces must grow with i");
        }
    }
}

struct ConductorReport {
    long long a_v = 0;
    std::vector<BigRat> terms; // (1/[G_0:G_i]) (dim - fix_i) per listed i
    std::string place_label;
};

// a_v = sum_i (1/[G_0:G_i]) dim(V / V^(G_i)); exact rationals, with the
// integrality of the total asserted.
inline ConductorReport conductor_exponent(const RamificationFiltration& filt,
                                          const std::string& place_label = "") {
    validate_filtration(filt);
    ConductorReport rep;
    rep.place_label = place_label;
    const long long g0 = filt.groups[0].first;
    BigRat total(0);
    for (auto [order, fix] : filt.groups) {
        BigRat term(BigInt(order * (filt.dim - fix)), BigInt(g0)); // (order/g0)(dim-fix)
        rep.terms.push_back(term);
        total += term;
    }
    if (!total.is_integer())
        throw NonIntegralConductorError("conductor: total " + total.to_string() +
                                        " is not an integer");
    rep.a_v = total.num().to_ll();
    return rep;
}

struct LevelEntry {
    std::string place_label;
    BigInt norm;             // absolute norm of the place
    long long residue_char = 0;
    RamificationFiltration filt;
};

struct LevelFactor {
    std::string place_label;
    long long exponent = 0;
};

struct LevelReport {
    std::vector<LevelFactor> factors; // ramified v with v not above p, by label
    BigInt norm;                      // product of norm^exponent
};

// Prime-to-p part of the conductor: keep the places with a_v > 0 away
// from p.
inline LevelReport level(long long p, const std::vector<LevelEntry>& entries) {
    for (size_t i = 0; i < entries.size(); ++i)
        for (size_t j = i + 1; j < entries.size(); ++j)
            if (entries[i].place_label == entries[j].place_label)
                throw ValidationError("level: duplicate place label");
    LevelReport rep;
    rep.norm = BigInt(1);
    std::vector<std::pair<std::string, std::pair<long long, BigInt>>> kept;
    for (const auto& ent : entries) {
        ConductorReport c = conductor_exponent(ent.filt, ent.place_label);
        if (c.a_v == 0 || ent.residue_char == p) continue;
        kept.push_back({ent.place_label, {c.a_v, ent.norm}});
    }
    std::sort(kept.begin(), kept.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    for (const auto& [label, av_norm] : kept) {
        rep.factors.push_back({label, av_norm.first});
        rep.norm *= pow_u(av_norm.second, static_cast<unsigned long long>(av_norm.first));
    }
    return rep;
}

// Congruence conditions cutting out U_1(v^a) inside GL_2(O_v): a = 1 and
// c = 0 modulo v^a, on matrices ((a, b), (c, d)).
struct U1Descriptor {
    std::string place_label;
    long long exponent = 0;
    std::string group;
    std::vector<std::string> conditions;
};

inline U1Descriptor u1_descriptor(const std::string& place_label, long long a) {
    if (a < 0) throw ValidationError("u1_descriptor: exponent must be >= 0");
    U1Descriptor d;
    d.place_label = place_label;
    d.exponent = a;
    if (a == 0) {
        d.group = "GL2(O_" + place_label + ")";
        return d;
    }
    std::string mod = "mod " + place_label + (a == 1 ? "" : "^" + std::to_string(a));
    d.group = "U1(" + place_label + (a == 1 ? "" : "^" + std::to_string(a)) + ")";
    d.conditions = {"a = 1 " + mod, "c = 0 " + mod};
    return d;
}

} // namespace serre

#endif
