#ifndef SERRE_JSON_IO_HPP
#define SERRE_JSON_IO_HPP

#include <json.hpp>

#include "serre/char_arith.hpp"
#include "serre/conductor.hpp"
#include "serre/errors.hpp"
#include "serre/modp_llc.hpp"
#include "serre/weight_core.hpp"
#include "serre/weight_recipe.hpp"

namespace serre {

using json = nlohmann::ordered_json;

inline json bigint_to_json(const BigInt& v) {
    if (v.fits_ll()) return json(v.to_ll());
    return json(v.to_string());
}

inline BigInt bigint_from_json(const json& j) {
    if (j.is_number_integer()) return BigInt(j.get<long long>());
    if (j.is_string()) return BigInt::from_string(j.get<std::string>());
    throw ValidationError("expected an integer (or decimal string)");
}

// ---- places and characters ------------------------------------------------

inline json place_to_json(const LocalPlace& v) {
    return json{{"p", v.p}, {"e", v.e}, {"f", v.f}};
}

inline LocalPlace place_from_json(const json& j) {
    return make_place(j.at("p").get<long long>(), j.at("e").get<long long>(),
                      j.at("f").get<long long>());
}

inline json character_to_json(const TameCharacter& chi) {
    return json{{"niveau", chi.niveau}, {"exponent", bigint_to_json(chi.exponent)}};
}

inline TameCharacter character_from_json(const LocalPlace& place, const json& j) {
    return make_character(place, j.at("niveau").get<int>(),
                          bigint_from_json(j.at("exponent")));
}

// ---- weights and multisets ------------------------------------------------

inline json weight_to_json(const SerreWeightLocal& s) {
    return json{{"r", s.r}, {"w", s.w}};
}

inline SerreWeightLocal weight_from_json(const LocalPlace& place, const json& j) {
    std::vector<int> r = j.at("r").get<std::vector<int>>();
    std::vector<int> w = j.at("w").get<std::vector<int>>();
    if (static_cast<long long>(w.size()) != place.f)
        throw ValidationError("weight: w must have f entries");
    BigInt wexp(0), mul(1);
    for (int wj : w) {
        if (wj < 0 || wj > place.p - 1)
            throw ValidationError("weight: w entries must lie in [0, p-1]");
        wexp += BigInt(wj) * mul;
        mul *= BigInt(place.p);
    }
    SerreWeightLocal out = make_weight(place, r, wexp);
    if (out.w != w)
        throw ValidationError("weight: w vector is not in canonical form");
    return out;
}

inline json multiset_to_json(const WeightMultiset& m) {
    json out = json::array();
    for (const auto& [s, mult] : m)
        out.push_back(json{{"weight", weight_to_json(s)}, {"mult", mult}});
    return out;
}

// ---- inertial data ----------------------------------------------------------

inline json datum_to_json(const InertialDatum& d) {
    json out;
    out["place"] = place_to_json(d.place);
    out["case"] = case_name(d.kind);
    if (d.kind == InertialDatum::Irreducible) {
        out["phi"] = character_to_json(d.phi);
    } else {
        out["chi1"] = character_to_json(d.chi1);
        out["chi2"] = character_to_json(d.chi2);
    }
    return out;
}

inline InertialDatum datum_from_json(const json& j) {
    LocalPlace place = place_from_json(j.at("place"));
    std::string kind = j.at("case").get<std::string>();
    if (kind == "irreducible") {
        TameCharacter phi = character_from_json(place, j.at("phi"));
        if (phi.niveau != 2)
            throw NotIrreducibleError("datum: phi reduces to niveau 1 (phi^q = phi)");
        return make_irreducible(phi);
    }
    TameCharacter chi1 = character_from_json(place, j.at("chi1"));
    TameCharacter chi2 = character_from_json(place, j.at("chi2"));
    if (kind == "reducible_split") return make_reducible_split(chi1, chi2);
    if (kind == "indecomposable") return make_indecomposable(chi1, chi2);
    throw ValidationError("datum: unknown case \"" + kind + "\"");
}

inline json witness_to_json(const WitnessAssignment& w) {
    json out;
    out["A"] = w.A;
    out["delta"] = w.delta;
    if (w.has_lifts) out["lifts"] = w.lifts;
    return out;
}

inline json local_weight_set_to_json(const LocalWeightSet& s, bool with_witnesses) {
    json out;
    out["weights"] = json::array();
    for (const auto& e : s.entries) out["weights"].push_back(weight_to_json(e.weight));
    out["exact"] = s.exact;
    if (with_witnesses) {
        out["witnesses"] = json::array();
        for (const auto& e : s.entries) out["witnesses"].push_back(witness_to_json(e.witness));
    }
    return out;
}

inline GlobalDatum global_datum_from_json(const json& j) {
    GlobalDatum g;
    for (const auto& ent : j.at("places")) {
        GlobalEntry e;
        e.datum = datum_from_json(ent.at("datum"));
        e.label = ent.contains("label")
                      ? ent.at("label").get<std::string>()
                      : "v" + std::to_string(g.entries.size());
        g.entries.push_back(std::move(e));
    }
    if (j.contains("degree")) g.declared_degree = j.at("degree").get<long long>();
    return g;
}

inline json global_weight_set_to_json(const GlobalWeightSet& g) {
    json out;
    out["tuples"] = json::array();
    for (const auto& tup : g.tuples) {
        json row = json::array();
        for (const auto& s : tup) row.push_back(weight_to_json(s));
        out["tuples"].push_back(row);
    }
    out["exact"] = g.exact;
    return out;
}

// ---- conductor --------------------------------------------------------------

inline json filtration_to_json(const RamificationFiltration& f) {
    json groups = json::array();
    for (auto [order, fix] : f.groups) groups.push_back(json::array({order, fix}));
    return json{{"dim", f.dim}, {"groups", groups}};
}

inline RamificationFiltration filtration_from_json(const json& j) {
    RamificationFiltration f;
    f.dim = j.at("dim").get<long long>();
    for (const auto& g : j.at("groups")) {
        if (!g.is_array() || g.size() != 2)
            throw ValidationError("filtration: each group entry is [order, fix]");
        f.groups.push_back({g[0].get<long long>(), g[1].get<long long>()});
    }
    return f;
}

inline json conductor_report_to_json(const ConductorReport& r) {
    json terms = json::array();
    for (const auto& t : r.terms) terms.push_back(t.to_string());
    json out{{"a_v", r.a_v}, {"terms", terms}};
    if (!r.place_label.empty()) out["place"] = r.place_label;
    return out;
}

inline std::vector<LevelEntry> level_entries_from_json(const json& j) {
    std::vector<LevelEntry> entries;
    for (const auto& e : j.at("entries")) {
        LevelEntry ent;
        ent.place_label = e.at("place").get<std::string>();
        ent.norm = bigint_from_json(e.at("norm"));
        ent.residue_char = e.at("residue_char").get<long long>();
        ent.filt = filtration_from_json(e.at("filtration"));
        entries.push_back(std::move(ent));
    }
    return entries;
}

inline json level_report_to_json(const LevelReport& r) {
    json factors = json::array();
    for (const auto& f : r.factors)
        factors.push_back(json{{"place", f.place_label}, {"exponent", f.exponent}});
    return json{{"factors", factors}, {"norm", bigint_to_json(r.norm)}};
}

// ---- local Langlands bookkeeping ---------------------------------------------

inline json llc_result_to_json(const LlcResult& r) {
    return json{{"weights", json::array({weight_to_json(r.sigma),
                                         weight_to_json(r.sigma_prime)})},
                {"pi_label", r.pi_label}};
}

inline json coker_result_to_json(const CokerResult& r) {
    return json{{"dim", r.dim}, {"stabilized", r.stabilized}};
}

} // namespace serre

#endif
