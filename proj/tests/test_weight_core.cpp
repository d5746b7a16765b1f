#include <doctest.h>

#include "serre/weight_core.hpp"

using namespace serre;

namespace {

size_t find_class(const BrauerContext& ctx, ConjClass::Kind kind, long long i, long long j) {
    for (size_t c = 0; c < ctx.classes.size(); ++c)
        if (ctx.classes[c].kind == kind && ctx.classes[c].i == i && ctx.classes[c].j == j)
            return c;
    throw std::logic_error("class not found");
}

// Brauer character of Sym^m built directly from eigenvalue sums, kept
// independent of jh_sym.
ClassFunction sym_power_class_function(const LocalPlace& place, long long m) {
    auto ctx = get_brauer_context(place);
    ClassFunction out{place, {}};
    for (const auto& cl : ctx->classes) {
        CycField::Elem v = ctx->field.zero();
        for (long long i = 0; i <= m; ++i)
            v = ctx->field.add(v, ctx->field.zeta_pow(cl.a * i + cl.b * (m - i)));
        out.values.push_back(v);
    }
    return out;
}

WeightMultiset ms(std::initializer_list<SerreWeightLocal> ws) {
    WeightMultiset m;
    for (const auto& w : ws) m[w] += 1;
    return m;
}

} // namespace

TEST_CASE("canonicalize_weight") {
    LocalPlace v52 = make_place(5, 1, 2);
    SerreWeightLocal a = make_weight(v52, {1, 1}, BigInt(24));
    CHECK(a.w == std::vector<int>{0, 0}); // det^(q-1) is trivial
    SerreWeightLocal b = make_weight(v52, {0, 0}, BigInt(4));
    CHECK(b.w == std::vector<int>{4, 0});
    LocalPlace v5 = make_place(5, 1, 1);
    CHECK_THROWS_AS(make_weight(v5, {6}, BigInt(0)), ValidationError);
    CHECK_THROWS_AS(make_weight(v5, {0, 0}, BigInt(0)), ValidationError);
}

TEST_CASE("canonical form is idempotent and injective") {
    for (auto pf : {std::pair<long long, long long>{3, 1}, {5, 1}, {3, 2}}) {
        LocalPlace v = make_place(pf.first, 1, pf.second);
        auto ws = all_weights(v);
        CHECK(static_cast<long long>(ws.size()) ==
              (v.q * (v.q - BigInt(1))).to_ll());
        for (size_t i = 0; i < ws.size(); ++i) {
            CHECK(make_weight(v, ws[i].r, weight_w_exponent(ws[i])) == ws[i]);
            if (i > 0) CHECK(ws[i - 1] < ws[i]);
        }
    }
}

TEST_CASE("involution_prime") {
    LocalPlace v5 = make_place(5, 1, 1);
    CHECK(involution_prime(make_weight(v5, {1}, BigInt(0))) ==
          make_weight(v5, {3}, BigInt(1)));
    CHECK(involution_prime(make_weight(v5, {4}, BigInt(2))) ==
          make_weight(v5, {0}, BigInt(2))); // w' = 2+4 = 6 = 2 mod 4
    for (const auto& s : all_weights(v5))
        CHECK(involution_prime(involution_prime(s)) == s);
    LocalPlace v9 = make_place(3, 1, 2);
    CHECK_THROWS_AS(involution_prime(make_weight(v9, {0, 0}, BigInt(0))),
                    UnsupportedPlaceError);
}

TEST_CASE("jh_sym worked decompositions") {
    LocalPlace v5 = make_place(5, 1, 1);
    CHECK(jh_sym(5, 6) == ms({make_weight(v5, {0}, BigInt(1)),
                              make_weight(v5, {2}, BigInt(0)),
                              make_weight(v5, {2}, BigInt(2))}));
    CHECK(jh_sym(5, 3) == ms({make_weight(v5, {3}, BigInt(0))}));
    LocalPlace v3 = make_place(3, 1, 1);
    CHECK(jh_sym(3, 3) == ms({make_weight(v3, {1}, BigInt(0)),
                              make_weight(v3, {1}, BigInt(1))}));
    CHECK_THROWS_AS(jh_sym(5, -1), ValidationError);
}

TEST_CASE("jh_sym dimension conservation") {
    for (long long p : {3, 5, 7, 11})
        for (long long m = 0; m <= 60; ++m)
            CHECK(multiset_dim(jh_sym(p, m)) == m + 1);
}

TEST_CASE("brauer_character hand values at q = 3") {
    LocalPlace v3 = make_place(3, 1, 1);
    auto ctx = get_brauer_context(v3);
    size_t z1 = find_class(*ctx, ConjClass::Central, 0, 0);
    size_t s12 = find_class(*ctx, ConjClass::Split, 0, 1);

    ClassFunction sym1 = brauer_character(make_weight(v3, {1}, BigInt(0)));
    CHECK(sym1.values[z1] == ctx->field.from_int(BigInt(2)));
    // Teichmueller lift of 2 in F_3 is -1, so X + Y = 1 + (-1) = 0
    CHECK(CycField::is_zero(sym1.values[s12]));

    ClassFunction det = brauer_character(make_weight(v3, {0}, BigInt(1)));
    CHECK(det.values[s12] == ctx->field.from_int(BigInt(-1)));

    // central value is the dimension, for every weight
    for (const auto& s : all_weights(v3))
        CHECK(brauer_character(s).values[z1] ==
              ctx->field.from_int(BigInt(weight_dim(s))));
}

TEST_CASE("induced principal-series character") {
    LocalPlace v3 = make_place(3, 1, 1);
    auto ctx = get_brauer_context(v3);
    TameCharacter triv = trivial_character(v3);
    ClassFunction ind = induced_ps_character(triv, triv);
    size_t z1 = find_class(*ctx, ConjClass::Central, 0, 0);
    size_t z2 = find_class(*ctx, ConjClass::Central, 1, 1);
    size_t s12 = find_class(*ctx, ConjClass::Split, 0, 1);
    CHECK(ind.values[z1] == ctx->field.from_int(BigInt(4)));
    CHECK(ind.values[z2] == ctx->field.from_int(BigInt(4)));
    CHECK(ind.values[s12] == ctx->field.from_int(BigInt(2)));
    for (size_t c = 0; c < ctx->classes.size(); ++c)
        if (ctx->classes[c].kind == ConjClass::Elliptic)
            CHECK(CycField::is_zero(ind.values[c]));

    // value at z(1) is q + 1 for every theta
    for (long long c1 = 0; c1 < 2; ++c1)
        for (long long c2 = 0; c2 < 2; ++c2) {
            ClassFunction f = induced_ps_character(make_character(v3, 1, BigInt(c1)),
                                                   make_character(v3, 1, BigInt(c2)));
            CHECK(f.values[z1] == ctx->field.from_int(BigInt(4)));
        }

    // theta = (1, 0): chi1(1)chi2(2) + chi1(2)chi2(1) = 1 + (-1) = 0
    ClassFunction f10 = induced_ps_character(make_character(v3, 1, BigInt(1)), triv);
    CHECK(CycField::is_zero(f10.values[s12]));

    CHECK_THROWS_AS(induced_ps_character(make_character(v3, 2, BigInt(1)), triv),
                    ValidationError);
    LocalPlace v5 = make_place(5, 1, 1);
    CHECK_THROWS_AS(induced_ps_character(trivial_character(v5), triv), ValidationError);
}

TEST_CASE("decompose_brauer identifies irreducibles") {
    for (long long p : {3, 5}) {
        LocalPlace v = make_place(p, 1, 1);
        for (const auto& s : all_weights(v)) {
            BrauerDecomposition d = decompose_brauer(brauer_character(s));
            CHECK(d.coefficients.size() == 1);
            CHECK(d.coefficients.at(s) == 1);
            CHECK(!d.has_negative);
        }
    }
}

TEST_CASE("decompose_brauer of the trivial principal series") {
    LocalPlace v3 = make_place(3, 1, 1);
    TameCharacter triv = trivial_character(v3);
    BrauerDecomposition d = decompose_brauer(induced_ps_character(triv, triv));
    std::map<SerreWeightLocal, long long> expect{
        {make_weight(v3, {0}, BigInt(0)), 1}, {make_weight(v3, {2}, BigInt(0)), 1}};
    CHECK(d.coefficients == expect);
}

TEST_CASE("decompose_brauer rejects junk input") {
    LocalPlace v3 = make_place(3, 1, 1);
    auto ctx = get_brauer_context(v3);
    ClassFunction bogus{v3, {}};
    for (size_t c = 0; c < ctx->classes.size(); ++c)
        bogus.values.push_back(ctx->field.from_int(BigInt(c == 0 ? 1 : 0)));
    CHECK_THROWS_AS(decompose_brauer(bogus), DecompositionError);
}

TEST_CASE("oracle equivalence: jh_sym vs Brauer decomposition") {
    for (long long p : {3, 5}) {
        LocalPlace v = make_place(p, 1, 1);
        for (long long m = 0; m <= 12; ++m) {
            BrauerDecomposition d = decompose_brauer(sym_power_class_function(v, m));
            WeightMultiset expect = jh_sym(p, m);
            CHECK(!d.has_negative);
            WeightMultiset got;
            for (const auto& [s, c] : d.coefficients) got[s] = c;
            CHECK(got == expect);
        }
    }
}

TEST_CASE("jh_principal_series hand values at q = 3") {
    LocalPlace v3 = make_place(3, 1, 1);
    TameCharacter triv = trivial_character(v3);
    TameCharacter one = make_character(v3, 1, BigInt(1));
    CHECK(jh_principal_series(triv, triv) ==
          ms({make_weight(v3, {0}, BigInt(0)), make_weight(v3, {2}, BigInt(0))}));
    CHECK(jh_principal_series(one, one) ==
          ms({make_weight(v3, {0}, BigInt(1)), make_weight(v3, {2}, BigInt(1))}));
    CHECK(multiset_dim(jh_principal_series(one, triv)) == 4);
}

TEST_CASE("jh_principal_series twist equivariance") {
    for (long long p : {3, 5}) {
        LocalPlace v = make_place(p, 1, 1);
        long long qm1 = (v.q - BigInt(1)).to_ll();
        for (long long c1 = 0; c1 < qm1; ++c1)
            for (long long c2 = 0; c2 < qm1; ++c2)
                for (long long t = 1; t < qm1; ++t) {
                    WeightMultiset base = jh_principal_series(
                        make_character(v, 1, BigInt(c1)), make_character(v, 1, BigInt(c2)));
                    WeightMultiset twisted = jh_principal_series(
                        make_character(v, 1, BigInt(c1 + t)),
                        make_character(v, 1, BigInt(c2 + t)));
                    WeightMultiset expect;
                    for (const auto& [s, m] : base) expect[det_twist(s, BigInt(t))] += m;
                    CHECK(twisted == expect);
                }
    }
}

TEST_CASE("principal-series closed form matches the oracle at f = 1") {
    // conjectured constituents of Ind(chi1 (x) chi2) for f = 1:
    //   det^(c2) Sym^a  and  det^(c1) Sym^(p-1-a),  a = c1 - c2 mod (p-1) in [0, p-2]
    for (long long p : {3, 5}) {
        LocalPlace v = make_place(p, 1, 1);
        for (long long c1 = 0; c1 < p - 1; ++c1)
            for (long long c2 = 0; c2 < p - 1; ++c2) {
                long long a = ((c1 - c2) % (p - 1) + (p - 1)) % (p - 1);
                WeightMultiset expect =
                    ms({make_weight(v, {static_cast<int>(a)}, BigInt(c2)),
                        make_weight(v, {static_cast<int>(p - 1 - a)}, BigInt(c1))});
                CHECK(jh_principal_series(make_character(v, 1, BigInt(c1)),
                                          make_character(v, 1, BigInt(c2))) == expect);
            }
    }
}

TEST_CASE("brauer metadata reports the generator convention") {
    BrauerMetadata md = brauer_metadata(make_place(3, 1, 1));
    CHECK(md.generator == "t");
    CHECK(!md.field_poly.empty());
}
