#ifndef SERRE_CHAR_ARITH_HPP
#define SERRE_CHAR_ARITH_HPP

#include <vector>
#include <string>
#include <compare>

#include "serre/bigint.hpp"
#include "serre/errors.hpp"

namespace serre {

// Local arithmetic context at a place above p.  The residue-field embeddings
// are implicitly tau_0, ..., tau_{f-1} with tau_j = tau_0 o Frob^j, so the
// fundamental character attached to tau_j is psi_{tau_0}^(p^j).
struct LocalPlace {
    long long p = 0;
    long long e = 1;
    long long f = 1;
    BigInt q; // p^f

    friend bool operator==(const LocalPlace& a, const LocalPlace& b) {
        return a.p == b.p && a.e == b.e && a.f == b.f;
    }
    friend bool operator!=(const LocalPlace& a, const LocalPlace& b) { return !(a == b); }
    friend std::strong_ordering operator<=>(const LocalPlace& a, const LocalPlace& b) {
        if (a.p != b.p) return a.p <=> b.p;
        if (a.e != b.e) return a.e <=> b.e;
        return a.f <=> b.f;
    }
};

inline bool is_prime(long long n) {
    if (n < 2) return false;
    for (long long d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

inline LocalPlace make_place(long long p, long long e, long long f) {
    if (!is_prime(p)) throw ValidationError("make_place: p must be prime");
    if (e < 1) throw ValidationError("make_place: e must be >= 1");
    if (f < 1) throw ValidationError("make_place: f must be >= 1");
    LocalPlace v;
    v.p = p;
    v.e = e;
    v.f = f;
    v.q = pow_u(BigInt(p), static_cast<unsigned long long>(f));
    return v;
}

// Character of tame inertia written as an exponent of a fixed base
// fundamental character: psi_{tau_0} for niveau 1, its niveau-2 lift
// psi~ for niveau 2 (psi~^(q+1) = psi_{tau_0}).  Always stored in minimal
// niveau with 0 <= exponent < q^niveau - 1.
struct TameCharacter {
    LocalPlace place;
    int niveau = 1;
    BigInt exponent;

    BigInt modulus() const {
        return niveau == 1 ? place.q - BigInt(1) : place.q * place.q - BigInt(1);
    }
    bool is_trivial() const { return niveau == 1 && exponent.is_zero(); }

    friend bool operator==(const TameCharacter& a, const TameCharacter& b) {
        return a.place == b.place && a.niveau == b.niveau && a.exponent == b.exponent;
    }
    friend bool operator!=(const TameCharacter& a, const TameCharacter& b) { return !(a == b); }
};

inline TameCharacter make_character(const LocalPlace& place, int niveau, const BigInt& n) {
    if (niveau != 1 && niveau != 2)
        throw ValidationError("make_character: niveau must be 1 or 2");
    TameCharacter chi;
    chi.place = place;
    chi.niveau = niveau;
    BigInt mod = niveau == 1 ? place.q - BigInt(1) : place.q * place.q - BigInt(1);
    chi.exponent = mod_floor(n, mod);
    if (niveau == 2) {
        // psi~^((q+1)k) = psi_{tau_0}^k: (q+1) | exponent means niveau 1.
        BigInt qp1 = place.q + BigInt(1);
        if (mod_floor(chi.exponent, qp1).is_zero()) {
            chi.niveau = 1;
            chi.exponent = mod_floor(chi.exponent / qp1, place.q - BigInt(1));
        }
    }
    return chi;
}

inline TameCharacter trivial_character(const LocalPlace& place) {
    return make_character(place, 1, BigInt(0));
}

struct FundamentalTerm {
    long long embedding = 0; // j in [0, f)
    int lift = 0;            // 0 or 1; selects psi~^(p^j) vs psi~^(p^(j+f))
    BigInt exponent;
};

// Product prod_j psi_{tau_j,lift_j}^(m_j), i.e. exponent
// sum_j m_j p^(j + f*l_j) modulo q^r - 1, niveau-reduced.
inline TameCharacter product_of_fundamentals(const LocalPlace& place,
                                             const std::vector<FundamentalTerm>& terms,
                                             bool force_niveau2 = false) {
    int niveau = force_niveau2 ? 2 : 1;
    for (const auto& t : terms) {
        if (t.embedding < 0 || t.embedding >= place.f)
            throw ValidationError("product_of_fundamentals: embedding index out of range");
        if (t.lift != 0 && t.lift != 1)
            throw ValidationError("product_of_fundamentals: lift must be 0 or 1");
        if (t.lift == 1) niveau = 2;
    }
    BigInt sum(0);
    for (const auto& t : terms) {
        unsigned long long e = static_cast<unsigned long long>(
            t.embedding + (t.lift ? place.f : 0));
        sum += t.exponent * pow_u(BigInt(place.p), e);
    }
    return make_character(place, niveau, sum);
}

// Relabels the base embedding: exponent times p.
inline TameCharacter frobenius_twist(const TameCharacter& chi) {
    return make_character(chi.place, chi.niveau, chi.exponent * BigInt(chi.place.p));
}

// Exponent times q; the identity on niveau 1.
inline TameCharacter conjugate_q(const TameCharacter& chi) {
    return make_character(chi.place, chi.niveau, chi.exponent * chi.place.q);
}

} // namespace serre

#endif
