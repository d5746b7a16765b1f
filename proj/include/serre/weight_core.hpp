#ifndef SERRE_WEIGHT_CORE_HPP
#define SERRE_WEIGHT_CORE_HPP

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "serre/bigint.hpp"
#include "serre/char_arith.hpp"
#include "serre/cyclotomic.hpp"
#include "serre/errors.hpp"
#include "serre/gf.hpp"

namespace serre {

// An irreducible representation of GL_2(k_v) in canonical parameter form:
// tensor over the embeddings tau_j of det^(w_j) Sym^(r_j), with all
// r_j, w_j in [0, p-1] and the w_j not all p-1.  Canonical form identifies
// the w-vector with the base-p digits of sum w_j p^j mod (q-1).
struct SerreWeightLocal {
    LocalPlace place;
    std::vector<int> r;
    std::vector<int> w;

    friend bool operator==(const SerreWeightLocal& a, const SerreWeightLocal& b) {
        return a.place == b.place && a.r == b.r && a.w == b.w;
    }
    friend bool operator!=(const SerreWeightLocal& a, const SerreWeightLocal& b) {
        return !(a == b);
    }
    // order: r lexicographic, then numeric w-exponent (digits read from the top)
    friend bool operator<(const SerreWeightLocal& a, const SerreWeightLocal& b) {
        if (a.place != b.place) return a.place < b.place;
        if (a.r != b.r) return a.r < b.r;
        for (size_t i = a.w.size(); i-- > 0;)
            if (a.w[i] != b.w[i]) return a.w[i] < b.w[i];
        return false;
    }
};

inline SerreWeightLocal make_weight(const LocalPlace& place, const std::vector<int>& r,
                                    const BigInt& w_exponent) {
    if (static_cast<long long>(r.size()) != place.f)
        throw ValidationError("make_weight: r must have f entries");
    for (int rj : r)
        if (rj < 0 || rj > place.p - 1)
            throw ValidationError("make_weight: r entries must lie in [0, p-1]");
    SerreWeightLocal s;
    s.place = place;
    s.r = r;
    // base-p digits of w mod (q-1); the residue q-1 never occurs, so the
    // all-(p-1) digit string is automatically excluded
    BigInt rem = mod_floor(w_exponent, place.q - BigInt(1));
    s.w.assign(place.f, 0);
    const BigInt P(place.p);
    for (long long j = 0; j < place.f; ++j) {
        BigInt q2, r2;
        BigInt::divmod(rem, P, q2, r2);
        s.w[j] = static_cast<int>(r2.to_ll());
        rem = q2;
    }
    return s;
}

inline BigInt weight_w_exponent(const SerreWeightLocal& s) {
    BigInt e(0), mul(1);
    const BigInt P(s.place.p);
    for (size_t j = 0; j < s.w.size(); ++j) {
        e += BigInt(s.w[j]) * mul;
        mul *= P;
    }
    return e;
}

inline long long weight_dim(const SerreWeightLocal& s) {
    long long d = 1;
    for (int rj : s.r) d *= rj + 1;
    return d;
}

inline SerreWeightLocal det_twist(const SerreWeightLocal& s, const BigInt& c) {
    return make_weight(s.place, s.r, weight_w_exponent(s) + c);
}

// "Sym^2" / "det^1 Sym^3" / "det^[0,1] Sym^[2,0]" rendering.
inline std::string weight_name(const SerreWeightLocal& s) {
    auto vec = [](const std::vector<int>& v) {
        std::string out = "[";
        for (size_t i = 0; i < v.size(); ++i)
            out += (i ? "," : "") + std::to_string(v[i]);
        return out + "]";
    };
    bool w_zero = true;
    for (int wj : s.w) w_zero &= wj == 0;
    std::string out;
    if (!w_zero)
        out = s.place.f == 1 ? "det^" + std::to_string(s.w[0]) : "det^" + vec(s.w);
    if (!out.empty()) out += " ";
    out += s.place.f == 1 ? "Sym^" + std::to_string(s.r[0]) : "Sym^" + vec(s.r);
    return out;
}

// det^(w+r) (x) Sym^(p-1-r), defined for GL_2(Q_p) only.
inline SerreWeightLocal involution_prime(const SerreWeightLocal& s) {
    if (s.place.f != 1)
        throw UnsupportedPlaceError("involution_prime: defined only for f = 1");
    return make_weight(s.place, {static_cast<int>(s.place.p) - 1 - s.r[0]},
                       BigInt(s.w[0]) + BigInt(s.r[0]));
}

using WeightMultiset = std::map<SerreWeightLocal, long long>;

inline long long multiset_dim(const WeightMultiset& m) {
    long long d = 0;
    for (const auto& [s, mult] : m) d += mult * weight_dim(s);
    return d;
}

// Jordan-Hoelder constituents of Sym^m over F_p (f = 1).  For m > p-1 the
// semisimplification splits off Sym^r and det^r Sym^(p-1-r) with
// r = m mod (p-1) taken in [0, p-2], and the rest is a det twist of the
// constituents of Sym^(m-p-1); Sym of a negative integer is zero.
inline WeightMultiset jh_sym(long long p, long long m) {
    if (!is_prime(p)) throw ValidationError("jh_sym: p must be prime");
    if (m < 0) throw ValidationError("jh_sym: m must be >= 0");
    LocalPlace place = make_place(p, 1, 1);
    WeightMultiset out;
    long long twist = 0, mt = m;
    while (mt > p - 1) {
        long long r = mt % (p - 1); // in [0, p-2]
        out[make_weight(place, {static_cast<int>(r)}, BigInt(twist))] += 1;
        out[make_weight(place, {static_cast<int>(p - 1 - r)}, BigInt(twist + r))] += 1;
        twist += 1;
        mt -= p + 1;
    }
    if (mt >= 0)
        out[make_weight(place, {static_cast<int>(mt)}, BigInt(twist))] += 1;
    return out;
}

// ---------------------------------------------------------------------------
// Brauer characters of GL_2(F_q) on p-regular classes, valued in Z[zeta_N],
// N = q^2 - 1.  Eigenvalues of a p-regular element generate a subgroup of
// F_(q^2)^*; with a generator g fixed, the Teichmueller lift of g^k is
// zeta_N^k, so all values are exact exponent arithmetic mod N.
// ---------------------------------------------------------------------------

struct ConjClass {
    enum Kind { Central, Split, Elliptic } kind;
    long long a, b; // zeta-exponents of the lifted eigenvalue pair
    long long i, j; // defining indices: central k; split i<j; elliptic m
};

struct BrauerContext {
    LocalPlace place;
    long long N;        // q^2 - 1
    long long qll;      // q as a machine integer
    CycField field;
    std::vector<ConjClass> classes;

    BrauerContext(const LocalPlace& pl, long long N_, long long q_)
        : place(pl), N(N_), qll(q_), field(N_) {}
};

inline std::shared_ptr<const BrauerContext> get_brauer_context(const LocalPlace& place) {
    static std::map<std::pair<long long, long long>, std::shared_ptr<const BrauerContext>> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto key = std::make_pair(place.p, place.f);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;

    // the cached zeta-power table is N * deg(Phi_N) big integers
    if (!place.q.fits_ll() || place.q.to_ll() > 64)
        throw ValidationError("Brauer tables are supported for q <= 64");
    long long q = place.q.to_ll();
    long long N = q * q - 1;
    auto ctx = std::make_shared<BrauerContext>(place, N, q);

    // central z(g^((q+1)k))
    for (long long k = 0; k < q - 1; ++k)
        ctx->classes.push_back({ConjClass::Central, (q + 1) * k % N, (q + 1) * k % N, k, k});
    // split s(g^((q+1)i), g^((q+1)j)), unordered i < j
    for (long long i = 0; i < q - 1; ++i)
        for (long long j = i + 1; j < q - 1; ++j)
            ctx->classes.push_back({ConjClass::Split, (q + 1) * i % N, (q + 1) * j % N, i, j});
    // elliptic e(g^m), m not divisible by q+1, modulo m ~ mq
    for (long long m = 1; m < N; ++m) {
        if (m % (q + 1) == 0) continue;
        long long conj = m * q % N;
        if (conj < m) continue;
        ctx->classes.push_back({ConjClass::Elliptic, m, conj, m, conj});
    }
    if (static_cast<long long>(ctx->classes.size()) != q * q - q)
        throw std::logic_error("class list size mismatch");
    return cache.emplace(key, std::move(ctx)).first->second;
}

// Witness for the fixed generator convention: F_(q^2) presented by its
// first primitive polynomial; F_q^* is the subgroup generated by g^(q+1).
struct BrauerMetadata {
    std::string field_poly;
    std::string generator;
};

inline BrauerMetadata brauer_metadata(const LocalPlace& place) {
    GF field(place.p, static_cast<int>(2 * place.f));
    return {field.poly_string(), "t"};
}

struct ClassFunction {
    LocalPlace place;
    std::vector<CycField::Elem> values; // indexed by the canonical class list
};

inline bool class_function_eq(const ClassFunction& x, const ClassFunction& y) {
    return x.place == y.place && x.values == y.values;
}

namespace detail {
inline long long mulmod(long long a, long long b, long long N) {
    return static_cast<long long>(static_cast<__int128>(a) * b % N);
}
} // namespace detail

// Value of det^w Sym^r (twisted across embeddings) at eigenvalue
// lifts (X, Y) = (zeta^a, zeta^b):
//   prod_j (XY)^(p^j w_j) * sum_{i=0..r_j} X^(p^j i) Y^(p^j (r_j - i)).
inline ClassFunction brauer_character(const SerreWeightLocal& sigma) {
    auto ctx = get_brauer_context(sigma.place);
    const long long N = ctx->N;
    ClassFunction out{sigma.place, {}};
    out.values.reserve(ctx->classes.size());
    for (const auto& cl : ctx->classes) {
        CycField::Elem v = ctx->field.one();
        long long pj = 1;
        for (long long j = 0; j < sigma.place.f; ++j) {
            long long wexp = detail::mulmod(detail::mulmod(pj, sigma.w[j], N),
                                            (cl.a + cl.b) % N, N);
            CycField::Elem factor = ctx->field.zero();
            for (int i = 0; i <= sigma.r[j]; ++i) {
                long long e = (detail::mulmod(detail::mulmod(pj, i, N), cl.a % N, N)
                               + detail::mulmod(detail::mulmod(pj, sigma.r[j] - i, N),
                                                cl.b % N, N)) % N;
                factor = ctx->field.add(factor, ctx->field.zeta_pow(e + wexp));
            }
            v = ctx->field.mul(v, factor);
            pj = detail::mulmod(pj, sigma.place.p, N);
        }
        out.values.push_back(std::move(v));
    }
    return out;
}

// Brauer character of Ind_B^(GL_2(F_q)) (chi1 (x) chi2) for niveau-1
// characters: (q+1) chi1(x)chi2(x) at central x, the symmetrized product at
// split classes, zero at elliptic classes.
inline ClassFunction induced_ps_character(const TameCharacter& chi1,
                                          const TameCharacter& chi2) {
    if (chi1.place != chi2.place)
        throw ValidationError("induced_ps_character: characters at different places");
    if (chi1.niveau != 1 || chi2.niveau != 1)
        throw ValidationError("induced_ps_character: niveau-1 characters required");
    auto ctx = get_brauer_context(chi1.place);
    const long long N = ctx->N, q = ctx->qll;
    const long long c1 = mod_floor(chi1.exponent, BigInt(q - 1)).to_ll();
    const long long c2 = mod_floor(chi2.exponent, BigInt(q - 1)).to_ll();
    ClassFunction out{chi1.place, {}};
    out.values.reserve(ctx->classes.size());
    for (const auto& cl : ctx->classes) {
        switch (cl.kind) {
        case ConjClass::Central: {
            long long e = detail::mulmod((q + 1) * cl.i % N, c1 + c2, N);
            out.values.push_back(
                ctx->field.scalar_mul(BigInt(q + 1), ctx->field.zeta_pow(e)));
            break;
        }
        case ConjClass::Split: {
            long long e1 = (detail::mulmod((q + 1) * cl.i % N, c1, N)
                            + detail::mulmod((q + 1) * cl.j % N, c2, N)) % N;
            long long e2 = (detail::mulmod((q + 1) * cl.j % N, c1, N)
                            + detail::mulmod((q + 1) * cl.i % N, c2, N)) % N;
            out.values.push_back(
                ctx->field.add(ctx->field.zeta_pow(e1), ctx->field.zeta_pow(e2)));
            break;
        }
        case ConjClass::Elliptic:
            out.values.push_back(ctx->field.zero());
            break;
        }
    }
    return out;
}

// All q(q-1) irreducible weights at the place, in canonical order.
inline std::vector<SerreWeightLocal> all_weights(const LocalPlace& place) {
    if (!place.q.fits_ll())
        throw ValidationError("all_weights: place too large");
    long long q = place.q.to_ll();
    std::vector<SerreWeightLocal> out;
    std::vector<int> r(place.f, 0);
    for (;;) {
        for (long long w = 0; w < q - 1; ++w)
            out.push_back(make_weight(place, r, BigInt(w)));
        long long j = place.f - 1;
        while (j >= 0 && r[j] == place.p - 1) r[j--] = 0;
        if (j < 0) break;
        ++r[j];
    }
    std::sort(out.begin(), out.end());
    return out;
}

// Exact linear solver in the basis of irreducible Brauer characters.  The
// cyclotomic system is solved coefficient-slot by coefficient-slot over Q:
// rows are (class, slot) pairs, columns the irreducible weights.  A full-rank
// square subsystem is selected and inverted once per place.
struct BrauerSolver {
    LocalPlace place;
    std::vector<SerreWeightLocal> weights;
    std::vector<ClassFunction> chars;
    std::vector<size_t> sel;
    std::vector<std::vector<BigRat>> inv;

    BigRat entry(size_t row, size_t col) const {
        size_t deg = chars[col].values.empty() ? 1 : chars[col].values[0].size();
        return BigRat(chars[col].values[row / deg][row % deg]);
    }
};

inline std::shared_ptr<const BrauerSolver> get_brauer_solver(const LocalPlace& place) {
    static std::map<std::pair<long long, long long>, std::shared_ptr<const BrauerSolver>> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto key = std::make_pair(place.p, place.f);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;

    if (!place.q.fits_ll() || place.q.to_ll() > 25)
        throw ValidationError("decompose_brauer: solver supported for q <= 25");
    auto ctx = get_brauer_context(place);
    auto sv = std::make_shared<BrauerSolver>();
    sv->place = place;
    sv->weights = all_weights(place);
    for (const auto& s : sv->weights) sv->chars.push_back(brauer_character(s));

    const size_t dim = sv->weights.size();
    const size_t deg = ctx->field.degree();
    const size_t nrows = ctx->classes.size() * deg;

    // greedy row selection until full rank
    std::vector<std::vector<BigRat>> ech; // normalized rows
    std::vector<size_t> pivots;
    for (size_t row = 0; row < nrows && sv->sel.size() < dim; ++row) {
        std::vector<BigRat> v(dim);
        for (size_t col = 0; col < dim; ++col) v[col] = sv->entry(row, col);
        for (size_t k = 0; k < ech.size(); ++k) {
            if (v[pivots[k]].is_zero()) continue;
            BigRat c = v[pivots[k]];
            for (size_t col = 0; col < dim; ++col) v[col] -= c * ech[k][col];
        }
        size_t piv = dim;
        for (size_t col = 0; col < dim; ++col)
            if (!v[col].is_zero()) { piv = col; break; }
        if (piv == dim) continue;
        BigRat c = v[piv];
        for (size_t col = 0; col < dim; ++col) v[col] /= c;
        ech.push_back(std::move(v));
        pivots.push_back(piv);
        sv->sel.push_back(row);
    }
    if (sv->sel.size() != dim)
        throw std::logic_error("Brauer character matrix is singular");

    // invert the selected square submatrix by Gauss-Jordan,
    // pivoting on the first nonzero coordinate
    std::vector<std::vector<BigRat>> a(dim, std::vector<BigRat>(2 * dim));
    for (size_t i = 0; i < dim; ++i) {
        for (size_t j = 0; j < dim; ++j) a[i][j] = sv->entry(sv->sel[i], j);
        a[i][dim + i] = BigRat(1);
    }
    for (size_t col = 0; col < dim; ++col) {
        size_t pr = col;
        while (pr < dim && a[pr][col].is_zero()) ++pr;
        if (pr == dim) throw std::logic_error("Brauer solver: singular submatrix");
        std::swap(a[col], a[pr]);
        BigRat d = a[col][col];
        for (size_t j = 0; j < 2 * dim; ++j) a[col][j] /= d;
        for (size_t i = 0; i < dim; ++i) {
            if (i == col || a[i][col].is_zero()) continue;
            BigRat c = a[i][col];
            for (size_t j = col; j < 2 * dim; ++j) a[i][j] -= c * a[col][j];
        }
    }
    sv->inv.assign(dim, std::vector<BigRat>(dim));
    for (size_t i = 0; i < dim; ++i)
        for (size_t j = 0; j < dim; ++j) sv->inv[i][j] = a[i][dim + j];
    return cache.emplace(key, std::move(sv)).first->second;
}

struct BrauerDecomposition {
    std::map<SerreWeightLocal, long long> coefficients; // nonzero, may be negative
    bool has_negative = false;
};

inline BrauerDecomposition decompose_brauer(const ClassFunction& c) {
    auto ctx = get_brauer_context(c.place);
    auto sv = get_brauer_solver(c.place);
    const size_t deg = ctx->field.degree();
    if (c.values.size() != ctx->classes.size())
        throw ValidationError("decompose_brauer: wrong number of class values");
    for (const auto& v : c.values)
        if (v.size() != deg)
            throw ValidationError("decompose_brauer: malformed cyclotomic value");

    const size_t dim = sv->weights.size();
    std::vector<BigRat> x(dim, BigRat(0));
    for (size_t i = 0; i < dim; ++i) {
        BigRat acc(0);
        for (size_t j = 0; j < dim; ++j) {
            size_t row = sv->sel[j];
            const BigInt& yj = c.values[row / deg][row % deg];
            if (!yj.is_zero() && !sv->inv[i][j].is_zero())
                acc += sv->inv[i][j] * BigRat(yj);
        }
        x[i] = acc;
    }

    BrauerDecomposition out;
    std::vector<BigInt> xi(dim);
    for (size_t i = 0; i < dim; ++i) {
        if (!x[i].is_integer())
            throw DecompositionError("decompose_brauer: non-integral coefficient (input "
                                     "is not in the Brauer lattice)");
        xi[i] = x[i].num();
    }
    // full consistency check against every class value
    for (size_t cl = 0; cl < ctx->classes.size(); ++cl) {
        CycField::Elem acc = ctx->field.zero();
        for (size_t i = 0; i < dim; ++i)
            if (!xi[i].is_zero())
                acc = ctx->field.add(acc,
                                     ctx->field.scalar_mul(xi[i], sv->chars[i].values[cl]));
        if (acc != c.values[cl])
            throw DecompositionError("decompose_brauer: input is not in the span of "
                                     "irreducible Brauer characters");
    }
    for (size_t i = 0; i < dim; ++i) {
        if (xi[i].is_zero()) continue;
        long long v = xi[i].to_ll();
        out.coefficients[sv->weights[i]] = v;
        if (v < 0) out.has_negative = true;
    }
    return out;
}

// Jordan-Hoelder constituents of the principal series attached to theta,
// via the Brauer solve.
inline WeightMultiset jh_principal_series(const TameCharacter& chi1,
                                          const TameCharacter& chi2) {
    BrauerDecomposition d = decompose_brauer(induced_ps_character(chi1, chi2));
    if (d.has_negative)
        throw DecompositionError("jh_principal_series: negative multiplicity");
    WeightMultiset out;
    for (const auto& [s, m] : d.coefficients) out[s] = m;
    return out;
}

} // namespace serre

#endif
