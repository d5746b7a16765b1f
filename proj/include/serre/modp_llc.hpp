#ifndef SERRE_MODP_LLC_HPP
#define SERRE_MODP_LLC_HPP

#include <algorithm>
#include <array>
#include <climits>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "serre/bigint.hpp"
#include "serre/errors.hpp"
#include "serre/gf.hpp"
#include "serre/weight_core.hpp"
#include "serre/weight_recipe.hpp"

namespace serre {

// ---------------------------------------------------------------------------
// Exact 2x2 rational matrices and p-adic valuations.
// ---------------------------------------------------------------------------

inline long long vp_int(BigInt x, long long p) {
    if (x.is_zero()) return LLONG_MAX;
    long long v = 0;
    const BigInt P(p);
    for (;;) {
        BigInt q, r;
        BigInt::divmod(x, P, q, r);
        if (!r.is_zero()) return v;
        x = q;
        ++v;
    }
}

inline long long vp_rat(const BigRat& x, long long p) {
    if (x.is_zero()) return LLONG_MAX;
    return vp_int(x.num(), p) - vp_int(x.den(), p);
}

struct Mat2Rat {
    BigRat a, b, c, d; // ((a, b), (c, d))

    static Mat2Rat identity() { return {BigRat(1), BigRat(0), BigRat(0), BigRat(1)}; }
    static Mat2Rat from_ints(long long a, long long b, long long c, long long d) {
        return {BigRat(a), BigRat(b), BigRat(c), BigRat(d)};
    }
    BigRat det() const { return a * d - b * c; }
    friend Mat2Rat operator*(const Mat2Rat& x, const Mat2Rat& y) {
        return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d,
                x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
    }
    Mat2Rat inverse() const {
        BigRat dt = det();
        if (dt.is_zero()) throw ValidationError("Mat2Rat: singular matrix");
        return {d / dt, -b / dt, -c / dt, a / dt};
    }
    friend bool operator==(const Mat2Rat& x, const Mat2Rat& y) {
        return x.a == y.a && x.b == y.b && x.c == y.c && x.d == y.d;
    }
};

// powers of p as exact rationals, any sign of the exponent
inline BigRat p_power(long long p, long long e) {
    BigInt pe = pow_u(BigInt(p), static_cast<unsigned long long>(e < 0 ? -e : e));
    return e < 0 ? BigRat(BigInt(1), pe) : BigRat(pe);
}

// ---------------------------------------------------------------------------
// Vertices of the (p+1)-regular tree, encoded as coset representatives
// ((p^n, u), (0, 1)) of KZ\GL_2(Q_p) with u in Z[1/p] taken modulo p^n Z_p.
// The canonical representative has 0 <= u < p^n.
// ---------------------------------------------------------------------------

struct TreeVertex {
    long long n = 0;
    BigRat u;

    friend bool operator==(const TreeVertex& x, const TreeVertex& y) {
        return x.n == y.n && x.u == y.u;
    }
    friend bool operator!=(const TreeVertex& x, const TreeVertex& y) { return !(x == y); }
    friend bool operator<(const TreeVertex& x, const TreeVertex& y) {
        if (x.n != y.n) return x.n < y.n;
        return x.u < y.u;
    }
};

// canonical representative of u modulo p^n Z_p, inside [0, p^n)
inline BigRat canonical_u(const BigRat& u, long long n, long long p) {
    if (u.is_zero()) return BigRat(0);
    long long va = vp_int(u.num(), p);
    long long k = vp_int(u.den(), p);
    long long kp = k - va; // v_p(u) = -kp
    if (-kp >= n) return BigRat(0);
    long long m = n + kp;
    BigInt M = pow_u(BigInt(p), static_cast<unsigned long long>(m));
    BigInt aprime = u.num() / pow_u(BigInt(p), static_cast<unsigned long long>(va));
    BigInt y = u.den() / pow_u(BigInt(p), static_cast<unsigned long long>(k));
    BigInt wred = mod_floor(aprime * mod_inverse(y, M), M);
    BigRat out = BigRat(wred) * p_power(p, -kp);
    return out;
}

inline TreeVertex make_vertex(long long p, long long n, const BigRat& u) {
    return TreeVertex{n, canonical_u(u, n, p)};
}

inline TreeVertex base_vertex() { return TreeVertex{0, BigRat(0)}; }

inline Mat2Rat vertex_matrix(const TreeVertex& v, long long p) {
    return {p_power(p, v.n), v.u, BigRat(0), BigRat(1)};
}

inline long long vertex_distance(const TreeVertex& v, long long p) {
    long long k = v.u.is_zero() ? 0 : std::max<long long>(0, -vp_rat(v.u, p));
    long long d = v.n + 2 * k;
    return d < 0 ? -d : d;
}

struct CosetNormalForm {
    TreeVertex vertex;
    Mat2Rat kappa;      // in GL_2(Z_p): p-integral entries, unit determinant
    long long z_exp = 0; // central part p^z_exp
};

// g = h kappa z with h the canonical vertex representative, by exact column
// reduction over Z_p.
inline CosetNormalForm coset_normal_form(long long p, const Mat2Rat& g) {
    if (g.det().is_zero())
        throw ValidationError("coset_normal_form: singular matrix");
    BigRat a = g.a, b = g.b, c = g.c, d = g.d;
    if (vp_rat(d, p) > vp_rat(c, p)) { std::swap(a, b); std::swap(c, d); }
    // clear the bottom-left entry: col1 -= (c/d) col2
    BigRat t = c / d;
    a = a - t * b;
    long long nu = vp_rat(a, p), m = vp_rat(d, p);
    TreeVertex v = make_vertex(p, nu - m, b / d);
    Mat2Rat h = vertex_matrix(v, p);
    Mat2Rat kappa = h.inverse() * g;
    BigRat zinv = p_power(p, -m);
    kappa = {kappa.a * zinv, kappa.b * zinv, kappa.c * zinv, kappa.d * zinv};
    if (vp_rat(kappa.a, p) < 0 || vp_rat(kappa.b, p) < 0 || vp_rat(kappa.c, p) < 0 ||
        vp_rat(kappa.d, p) < 0 || vp_rat(kappa.det(), p) != 0)
        throw std::logic_error("coset_normal_form: reduction left K");
    return {v, kappa, m};
}

// entry-wise reduction of a p-integral rational matrix modulo p^k
inline std::array<long long, 4> mat_mod(const Mat2Rat& k, long long p, long long prec) {
    BigInt M = pow_u(BigInt(p), static_cast<unsigned long long>(prec));
    auto red = [&](const BigRat& x) {
        return mod_floor(x.num() * mod_inverse(x.den(), M), M).to_ll();
    };
    return {red(k.a), red(k.b), red(k.c), red(k.d)};
}

// all vertices at distance <= R, enumerated directly from the digit
// parametrization and sorted
inline std::vector<TreeVertex> vertices_up_to(long long p, long long R) {
    std::vector<TreeVertex> out;
    out.push_back(base_vertex());
    for (long long dist = 1; dist <= R; ++dist) {
        out.push_back(TreeVertex{-dist, BigRat(0)});
        long long pd = 1;
        for (long long i = 0; i < dist; ++i) pd *= p;
        for (long long u = 0; u < pd; ++u)
            out.push_back(TreeVertex{dist, BigRat(u)});
        long long pk = p;
        for (long long k = 1; k < dist; ++k) {
            long long pdk = 1;
            for (long long i = 0; i < dist - k; ++i) pdk *= p;
            for (long long u = 1; u < pdk; ++u)
                if (u % p != 0)
                    out.push_back(TreeVertex{dist - 2 * k, BigRat(BigInt(u), BigInt(pk))});
            pk *= p;
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

// ---------------------------------------------------------------------------
// The weight action: matrices of det^w Sym^r over a coefficient field
// F_(p^s), on the monomial basis e_i = X^(r-i) Y^i.
// ---------------------------------------------------------------------------

using GFVec = std::vector<long long>;
using GFMatrix = std::vector<GFVec>; // row-major

inline GFMatrix weight_matrix(const GF& F, int r, int w,
                              const std::array<long long, 4>& kbar) {
    long long p = F.p();
    // Pascal triangle mod p
    std::vector<std::vector<long long>> ch(r + 1, std::vector<long long>(r + 1, 0));
    for (int i = 0; i <= r; ++i) {
        ch[i][0] = 1;
        for (int j = 1; j <= i; ++j)
            ch[i][j] = (ch[i - 1][j - 1] + (j <= i - 1 ? ch[i - 1][j] : 0)) % p;
    }
    long long A = F.from_int(kbar[0]), B = F.from_int(kbar[1]);
    long long C = F.from_int(kbar[2]), D = F.from_int(kbar[3]);
    long long det = F.sub(F.mul(A, D), F.mul(B, C));
    long long detw = F.pow(det, w);
    GFMatrix M(r + 1, GFVec(r + 1, 0));
    for (int i = 0; i <= r; ++i) {
        // (A X + C Y)^(r-i) (B X + D Y)^i, coefficient of X^(r-j) Y^j
        for (int s = 0; s <= r - i; ++s) {
            long long us = F.mul(F.from_int(ch[r - i][s]),
                                 F.mul(F.pow(A, r - i - s), F.pow(C, s)));
            for (int t = 0; t <= i; ++t) {
                long long vt = F.mul(F.from_int(ch[i][t]),
                                     F.mul(F.pow(B, i - t), F.pow(D, t)));
                int j = s + t;
                M[j][i] = F.add(M[j][i], F.mul(detw, F.mul(us, vt)));
            }
        }
    }
    return M;
}

inline GFVec mat_vec(const GF& F, const GFMatrix& M, const GFVec& v) {
    GFVec out(M.size(), 0);
    for (size_t i = 0; i < M.size(); ++i)
        for (size_t j = 0; j < v.size(); ++j)
            if (M[i][j] && v[j]) out[i] = F.add(out[i], F.mul(M[i][j], v[j]));
    return out;
}

inline GFMatrix mat_mul(const GF& F, const GFMatrix& X, const GFMatrix& Y) {
    GFMatrix out(X.size(), GFVec(Y[0].size(), 0));
    for (size_t i = 0; i < X.size(); ++i)
        for (size_t k = 0; k < Y.size(); ++k)
            if (X[i][k])
                for (size_t j = 0; j < Y[0].size(); ++j)
                    if (Y[k][j]) out[i][j] = F.add(out[i][j], F.mul(X[i][k], Y[k][j]));
    return out;
}

// nullspace basis of A x = 0 by row reduction
inline std::vector<GFVec> nullspace(const GF& F, GFMatrix A, size_t cols) {
    size_t rows = A.size();
    std::vector<size_t> pivot_col;
    size_t rank = 0;
    for (size_t col = 0; col < cols && rank < rows; ++col) {
        size_t pr = rank;
        while (pr < rows && A[pr][col] == 0) ++pr;
        if (pr == rows) continue;
        std::swap(A[rank], A[pr]);
        long long inv = F.inv(A[rank][col]);
        for (size_t j = col; j < cols; ++j) A[rank][j] = F.mul(A[rank][j], inv);
        for (size_t i = 0; i < rows; ++i) {
            if (i == rank || A[i][col] == 0) continue;
            long long f = A[i][col];
            for (size_t j = col; j < cols; ++j)
                A[i][j] = F.sub(A[i][j], F.mul(f, A[rank][j]));
        }
        pivot_col.push_back(col);
        ++rank;
    }
    std::vector<char> is_pivot(cols, 0);
    for (size_t c : pivot_col) is_pivot[c] = 1;
    std::vector<GFVec> basis;
    for (size_t free = 0; free < cols; ++free) {
        if (is_pivot[free]) continue;
        GFVec x(cols, 0);
        x[free] = 1;
        for (size_t k = 0; k < pivot_col.size(); ++k)
            x[pivot_col[k]] = F.neg(A[k][free]);
        basis.push_back(std::move(x));
    }
    return basis;
}

// ---------------------------------------------------------------------------
// Compact induction from KZ and the Hecke operator T.
//
// Elements of ind are finite sums [g_V, v] over canonical vertex
// representatives; [g kappa z, v] = [g, sigma(kappa mod p) v] and the group
// acts by left multiplication on the index.  T is the endomorphism supported
// on the degree-one double coset; its twist maps P_i are derived by solving
// the K-equivariance constraints once per weight (the defining property,
// not a transcribed formula) and normalized so that the distinguished
// monomial Y^r maps with unit coefficient in the alpha_infinity slot.
// ---------------------------------------------------------------------------

struct HeckeSystem {
    long long p;
    int r, w, s;
    std::shared_ptr<GF> F;
    std::vector<TreeVertex> slots;   // (1, 0), ..., (1, p-1), (-1, 0)
    std::vector<Mat2Rat> slot_mats;
    std::vector<GFMatrix> P;         // one (r+1)x(r+1) map per slot
};

inline long long smallest_unit_generator_mod_p2(long long p) {
    if (p == 2) return 3;
    long long mod = p * p, order = p * (p - 1);
    // distinct prime divisors of p(p-1)
    std::vector<long long> primes;
    long long t = order;
    for (long long d = 2; d * d <= t; ++d)
        if (t % d == 0) { primes.push_back(d); while (t % d == 0) t /= d; }
    if (t > 1) primes.push_back(t);
    auto powmod = [&](long long b, long long e) {
        long long acc = 1 % mod;
        b %= mod;
        while (e) {
            if (e & 1) acc = acc * b % mod;
            b = b * b % mod;
            e >>= 1;
        }
        return acc;
    };
    for (long long g = 2; g < mod; ++g) {
        if (g % p == 0) continue;
        bool primitive = true;
        for (long long ell : primes)
            if (powmod(g, order / ell) == 1) { primitive = false; break; }
        if (primitive) return g;
    }
    throw std::logic_error("no generator mod p^2");
}

inline std::vector<Mat2Rat> k_generators(long long p) {
    long long u = smallest_unit_generator_mod_p2(p);
    return {Mat2Rat::from_ints(1, 1, 0, 1), Mat2Rat::from_ints(1, 0, 1, 1),
            Mat2Rat::from_ints(0, 1, 1, 0), Mat2Rat::from_ints(u, 0, 0, 1),
            Mat2Rat::from_ints(1, 0, 0, u)};
}

inline std::shared_ptr<const HeckeSystem> get_hecke_system(long long p, int r, int w,
                                                           int s = 2) {
    static std::map<std::tuple<long long, int, int, int>,
                    std::shared_ptr<const HeckeSystem>> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto key = std::make_tuple(p, r, w, s);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;

    if (!is_prime(p)) throw ValidationError("hecke: p must be prime");
    if (r < 0 || r > p - 1) throw ValidationError("hecke: r must lie in [0, p-1]");
    if (w < 0 || w > p - 2) throw ValidationError("hecke: w must lie in [0, p-2]");

    auto sys = std::make_shared<HeckeSystem>();
    sys->p = p;
    sys->r = r;
    sys->w = w;
    sys->s = s;
    sys->F = std::make_shared<GF>(p, s);
    const GF& F = *sys->F;
    for (long long lam = 0; lam < p; ++lam)
        sys->slots.push_back(TreeVertex{1, BigRat(lam)});
    sys->slots.push_back(TreeVertex{-1, BigRat(0)});
    for (const auto& v : sys->slots) sys->slot_mats.push_back(vertex_matrix(v, p));

    const size_t nslots = sys->slots.size();
    const size_t dimv = r + 1;
    const size_t unknowns = nslots * dimv * dimv;
    auto uidx = [&](size_t slot, size_t row, size_t col) {
        return slot * dimv * dimv + row * dimv + col;
    };

    GFMatrix eqs;
    for (const Mat2Rat& kap : k_generators(p)) {
        GFMatrix skap = weight_matrix(F, r, w, mat_mod(kap, p, 1));
        for (size_t i = 0; i < nslots; ++i) {
            CosetNormalForm nf = coset_normal_form(p, kap * sys->slot_mats[i]);
            auto jt = std::find(sys->slots.begin(), sys->slots.end(), nf.vertex);
            if (jt == sys->slots.end())
                throw std::logic_error("hecke: K moved a sphere-1 vertex off the sphere");
            size_t j = jt - sys->slots.begin();
            GFMatrix skp = weight_matrix(F, r, w, mat_mod(nf.kappa, p, 1));
            // sigma(kappa') P_i = P_j sigma(kappa), entry (a,b)
            for (size_t a = 0; a < dimv; ++a)
                for (size_t b = 0; b < dimv; ++b) {
                    GFVec row(unknowns, 0);
                    for (size_t c = 0; c < dimv; ++c) {
                        row[uidx(i, c, b)] = F.add(row[uidx(i, c, b)], skp[a][c]);
                        row[uidx(j, a, c)] = F.sub(row[uidx(j, a, c)], skap[c][b]);
                    }
                    eqs.push_back(std::move(row));
                }
        }
    }
    std::vector<GFVec> basis = nullspace(F, eqs, unknowns);
    if (basis.size() != 1)
        throw std::logic_error("hecke: equivariance constraints gave solution space of "
                               "dimension " + std::to_string(basis.size()));
    GFVec sol = basis[0];
    // normalize on the alpha_infinity slot, entry (r, r); fall back to the
    // first nonzero coordinate if that entry vanishes
    long long pivot = sol[uidx(nslots - 1, dimv - 1, dimv - 1)];
    if (pivot == 0)
        for (long long x : sol)
            if (x) { pivot = x; break; }
    long long scale = F.inv(pivot);
    sys->P.assign(nslots, GFMatrix(dimv, GFVec(dimv, 0)));
    for (size_t i = 0; i < nslots; ++i)
        for (size_t a = 0; a < dimv; ++a)
            for (size_t b = 0; b < dimv; ++b)
                sys->P[i][a][b] = F.mul(scale, sol[uidx(i, a, b)]);
    return cache.emplace(key, std::move(sys)).first->second;
}

// Finitely supported element of ind_(KZ)^G sigma with coefficients in
// F_(p^s); keys are canonical vertex representatives.
struct IndElement {
    long long p;
    int r, w, s;
    std::map<TreeVertex, GFVec> support;
};

inline IndElement ind_zero(long long p, int r, int w, int s = 2) {
    return IndElement{p, r, w, s, {}};
}

inline IndElement ind_basis_element(long long p, int r, int w, const TreeVertex& v,
                                    int i, int s = 2) {
    IndElement x = ind_zero(p, r, w, s);
    GFVec vec(r + 1, 0);
    vec[i] = 1;
    x.support[v] = vec;
    return x;
}

inline void ind_accumulate(const GF& F, IndElement& x, const TreeVertex& v,
                           const GFVec& vec) {
    auto it = x.support.find(v);
    if (it == x.support.end()) {
        x.support[v] = vec;
    } else {
        for (size_t i = 0; i < vec.size(); ++i) it->second[i] = F.add(it->second[i], vec[i]);
    }
    auto jt = x.support.find(v);
    bool zero = true;
    for (long long c : jt->second) zero &= c == 0;
    if (zero) x.support.erase(jt);
}

inline bool ind_equal(const IndElement& x, const IndElement& y) {
    return x.p == y.p && x.r == y.r && x.w == y.w && x.support == y.support;
}

// (g f)(x) = f(xg): left multiplication on coset representatives followed by
// normal-form reduction; the central p-power acts trivially.
inline IndElement g_action(const Mat2Rat& g, const IndElement& x) {
    auto sys = get_hecke_system(x.p, x.r, x.w, x.s);
    const GF& F = *sys->F;
    IndElement out = ind_zero(x.p, x.r, x.w, x.s);
    for (const auto& [v, vec] : x.support) {
        CosetNormalForm nf = coset_normal_form(x.p, g * vertex_matrix(v, x.p));
        GFMatrix sk = weight_matrix(F, x.r, x.w, mat_mod(nf.kappa, x.p, 1));
        ind_accumulate(F, out, nf.vertex, mat_vec(F, sk, vec));
    }
    return out;
}

// T[g, v] = sum_i [g alpha_i, P_i v]
inline IndElement hecke_T(const IndElement& x) {
    auto sys = get_hecke_system(x.p, x.r, x.w, x.s);
    const GF& F = *sys->F;
    IndElement out = ind_zero(x.p, x.r, x.w, x.s);
    for (const auto& [v, vec] : x.support) {
        Mat2Rat gv = vertex_matrix(v, x.p);
        for (size_t i = 0; i < sys->slots.size(); ++i) {
            GFVec pv = mat_vec(F, sys->P[i], vec);
            bool zero = true;
            for (long long c : pv) zero &= c == 0;
            if (zero) continue;
            CosetNormalForm nf = coset_normal_form(x.p, gv * sys->slot_mats[i]);
            GFMatrix sk = weight_matrix(F, x.r, x.w, mat_mod(nf.kappa, x.p, 1));
            ind_accumulate(F, out, nf.vertex, mat_vec(F, sk, pv));
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// I(1)-invariants of ind/T ind on the radius-<=R truncation.
// ---------------------------------------------------------------------------

inline std::vector<Mat2Rat> i1_generators(long long p) {
    std::vector<Mat2Rat> gens = {Mat2Rat::from_ints(1, 1, 0, 1),
                                 Mat2Rat::from_ints(1, 0, p, 1)};
    if (p == 2) {
        // 1 + 2 Z_2 is all of Z_2^*, topologically generated by -1 and 5
        gens.push_back(Mat2Rat::from_ints(-1, 0, 0, 1));
        gens.push_back(Mat2Rat::from_ints(1, 0, 0, -1));
        gens.push_back(Mat2Rat::from_ints(5, 0, 0, 1));
        gens.push_back(Mat2Rat::from_ints(1, 0, 0, 5));
    } else {
        gens.push_back(Mat2Rat::from_ints(1 + p, 0, 0, 1));
        gens.push_back(Mat2Rat::from_ints(1, 0, 0, 1 + p));
    }
    return gens;
}

namespace detail {

// dimension of the I(1)-fixed space of ind_(<=R) / T(ind_(<=R-1))
inline long long coker_dim_at(long long p, int r, int w, long long R, int s) {
    auto sys = get_hecke_system(p, r, w, s);
    const GF& F = *sys->F;
    const size_t dimv = r + 1;

    std::vector<TreeVertex> verts = vertices_up_to(p, R);
    std::map<TreeVertex, size_t> vidx;
    for (size_t i = 0; i < verts.size(); ++i) vidx[verts[i]] = i;
    const size_t D = verts.size() * dimv;
    auto flat = [&](const IndElement& x) {
        GFVec v(D, 0);
        for (const auto& [vert, vec] : x.support) {
            auto it = vidx.find(vert);
            if (it == vidx.end())
                throw std::logic_error("coker: support escaped the truncation");
            for (size_t i = 0; i < dimv; ++i) v[it->second * dimv + i] = vec[i];
        }
        return v;
    };

    // echelon basis of the image of T from radius <= R-1
    std::vector<GFVec> ech;
    std::vector<size_t> piv;
    auto reduce = [&](GFVec v) {
        for (size_t k = 0; k < ech.size(); ++k)
            if (v[piv[k]]) {
                long long c = v[piv[k]];
                for (size_t j = 0; j < D; ++j)
                    if (ech[k][j]) v[j] = F.sub(v[j], F.mul(c, ech[k][j]));
            }
        return v;
    };
    if (R >= 1)
        for (const TreeVertex& v : vertices_up_to(p, R - 1))
            for (size_t i = 0; i < dimv; ++i) {
                GFVec col =
                    reduce(flat(hecke_T(ind_basis_element(p, r, w, v, i, s))));
                size_t pv = 0;
                while (pv < D && col[pv] == 0) ++pv;
                if (pv == D) continue;
                long long inv = F.inv(col[pv]);
                for (size_t j = 0; j < D; ++j) col[j] = F.mul(col[j], inv);
                ech.push_back(std::move(col));
                piv.push_back(pv);
            }
    const size_t rank_t = ech.size();

    // intersect the kernels of (gamma - 1) composed with the quotient map
    std::vector<GFVec> basis(D);
    for (size_t i = 0; i < D; ++i) {
        basis[i].assign(D, 0);
        basis[i][i] = 1;
    }
    for (const Mat2Rat& gamma : i1_generators(p)) {
        // action of gamma on each basis vertex, as a sparse column map
        std::vector<std::pair<size_t, GFMatrix>> act(verts.size());
        for (size_t vi = 0; vi < verts.size(); ++vi) {
            CosetNormalForm nf =
                coset_normal_form(p, gamma * vertex_matrix(verts[vi], p));
            act[vi] = {vidx.at(nf.vertex),
                       weight_matrix(F, r, w, mat_mod(nf.kappa, p, 1))};
        }
        GFMatrix rows(D, GFVec(basis.size(), 0)); // (gamma-1)x mod image, per basis col
        for (size_t bcol = 0; bcol < basis.size(); ++bcol) {
            GFVec y(D, 0);
            for (size_t vi = 0; vi < verts.size(); ++vi) {
                GFVec chunk(dimv, 0);
                bool any = false;
                for (size_t i = 0; i < dimv; ++i) {
                    chunk[i] = basis[bcol][vi * dimv + i];
                    any |= chunk[i] != 0;
                }
                if (!any) continue;
                const auto& [tgt, mat] = act[vi];
                GFVec moved = mat_vec(F, mat, chunk);
                for (size_t i = 0; i < dimv; ++i) {
                    y[tgt * dimv + i] = F.add(y[tgt * dimv + i], moved[i]);
                    y[vi * dimv + i] = F.sub(y[vi * dimv + i], chunk[i]);
                }
            }
            y = reduce(y);
            for (size_t rr = 0; rr < D; ++rr) rows[rr][bcol] = y[rr];
        }
        std::vector<GFVec> ker = nullspace(F, rows, basis.size());
        std::vector<GFVec> next;
        for (const GFVec& coeff : ker) {
            GFVec v(D, 0);
            for (size_t bcol = 0; bcol < basis.size(); ++bcol)
                if (coeff[bcol])
                    for (size_t j = 0; j < D; ++j)
                        if (basis[bcol][j])
                            v[j] = F.add(v[j], F.mul(coeff[bcol], basis[bcol][j]));
            next.push_back(std::move(v));
        }
        basis = std::move(next);
        if (basis.empty()) break;
    }
    long long fixed = static_cast<long long>(basis.size());
    return fixed - static_cast<long long>(rank_t);
}

} // namespace detail

struct CokerResult {
    long long dim = 0;
    bool stabilized = false;
    std::string coefficient_field;
};

// I(1)-invariants of ind/T ind computed on the radius-<=R truncation,
// reported together with stabilization across R-1, R.
inline CokerResult coker_I1_dimension(long long p, int r, int w, long long R, int s = 2) {
    if (R < 1)
        throw TruncationError("coker_I1_dimension: radius must be >= 1");
    CokerResult res;
    res.dim = detail::coker_dim_at(p, r, w, R, s);
    res.stabilized = res.dim == detail::coker_dim_at(p, r, w, R - 1, s);
    res.coefficient_field = "F_" + std::to_string(p) + "^" + std::to_string(s);
    return res;
}

inline std::vector<long long> coker_I1_trajectory(long long p, int r, int w, long long R,
                                                  int s = 2) {
    if (R < 1)
        throw TruncationError("coker_I1_trajectory: radius must be >= 1");
    std::vector<long long> dims;
    for (long long t = 0; t <= R; ++t)
        dims.push_back(detail::coker_dim_at(p, r, w, t, s));
    return dims;
}

// ---------------------------------------------------------------------------
// Weight pairs of the correspondence for irreducible two-dimensional data
// at Q_p, and the Barthel-Livne classification labels.
// ---------------------------------------------------------------------------

struct LlcResult {
    SerreWeightLocal sigma;
    SerreWeightLocal sigma_prime;
    std::string pi_label;
};

inline LlcResult llc_weights(long long p, const BigInt& n) {
    LocalPlace v = make_place(p, 1, 1);
    InertialDatum d = make_irreducible(v, n); // NotIrreducibleError if (p+1) | n
    LocalWeightSet ws = weights_local(d);
    if (ws.entries.size() != 2)
        throw std::logic_error("llc_weights: weight set is not a pair");
    LlcResult res{ws.entries[0].weight, ws.entries[1].weight, ""};
    if (involution_prime(res.sigma) != res.sigma_prime)
        throw std::logic_error("llc_weights: pair is not closed under the involution");
    res.pi_label = "ind " + weight_name(res.sigma) + " / T ≅ ind " +
                   weight_name(res.sigma_prime) + " / T";
    return res;
}

// Classification of ind/(T - lambda) by weight dimension and eigenvalue:
// lambda = 0 is supersingular; dimension outside {1, q} or lambda outside
// {1, -1} is an irreducible principal series; the remaining cases have
// length two with a character and a twist of Steinberg.
inline std::string bl_classify(long long q, long long sigma_dim, long long lambda) {
    long long p = 0, f = 0;
    for (long long d = 2; d <= q; ++d) {
        if (q % d == 0) {
            p = d;
            long long t = q;
            while (t % p == 0) { t /= p; ++f; }
            if (t != 1) throw ValidationError("bl_classify: q must be a prime power");
            break;
        }
    }
    if (p == 0) throw ValidationError("bl_classify: q must be a prime power");
    // sigma_dim must be a product of f factors in [1, p]
    std::function<bool(long long, long long)> feasible = [&](long long dim, long long k) {
        if (k == 0) return dim == 1;
        for (long long t = 1; t <= p && t <= dim; ++t)
            if (dim % t == 0 && feasible(dim / t, k - 1)) return true;
        return false;
    };
    if (sigma_dim < 1 || !feasible(sigma_dim, f))
        throw ValidationError("bl_classify: dimension is not realizable as a weight");
    long long lam = ((lambda % p) + p) % p;
    if (lam == 0) return "supersingular";
    if ((sigma_dim != 1 && sigma_dim != q) || (lam != 1 && lam != p - 1))
        return "irreducible principal series";
    return "length-two: character and Steinberg twist";
}

} // namespace serre

#endif
