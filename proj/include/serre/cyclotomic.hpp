#ifndef SERRE_CYCLOTOMIC_HPP
#define SERRE_CYCLOTOMIC_HPP

#include <vector>
#include <map>
#include <mutex>
#include <functional>

#include "serre/bigint.hpp"
#include "serre/errors.hpp"

namespace serre {

// Integer polynomials, little endian, trimmed.
using IntPoly = std::vector<BigInt>;

inline void poly_trim(IntPoly& a) {
    while (!a.empty() && a.back().is_zero()) a.pop_back();
}

inline IntPoly poly_mul(const IntPoly& a, const IntPoly& b) {
    if (a.empty() || b.empty()) return {};
    IntPoly r(a.size() + b.size() - 1, BigInt(0));
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j)
            r[i + j] += a[i] * b[j];
    poly_trim(r);
    return r;
}

// Long division by a monic divisor.
inline IntPoly poly_divmod_monic(IntPoly a, const IntPoly& d, IntPoly& rem) {
    if (d.empty() || d.back() != BigInt(1))
        throw std::domain_error("poly_divmod_monic: divisor must be monic");
    poly_trim(a);
    const size_t dn = d.size();
    if (a.size() < dn) { rem = a; return {}; }
    IntPoly q(a.size() - dn + 1, BigInt(0));
    for (size_t shift = a.size() - dn + 1; shift-- > 0;) {
        BigInt c = a[shift + dn - 1];
        if (c.is_zero()) continue;
        q[shift] = c;
        for (size_t j = 0; j < dn; ++j)
            a[shift + j] -= c * d[j];
    }
    a.resize(dn - 1);
    poly_trim(a);
    rem = a;
    poly_trim(q);
    return q;
}

// N-th cyclotomic polynomial, computed by dividing x^N - 1 by the
// cyclotomic polynomials of the proper divisors.  Cached.
inline const IntPoly& cyclotomic_poly(long long N) {
    static std::map<long long, IntPoly> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(N);
    if (it != cache.end()) return it->second;
    if (N < 1) throw ValidationError("cyclotomic_poly: N must be >= 1");
    std::function<const IntPoly&(long long)> get = [&](long long n) -> const IntPoly& {
        auto jt = cache.find(n);
        if (jt != cache.end()) return jt->second;
        IntPoly num(n + 1, BigInt(0));
        num[0] = BigInt(-1);
        num[n] = BigInt(1);
        for (long long d = 1; d < n; ++d) {
            if (n % d != 0) continue;
            IntPoly rem;
            num = poly_divmod_monic(num, get(d), rem);
            if (!rem.empty())
                throw std::logic_error("cyclotomic_poly: non-exact division");
        }
        return cache.emplace(n, std::move(num)).first->second;
    };
    return get(N);
}

// The ring Z[zeta_N] realized as Z[x]/Phi_N(x); elements are coefficient
// vectors of length deg Phi_N.  All arithmetic is exact.
class CycField {
public:
    using Elem = std::vector<BigInt>;

    explicit CycField(long long N) : N_(N), phi_(cyclotomic_poly(N)) {
        deg_ = phi_.size() - 1;
        // x^k mod Phi_N for all k, by shift-and-reduce
        powers_.resize(N_);
        Elem cur(deg_, BigInt(0));
        if (deg_ > 0) cur[0] = BigInt(1);
        for (long long k = 0; k < N_; ++k) {
            powers_[k] = cur;
            // multiply by x
            BigInt lead = deg_ > 0 ? cur[deg_ - 1] : BigInt(0);
            for (size_t i = deg_; i-- > 1;) cur[i] = cur[i - 1];
            if (deg_ > 0) cur[0] = BigInt(0);
            if (!lead.is_zero())
                for (size_t i = 0; i < deg_; ++i) cur[i] -= lead * phi_[i];
        }
    }

    long long N() const { return N_; }
    size_t degree() const { return deg_; }

    Elem zero() const { return Elem(deg_, BigInt(0)); }
    Elem one() const { return zeta_pow(0); }
    Elem from_int(const BigInt& v) const {
        Elem r = zero();
        if (deg_ > 0) r[0] = v;
        return r;
    }
    Elem zeta_pow(long long k) const {
        k %= N_;
        if (k < 0) k += N_;
        return powers_[k];
    }

    static bool is_zero(const Elem& a) {
        for (const auto& c : a)
            if (!c.is_zero()) return false;
        return true;
    }
    Elem add(const Elem& a, const Elem& b) const {
        Elem r(deg_);
        for (size_t i = 0; i < deg_; ++i) r[i] = a[i] + b[i];
        return r;
    }
    Elem sub(const Elem& a, const Elem& b) const {
        Elem r(deg_);
        for (size_t i = 0; i < deg_; ++i) r[i] = a[i] - b[i];
        return r;
    }
    Elem scalar_mul(const BigInt& s, const Elem& a) const {
        Elem r(deg_);
        for (size_t i = 0; i < deg_; ++i) r[i] = s * a[i];
        return r;
    }
    Elem mul(const Elem& a, const Elem& b) const {
        std::vector<BigInt> raw(2 * deg_, BigInt(0));
        for (size_t i = 0; i < deg_; ++i) {
            if (a[i].is_zero()) continue;
            for (size_t j = 0; j < deg_; ++j)
                if (!b[j].is_zero()) raw[i + j] += a[i] * b[j];
        }
        // reduce degrees >= deg via the cached power table
        Elem r(deg_, BigInt(0));
        for (size_t i = 0; i < deg_; ++i) r[i] = raw[i];
        for (size_t k = deg_; k < raw.size(); ++k) {
            if (raw[k].is_zero()) continue;
            const Elem& pw = powers_[k % N_];
            for (size_t i = 0; i < deg_; ++i) r[i] += raw[k] * pw[i];
        }
        return r;
    }

private:
    long long N_;
    IntPoly phi_;
    size_t deg_;
    std::vector<Elem> powers_;
};

} // namespace serre

#endif
