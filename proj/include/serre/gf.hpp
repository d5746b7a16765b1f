#ifndef SERRE_GF_HPP
#define SERRE_GF_HPP

#include <vector>
#include <string>
#include <stdexcept>
#include <cstdint>

#include "serre/errors.hpp"

namespace serre {

// Small finite field F_(p^d) presented as F_p[t]/(m(t)) for the first monic
// primitive polynomial m in lexicographic coefficient order
// (a_{d-1},...,a_1,a_0); the class of t generates the multiplicative group.
// Elements are indices in [0, p^d) encoding coefficient digits base p,
// little endian.  Multiplication runs through exp/log tables.
class GF {
public:
    GF(long long p, int d) : p_(p), d_(d) {
        long long n = 1;
        for (int i = 0; i < d; ++i) {
            n *= p;
            if (n > (1LL << 20)) throw ValidationError("GF: field too large");
        }
        n_ = n;
        find_primitive_poly();
        build_tables();
    }

    long long p() const { return p_; }
    int degree() const { return d_; }
    long long size() const { return n_; }
    long long generator() const { return gen_; }

    long long zero() const { return 0; }
    long long one() const { return 1; }

    long long from_int(long long v) const {
        long long r = v % p_;
        if (r < 0) r += p_;
        return r;
    }

    long long add(long long a, long long b) const {
        long long r = 0, mul = 1;
        for (int i = 0; i < d_; ++i) {
            long long s = (a % p_ + b % p_) % p_;
            r += s * mul;
            mul *= p_;
            a /= p_;
            b /= p_;
        }
        return r;
    }
    long long neg(long long a) const {
        long long r = 0, mul = 1;
        for (int i = 0; i < d_; ++i) {
            long long s = (p_ - a % p_) % p_;
            r += s * mul;
            mul *= p_;
            a /= p_;
        }
        return r;
    }
    long long sub(long long a, long long b) const { return add(a, neg(b)); }
    long long mul(long long a, long long b) const {
        if (a == 0 || b == 0) return 0;
        return exp_[(log_[a] + log_[b]) % (n_ - 1)];
    }
    long long inv(long long a) const {
        if (a == 0) throw std::domain_error("GF: inverse of zero");
        return exp_[(n_ - 1 - log_[a]) % (n_ - 1)];
    }
    long long pow(long long a, long long e) const {
        if (a == 0) return e == 0 ? 1 : 0;
        long long k = (log_[a] * (e % (n_ - 1))) % (n_ - 1);
        if (k < 0) k += n_ - 1;
        return exp_[k];
    }

    // "t^3 + 2*t + 1" style rendering of the defining polynomial.
    std::string poly_string() const {
        std::string s = d_ == 1 ? "t" : "t^" + std::to_string(d_);
        for (int i = d_ - 1; i >= 0; --i) {
            long long c = poly_[i];
            if (c == 0) continue;
            s += " + ";
            if (c != 1 || i == 0) s += std::to_string(c);
            if (c != 1 && i > 0) s += "*";
            if (i == 1) s += "t";
            else if (i > 1) s += "t^" + std::to_string(i);
        }
        return s;
    }

private:
    long long p_, n_;
    int d_;
    long long gen_ = 0;
    std::vector<long long> poly_; // m(t) = t^d + sum poly_[i] t^i
    std::vector<long long> exp_, log_;

    std::vector<long long> digits(long long idx) const {
        std::vector<long long> v(d_, 0);
        for (int i = 0; i < d_; ++i) { v[i] = idx % p_; idx /= p_; }
        return v;
    }
    long long index(const std::vector<long long>& v) const {
        long long idx = 0, mul = 1;
        for (int i = 0; i < d_; ++i) { idx += v[i] * mul; mul *= p_; }
        return idx;
    }
    // multiply a residue polynomial by t and reduce modulo m(t)
    std::vector<long long> mul_t(const std::vector<long long>& v) const {
        std::vector<long long> r(d_, 0);
        long long lead = v[d_ - 1];
        for (int i = d_ - 1; i > 0; --i) r[i] = v[i - 1];
        r[0] = 0;
        if (lead) {
            for (int i = 0; i < d_; ++i)
                r[i] = ((r[i] - lead * poly_[i]) % p_ + p_) % p_;
        }
        return r;
    }
    bool try_poly() {
        // t is primitive iff its orbit from 1 has full length n-1
        std::vector<char> seen(n_, 0);
        std::vector<long long> cur(d_, 0);
        cur[0] = 1;
        for (long long i = 0; i < n_ - 1; ++i) {
            long long idx = index(cur);
            if (idx == 0 || seen[idx]) return false;
            seen[idx] = 1;
            cur = mul_t(cur);
        }
        return index(cur) == 1;
    }
    void find_primitive_poly() {
        long long count = n_; // p^d coefficient vectors
        for (long long code = 0; code < count; ++code) {
            poly_.assign(d_, 0);
            long long c = code;
            for (int i = 0; i < d_; ++i) { poly_[d_ - 1 - i] = c % p_; c /= p_; }
            if (try_poly()) return;
        }
        throw std::logic_error("GF: no primitive polynomial found");
    }
    void build_tables() {
        exp_.assign(n_ - 1, 0);
        log_.assign(n_, 0);
        std::vector<long long> cur(d_, 0);
        cur[0] = 1;
        for (long long i = 0; i < n_ - 1; ++i) {
            long long idx = index(cur);
            exp_[i] = idx;
            log_[idx] = i;
            cur = mul_t(cur);
        }
        gen_ = exp_[n_ - 1 > 1 ? 1 : 0]; // class of t (degenerates to 1 in F_2)
    }
};

} // namespace serre

#endif
