#ifndef SERRE_BIGINT_HPP
#define SERRE_BIGINT_HPP

#include <cstdint>
#include <cstdlib>
#include <string>
#include <vector>
#include <stdexcept>
#include <algorithm>
#include <compare>

namespace serre {

// Sign-magnitude arbitrary-precision integer, base 2^32 limbs, little endian.
// Division truncates toward zero; mod_floor gives canonical residues.
class BigInt {
public:
    BigInt() : sign_(0) {}
    BigInt(int v) : BigInt(static_cast<long long>(v)) {}
    BigInt(long v) : BigInt(static_cast<long long>(v)) {}
    BigInt(long long v) {
        if (v == 0) { sign_ = 0; return; }
        sign_ = v > 0 ? 1 : -1;
        unsigned long long m = v > 0 ? static_cast<unsigned long long>(v)
                                     : ~static_cast<unsigned long long>(v) + 1ULL;
        while (m) { mag_.push_back(static_cast<uint32_t>(m)); m >>= 32; }
    }
    BigInt(unsigned long long m) {
        sign_ = m ? 1 : 0;
        while (m) { mag_.push_back(static_cast<uint32_t>(m)); m >>= 32; }
    }

    bool is_zero() const { return sign_ == 0; }
    bool is_neg() const { return sign_ < 0; }
    int sign() const { return sign_; }

    bool fits_ll() const {
        if (mag_.size() > 2) return false;
        unsigned long long m = mag_u64();
        if (sign_ >= 0) return m <= 0x7fffffffffffffffULL;
        return m <= 0x8000000000000000ULL;
    }
    long long to_ll() const {
        if (!fits_ll()) throw std::overflow_error("BigInt: value exceeds 64-bit range");
        unsigned long long m = mag_u64();
        return sign_ < 0 ? -static_cast<long long>(m - 1) - 1 : static_cast<long long>(m);
    }

    friend BigInt operator-(const BigInt& a) {
        BigInt r = a;
        r.sign_ = -r.sign_;
        return r;
    }
    BigInt abs() const { BigInt r = *this; r.sign_ = std::abs(r.sign_); return r; }

    friend bool operator==(const BigInt& a, const BigInt& b) {
        return a.sign_ == b.sign_ && a.mag_ == b.mag_;
    }
    friend std::strong_ordering operator<=>(const BigInt& a, const BigInt& b) {
        if (a.sign_ != b.sign_) return a.sign_ <=> b.sign_;
        int c = cmp_mag(a.mag_, b.mag_);
        if (a.sign_ < 0) c = -c;
        return c <=> 0;
    }

    friend BigInt operator+(const BigInt& a, const BigInt& b) {
        if (a.sign_ == 0) return b;
        if (b.sign_ == 0) return a;
        BigInt r;
        if (a.sign_ == b.sign_) {
            r.mag_ = add_mag(a.mag_, b.mag_);
            r.sign_ = a.sign_;
        } else {
            int c = cmp_mag(a.mag_, b.mag_);
            if (c == 0) return BigInt();
            if (c > 0) { r.mag_ = sub_mag(a.mag_, b.mag_); r.sign_ = a.sign_; }
            else       { r.mag_ = sub_mag(b.mag_, a.mag_); r.sign_ = b.sign_; }
        }
        return r;
    }
    friend BigInt operator-(const BigInt& a, const BigInt& b) { return a + (-b); }

    friend BigInt operator*(const BigInt& a, const BigInt& b) {
        if (a.sign_ == 0 || b.sign_ == 0) return BigInt();
        BigInt r;
        r.sign_ = a.sign_ * b.sign_;
        r.mag_.assign(a.mag_.size() + b.mag_.size(), 0);
        for (size_t i = 0; i < a.mag_.size(); ++i) {
            unsigned long long carry = 0;
            for (size_t j = 0; j < b.mag_.size(); ++j) {
                unsigned long long t = static_cast<unsigned long long>(a.mag_[i]) * b.mag_[j]
                                     + r.mag_[i + j] + carry;
                r.mag_[i + j] = static_cast<uint32_t>(t);
                carry = t >> 32;
            }
            r.mag_[i + b.mag_.size()] = static_cast<uint32_t>(carry);
        }
        r.trim();
        return r;
    }

    BigInt& operator+=(const BigInt& b) { *this = *this + b; return *this; }
    BigInt& operator-=(const BigInt& b) { *this = *this - b; return *this; }
    BigInt& operator*=(const BigInt& b) { *this = *this * b; return *this; }

    // Truncated division: q = trunc(a/b), r = a - q*b (sign of r follows a).
    static void divmod(const BigInt& a, const BigInt& b, BigInt& q, BigInt& r) {
        if (b.sign_ == 0) throw std::domain_error("BigInt: division by zero");
        int c = cmp_mag(a.mag_, b.mag_);
        if (c < 0) { q = BigInt(); r = a; return; }
        q.mag_.clear(); r.mag_.clear();
        divmod_mag(a.mag_, b.mag_, q.mag_, r.mag_);
        q.sign_ = q.mag_.empty() ? 0 : a.sign_ * b.sign_;
        r.sign_ = r.mag_.empty() ? 0 : a.sign_;
        q.trim(); r.trim();
    }
    friend BigInt operator/(const BigInt& a, const BigInt& b) {
        BigInt q, r;
        divmod(a, b, q, r);
        return q;
    }
    friend BigInt operator%(const BigInt& a, const BigInt& b) {
        BigInt q, r;
        divmod(a, b, q, r);
        return r;
    }

    static BigInt from_string(const std::string& s) {
        size_t pos = 0;
        bool neg = false;
        if (pos < s.size() && (s[pos] == '-' || s[pos] == '+')) {
            neg = s[pos] == '-';
            ++pos;
        }
        if (pos == s.size()) throw std::invalid_argument("BigInt: empty numeral");
        BigInt r;
        for (; pos < s.size(); ++pos) {
            if (s[pos] < '0' || s[pos] > '9')
                throw std::invalid_argument("BigInt: bad digit in numeral");
            r = r * BigInt(10) + BigInt(s[pos] - '0');
        }
        return neg ? -r : r;
    }

    std::string to_string() const {
        if (sign_ == 0) return "0";
        std::string out;
        BigInt t = abs(), q, r;
        const BigInt chunk(1000000000LL);
        std::vector<uint32_t> parts;
        while (!t.is_zero()) {
            divmod(t, chunk, q, r);
            parts.push_back(r.is_zero() ? 0u : r.mag_[0]);
            t = q;
        }
        out = std::to_string(parts.back());
        for (size_t i = parts.size() - 1; i-- > 0;) {
            std::string s = std::to_string(parts[i]);
            out += std::string(9 - s.size(), '0') + s;
        }
        return sign_ < 0 ? "-" + out : out;
    }

private:
    int sign_;
    std::vector<uint32_t> mag_;

    unsigned long long mag_u64() const {
        unsigned long long m = 0;
        if (mag_.size() > 0) m = mag_[0];
        if (mag_.size() > 1) m |= static_cast<unsigned long long>(mag_[1]) << 32;
        return m;
    }
    void trim() {
        while (!mag_.empty() && mag_.back() == 0) mag_.pop_back();
        if (mag_.empty()) sign_ = 0;
    }
    static int cmp_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b) {
        if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
        for (size_t i = a.size(); i-- > 0;)
            if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
        return 0;
    }
    static std::vector<uint32_t> add_mag(const std::vector<uint32_t>& a,
                                         const std::vector<uint32_t>& b) {
        const std::vector<uint32_t>& x = a.size() >= b.size() ? a : b;
        const std::vector<uint32_t>& y = a.size() >= b.size() ? b : a;
        std::vector<uint32_t> r(x.size() + 1, 0);
        unsigned long long carry = 0;
        for (size_t i = 0; i < x.size(); ++i) {
            unsigned long long t = carry + x[i] + (i < y.size() ? y[i] : 0u);
            r[i] = static_cast<uint32_t>(t);
            carry = t >> 32;
        }
        r[x.size()] = static_cast<uint32_t>(carry);
        while (!r.empty() && r.back() == 0) r.pop_back();
        return r;
    }
    // requires |a| >= |b|
    static std::vector<uint32_t> sub_mag(const std::vector<uint32_t>& a,
                                         const std::vector<uint32_t>& b) {
        std::vector<uint32_t> r(a.size(), 0);
        long long borrow = 0;
        for (size_t i = 0; i < a.size(); ++i) {
            long long t = static_cast<long long>(a[i]) - borrow
                        - (i < b.size() ? static_cast<long long>(b[i]) : 0LL);
            if (t < 0) { t += (1LL << 32); borrow = 1; } else borrow = 0;
            r[i] = static_cast<uint32_t>(t);
        }
        while (!r.empty() && r.back() == 0) r.pop_back();
        return r;
    }

    // Knuth algorithm D on magnitudes; |a| >= |b|, b nonzero.
    static void divmod_mag(std::vector<uint32_t> a, std::vector<uint32_t> b,
                           std::vector<uint32_t>& q, std::vector<uint32_t>& r) {
        if (b.size() == 1) {
            unsigned long long d = b[0], rem = 0;
            q.assign(a.size(), 0);
            for (size_t i = a.size(); i-- > 0;) {
                unsigned long long cur = (rem << 32) | a[i];
                q[i] = static_cast<uint32_t>(cur / d);
                rem = cur % d;
            }
            r.clear();
            if (rem) r.push_back(static_cast<uint32_t>(rem));
            return;
        }
        int s = 0;
        while (!((b.back() << s) & 0x80000000u)) ++s;
        std::vector<uint32_t> v = shl_bits(b, s);
        std::vector<uint32_t> u = shl_bits(a, s);
        u.resize(a.size() + 1, 0);
        const size_t n = v.size(), m = u.size() - 1 - n;
        q.assign(m + 1, 0);
        const unsigned long long BASE = 1ULL << 32;
        for (size_t j = m + 1; j-- > 0;) {
            unsigned long long top = (static_cast<unsigned long long>(u[j + n]) << 32) | u[j + n - 1];
            unsigned long long qhat = top / v[n - 1];
            unsigned long long rhat = top % v[n - 1];
            while (qhat >= BASE ||
                   qhat * v[n - 2] > ((rhat << 32) | u[j + n - 2])) {
                --qhat;
                rhat += v[n - 1];
                if (rhat >= BASE) break;
            }
            // multiply-subtract
            long long borrow = 0;
            unsigned long long carry = 0;
            for (size_t i = 0; i < n; ++i) {
                unsigned long long prod = qhat * v[i] + carry;
                carry = prod >> 32;
                long long t = static_cast<long long>(u[i + j]) - borrow
                            - static_cast<long long>(prod & 0xffffffffULL);
                if (t < 0) { t += (1LL << 32); borrow = 1; } else borrow = 0;
                u[i + j] = static_cast<uint32_t>(t);
            }
            long long t = static_cast<long long>(u[j + n]) - borrow
                        - static_cast<long long>(carry);
            if (t < 0) {
                // qhat one too large: add divisor back
                t += (1LL << 32);
                --qhat;
                unsigned long long c2 = 0;
                for (size_t i = 0; i < n; ++i) {
                    unsigned long long s2 = static_cast<unsigned long long>(u[i + j]) + v[i] + c2;
                    u[i + j] = static_cast<uint32_t>(s2);
                    c2 = s2 >> 32;
                }
                t += static_cast<long long>(c2);
                t &= 0xffffffffLL;
            }
            u[j + n] = static_cast<uint32_t>(t);
            q[j] = static_cast<uint32_t>(qhat);
        }
        u.resize(n);
        r = shr_bits(u, s);
        while (!q.empty() && q.back() == 0) q.pop_back();
        while (!r.empty() && r.back() == 0) r.pop_back();
    }
    static std::vector<uint32_t> shl_bits(const std::vector<uint32_t>& a, int s) {
        if (s == 0) return a;
        std::vector<uint32_t> r(a.size() + 1, 0);
        for (size_t i = 0; i < a.size(); ++i) {
            r[i] |= a[i] << s;
            r[i + 1] = a[i] >> (32 - s);
        }
        while (!r.empty() && r.back() == 0) r.pop_back();
        return r;
    }
    static std::vector<uint32_t> shr_bits(const std::vector<uint32_t>& a, int s) {
        if (s == 0) return a;
        std::vector<uint32_t> r(a.size(), 0);
        for (size_t i = 0; i < a.size(); ++i) {
            r[i] = a[i] >> s;
            if (i + 1 < a.size()) r[i] |= a[i + 1] << (32 - s);
        }
        while (!r.empty() && r.back() == 0) r.pop_back();
        return r;
    }
};

inline bool operator!=(const BigInt& a, const BigInt& b) { return !(a == b); }

// Canonical residue in [0, m), m > 0.
inline BigInt mod_floor(const BigInt& a, const BigInt& m) {
    if (m.sign() <= 0) throw std::domain_error("mod_floor: modulus must be positive");
    BigInt r = a % m;
    if (r.is_neg()) r += m;
    return r;
}

inline BigInt pow_u(const BigInt& base, unsigned long long e) {
    BigInt r(1LL), b = base;
    while (e) {
        if (e & 1) r *= b;
        b *= b;
        e >>= 1;
    }
    return r;
}

inline BigInt gcd(BigInt a, BigInt b) {
    a = a.abs();
    b = b.abs();
    while (!b.is_zero()) {
        BigInt t = a % b;
        a = b;
        b = t;
    }
    return a;
}

// g = gcd(a,b) >= 0 with a*x + b*y = g.
inline BigInt egcd(const BigInt& a, const BigInt& b, BigInt& x, BigInt& y) {
    BigInt r0 = a, r1 = b, x0(1LL), x1(0LL), y0(0LL), y1(1LL);
    while (!r1.is_zero()) {
        BigInt q, r;
        BigInt::divmod(r0, r1, q, r);
        r0 = r1; r1 = r;
        BigInt xt = x0 - q * x1; x0 = x1; x1 = xt;
        BigInt yt = y0 - q * y1; y0 = y1; y1 = yt;
    }
    if (r0.is_neg()) { r0 = -r0; x0 = -x0; y0 = -y0; }
    x = x0; y = y0;
    return r0;
}

// Inverse of a modulo m (gcd(a,m) = 1), in [0, m).
inline BigInt mod_inverse(const BigInt& a, const BigInt& m) {
    BigInt x, y;
    BigInt g = egcd(mod_floor(a, m), m, x, y);
    if (g != BigInt(1LL)) throw std::domain_error("mod_inverse: not invertible");
    return mod_floor(x, m);
}

// Reduced fraction with positive denominator.
class BigRat {
public:
    BigRat() : num_(0LL), den_(1LL) {}
    BigRat(long long v) : num_(v), den_(1LL) {}
    BigRat(const BigInt& v) : num_(v), den_(1LL) {}
    BigRat(const BigInt& n, const BigInt& d) : num_(n), den_(d) { normalize(); }

    const BigInt& num() const { return num_; }
    const BigInt& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_integer() const { return den_ == BigInt(1LL); }

    friend BigRat operator+(const BigRat& a, const BigRat& b) {
        return BigRat(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend BigRat operator-(const BigRat& a, const BigRat& b) {
        return BigRat(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
    }
    friend BigRat operator*(const BigRat& a, const BigRat& b) {
        return BigRat(a.num_ * b.num_, a.den_ * b.den_);
    }
    friend BigRat operator/(const BigRat& a, const BigRat& b) {
        if (b.is_zero()) throw std::domain_error("BigRat: division by zero");
        return BigRat(a.num_ * b.den_, a.den_ * b.num_);
    }
    friend BigRat operator-(const BigRat& a) { BigRat r = a; r.num_ = -r.num_; return r; }
    BigRat& operator+=(const BigRat& b) { *this = *this + b; return *this; }
    BigRat& operator-=(const BigRat& b) { *this = *this - b; return *this; }
    BigRat& operator*=(const BigRat& b) { *this = *this * b; return *this; }
    BigRat& operator/=(const BigRat& b) { *this = *this / b; return *this; }

    friend bool operator==(const BigRat& a, const BigRat& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const BigRat& a, const BigRat& b) { return !(a == b); }
    friend bool operator<(const BigRat& a, const BigRat& b) {
        return (a.num_ * b.den_) < (b.num_ * a.den_);
    }

    std::string to_string() const {
        if (is_integer()) return num_.to_string();
        return num_.to_string() + "/" + den_.to_string();
    }

private:
    BigInt num_, den_;
    void normalize() {
        if (den_.is_zero()) throw std::domain_error("BigRat: zero denominator");
        if (den_.is_neg()) { num_ = -num_; den_ = -den_; }
        if (num_.is_zero()) { den_ = BigInt(1LL); return; }
        BigInt g = gcd(num_, den_);
        num_ = num_ / g;
        den_ = den_ / g;
    }
};

} // namespace serre

#endif
