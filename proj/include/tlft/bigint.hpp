#pragma once

// Arbitrary-precision signed integers, sign-and-magnitude over 32-bit limbs.
// Only what exact rational arithmetic needs: add/sub/mul/divmod/gcd/compare.
// Magnitudes are little-endian with no trailing zero limbs; zero has no limbs
// and non-negative sign.

#include <cstdint>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <vector>

namespace tlft {

class BigInt {
public:
    BigInt() = default;
    BigInt(long long v) {
        if (v < 0) { neg_ = true; }
        unsigned long long m = neg_ ? 0ull - static_cast<unsigned long long>(v)
                                    : static_cast<unsigned long long>(v);
        while (m) { limbs_.push_back(static_cast<uint32_t>(m & 0xffffffffu)); m >>= 32; }
    }
    BigInt(int v) : BigInt(static_cast<long long>(v)) {}

    static BigInt from_string(const std::string& s) {
        size_t i = 0;
        bool neg = false;
        if (i < s.size() && (s[i] == '+' || s[i] == '-')) { neg = s[i] == '-'; ++i; }
        if (i == s.size()) throw std::invalid_argument("BigInt: empty numeral");
        BigInt r;
        for (; i < s.size(); ++i) {
            if (s[i] < '0' || s[i] > '9') throw std::invalid_argument("BigInt: bad digit");
            r = r.mul_small(10);
            r = add_mag(r, BigInt(s[i] - '0'));
        }
        r.neg_ = neg && !r.is_zero();
        return r;
    }

    bool is_zero() const { return limbs_.empty(); }
    bool negative() const { return neg_; }
    int sign() const { return is_zero() ? 0 : (neg_ ? -1 : 1); }

    friend BigInt operator-(const BigInt& a) {
        BigInt r = a;
        if (!r.is_zero()) r.neg_ = !r.neg_;
        return r;
    }

    friend BigInt operator+(const BigInt& a, const BigInt& b) {
        if (a.neg_ == b.neg_) { BigInt r = add_mag(a, b); r.neg_ = a.neg_ && !r.is_zero(); return r; }
        int c = cmp_mag(a, b);
        if (c == 0) return BigInt();
        BigInt r = c > 0 ? sub_mag(a, b) : sub_mag(b, a);
        r.neg_ = (c > 0 ? a.neg_ : b.neg_) && !r.is_zero();
        return r;
    }
    friend BigInt operator-(const BigInt& a, const BigInt& b) { return a + (-b); }

    friend BigInt operator*(const BigInt& a, const BigInt& b) {
        if (a.is_zero() || b.is_zero()) return BigInt();
        BigInt r;
        r.limbs_.assign(a.limbs_.size() + b.limbs_.size(), 0);
        for (size_t i = 0; i < a.limbs_.size(); ++i) {
            uint64_t carry = 0;
            for (size_t j = 0; j < b.limbs_.size(); ++j) {
                uint64_t cur = static_cast<uint64_t>(a.limbs_[i]) * b.limbs_[j] +
                               r.limbs_[i + j] + carry;
                r.limbs_[i + j] = static_cast<uint32_t>(cur);
                carry = cur >> 32;
            }
            size_t k = i + b.limbs_.size();
            while (carry) {
                uint64_t cur = r.limbs_[k] + carry;
                r.limbs_[k] = static_cast<uint32_t>(cur);
                carry = cur >> 32;
                ++k;
            }
        }
        r.trim();
        r.neg_ = (a.neg_ != b.neg_) && !r.is_zero();
        return r;
    }

    // Truncated division (quotient rounds toward zero, remainder has dividend's sign).
    static void divmod(const BigInt& a, const BigInt& b, BigInt& q, BigInt& r) {
        if (b.is_zero()) throw std::domain_error("BigInt: division by zero");
        q = BigInt();
        r = BigInt();
        if (cmp_mag(a, b) < 0) { r = a; return; }
        // Schoolbook base-2^32 long division on magnitudes.
        q.limbs_.assign(a.limbs_.size(), 0);
        BigInt rem;
        for (size_t ii = a.limbs_.size(); ii-- > 0;) {
            rem.limbs_.insert(rem.limbs_.begin(), a.limbs_[ii]);
            rem.trim();
            // Binary search the quotient limb.
            uint64_t lo = 0, hi = 0xffffffffull, digit = 0;
            while (lo <= hi) {
                uint64_t mid = lo + (hi - lo) / 2;
                BigInt t = abs_of(b).mul_small(mid);
                if (cmp_mag(t, rem) <= 0) { digit = mid; lo = mid + 1; }
                else { if (mid == 0) break; hi = mid - 1; }
            }
            q.limbs_[ii] = static_cast<uint32_t>(digit);
            rem = sub_mag(rem, abs_of(b).mul_small(digit));
        }
        q.trim();
        rem.trim();
        q.neg_ = (a.neg_ != b.neg_) && !q.is_zero();
        rem.neg_ = a.neg_ && !rem.is_zero();
        r = rem;
    }

    friend BigInt operator/(const BigInt& a, const BigInt& b) { BigInt q, r; divmod(a, b, q, r); return q; }
    friend BigInt operator%(const BigInt& a, const BigInt& b) { BigInt q, r; divmod(a, b, q, r); return r; }

    friend bool operator==(const BigInt& a, const BigInt& b) {
        return a.neg_ == b.neg_ && a.limbs_ == b.limbs_;
    }
    friend bool operator!=(const BigInt& a, const BigInt& b) { return !(a == b); }
    friend bool operator<(const BigInt& a, const BigInt& b) {
        if (a.neg_ != b.neg_) return a.neg_;
        int c = cmp_mag(a, b);
        return a.neg_ ? c > 0 : c < 0;
    }

    static BigInt gcd(BigInt a, BigInt b) {
        a.neg_ = false;
        b.neg_ = false;
        while (!b.is_zero()) {
            BigInt q, r;
            divmod(a, b, q, r);
            r.neg_ = false;
            a = b;
            b = r;
        }
        return a;
    }

    static BigInt pow(const BigInt& base, unsigned e) {
        BigInt r(1), b = base;
        while (e) {
            if (e & 1) r = r * b;
            b = b * b;
            e >>= 1;
        }
        return r;
    }

    std::string to_string() const {
        if (is_zero()) return "0";
        BigInt t = *this;
        t.neg_ = false;
        std::string digits;
        BigInt ten(10);
        while (!t.is_zero()) {
            BigInt q, r;
            divmod(t, ten, q, r);
            digits.push_back(static_cast<char>('0' + (r.is_zero() ? 0 : r.limbs_[0])));
            t = q;
        }
        if (neg_) digits.push_back('-');
        return std::string(digits.rbegin(), digits.rend());
    }

    // Valid only when the value fits; callers guard with fits_i64().
    bool fits_i64() const {
        if (limbs_.size() > 2) return false;
        unsigned long long m = mag_u64();
        return neg_ ? m <= 0x8000000000000000ull : m <= 0x7fffffffffffffffull;
    }
    long long to_i64() const {
        unsigned long long m = mag_u64();
        return neg_ ? -static_cast<long long>(m) : static_cast<long long>(m);
    }

private:
    bool neg_ = false;
    std::vector<uint32_t> limbs_;

    unsigned long long mag_u64() const {
        unsigned long long m = 0;
        if (!limbs_.empty()) m = limbs_[0];
        if (limbs_.size() > 1) m |= static_cast<unsigned long long>(limbs_[1]) << 32;
        return m;
    }

    void trim() {
        while (!limbs_.empty() && limbs_.back() == 0) limbs_.pop_back();
        if (limbs_.empty()) neg_ = false;
    }

    static BigInt abs_of(const BigInt& a) { BigInt r = a; r.neg_ = false; return r; }

    BigInt mul_small(uint64_t m) const {
        BigInt r;
        if (is_zero() || m == 0) return r;
        uint64_t carry = 0;
        for (uint32_t limb : limbs_) {
            // m < 2^32 in all call sites, so this cannot overflow.
            uint64_t cur = static_cast<uint64_t>(limb) * m + carry;
            r.limbs_.push_back(static_cast<uint32_t>(cur));
            carry = cur >> 32;
        }
        while (carry) { r.limbs_.push_back(static_cast<uint32_t>(carry)); carry >>= 32; }
        r.neg_ = neg_;
        r.trim();
        return r;
    }

    static int cmp_mag(const BigInt& a, const BigInt& b) {
        if (a.limbs_.size() != b.limbs_.size())
            return a.limbs_.size() < b.limbs_.size() ? -1 : 1;
        for (size_t i = a.limbs_.size(); i-- > 0;)
            if (a.limbs_[i] != b.limbs_[i]) return a.limbs_[i] < b.limbs_[i] ? -1 : 1;
        return 0;
    }

    static BigInt add_mag(const BigInt& a, const BigInt& b) {
        BigInt r;
        const auto& x = a.limbs_;
        const auto& y = b.limbs_;
        size_t n = std::max(x.size(), y.size());
        uint64_t carry = 0;
        for (size_t i = 0; i < n; ++i) {
            uint64_t cur = carry;
            if (i < x.size()) cur += x[i];
            if (i < y.size()) cur += y[i];
            r.limbs_.push_back(static_cast<uint32_t>(cur));
            carry = cur >> 32;
        }
        if (carry) r.limbs_.push_back(static_cast<uint32_t>(carry));
        return r;
    }

    // Requires |a| >= |b|.
    static BigInt sub_mag(const BigInt& a, const BigInt& b) {
        BigInt r;
        int64_t borrow = 0;
        for (size_t i = 0; i < a.limbs_.size(); ++i) {
            int64_t cur = static_cast<int64_t>(a.limbs_[i]) - borrow -
                          (i < b.limbs_.size() ? b.limbs_[i] : 0);
            borrow = cur < 0;
            if (cur < 0) cur += int64_t(1) << 32;
            r.limbs_.push_back(static_cast<uint32_t>(cur));
        }
        r.trim();
        return r;
    }
};

} // namespace tlft
