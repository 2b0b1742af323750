#pragma once

// Exact arithmetic in Q(zeta_N). Elements are stored in the power basis
// 1, z, ..., z^{phi(N)-1} after reduction by the N-th cyclotomic polynomial,
// so equality is decidable coefficient-wise. All coefficients are exact
// rationals.

#include <algorithm>
#include <map>
#include <mutex>
#include <stdexcept>
#include <string>
#include <vector>

#include "tlft/rational.hpp"

namespace tlft {

inline int euler_phi(int n) {
    int result = n, m = n;
    for (int p = 2; p * p <= m; ++p) {
        if (m % p == 0) {
            while (m % p == 0) m /= p;
            result -= result / p;
        }
    }
    if (m > 1) result -= result / m;
    return result;
}

// Integer coefficients of Phi_N, ascending powers. Computed by exact long
// division of x^N - 1 by the product of Phi_d over proper divisors d | N.
inline std::vector<BigInt> cyclotomic_polynomial(int n) {
    if (n < 1) throw std::invalid_argument("cyclotomic_polynomial: N must be positive");
    std::vector<std::vector<BigInt>> phi_of(static_cast<size_t>(n) + 1);
    for (int d = 1; d <= n; ++d) {
        if (n % d != 0) continue;
        // numerator = x^d - 1
        std::vector<BigInt> num(static_cast<size_t>(d) + 1, BigInt(0));
        num[0] = BigInt(-1);
        num[static_cast<size_t>(d)] = BigInt(1);
        for (int e = 1; e < d; ++e) {
            if (d % e != 0) continue;
            const auto& div = phi_of[static_cast<size_t>(e)];
            // exact monic long division num /= div
            std::vector<BigInt> quot(num.size() - div.size() + 1, BigInt(0));
            for (size_t k = quot.size(); k-- > 0;) {
                BigInt c = num[k + div.size() - 1];
                quot[k] = c;
                if (c.is_zero()) continue;
                for (size_t j = 0; j < div.size(); ++j)
                    num[k + j] = num[k + j] - c * div[j];
            }
            num = std::move(quot);
        }
        phi_of[static_cast<size_t>(d)] = std::move(num);
    }
    return phi_of[static_cast<size_t>(n)];
}

class CycScalar {
public:
    CycScalar() : n_(1), coeffs_(1, Rational(0)) {}

    static CycScalar zero(int n) { return CycScalar(n); }
    static CycScalar one(int n) { return from_rational(n, Rational(1)); }
    static CycScalar from_rational(int n, const Rational& r) {
        CycScalar s(n);
        s.coeffs_[0] = r;
        return s;
    }

    // zeta_N^e, e taken mod N.
    static CycScalar root(int n, long long e) {
        CycScalar s(n);
        long long k = ((e % n) + n) % n;
        const Table& t = table(n);
        if (k < static_cast<long long>(t.phi)) {
            s.coeffs_[static_cast<size_t>(k)] = Rational(1);
        } else {
            s.coeffs_ = t.power_rem[static_cast<size_t>(k - t.phi)];
        }
        return s;
    }

    int root_order() const { return n_; }
    const std::vector<Rational>& coeffs() const { return coeffs_; }

    bool is_zero() const {
        for (const auto& c : coeffs_)
            if (!c.is_zero()) return false;
        return true;
    }
    bool is_rational() const {
        for (size_t i = 1; i < coeffs_.size(); ++i)
            if (!coeffs_[i].is_zero()) return false;
        return true;
    }
    Rational rational_part() const { return coeffs_[0]; }

    friend CycScalar operator+(const CycScalar& a, const CycScalar& b) {
        check_same(a, b);
        CycScalar r = a;
        for (size_t i = 0; i < r.coeffs_.size(); ++i) r.coeffs_[i] += b.coeffs_[i];
        return r;
    }
    friend CycScalar operator-(const CycScalar& a, const CycScalar& b) {
        check_same(a, b);
        CycScalar r = a;
        for (size_t i = 0; i < r.coeffs_.size(); ++i) r.coeffs_[i] -= b.coeffs_[i];
        return r;
    }
    friend CycScalar operator*(const CycScalar& a, const CycScalar& b) {
        check_same(a, b);
        const Table& t = table(a.n_);
        size_t phi = t.phi;
        std::vector<Rational> prod(2 * phi - 1, Rational(0));
        for (size_t i = 0; i < phi; ++i) {
            if (a.coeffs_[i].is_zero()) continue;
            for (size_t j = 0; j < phi; ++j) {
                if (b.coeffs_[j].is_zero()) continue;
                prod[i + j] += a.coeffs_[i] * b.coeffs_[j];
            }
        }
        CycScalar r(a.n_);
        for (size_t i = 0; i < phi; ++i) r.coeffs_[i] = prod[i];
        for (size_t k = phi; k < prod.size(); ++k) {
            if (prod[k].is_zero()) continue;
            const auto& rem = t.power_rem[k - phi];
            for (size_t i = 0; i < phi; ++i) r.coeffs_[i] += prod[k] * rem[i];
        }
        return r;
    }

    CycScalar& operator+=(const CycScalar& b) { *this = *this + b; return *this; }
    CycScalar& operator*=(const CycScalar& b) { *this = *this * b; return *this; }

    CycScalar scale(const Rational& r) const {
        CycScalar s = *this;
        for (auto& c : s.coeffs_) c *= r;
        return s;
    }

    static CycScalar pow(const CycScalar& base, unsigned e) {
        CycScalar r = one(base.n_), b = base;
        while (e) {
            if (e & 1) r = r * b;
            b = b * b;
            e >>= 1;
        }
        return r;
    }

    friend bool operator==(const CycScalar& a, const CycScalar& b) {
        return a.n_ == b.n_ && a.coeffs_ == b.coeffs_;
    }
    friend bool operator!=(const CycScalar& a, const CycScalar& b) { return !(a == b); }

    std::string to_string() const {
        std::string s = "[N=" + std::to_string(n_) + ";";
        for (size_t i = 0; i < coeffs_.size(); ++i) {
            if (i) s += ",";
            s += coeffs_[i].to_string();
        }
        return s + "]";
    }

private:
    int n_;
    std::vector<Rational> coeffs_; // length phi(N)

    explicit CycScalar(int n) : n_(n) {
        if (n < 1) throw std::invalid_argument("CycScalar: N must be positive");
        coeffs_.assign(static_cast<size_t>(table(n).phi), Rational(0));
    }

    static void check_same(const CycScalar& a, const CycScalar& b) {
        if (a.n_ != b.n_)
            throw std::invalid_argument("CycScalar: mixed root orders " +
                                        std::to_string(a.n_) + " vs " + std::to_string(b.n_));
    }

    struct Table {
        size_t phi;
        // power_rem[k] = coefficients of z^{phi+k} reduced mod Phi_N, k = 0..phi-2.
        std::vector<std::vector<Rational>> power_rem;
    };

    static const Table& table(int n) {
        static std::mutex mu;
        static std::map<int, Table> cache; // node stability keeps references valid
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(n);
        if (it == cache.end()) {
            Table t;
            auto poly = cyclotomic_polynomial(n); // monic, degree phi
            size_t phi = poly.size() - 1;
            t.phi = phi;
            // Need z^{phi} .. z^{top}: products reach degree 2*phi-2 and
            // root(N, e) reaches degree N-1.
            size_t top = std::max(phi >= 1 ? 2 * phi - 2 : 0,
                                  static_cast<size_t>(n) - 1);
            if (phi >= 1 && top >= phi) {
                // z^phi = -(poly[0] + poly[1] z + ...); z^{k+1} = z * z^k.
                std::vector<Rational> cur(phi);
                for (size_t i = 0; i < phi; ++i) cur[i] = Rational(-poly[i]);
                for (size_t k = phi; k <= top; ++k) {
                    t.power_rem.push_back(cur);
                    if (k == top) break;
                    std::vector<Rational> next(phi, Rational(0));
                    Rational lead = cur[phi - 1];
                    for (size_t i = phi - 1; i > 0; --i) next[i] = cur[i - 1];
                    if (!lead.is_zero())
                        for (size_t i = 0; i < phi; ++i)
                            next[i] += lead * Rational(-poly[i]);
                    cur = std::move(next);
                }
            }
            it = cache.emplace(n, std::move(t)).first;
        }
        return it->second;
    }
};

} // namespace tlft
