#pragma once

// Finite groups by multiplication table, plus the Drinfeld-double label
// calculus on pairs (g, h-hat). Elements are indices 0..n-1 with 0 reserved
// for the identity by the named constructors.

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace tlft {

class FiniteGroup {
public:
    FiniteGroup(std::string name, int n, std::vector<int> table)
        : name_(std::move(name)), n_(n), mul_(std::move(table)) {
        if (n_ <= 0 || static_cast<int>(mul_.size()) != n_ * n_)
            throw std::invalid_argument("FiniteGroup: bad table size");
        validate();
    }

    static FiniteGroup cyclic(int m) {
        std::vector<int> t(static_cast<size_t>(m) * m);
        for (int a = 0; a < m; ++a)
            for (int b = 0; b < m; ++b) t[static_cast<size_t>(a) * m + b] = (a + b) % m;
        return FiniteGroup("Z" + std::to_string(m), m, std::move(t));
    }

    // Dihedral group of order 2m: elements r^a s^e encoded as a + m*e.
    static FiniteGroup dihedral(int m) {
        int n = 2 * m;
        std::vector<int> t(static_cast<size_t>(n) * n);
        auto enc = [m](int a, int e) { return ((a % m + m) % m) + m * e; };
        for (int a = 0; a < m; ++a)
            for (int e = 0; e < 2; ++e)
                for (int b = 0; b < m; ++b)
                    for (int f = 0; f < 2; ++f) {
                        // (r^a s^e)(r^b s^f) = r^{a + b*(-1)^e} s^{e xor f}
                        int exp = e ? a - b : a + b;
                        t[static_cast<size_t>(enc(a, e)) * n + enc(b, f)] = enc(exp, e ^ f);
                    }
        std::string nm = m == 3 ? "S3" : "D" + std::to_string(m);
        return FiniteGroup(nm, n, std::move(t));
    }

    static FiniteGroup direct_product(const FiniteGroup& a, const FiniteGroup& b) {
        int n = a.n_ * b.n_;
        std::vector<int> t(static_cast<size_t>(n) * n);
        auto enc = [&b](int x, int y) { return x * b.n_ + y; };
        for (int x1 = 0; x1 < a.n_; ++x1)
            for (int y1 = 0; y1 < b.n_; ++y1)
                for (int x2 = 0; x2 < a.n_; ++x2)
                    for (int y2 = 0; y2 < b.n_; ++y2)
                        t[static_cast<size_t>(enc(x1, y1)) * n + enc(x2, y2)] =
                            enc(a.mul(x1, x2), b.mul(y1, y2));
        return FiniteGroup(a.name_ + "x" + b.name_, n, std::move(t));
    }

    // CLI group specs: Z1..Zn, S3, D4, and products like Z2xZ2.
    static FiniteGroup from_spec(const std::string& spec) {
        auto x = spec.find('x');
        if (x != std::string::npos)
            return direct_product(from_spec(spec.substr(0, x)), from_spec(spec.substr(x + 1)));
        if (spec == "S3") return dihedral(3);
        if (spec.size() >= 2 && spec[0] == 'D') return dihedral(std::stoi(spec.substr(1)));
        if (spec.size() >= 2 && spec[0] == 'Z') return cyclic(std::stoi(spec.substr(1)));
        throw std::invalid_argument("unknown group spec: " + spec);
    }

    const std::string& name() const { return name_; }
    int order() const { return n_; }
    int identity() const { return 0; }
    int mul(int a, int b) const { return mul_[static_cast<size_t>(a) * n_ + b]; }
    int inv(int a) const { return inv_[static_cast<size_t>(a)]; }
    int conj(int a, int b) const { return mul(mul(a, b), inv(a)); } // a b a^{-1}
    bool abelian() const { return abelian_; }

private:
    std::string name_;
    int n_;
    std::vector<int> mul_;
    std::vector<int> inv_;
    bool abelian_ = true;

    void validate() {
        int e = -1;
        for (int c = 0; c < n_; ++c) {
            bool ok = true;
            for (int a = 0; a < n_; ++a) ok = ok && mul(c, a) == a && mul(a, c) == a;
            if (ok) { e = c; break; }
        }
        if (e != 0) throw std::invalid_argument("FiniteGroup: identity must be element 0");
        inv_.assign(static_cast<size_t>(n_), -1);
        for (int a = 0; a < n_; ++a) {
            for (int b = 0; b < n_; ++b)
                if (mul(a, b) == 0 && mul(b, a) == 0) { inv_[static_cast<size_t>(a)] = b; break; }
            if (inv_[static_cast<size_t>(a)] < 0)
                throw std::invalid_argument("FiniteGroup: missing inverse");
        }
        for (int a = 0; a < n_; ++a)
            for (int b = 0; b < n_; ++b) {
                if (mul(a, b) != mul(b, a)) abelian_ = false;
                for (int c = 0; c < n_; ++c)
                    if (mul(mul(a, b), c) != mul(a, mul(b, c)))
                        throw std::invalid_argument("FiniteGroup: table not associative");
            }
    }
};

// A Drinfeld-double color (g, h-hat); h indexes the dual element.
struct DoubleLabel {
    int g = 0;
    int h = 0;
    friend bool operator==(const DoubleLabel&, const DoubleLabel&) = default;
};

// Local rule at a triangle: edges (e1, e2, -e3) bound a face, a colors e1,
// b colors e2. Admissible iff k^{-1} h k = l for a=(k, l-hat), b=(g, h-hat);
// the forced color of e3 is (gk, l-hat). Returns nullopt when inadmissible,
// signalling that a partial state cannot extend.
inline std::optional<DoubleLabel> compose_labels(const FiniteGroup& G, DoubleLabel a,
                                                 DoubleLabel b) {
    if (G.conj(G.inv(a.g), b.h) != a.h) return std::nullopt;
    return DoubleLabel{G.mul(b.g, a.g), a.h};
}

// Color of the reversed primal edge: (g, h-hat) -> (g^{-1}, (g h g^{-1})-hat).
inline DoubleLabel reverse_primal(const FiniteGroup& G, DoubleLabel c) {
    return DoubleLabel{G.inv(c.g), G.conj(c.g, c.h)};
}

// Color of the reversed dual edge: (g, k-hat) -> (g, (k^{-1})-hat).
inline DoubleLabel reverse_dual(const FiniteGroup& G, DoubleLabel c) {
    return DoubleLabel{c.g, G.inv(c.h)};
}

} // namespace tlft
