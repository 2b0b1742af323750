#include "doctest.h"

#include "tlft/cyclotomic.hpp"
#include "tlft/rational.hpp"
#include "tlft/zmod.hpp"

#include <random>

using namespace tlft;

TEST_CASE("bigint basics") {
    BigInt a = BigInt::from_string("123456789012345678901234567890");
    BigInt b = BigInt::from_string("-987654321098765432109876543210");
    CHECK((a + b).to_string() == "-864197532086419753208641975320");
    CHECK((a * b).to_string() ==
          "-121932631137021795226185032733622923332237463801111263526900");
    BigInt q, r;
    BigInt::divmod(b, a, q, r);
    CHECK((q * a + r) == b);
    CHECK(BigInt::gcd(BigInt(48), BigInt(-36)) == BigInt(12));
    CHECK(BigInt::from_string("0") == BigInt(0));
    CHECK(BigInt(-5) < BigInt(3));
    CHECK(BigInt::pow(BigInt(2), 100).to_string() == "1267650600228229401496703205376");
}

TEST_CASE("bigint random divmod round trip") {
    std::mt19937_64 rng(42);
    for (int t = 0; t < 200; ++t) {
        long long x = static_cast<long long>(rng() % 2000000) - 1000000;
        long long y = static_cast<long long>(rng() % 999) + 1;
        if (rng() & 1) y = -y;
        BigInt q, r;
        BigInt::divmod(BigInt(x), BigInt(y), q, r);
        CHECK(q == BigInt(x / y));
        CHECK(r == BigInt(x % y));
    }
}

TEST_CASE("rational normalization and arithmetic") {
    Rational a(6, -8);
    CHECK(a.to_string() == "-3/4");
    Rational b(1, 3);
    CHECK((a + b).to_string() == "-5/12");
    CHECK((a * b).to_string() == "-1/4");
    CHECK((a / a).to_string() == "1");
    CHECK(Rational::from_string("10/4") == Rational(5, 2));
    CHECK(Rational(0, 7).to_string() == "0");
    CHECK(Rational(1, 2) < Rational(2, 3));
}

TEST_CASE("cyclotomic polynomials") {
    auto p4 = cyclotomic_polynomial(4); // x^2 + 1
    REQUIRE(p4.size() == 3);
    CHECK(p4[0] == BigInt(1));
    CHECK(p4[1] == BigInt(0));
    CHECK(p4[2] == BigInt(1));
    auto p6 = cyclotomic_polynomial(6); // x^2 - x + 1
    REQUIRE(p6.size() == 3);
    CHECK(p6[0] == BigInt(1));
    CHECK(p6[1] == BigInt(-1));
    CHECK(p6[2] == BigInt(1));
    CHECK(euler_phi(12) == 4);
    CHECK(cyclotomic_polynomial(12).size() == 5);
}

TEST_CASE("roots of unity reduce canonically") {
    CHECK(CycScalar::root(4, 2) == CycScalar::from_rational(4, Rational(-1)));
    CHECK(CycScalar::root(2, 1) == CycScalar::from_rational(2, Rational(-1)));
    auto z3 = CycScalar::root(3, 0) + CycScalar::root(3, 1) + CycScalar::root(3, 2);
    CHECK(z3.is_zero());
    CHECK(CycScalar::root(4, 1) * CycScalar::root(4, 3) == CycScalar::one(4));
    CHECK(CycScalar::pow(CycScalar::root(6, 1), 6) == CycScalar::one(6));
    CHECK(CycScalar::one(2).scale(Rational(1, 4)) ==
          CycScalar::from_rational(2, Rational(1, 4)));
    CHECK_THROWS(CycScalar::root(2, 1) + CycScalar::root(4, 2));
}

TEST_CASE("cyclotomic field axioms on random small instances") {
    std::mt19937_64 rng(7);
    for (int n : {2, 3, 4, 5, 6, 8, 12}) {
        auto rand_elt = [&]() {
            CycScalar s = CycScalar::zero(n);
            for (int k = 0; k < 3; ++k) {
                long long e = static_cast<long long>(rng() % static_cast<unsigned>(n));
                long long num = static_cast<long long>(rng() % 7) - 3;
                s += CycScalar::root(n, e).scale(Rational(num, 1 + static_cast<long long>(rng() % 4)));
            }
            return s;
        };
        for (int t = 0; t < 20; ++t) {
            CycScalar a = rand_elt(), b = rand_elt(), c = rand_elt();
            CHECK((a + b) + c == a + (b + c));
            CHECK((a * b) * c == a * (b * c));
            CHECK(a * b == b * a);
            CHECK(a * (b + c) == a * b + a * c);
        }
        for (int e = 0; e < n; ++e)
            CHECK(CycScalar::pow(CycScalar::root(n, e), static_cast<unsigned>(n)) ==
                  CycScalar::one(n));
    }
}

namespace {

// Brute-force kernel for small systems, the oracle for kernel_mod_n.
std::vector<std::vector<int>> brute_kernel(const std::vector<SparseRow>& rows, int unknowns,
                                           int n) {
    std::vector<std::vector<int>> out;
    std::vector<int> x(static_cast<size_t>(unknowns), 0);
    while (true) {
        bool ok = true;
        for (const auto& r : rows) {
            int s = 0;
            for (auto [c, coef] : r.terms) s += coef * x[static_cast<size_t>(c)];
            if (((s % n) + n) % n != 0) { ok = false; break; }
        }
        if (ok) out.push_back(x);
        int i = 0;
        for (; i < unknowns; ++i) {
            if (++x[static_cast<size_t>(i)] < n) break;
            x[static_cast<size_t>(i)] = 0;
        }
        if (i == unknowns) break;
    }
    return out;
}

std::vector<std::vector<int>> span_of(const std::vector<std::vector<int>>& gens, int unknowns,
                                      int n) {
    std::vector<std::vector<int>> span{std::vector<int>(static_cast<size_t>(unknowns), 0)};
    for (const auto& g : gens) {
        std::vector<std::vector<int>> next;
        for (const auto& v : span)
            for (int m = 0; m < n; ++m) {
                std::vector<int> w = v;
                for (int c = 0; c < unknowns; ++c)
                    w[static_cast<size_t>(c)] =
                        (w[static_cast<size_t>(c)] + m * g[static_cast<size_t>(c)]) % n;
                next.push_back(std::move(w));
            }
        std::sort(next.begin(), next.end());
        next.erase(std::unique(next.begin(), next.end()), next.end());
        span = std::move(next);
    }
    return span;
}

} // namespace

TEST_CASE("kernel_mod_n matches brute force over several moduli") {
    std::mt19937_64 rng(11);
    for (int n : {2, 3, 4, 6}) {
        for (int trial = 0; trial < 30; ++trial) {
            int unknowns = 3 + static_cast<int>(rng() % 3);
            int nrows = 1 + static_cast<int>(rng() % 4);
            std::vector<SparseRow> rows(static_cast<size_t>(nrows));
            for (auto& r : rows)
                for (int c = 0; c < unknowns; ++c) {
                    int coef = static_cast<int>(rng() % static_cast<unsigned>(n));
                    if (coef) r.terms.emplace_back(c, coef);
                }
            auto K = kernel_mod_n(rows, unknowns, n);
            auto expect = brute_kernel(rows, unknowns, n);
            auto got = span_of(K.basis, unknowns, n);
            std::sort(expect.begin(), expect.end());
            REQUIRE(got.size() == expect.size());
            CHECK(got == expect);
        }
    }
}

TEST_CASE("kernel rank is stable under elimination order") {
    std::vector<SparseRow> rows;
    rows.push_back({{{0, 1}, {1, 3}, {2, 2}}});
    rows.push_back({{{1, 2}, {3, 1}}});
    auto a = kernel_mod_n(rows, 4, 4);
    std::vector<int> rev{3, 2, 1, 0};
    auto b = kernel_mod_n(rows, 4, 4, rev);
    auto sa = span_of(a.basis, 4, 4);
    auto sb = span_of(b.basis, 4, 4);
    CHECK(sa == sb);
}
