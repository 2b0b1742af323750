#include "doctest.h"

#include "tlft/group.hpp"

using namespace tlft;

TEST_CASE("group constructors and table checks") {
    auto z4 = FiniteGroup::cyclic(4);
    CHECK(z4.order() == 4);
    CHECK(z4.mul(3, 2) == 1);
    CHECK(z4.inv(3) == 1);
    CHECK(z4.abelian());

    auto s3 = FiniteGroup::from_spec("S3");
    CHECK(s3.order() == 6);
    CHECK_FALSE(s3.abelian());
    for (int a = 0; a < 6; ++a) CHECK(s3.mul(a, s3.inv(a)) == 0);

    auto v4 = FiniteGroup::from_spec("Z2xZ2");
    CHECK(v4.order() == 4);
    for (int a = 0; a < 4; ++a) CHECK(v4.mul(a, a) == 0);

    auto d4 = FiniteGroup::from_spec("D4");
    CHECK(d4.order() == 8);
    CHECK_FALSE(d4.abelian());

    CHECK_THROWS(FiniteGroup::from_spec("Q8"));
}

TEST_CASE("compose_labels and the local rule") {
    auto z2 = FiniteGroup::cyclic(2);
    // ((1, 0-hat), (1, 0-hat)) -> (0, 0-hat): abelian, h = l forced.
    auto r = compose_labels(z2, DoubleLabel{1, 0}, DoubleLabel{1, 0});
    REQUIRE(r.has_value());
    CHECK(*r == DoubleLabel{0, 0});

    // Identity edge: ((e, h-hat), (g, h-hat)) -> (g, h-hat).
    auto s3 = FiniteGroup::dihedral(3);
    for (int g = 0; g < 6; ++g)
        for (int h = 0; h < 6; ++h) {
            auto q = compose_labels(s3, DoubleLabel{0, h}, DoubleLabel{g, h});
            REQUIRE(q.has_value());
            CHECK(*q == DoubleLabel{g, h});
        }

    // Inadmissible pair in S3: k^{-1} h k != l.
    int k = 1, h = 3; // a rotation and a reflection do not commute
    int l = s3.conj(s3.inv(k), h);
    REQUIRE(l != h);
    CHECK_FALSE(compose_labels(s3, DoubleLabel{k, h}, DoubleLabel{2, h}).has_value());
    CHECK(compose_labels(s3, DoubleLabel{k, l}, DoubleLabel{2, h}).has_value());
}

TEST_CASE("abelian admissibility reduces to h == l") {
    for (const char* spec : {"Z4", "Z2xZ2"}) {
        auto G = FiniteGroup::from_spec(spec);
        for (int k = 0; k < G.order(); ++k)
            for (int l = 0; l < G.order(); ++l)
                for (int g = 0; g < G.order(); ++g)
                    for (int h = 0; h < G.order(); ++h)
                        CHECK(compose_labels(G, DoubleLabel{k, l}, DoubleLabel{g, h})
                                  .has_value() == (h == l));
    }
}

TEST_CASE("compose_labels is associative where defined") {
    // Color a tetrahedron's spine consistently and compose around both
    // triangulations of the square of edges.
    auto s3 = FiniteGroup::dihedral(3);
    for (int m = 0; m < 6; ++m)
        for (int k = 0; k < 6; ++k)
            for (int g = 0; g < 6; ++g)
                for (int nn = 0; nn < 6; ++nn) {
                    DoubleLabel e01{m, nn};
                    DoubleLabel e12{k, s3.conj(m, nn)};
                    DoubleLabel e23{g, s3.conj(s3.mul(k, m), nn)};
                    auto e02 = compose_labels(s3, e01, e12);
                    REQUIRE(e02.has_value());
                    auto e13 = compose_labels(s3, e12, e23);
                    REQUIRE(e13.has_value());
                    auto a = compose_labels(s3, *e02, e23);
                    auto b = compose_labels(s3, e01, *e13);
                    REQUIRE(a.has_value());
                    REQUIRE(b.has_value());
                    CHECK(*a == *b);
                }
}

TEST_CASE("reversals are involutions") {
    auto s3 = FiniteGroup::dihedral(3);
    auto z3 = FiniteGroup::cyclic(3);
    for (int g = 0; g < 6; ++g)
        for (int h = 0; h < 6; ++h) {
            DoubleLabel c{g, h};
            CHECK(reverse_primal(s3, reverse_primal(s3, c)) == c);
            CHECK(reverse_dual(s3, reverse_dual(s3, c)) == c);
            // reverse_primal is (g, h) -> (g^{-1}, g h g^{-1})
            DoubleLabel r = reverse_primal(s3, c);
            CHECK(r.g == s3.inv(g));
            CHECK(r.h == s3.conj(g, h));
        }
    // Z/2 involution fixed point and the Z/3 dual inverse.
    auto z2 = FiniteGroup::cyclic(2);
    CHECK(reverse_primal(z2, DoubleLabel{1, 1}) == DoubleLabel{1, 1});
    CHECK(reverse_dual(z3, DoubleLabel{2, 1}) == DoubleLabel{2, 2});
    CHECK(reverse_dual(z3, DoubleLabel{2, 0}) == DoubleLabel{2, 0});
}
