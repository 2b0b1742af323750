#include "doctest.h"

#include "fixtures.hpp"
#include "tlft/simplicial.hpp"

#include <set>

using namespace tlft;

namespace {

// Sum of induced ridge orientations; zero on every ridge iff oriented.
bool boundary_cancels(const Triangulation& T) {
    for (size_t r = 0; r < T.faces[static_cast<size_t>(T.dim) - 1].size(); ++r) {
        int sum = 0;
        for (int f : T.cofaces[static_cast<size_t>(T.dim) - 1][r]) {
            Simplex fo = T.osorted(T.facets[static_cast<size_t>(f)]);
            const Simplex& ridge = T.faces[static_cast<size_t>(T.dim) - 1][r];
            for (size_t i = 0; i < fo.size(); ++i) {
                bool in_ridge = false;
                for (int v : ridge)
                    if (v == fo[i]) in_ridge = true;
                if (!in_ridge) {
                    sum += (i % 2 == 0 ? 1 : -1) * T.orient_sign[static_cast<size_t>(f)];
                    break;
                }
            }
        }
        if (sum != 0) return false;
    }
    return true;
}

} // namespace

TEST_CASE("boundary spheres have the expected face counts") {
    auto s3 = boundary_of_simplex(4); // boundary of the 4-simplex
    CHECK(s3.dim == 3);
    CHECK(s3.facets.size() == 5);
    CHECK(s3.faces[2].size() == 10);
    CHECK(s3.faces[1].size() == 10);
    CHECK(s3.faces[0].size() == 5);
    CHECK(euler_characteristic(s3) == 0);

    auto s4 = boundary_of_simplex(5);
    CHECK(s4.dim == 4);
    CHECK(s4.facets.size() == 6);
    CHECK(s4.faces[3].size() == 15);
    CHECK(euler_characteristic(s4) == 2); // 6 - 15 + 20 - 15 + 6
}

TEST_CASE("parser accepts the file format and round-trips") {
    std::string text = "# comment\ndim 2\n0 1 2\n0 1 3\n0 2 3\n1 2 3\n";
    auto T = parse_triangulation(text);
    CHECK(T.dim == 2);
    CHECK(T.facets.size() == 4);
    CHECK(parse_triangulation(serialize_triangulation(T)).facets == T.facets);

    auto torus = fixtures::torus7();
    CHECK(parse_triangulation(serialize_triangulation(torus)).facets == torus.facets);

    // Order line round trip.
    auto T2 = with_order(T, {3, 1, 0, 2});
    auto T3 = parse_triangulation(serialize_triangulation(T2));
    CHECK(T3.order_vert == T2.order_vert);
}

TEST_CASE("parser rejects malformed input") {
    CHECK_THROWS_AS(parse_triangulation("dim 2\n0 1 2\n"), ValidationError); // has boundary
    CHECK_THROWS_AS(parse_triangulation("dim 2\n0 1 1\n0 1 2\n"), ValidationError);
    CHECK_THROWS_AS(parse_triangulation("dim 5\n0 1 2 3 4 5\n"), ValidationError);
    CHECK_THROWS_AS(parse_triangulation("dim 1\n0 1\n"), ValidationError);
    CHECK_THROWS_AS(parse_triangulation("0 1 2\n"), ValidationError);
    CHECK_THROWS_AS(parse_triangulation("dim 2\n0 1 x\n"), ValidationError);
    CHECK_THROWS_AS(parse_triangulation("dim 2\norder 0 0 1\n0 1 2\n0 1 3\n0 2 3\n1 2 3\n"),
                    ValidationError);
}

TEST_CASE("torus fixture has Euler characteristic zero") {
    auto t = fixtures::torus7();
    CHECK(t.facets.size() == 14);
    CHECK(t.faces[1].size() == 21);
    CHECK(euler_characteristic(t) == 0);
}

TEST_CASE("links in boundary spheres") {
    auto s4 = boundary_of_simplex(5);
    auto lk0 = link(s4, SimplexRef{0, {0}});
    CHECK(lk0.dim == 3);
    CHECK(lk0.facets.size() == 5); // boundary of the 4-simplex on {1..5}
    std::set<int> verts;
    for (const auto& f : lk0.facets)
        for (int v : f) verts.insert(v);
    CHECK(verts == std::set<int>{1, 2, 3, 4, 5});

    auto lkf = link(s4, SimplexRef{2, {0, 1, 2}});
    CHECK(lkf.dim == 1);
    CHECK(lkf.facets.size() == 3); // 3-cycle on {3,4,5}
    CHECK(lkf.closed);

    auto s3 = boundary_of_simplex(4);
    auto lke = link(s3, SimplexRef{1, {0, 1}});
    CHECK(lke.dim == 1);
    CHECK(lke.facets.size() == 3);

    CHECK_THROWS_AS(link(s3, SimplexRef{1, {0, 9}}), ValidationError);
}

TEST_CASE("vertex links of closed fixtures have sphere Euler characteristic") {
    for (const Triangulation& T :
         {boundary_of_simplex(4), boundary_of_simplex(5), fixtures::s2_x_s1()}) {
        int expect = T.dim % 2 == 0 ? 0 : 2; // chi(S^{d-1})
        for (const auto& v : T.faces[0])
            CHECK(euler_characteristic(link(T, SimplexRef{0, v})) == expect);
    }
}

TEST_CASE("orientation succeeds on spheres and fails on the Klein bottle") {
    auto s3 = orient(boundary_of_simplex(4));
    CHECK(boundary_cancels(s3));
    auto s4 = orient(boundary_of_simplex(5));
    CHECK(boundary_cancels(s4));
    // Normalization: the lex-least facet carries +1.
    CHECK(s4.orient_sign[0] == 1);

    auto klein = fixtures::klein12();
    CHECK(euler_characteristic(klein) == 0);
    CHECK_THROWS_AS(orient(klein), ValidationError);
}

TEST_CASE("with_order keeps the underlying orientation") {
    auto s3 = orient(boundary_of_simplex(4));
    auto reordered = with_order(s3, {4, 2, 0, 3, 1});
    CHECK(boundary_cancels(reordered));
    // Same manifold orientation: transforming back must restore the signs.
    auto back = with_order(reordered, {0, 1, 2, 3, 4});
    CHECK(back.orient_sign == s3.orient_sign);
}

TEST_CASE("staircase products") {
    // Two triangles from a square.
    auto interval = make_triangulation(1, 2, {{0, 1}}, {}, false);
    auto square = simplicial_product(interval, interval);
    CHECK(square.dim == 2);
    CHECK(square.facets.size() == 2);

    auto t2 = simplicial_product(circle(3), circle(3));
    CHECK(t2.vertex_count == 9);
    CHECK(t2.facets.size() == 18);
    CHECK(t2.closed);
    CHECK(euler_characteristic(t2) == 0);

    auto s2s1 = fixtures::s2_x_s1();
    CHECK(s2s1.dim == 3);
    CHECK(s2s1.closed);
    CHECK(euler_characteristic(s2s1) == 0);
    CHECK_NOTHROW(orient(s2s1));

    auto t3 = fixtures::torus3d();
    CHECK(t3.dim == 3);
    CHECK(t3.closed);
    CHECK(t3.vertex_count == 27);
    CHECK(euler_characteristic(t3) == 0);

    CHECK_THROWS_AS(simplicial_product(boundary_of_simplex(4), t2), ValidationError);
}

TEST_CASE("product multiplies Euler characteristics") {
    auto a = boundary_of_simplex(3); // chi 2
    auto b = circle(4);              // chi 0
    CHECK(euler_characteristic(simplicial_product(a, b)) ==
          euler_characteristic(a) * euler_characteristic(b));
    auto c = fixtures::torus7();
    CHECK(euler_characteristic(simplicial_product(c, b)) == 0);
}

TEST_CASE("face link cycles in an oriented 4-sphere") {
    auto s4 = orient(boundary_of_simplex(5));
    auto cyc = face_link_cycle(s4, {0, 1, 2});
    REQUIRE(cyc.size() == 3);
    CHECK(std::set<int>(cyc.begin(), cyc.end()) == std::set<int>{3, 4, 5});
    CHECK(cyc[0] == 3); // starts at the O-least link vertex
    for (const auto& f : s4.faces[2])
        CHECK(face_link_cycle(s4, f).size() == 3);

    // Under a reordering the cycle may flip direction but stays a cycle.
    auto reord = with_order(s4, {5, 4, 3, 2, 1, 0});
    auto cyc2 = face_link_cycle(reord, {0, 1, 2});
    CHECK(cyc2.size() == 3);
    CHECK(cyc2[0] == 5);
}
