#include "doctest.h"

#include "fixtures.hpp"
#include "tlft/pachner.hpp"
#include "tlft/statesum2d.hpp"

using namespace tlft;

namespace {

// Brute-force oracle for the Z/2 group algebra: g^{uv} = (1/2) delta_{uv}
// collapses the incidence labels to one spin per edge, C_{xyz} = 2
// delta_{x+y+z,0}. Independent of the frontier DP in partition_2d.
Rational oracle_z2(const Triangulation& T) {
    const auto& edges = T.faces[1];
    size_t E = edges.size();
    REQUIRE(E <= 25);
    std::vector<std::array<int, 3>> face_edges;
    for (const auto& f : T.facets) {
        auto eid = [&](int a, int b) {
            Simplex e{std::min(a, b), std::max(a, b)};
            return T.face_id(1, e);
        };
        face_edges.push_back({eid(f[0], f[1]), eid(f[1], f[2]), eid(f[0], f[2])});
    }
    long long good = 0;
    for (unsigned long long mask = 0; mask < (1ull << E); ++mask) {
        bool ok = true;
        for (const auto& fe : face_edges) {
            int s = static_cast<int>((mask >> fe[0]) & 1) +
                    static_cast<int>((mask >> fe[1]) & 1) +
                    static_cast<int>((mask >> fe[2]) & 1);
            if (s % 2 != 0) { ok = false; break; }
        }
        if (ok) ++good;
    }
    // Each closed labeling contributes 2^F / 2^E.
    Rational per = Rational(BigInt::pow(BigInt(2), static_cast<unsigned>(T.facets.size())),
                            BigInt::pow(BigInt(2), static_cast<unsigned>(E)));
    return per * Rational(good);
}

} // namespace

TEST_CASE("bilinear form of the Z/2 group algebra is 2I") {
    auto A = group_algebra_cyclic(2);
    CHECK(A.semisimple);
    CHECK(A.g[0][0] == Rational(2));
    CHECK(A.g[1][1] == Rational(2));
    CHECK(A.g[0][1] == Rational(0));
    CHECK(A.g_inv[0][0] == Rational(1, 2));
    // Lowered constants: C_{xyz} = 2 delta_{x+y+z,0}.
    CHECK(A.lowered[0][0][0] == Rational(2));
    CHECK(A.lowered[1][1][0] == Rational(2));
    CHECK(A.lowered[1][0][1] == Rational(2));
    CHECK(A.lowered[1][1][1] == Rational(0));
}

TEST_CASE("one-dimensional algebra and the singular nilpotent algebra") {
    std::vector<std::vector<std::vector<Rational>>> one(
        1, std::vector<std::vector<Rational>>(1, std::vector<Rational>(1, Rational(1))));
    auto A1 = make_algebra(1, one);
    CHECK(A1.semisimple);
    CHECK(A1.g[0][0] == Rational(1));

    // phi0 unit, phi1^2 = 0: the form degenerates.
    std::vector<std::vector<std::vector<Rational>>> nil(
        2, std::vector<std::vector<Rational>>(2, std::vector<Rational>(2, Rational(0))));
    nil[0][0][0] = Rational(1);
    nil[0][1][1] = Rational(1);
    nil[1][0][1] = Rational(1);
    auto A2 = make_algebra(2, nil);
    CHECK_FALSE(A2.semisimple);
    CHECK(A2.g[0][0] == Rational(2));
    CHECK(A2.g[1][1] == Rational(0));
    auto sphere = orient(boundary_of_simplex(3));
    CHECK_THROWS_AS(partition_2d(sphere, A2), ValidationError);

    // phi0 phi1 = phi1 with all other products zero is not associative:
    // (phi0 phi0) phi1 = 0 but phi0 (phi0 phi1) = phi1.
    std::vector<std::vector<std::vector<Rational>>> bad(
        2, std::vector<std::vector<Rational>>(2, std::vector<Rational>(2, Rational(0))));
    bad[0][1][1] = Rational(1);
    CHECK_THROWS_AS(make_algebra(2, bad), ValidationError);
}

TEST_CASE("partition function on the sphere and torus against the oracle") {
    auto A = group_algebra_cyclic(2);
    auto sphere = orient(boundary_of_simplex(3));
    Rational zs = partition_2d(sphere, A);
    CHECK(zs == Rational(2));
    CHECK(zs == oracle_z2(sphere));

    auto torus = orient(fixtures::torus7());
    Rational zt = partition_2d(torus, A);
    CHECK(zt == Rational(2));
    CHECK(zt == oracle_z2(torus));

    std::vector<std::vector<std::vector<Rational>>> one(
        1, std::vector<std::vector<Rational>>(1, std::vector<Rational>(1, Rational(1))));
    CHECK(partition_2d(sphere, make_algebra(1, one)) == Rational(1));
}

TEST_CASE("partition function with the Z/3 group algebra") {
    auto A = group_algebra_cyclic(3);
    auto sphere = orient(boundary_of_simplex(3));
    CHECK(partition_2d(sphere, A) == Rational(3));
    auto torus = orient(fixtures::torus7());
    CHECK(partition_2d(torus, A) == Rational(3));
}

TEST_CASE("partition function is a 2D Pachner invariant") {
    auto A2 = group_algebra_cyclic(2);
    auto A3 = group_algebra_cyclic(3);
    auto torus = orient(fixtures::torus7());
    Rational base2 = partition_2d(torus, A2);
    Rational base3 = partition_2d(torus, A3);
    auto w = random_walk(torus, 12, 2024, 40);
    CHECK(partition_2d(w.result, A2) == base2);
    CHECK(partition_2d(w.result, A3) == base3);

    auto w2 = random_walk(orient(boundary_of_simplex(3)), 15, 17, 40);
    CHECK(partition_2d(w2.result, A2) == Rational(2));
}

TEST_CASE("partition function is independent of the vertex order") {
    auto A = group_algebra_cyclic(3);
    auto torus = orient(fixtures::torus7());
    Rational base = partition_2d(torus, A);
    CHECK(partition_2d(with_order(torus, {3, 0, 6, 1, 5, 2, 4}), A) == base);
    CHECK(partition_2d(with_order(torus, {6, 5, 4, 3, 2, 1, 0}), A) == base);
}

TEST_CASE("the one-to-three identity holds for shipped algebras") {
    // C^a_{de} C^j_{ab} C^d_{jc} = C_{ebc} (summation convention).
    for (int m : {2, 3}) {
        auto A = group_algebra_cyclic(m);
        for (int e = 0; e < m; ++e)
            for (int b = 0; b < m; ++b)
                for (int c = 0; c < m; ++c) {
                    Rational lhs(0);
                    for (int a = 0; a < m; ++a)
                        for (int j = 0; j < m; ++j)
                            for (int d = 0; d < m; ++d)
                                lhs += A.C(d, e, a) * A.C(a, b, j) * A.C(j, c, d);
                    CHECK(lhs ==
                          A.lowered[static_cast<size_t>(e)][static_cast<size_t>(b)]
                                   [static_cast<size_t>(c)]);
                }
    }
}

TEST_CASE("algebra files round trip") {
    auto A = group_algebra_cyclic(2);
    auto B = parse_algebra(serialize_algebra(A));
    CHECK(B.structure == A.structure);
    CHECK_THROWS_AS(parse_algebra("C 0 0 0 1\n"), ValidationError);
    CHECK_THROWS_AS(parse_algebra("dim 1\nC 0 0 5 1\n"), ValidationError);
    auto C = parse_algebra("dim 2\nC 0 0 0 1\nC 0 1 1 1\nC 1 0 1 1\nC 1 1 0 1/1\n");
    CHECK(C.semisimple); // the Z/2 group algebra again
}
