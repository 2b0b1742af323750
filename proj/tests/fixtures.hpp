#pragma once

// Shared test fixtures: small closed manifolds with known invariants.

#include "tlft/simplicial.hpp"

namespace tlft::fixtures {

// The 7-vertex (Csaszar) torus: triangles {i, i+1, i+3} and {i, i+2, i+3}
// mod 7; 14 triangles, 21 edges.
inline Triangulation torus7() {
    std::vector<Simplex> f;
    for (int i = 0; i < 7; ++i) {
        f.push_back({i, (i + 1) % 7, (i + 3) % 7});
        f.push_back({i, (i + 2) % 7, (i + 3) % 7});
    }
    return make_triangulation(2, 7, std::move(f));
}

// A 12-vertex Klein bottle: 4 x 3 grid of squares, cyclic rows, the column
// seam glued with a row flip. Non-orientable.
inline Triangulation klein12() {
    auto v = [](int i, int j) { return 3 * i + ((j % 3) + 3) % 3; };
    std::vector<Simplex> f;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 3; ++j) {
            int a = v(i, j), c = v(i, j + 1);
            int b, d;
            if (i < 3) {
                b = v(i + 1, j);
                d = v(i + 1, j + 1);
            } else { // seam: (4, j) ~ (0, -j)
                b = v(0, -j);
                d = v(0, -j - 1);
            }
            f.push_back({a, b, d});
            f.push_back({a, d, c});
        }
    return make_triangulation(2, 12, std::move(f));
}

// S^2 x S^1 as the staircase product of the boundary 3-simplex surface and a
// 3-vertex circle.
inline Triangulation s2_x_s1() {
    return simplicial_product(boundary_of_simplex(3), circle(3));
}

// T^3 as a triple product of 3-vertex circles.
inline Triangulation torus3d() {
    return simplicial_product(simplicial_product(circle(3), circle(3)), circle(3));
}

} // namespace tlft::fixtures
