#pragma once

// The two-dimensional TLFT from semisimple associative algebras: structure
// constants C_{xy}^z, the bilinear form g_{xy} = sum_{u,v} C^v_{ux} C^u_{vy},
// and the partition function on closed oriented surfaces.

#include <string>
#include <vector>

#include "tlft/rational.hpp"
#include "tlft/simplicial.hpp"

namespace tlft {

struct AlgebraData {
    int n = 0;
    // structure[x][y][z] = C_{xy}^z, i.e. phi_x . phi_y = sum_z C_{xy}^z phi_z.
    std::vector<std::vector<std::vector<Rational>>> structure;
    // Derived on construction:
    std::vector<std::vector<Rational>> g;     // g_{xy}
    std::vector<std::vector<Rational>> g_inv; // g^{xy}, empty if singular
    std::vector<std::vector<std::vector<Rational>>> lowered; // C_{xyz} = g_{zw} C_{xy}^w
    bool semisimple = false;

    const Rational& C(int x, int y, int z) const {
        return structure[static_cast<size_t>(x)][static_cast<size_t>(y)][static_cast<size_t>(z)];
    }
};

// Validates associativity and cyclic symmetry of the lowered constants,
// computes g, its inverse and C_{xyz}. Throws ValidationError on a
// non-associative table.
AlgebraData make_algebra(int n, std::vector<std::vector<std::vector<Rational>>> structure);

// The group algebra of Z/m: C_{xy}^z = delta_{x+y,z}.
AlgebraData group_algebra_cyclic(int m);

// g_{xy} alone (for callers that only want the form).
std::vector<std::vector<Rational>> bilinear_form(
    const std::vector<std::vector<std::vector<Rational>>>& structure);

// Exact inverse via Gauss-Jordan; empty result when singular.
std::vector<std::vector<Rational>> invert_matrix(std::vector<std::vector<Rational>> m);

// Partition function of a closed oriented surface: sum over labelings of
// edge-face incidences of prod C_{xyz} prod g^{uv}, faces read against the
// global orientation starting at the O-least vertex. Requires T oriented and
// the algebra semisimple.
Rational partition_2d(const Triangulation& T, const AlgebraData& A);

// Algebra file format: `dim n` then lines `C x y z p/q`.
AlgebraData parse_algebra(const std::string& text);
std::string serialize_algebra(const AlgebraData& A);

} // namespace tlft
