#pragma once

// Ordered, oriented simplicial complexes of dimension up to 4.
//
// Simplices are vectors of vertex ids sorted ascending by id; the face
// lattice and incidence maps are id-based and therefore stable under vertex
// reorderings. Everything that depends on the total order O on vertices
// (lexicographic comparisons, orientation signs, weight readings) goes
// through order_pos/osorted explicitly.
//
// The stored orientation sign of a facet means: the facet's vertex tuple
// sorted ascending by O, read as an oriented simplex, agrees (+1) or
// disagrees (-1) with the global orientation of the manifold.

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace tlft {

using Simplex = std::vector<int>; // vertex ids, ascending

struct ValidationError : std::runtime_error {
    explicit ValidationError(const std::string& m) : std::runtime_error(m) {}
};

struct SimplexRef {
    int k = 0;
    Simplex verts; // ascending ids
};

struct Triangulation {
    int dim = -1;
    int vertex_count = 0;
    std::vector<int> order_pos;  // vertex id -> position in O
    std::vector<int> order_vert; // position in O -> vertex id
    std::vector<Simplex> facets; // lex-sorted list of ascending tuples
    std::vector<int> orient_sign; // per facet, empty until oriented

    // faces[k] = lex-sorted k-simplices, k = 0..dim (faces[dim] == facets).
    std::vector<std::vector<Simplex>> faces;
    std::vector<std::map<Simplex, int>> face_index;
    // cofaces[k][i] = indices of (k+1)-simplices containing faces[k][i].
    std::vector<std::vector<std::vector<int>>> cofaces;
    bool closed = false; // every ridge in exactly two facets

    bool oriented() const { return !orient_sign.empty(); }
    int face_id(int k, const Simplex& s) const;
    bool has_face(int k, const Simplex& s) const;
    const std::vector<int>& containing(int k, int idx) const { return cofaces[k][idx]; }

    // Vertex tuple of a simplex sorted ascending by the order O.
    Simplex osorted(const Simplex& s) const;
    // Lexicographic comparison of O-sorted tuples by O-positions.
    bool olex_less(const Simplex& a, const Simplex& b) const;
};

// Construct and validate. When order is empty the numeric order is used.
// Validation: tuples well-formed, every ridge in exactly two facets, vertex
// links connected (dim >= 2). Throws ValidationError. Pass
// require_closed = false for complexes with boundary (staircase factors,
// links); the closed checks are then recorded in `closed` instead of thrown.
Triangulation make_triangulation(int dim, int vertex_count, std::vector<Simplex> facets,
                                 std::vector<int> order = {}, bool require_closed = true);

Triangulation parse_triangulation(const std::string& text);
std::string serialize_triangulation(const Triangulation& T);

int euler_characteristic(const Triangulation& T);

// The link of a k-simplex as a standalone complex of dimension dim-k-1,
// with inherited vertex labels and order.
Triangulation link(const Triangulation& T, const SimplexRef& s);

// Assign per-facet signs so induced ridge orientations cancel; the O-lex
// least facet gets +1. Throws on non-orientable or disconnected input.
Triangulation orient(const Triangulation& T);

// Same complex with a new vertex order. Orientation signs are transformed so
// the underlying oriented manifold is unchanged.
Triangulation with_order(const Triangulation& T, const std::vector<int>& order);

// Staircase (shuffle) triangulation of |T1| x |T2|. Vertex (a, b) gets id
// a * T2.vertex_count + b; the product order is lexicographic in the factor
// orders.
Triangulation simplicial_product(const Triangulation& T1, const Triangulation& T2);

// Parity of the permutation taking `from` to `to` (same elements). +1 / -1.
int permutation_parity(const std::vector<int>& from, const std::vector<int>& to);

// For an oriented 4-complex: the link circle of a 2-face as a vertex cycle,
// starting at the O-least link vertex, directed so that for consecutive link
// vertices (u, v) the oriented 5-tuple (f0, f1, f2, u, v) — f in O order —
// agrees with the global orientation. Throws if the link is not a single
// cycle.
std::vector<int> face_link_cycle(const Triangulation& T, const Simplex& face);

// Convenience builders used by fixtures and tests.
Triangulation boundary_of_simplex(int n); // boundary of the n-simplex, dim n-1
Triangulation circle(int k);              // k-vertex circle, dim 1

} // namespace tlft
