#pragma once

// The 4-dimensional state sum: dual skeleton, 3-face triangulation, states
// on edge/tetrahedron incidences, Boltzmann weights and the partition
// function.
//
// Orientation and ordering conventions (these fix every sign in the sum):
//  * 4-simplices are ordered lexicographically by their O-sorted vertex
//    tuples; dual edges point from the lower-ranked to the higher-ranked
//    endpoint.
//  * A dual polygon's positive circulation lists the 4-simplices around its
//    2-face F in the direction for which (f0, f1, f2, u, v) agrees with the
//    global orientation for consecutive link vertices u, v.
//  * Fan triangulations have no interior polygon vertices; every dual
//    3-polytope is coned from one interior barycenter, ordered after all
//    dual vertices.
//
// A state is stored as a flat primal coloring (one group element per edge)
// plus one free dual element per tetrahedron; the spin of (e, t) is
// (flat(e), conj(flat(v0_t -> tail e), n_t)). Around every 2-face the dual
// parts must close up; enumerate_states enforces exactly that.

#include <cstdint>
#include <functional>
#include <vector>

#include "tlft/cocycles.hpp"
#include "tlft/cyclotomic.hpp"
#include "tlft/dw3.hpp"
#include "tlft/group.hpp"
#include "tlft/simplicial.hpp"

namespace tlft {

struct BudgetExceeded : std::runtime_error {
    explicit BudgetExceeded(const std::string& m) : std::runtime_error(m) {}
};

struct DualSkeleton {
    int facet_count = 0;
    std::vector<int> dual_rank;                 // facet index -> rank in O-lex order
    std::vector<std::array<int, 2>> dual_edges; // per tetrahedron: [lo, hi] facet indices
    std::vector<std::vector<int>> poly_facets;  // per 2-face: positive circulation
    std::vector<std::vector<int>> poly_tets;    // poly_tets[F][i] joins facets i, i+1
    std::vector<std::vector<int>> polytope_faces; // per edge: incident 2-face indices
};

DualSkeleton build_dual(const Triangulation& T);

struct ThreeFaceTriangulation {
    int seed = 0;
    // Per 2-face: fan triangles as circulation positions (base, a, b) with
    // a, b consecutive; the polygon has size()-2 of them.
    std::vector<std::vector<std::array<int, 3>>> fans;
    // Interior vertices per dual 3-polytope (one barycenter each).
    std::vector<int> interior_vertices;
    int total_interior() const {
        int s = 0;
        for (int a : interior_vertices) s += a;
        return s;
    }
};

// Deterministic fan choice: seed 0 starts each fan at the dual-rank-least
// facet of the polygon; other seeds rotate the base. All seeds keep one
// barycenter per polytope, so sums with different seeds are comparable
// term by term.
ThreeFaceTriangulation triangulate_dual(const Triangulation& T, const DualSkeleton& D,
                                        int seed = 0);

struct State4 {
    FlatColoring edge_color; // per edge index, ascending orientation
    std::vector<int> tet_n;  // free dual element per tetrahedron
};

// The spin S(e, t) for the edge with endpoints (a, b); pass the endpoints in
// the desired orientation (tail first).
DoubleLabel state_spin(const Triangulation& T, const FiniteGroup& G, const State4& s,
                       int tail, int head, int tet_index);

// Re-validates a state against the local rules from first principles via
// compose_labels on every (face, tetrahedron) pair and the dual closure on
// every polygon. Used by tests and enumerate_states assertions.
bool state_is_admissible(const Triangulation& T, const DualSkeleton& D,
                         const FiniteGroup& G, const State4& s);

// Visits all admissible states: full enumeration of flat colorings, then
// propagation over the per-face closure constraints. Deterministic order.
// `budget` counts elementary rule evaluations; nullptr means unlimited.
void enumerate_states(const Triangulation& T, const DualSkeleton& D, const FiniteGroup& G,
                      const std::function<void(const State4&)>& visit,
                      long long* budget = nullptr);

long long count_states(const Triangulation& T, const DualSkeleton& D, const FiniteGroup& G);

// Single-item Boltzmann weights (exact scalars); partition_4d accumulates
// the same exponents without materializing CycScalars per item.
CycScalar weight_tet(const Triangulation& T, const CocycleSystem& sys, const State4& s,
                     int tet_index);
CycScalar weight_face(const Triangulation& T, const DualSkeleton& D,
                      const ThreeFaceTriangulation& Phi, const CocycleSystem& sys,
                      const State4& s, int face_index);
// The edge weight performs the local sum over interior colorings of the
// coned polytope, normalized by |G|^{2 a_p}.
CycScalar weight_edge(const Triangulation& T, const DualSkeleton& D,
                      const ThreeFaceTriangulation& Phi, const CocycleSystem& sys,
                      const State4& s, int edge_index);

struct Partition4Options {
    int dual_seed = 0;
    long long budget = 100000000; // rule evaluations
    int threads = 1;
};

struct Partition4Result {
    CycScalar value;
    long long states = 0;
};

// psi = |G|^{-(V + P)} sum_S prod B(T) B(F) B(E), with the |G|^{a_p} interior
// sums of the edge weights cancelled against the matching global factor.
// Requires sys to pass check_conditions and check_symmetries.
Partition4Result partition_4d(const Triangulation& T, const CocycleSystem& sys,
                              const Partition4Options& opt = {});

} // namespace tlft
