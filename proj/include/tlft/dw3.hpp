#pragma once

// The 3-dimensional Dijkgraaf-Witten invariant: flat G-colorings on oriented
// edges (multiplicative around every triangle) weighted by a 3-cocycle.

#include <cstdint>
#include <functional>
#include <vector>

#include "tlft/cocycles.hpp"
#include "tlft/cyclotomic.hpp"
#include "tlft/simplicial.hpp"

namespace tlft {

// A flat coloring assigns to every edge (oriented ascending in O) a group
// element; phi(<v0,v2>) = phi(<v1,v2>) phi(<v0,v1>) holds on every triangle
// and reversal inverts. Stored as one element per edge index.
using FlatColoring = std::vector<int>;

// Visits every flat coloring, in a deterministic order, by constraint
// propagation: triangles with two colored edges force the third; branching
// happens only on genuinely free edges. When `gauge_fixed` is set, the edges
// of a spanning tree of the 1-skeleton are pinned to the identity and only
// the |Hom(pi1, G)| representatives are visited.
void enumerate_flat_colorings(const Triangulation& T, const FiniteGroup& G,
                              const std::function<void(const FlatColoring&)>& visit,
                              bool gauge_fixed = false);

long long count_flat_colorings(const Triangulation& T, const FiniteGroup& G);

// Z_M = |G|^{-V} sum_phi prod_sigma alpha[g|h|k]^{eps(sigma)} with the spins
// read along the O-ascending vertex order of each tetrahedron and
// eps(sigma) the stored orientation sign. Uses tree-gauge factorization
// (weights are constant on gauge orbits for closed oriented M once the
// 3-cocycle condition holds, which partition_dw3 enforces); tests cross-check
// the factorization against full enumeration on small fixtures.
CycScalar partition_dw3(const Triangulation& T, const DW3Cocycle& cocycle,
                        bool gauge_factorized = true);

} // namespace tlft
