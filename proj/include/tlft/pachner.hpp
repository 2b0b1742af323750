#pragma once

// Bistellar (Pachner) moves in dimensions 2-4.
//
// A move of type (i <-> j), i + j = dim + 2, flips a k-simplex sigma with
// k = dim + 1 - i whose link is the boundary of an (i-1)-simplex tau: the i
// facets sigma * d(tau) are replaced by the j facets d(sigma) * tau. For
// i >= 2 the move is legal only when tau is not already a simplex of the
// complex (otherwise the replacement would duplicate simplices); for i = 1
// tau is a fresh vertex appended at the end of the vertex order.

#include <cstdint>
#include <string>
#include <vector>

#include "tlft/simplicial.hpp"

namespace tlft {

struct MoveSite {
    int i = 0, j = 0; // move type (i <-> j)
    Simplex sigma;    // the flipped simplex, ascending ids
    Simplex tau;      // apex simplex; for i = 1 the fresh vertex is assigned on apply
};

// All legal sites of the given type, lex-ordered by sigma.
std::vector<MoveSite> find_moves(const Triangulation& T, int i, int j);

// Apply a site. Orientation is carried through: surviving facets keep their
// signs and the replacement ball is oriented by propagation from them.
Triangulation apply_move(const Triangulation& T, const MoveSite& site);

// The site that undoes `site` on apply_move(T, site).
MoveSite reverse_site(const Triangulation& before, const MoveSite& site);

struct MoveLogEntry {
    MoveSite site;
    std::string line; // "TYPE i j ; sigma v... ; apex v..."
};

struct WalkResult {
    Triangulation result;
    std::vector<MoveLogEntry> log;
};

// Applies `steps` uniformly chosen legal moves, re-sampling the move type
// when the sampled type has no legal site, and rejecting moves that would
// push the facet count above max_facets. Deterministic for a given seed.
WalkResult random_walk(const Triangulation& T, int steps, std::uint64_t seed, int max_facets);

std::string serialize_move_log(const std::vector<MoveLogEntry>& log);
std::vector<MoveSite> parse_move_log(const std::string& text);

} // namespace tlft
