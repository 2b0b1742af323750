#pragma once

// Cocycle data for the 4D state sum: exponent tables over Z/N for
// alpha in C_{3,1}, beta in C_{1,3}, phi in C_{2,2}, together with the four
// cocycle conditions, the cocycle symmetries, the Dijkgraaf-Witten 3-cocycle
// condition, and a linear-algebra search for solutions.
//
// Values live in the N-th roots of unity, so each multiplicative identity
// becomes a linear equation on exponents over Z/N.

#include <array>
#include <string>
#include <tuple>
#include <vector>

#include "tlft/group.hpp"
#include "tlft/zmod.hpp"

namespace tlft {

struct CocycleSystem {
    FiniteGroup G;
    int N;
    // Exponent tables indexed by (a,b,c,d) -> ((a*n+b)*n+c)*n+d, n = |G|.
    std::vector<int> alpha; // alpha(g,k,m; n-hat)
    std::vector<int> beta;  // beta(g; i-hat,j-hat,k-hat)
    std::vector<int> phi;   // phi(g,k; m-hat,n-hat)

    int idx(int a, int b, int c, int d) const {
        int n = G.order();
        return ((a * n + b) * n + c) * n + d;
    }
    int ea(int g, int k, int m, int nn) const { return alpha[static_cast<size_t>(idx(g, k, m, nn))]; }
    int eb(int g, int i, int j, int k) const { return beta[static_cast<size_t>(idx(g, i, j, k))]; }
    int ep(int g, int k, int m, int nn) const { return phi[static_cast<size_t>(idx(g, k, m, nn))]; }
    bool is_trivial() const;
};

struct DW3Cocycle {
    FiniteGroup G;
    int N;
    std::vector<int> alpha3; // alpha3(g,h,k) -> (g*n+h)*n+k

    int idx(int g, int h, int k) const {
        int n = G.order();
        return (g * n + h) * n + k;
    }
    int e(int g, int h, int k) const { return alpha3[static_cast<size_t>(idx(g, h, k))]; }
    bool is_trivial() const;
};

struct Violation {
    std::string identity;   // e.g. "alpha-pentagon", "phi-sym-3"
    std::array<int, 5> args; // unused slots are -1
    friend bool operator==(const Violation&, const Violation&) = default;
    friend bool operator<(const Violation& a, const Violation& b) {
        return std::tie(a.identity, a.args) < std::tie(b.identity, b.args);
    }
};

CocycleSystem trivial_system(const FiniteGroup& G, int N);
DW3Cocycle trivial_dw3(const FiniteGroup& G, int N);

// Evaluates the four cocycle conditions over all index tuples; returns every
// violated instance, sorted.
std::vector<Violation> check_conditions(const CocycleSystem& sys);

// Evaluates the cocycle symmetries (3 alpha forms, 4 phi forms, 3 beta
// forms) over all index tuples.
std::vector<Violation> check_symmetries(const CocycleSystem& sys);

// The Dijkgraaf-Witten 3-cocycle condition over all of G^4.
std::vector<Violation> check_dw3(const DW3Cocycle& c);

struct SearchResult {
    std::vector<CocycleSystem> generators;
    int rank = 0;
    int unknowns = 0;
};

enum class EliminationOrder { Forward, Reverse };

// Solves the cocycle conditions (and optionally the symmetries) as a linear
// system over Z/N; returns generators of the solution module. Every
// generator satisfies check_conditions (and check_symmetries when
// requested); tests re-verify this against the direct checker.
SearchResult search_systems(const FiniteGroup& G, int N, bool include_symmetries,
                            EliminationOrder order = EliminationOrder::Forward);

// Cocycle file format: `group <spec>`, `rootorder N`, then exponent lines
// `alpha g k m n e`, `beta g i j k e`, `phi g k m n e` (4D systems) or
// `alpha3 g h k e` (DW 3-cocycles). Unspecified entries default to 0.
CocycleSystem parse_cocycle_system(const std::string& text);
DW3Cocycle parse_dw3_cocycle(const std::string& text);
std::string serialize_cocycle_system(const CocycleSystem& sys);

} // namespace tlft
