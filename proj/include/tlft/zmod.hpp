#pragma once

// Linear algebra over Z/N for the cocycle solver. N need not be prime, so
// elimination pivots on units where possible and falls back to gcd
// combinations (Howell-style) otherwise.

#include <cstdint>
#include <vector>

namespace tlft {

struct SparseRow {
    // (column, coefficient) pairs; coefficients taken mod N.
    std::vector<std::pair<int, int>> terms;
};

struct KernelResult {
    int rank = 0;                        // number of nonzero pivot rows
    std::vector<int> pivot_divisors;     // pivot values (divisors of N)
    std::vector<std::vector<int>> basis; // generators of the solution module
};

// Solves A x = 0 over Z/N. `column_order` permutes elimination columns
// (identity when empty); the kernel is returned in natural coordinates.
KernelResult kernel_mod_n(const std::vector<SparseRow>& rows, int unknowns, int n,
                          const std::vector<int>& column_order = {});

} // namespace tlft
