#include "tlft/zmod.hpp"

#include <numeric>
#include <stdexcept>

namespace tlft {

namespace {

int mod(long long v, int n) {
    long long r = v % n;
    return static_cast<int>(r < 0 ? r + n : r);
}

// Extended gcd over the integers: returns g and u, v with u*a + v*b = g.
long long ext_gcd(long long a, long long b, long long& u, long long& v) {
    if (b == 0) { u = 1; v = 0; return a; }
    long long u1, v1;
    long long g = ext_gcd(b, a % b, u1, v1);
    u = v1;
    v = u1 - (a / b) * v1;
    return g;
}

struct Echelon {
    int n;
    int cols;
    std::vector<int> pivot_of_col;           // column -> pivot row index or -1
    std::vector<std::vector<int>> rows;      // pivot rows, dense, entries mod n
    std::vector<int> pivot_col;              // per pivot row

    void insert(std::vector<int> r) {
        for (int round = 0; round < 1 << 20; ++round) {
            int c = -1;
            for (int cand = 0; cand < cols; ++cand) {
                int cc = order[static_cast<size_t>(cand)];
                if (r[static_cast<size_t>(cc)] != 0) { c = cc; break; }
            }
            if (c < 0) return; // reduced to zero
            int p = pivot_of_col[static_cast<size_t>(c)];
            if (p < 0) {
                place_pivot(c, std::move(r));
                return;
            }
            auto& P = rows[static_cast<size_t>(p)];
            int g = P[static_cast<size_t>(c)];
            int e = r[static_cast<size_t>(c)];
            if (e % g == 0) {
                long long q = e / g;
                for (int j = 0; j < cols; ++j)
                    r[static_cast<size_t>(j)] =
                        mod(r[static_cast<size_t>(j)] - q * P[static_cast<size_t>(j)], n);
                continue;
            }
            // Bezout update: replace the pivot with the gcd combination and
            // keep eliminating the remainder row.
            long long u, v;
            long long d = ext_gcd(g, e, u, v);
            std::vector<int> newP(static_cast<size_t>(cols)),
                remr(static_cast<size_t>(cols));
            for (int j = 0; j < cols; ++j) {
                long long pj = P[static_cast<size_t>(j)], rj = r[static_cast<size_t>(j)];
                newP[static_cast<size_t>(j)] = mod(u * pj + v * rj, n);
                remr[static_cast<size_t>(j)] = mod((g / d) * rj - (e / d) * pj, n);
            }
            P = newP;
            // Saturate: the annihilator of the new pivot stays in the span.
            int piv = P[static_cast<size_t>(c)];
            int ann = n / std::gcd(piv, n);
            if (ann > 1) {
                std::vector<int> a(static_cast<size_t>(cols));
                for (int j = 0; j < cols; ++j)
                    a[static_cast<size_t>(j)] =
                        mod(static_cast<long long>(ann) * P[static_cast<size_t>(j)], n);
                insert(std::move(a));
            }
            r = std::move(remr);
        }
        throw std::runtime_error("kernel_mod_n: elimination did not terminate");
    }

    void place_pivot(int c, std::vector<int> r) {
        // Normalize the pivot entry to gcd(entry, n) by a unit multiple.
        int e = r[static_cast<size_t>(c)];
        int g = std::gcd(e, n);
        if (e != g) {
            int unit = -1;
            for (int u = 1; u < n; ++u)
                if (std::gcd(u, n) == 1 && mod(static_cast<long long>(u) * e, n) == g) {
                    unit = u;
                    break;
                }
            if (unit < 0) throw std::runtime_error("kernel_mod_n: no normalizing unit");
            for (int j = 0; j < cols; ++j)
                r[static_cast<size_t>(j)] =
                    mod(static_cast<long long>(unit) * r[static_cast<size_t>(j)], n);
        }
        pivot_of_col[static_cast<size_t>(c)] = static_cast<int>(rows.size());
        pivot_col.push_back(c);
        rows.push_back(r);
        int ann = n / g;
        if (ann > 1) {
            std::vector<int> a(static_cast<size_t>(cols));
            for (int j = 0; j < cols; ++j)
                a[static_cast<size_t>(j)] =
                    mod(static_cast<long long>(ann) * r[static_cast<size_t>(j)], n);
            insert(std::move(a));
        }
    }

    std::vector<int> order; // elimination order of columns
};

} // namespace

KernelResult kernel_mod_n(const std::vector<SparseRow>& rows, int unknowns, int n,
                          const std::vector<int>& column_order) {
    if (n < 2) throw std::invalid_argument("kernel_mod_n: modulus must be >= 2");
    Echelon E;
    E.n = n;
    E.cols = unknowns;
    E.pivot_of_col.assign(static_cast<size_t>(unknowns), -1);
    if (column_order.empty()) {
        E.order.resize(static_cast<size_t>(unknowns));
        for (int c = 0; c < unknowns; ++c) E.order[static_cast<size_t>(c)] = c;
    } else {
        if (static_cast<int>(column_order.size()) != unknowns)
            throw std::invalid_argument("kernel_mod_n: bad column order");
        E.order = column_order;
    }

    for (const auto& row : rows) {
        std::vector<int> dense(static_cast<size_t>(unknowns), 0);
        bool nz = false;
        for (auto [c, coef] : row.terms) {
            dense[static_cast<size_t>(c)] = mod(dense[static_cast<size_t>(c)] + coef, n);
            nz = nz || dense[static_cast<size_t>(c)] != 0;
        }
        if (nz) E.insert(std::move(dense));
    }

    KernelResult K;
    K.rank = static_cast<int>(E.rows.size());
    for (size_t i = 0; i < E.rows.size(); ++i)
        K.pivot_divisors.push_back(
            std::gcd(E.rows[i][static_cast<size_t>(E.pivot_col[i])], n));

    // Pivot columns with their elimination positions, ascending.
    std::vector<std::pair<int, int>> pivots_by_pos; // (position, column)
    std::vector<int> pos_of_col(static_cast<size_t>(unknowns), -1);
    for (int pos = 0; pos < unknowns; ++pos) {
        int c = E.order[static_cast<size_t>(pos)];
        pos_of_col[static_cast<size_t>(c)] = pos;
        if (E.pivot_of_col[static_cast<size_t>(c)] >= 0) pivots_by_pos.emplace_back(pos, c);
    }

    // Every pivot row has zeros at all columns earlier in the elimination
    // order than its pivot, so solving bottom-up only reads assigned slots.
    // Only pivots strictly before `limit_pos` are solved; the seeded column
    // and everything after it stay as initialized.
    auto back_substitute = [&](std::vector<int>& x, int limit_pos) {
        for (size_t t = pivots_by_pos.size(); t-- > 0;) {
            auto [pos, c] = pivots_by_pos[t];
            if (pos >= limit_pos) continue;
            const auto& P =
                E.rows[static_cast<size_t>(E.pivot_of_col[static_cast<size_t>(c)])];
            int g = P[static_cast<size_t>(c)]; // a divisor of n by construction
            long long acc = 0;
            for (int j = 0; j < unknowns; ++j) {
                if (j == c) continue;
                acc += static_cast<long long>(P[static_cast<size_t>(j)]) *
                       x[static_cast<size_t>(j)];
            }
            int r = mod(-acc, n);
            if (r % g != 0)
                throw std::runtime_error("kernel_mod_n: inconsistent back-substitution");
            x[static_cast<size_t>(c)] = mod(r / g, n);
        }
    };

    // Free-column generators: seed 1 at the free column, zero after it.
    for (int pos = 0; pos < unknowns; ++pos) {
        int c = E.order[static_cast<size_t>(pos)];
        if (E.pivot_of_col[static_cast<size_t>(c)] >= 0) continue;
        std::vector<int> x(static_cast<size_t>(unknowns), 0);
        x[static_cast<size_t>(c)] = 1;
        back_substitute(x, pos);
        K.basis.push_back(std::move(x));
    }
    // Divisor generators for non-unit pivots: seed n/g at the pivot column.
    for (size_t i = 0; i < E.rows.size(); ++i) {
        int g = K.pivot_divisors[i];
        if (g == 1) continue;
        int c = E.pivot_col[i];
        std::vector<int> x(static_cast<size_t>(unknowns), 0);
        x[static_cast<size_t>(c)] = n / g;
        back_substitute(x, pos_of_col[static_cast<size_t>(c)]);
        K.basis.push_back(std::move(x));
    }
    return K;
}

} // namespace tlft
