#include "tlft/statesum2d.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <sstream>

namespace tlft {

std::vector<std::vector<Rational>> bilinear_form(
    const std::vector<std::vector<std::vector<Rational>>>& C) {
    size_t n = C.size();
    std::vector<std::vector<Rational>> g(n, std::vector<Rational>(n, Rational(0)));
    for (size_t x = 0; x < n; ++x)
        for (size_t y = 0; y < n; ++y)
            for (size_t u = 0; u < n; ++u)
                for (size_t v = 0; v < n; ++v)
                    g[x][y] += C[u][x][v] * C[v][y][u];
    return g;
}

std::vector<std::vector<Rational>> invert_matrix(std::vector<std::vector<Rational>> m) {
    size_t n = m.size();
    std::vector<std::vector<Rational>> inv(n, std::vector<Rational>(n, Rational(0)));
    for (size_t i = 0; i < n; ++i) inv[i][i] = Rational(1);
    for (size_t col = 0; col < n; ++col) {
        size_t piv = col;
        while (piv < n && m[piv][col].is_zero()) ++piv;
        if (piv == n) return {}; // singular
        std::swap(m[piv], m[col]);
        std::swap(inv[piv], inv[col]);
        Rational d = m[col][col].inverse();
        for (size_t j = 0; j < n; ++j) {
            m[col][j] *= d;
            inv[col][j] *= d;
        }
        for (size_t r = 0; r < n; ++r) {
            if (r == col || m[r][col].is_zero()) continue;
            Rational f = m[r][col];
            for (size_t j = 0; j < n; ++j) {
                m[r][j] -= f * m[col][j];
                inv[r][j] -= f * inv[col][j];
            }
        }
    }
    return inv;
}

AlgebraData make_algebra(int n, std::vector<std::vector<std::vector<Rational>>> structure) {
    AlgebraData A;
    A.n = n;
    A.structure = std::move(structure);
    // Associativity: sum_j C_ab^j C_jc^d == sum_i C_ai^d C_bc^i.
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c)
                for (int d = 0; d < n; ++d) {
                    Rational lhs(0), rhs(0);
                    for (int j = 0; j < n; ++j) {
                        lhs += A.C(a, b, j) * A.C(j, c, d);
                        rhs += A.C(a, j, d) * A.C(b, c, j);
                    }
                    if (lhs != rhs)
                        throw ValidationError("algebra structure constants are not associative");
                }
    A.g = bilinear_form(A.structure);
    A.g_inv = invert_matrix(A.g);
    A.semisimple = !A.g_inv.empty();
    A.lowered.assign(static_cast<size_t>(n),
                     std::vector<std::vector<Rational>>(
                         static_cast<size_t>(n),
                         std::vector<Rational>(static_cast<size_t>(n), Rational(0))));
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            for (int u = 0; u < n; ++u) {
                Rational s(0);
                for (int z = 0; z < n; ++z)
                    s += A.g[static_cast<size_t>(u)][static_cast<size_t>(z)] * A.C(x, y, z);
                A.lowered[static_cast<size_t>(x)][static_cast<size_t>(y)][static_cast<size_t>(u)] = s;
            }
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            for (int z = 0; z < n; ++z) {
                const Rational& a = A.lowered[static_cast<size_t>(x)][static_cast<size_t>(y)][static_cast<size_t>(z)];
                const Rational& b = A.lowered[static_cast<size_t>(y)][static_cast<size_t>(z)][static_cast<size_t>(x)];
                if (a != b) throw ValidationError("lowered constants are not cyclically symmetric");
            }
    return A;
}

AlgebraData group_algebra_cyclic(int m) {
    std::vector<std::vector<std::vector<Rational>>> C(
        static_cast<size_t>(m),
        std::vector<std::vector<Rational>>(static_cast<size_t>(m),
                                           std::vector<Rational>(static_cast<size_t>(m),
                                                                 Rational(0))));
    for (int x = 0; x < m; ++x)
        for (int y = 0; y < m; ++y)
            C[static_cast<size_t>(x)][static_cast<size_t>(y)][static_cast<size_t>((x + y) % m)] =
                Rational(1);
    return make_algebra(m, std::move(C));
}

Rational partition_2d(const Triangulation& T, const AlgebraData& A) {
    if (T.dim != 2) throw ValidationError("partition_2d: dimension must be 2");
    if (!T.oriented()) throw ValidationError("partition_2d: surface must be oriented");
    if (!A.semisimple) throw ValidationError("partition_2d: bilinear form is singular");
    int n = A.n;

    // Frontier dynamic programming over faces in lex order. A state maps each
    // open edge (one side labeled) to its label; closing an edge contracts
    // with g^{uv}.
    const auto& edges = T.faces[1];
    auto edge_id = [&](int a, int b) {
        Simplex e{std::min(a, b), std::max(a, b)};
        return T.face_id(1, e);
    };

    std::map<std::vector<int>, Rational> frontier;
    // Open-slot labels keyed by edge id; -1 marks "not open".
    std::vector<int> init(edges.size(), -1);
    frontier.emplace(init, Rational(1));

    // Process faces in an adjacency-greedy order to keep the frontier small:
    // repeatedly take the face that closes the most currently open edges.
    std::vector<size_t> face_order;
    {
        std::vector<bool> done(T.facets.size(), false);
        std::vector<int> open_sides(edges.size(), 0);
        for (size_t step = 0; step < T.facets.size(); ++step) {
            size_t best = T.facets.size();
            int best_closing = -1;
            for (size_t f = 0; f < T.facets.size(); ++f) {
                if (done[f]) continue;
                int closing = 0;
                for (auto& e : {std::pair{T.facets[f][0], T.facets[f][1]},
                                std::pair{T.facets[f][1], T.facets[f][2]},
                                std::pair{T.facets[f][0], T.facets[f][2]}})
                    if (open_sides[static_cast<size_t>(edge_id(e.first, e.second))] == 1)
                        ++closing;
                if (closing > best_closing) {
                    best_closing = closing;
                    best = f;
                }
            }
            done[best] = true;
            face_order.push_back(best);
            for (auto& e : {std::pair{T.facets[best][0], T.facets[best][1]},
                            std::pair{T.facets[best][1], T.facets[best][2]},
                            std::pair{T.facets[best][0], T.facets[best][2]}})
                ++open_sides[static_cast<size_t>(edge_id(e.first, e.second))];
        }
    }

    for (size_t f : face_order) {
        // Face boundary cycle against the global orientation, starting at the
        // O-least vertex: +1 faces read (v0 v1), (v1 v2), (v2 v0).
        Simplex fo = T.osorted(T.facets[f]);
        int sgn = T.orient_sign[f];
        std::array<int, 3> cyc_edges;
        if (sgn > 0) {
            cyc_edges = {edge_id(fo[0], fo[1]), edge_id(fo[1], fo[2]), edge_id(fo[0], fo[2])};
        } else {
            cyc_edges = {edge_id(fo[0], fo[2]), edge_id(fo[1], fo[2]), edge_id(fo[0], fo[1])};
        }
        std::map<std::vector<int>, Rational> next;
        for (const auto& [state, weight] : frontier) {
            std::array<int, 3> lab{};
            for (lab[0] = 0; lab[0] < n; ++lab[0])
                for (lab[1] = 0; lab[1] < n; ++lab[1])
                    for (lab[2] = 0; lab[2] < n; ++lab[2]) {
                        Rational w = weight *
                                     A.lowered[static_cast<size_t>(lab[0])]
                                              [static_cast<size_t>(lab[1])]
                                              [static_cast<size_t>(lab[2])];
                        if (w.is_zero()) continue;
                        std::vector<int> st = state;
                        bool dead = false;
                        for (int s = 0; s < 3 && !dead; ++s) {
                            int eid = cyc_edges[static_cast<size_t>(s)];
                            int other = st[static_cast<size_t>(eid)];
                            if (other >= 0) {
                                const Rational& gf =
                                    A.g_inv[static_cast<size_t>(other)][static_cast<size_t>(lab[static_cast<size_t>(s)])];
                                if (gf.is_zero()) { dead = true; break; }
                                w *= gf;
                                st[static_cast<size_t>(eid)] = -1;
                            } else {
                                st[static_cast<size_t>(eid)] = lab[static_cast<size_t>(s)];
                            }
                        }
                        if (dead) continue;
                        auto [it, fresh] = next.emplace(std::move(st), w);
                        if (!fresh) it->second += w;
                    }
        }
        frontier = std::move(next);
    }
    // All edges closed on a closed surface.
    Rational out(0);
    for (const auto& [state, weight] : frontier) {
        for (int s : state)
            if (s >= 0) throw ValidationError("partition_2d: unclosed edge");
        out += weight;
    }
    return out;
}

AlgebraData parse_algebra(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int n = -1;
    std::vector<std::vector<std::vector<Rational>>> C;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        std::istringstream ls(line);
        std::string tok;
        if (!(ls >> tok)) continue;
        if (tok == "dim") {
            if (!(ls >> n) || n <= 0) throw ValidationError("algebra file: bad dim line");
            C.assign(static_cast<size_t>(n),
                     std::vector<std::vector<Rational>>(
                         static_cast<size_t>(n),
                         std::vector<Rational>(static_cast<size_t>(n), Rational(0))));
        } else if (tok == "C") {
            if (n < 0) throw ValidationError("algebra file: C line before dim");
            int x, y, z;
            std::string val;
            if (!(ls >> x >> y >> z >> val)) throw ValidationError("algebra file: bad C line");
            if (x < 0 || y < 0 || z < 0 || x >= n || y >= n || z >= n)
                throw ValidationError("algebra file: index out of range");
            C[static_cast<size_t>(x)][static_cast<size_t>(y)][static_cast<size_t>(z)] =
                Rational::from_string(val);
        } else {
            throw ValidationError("algebra file: unknown directive " + tok);
        }
    }
    if (n < 0) throw ValidationError("algebra file: missing dim");
    return make_algebra(n, std::move(C));
}

std::string serialize_algebra(const AlgebraData& A) {
    std::ostringstream os;
    os << "dim " << A.n << "\n";
    for (int x = 0; x < A.n; ++x)
        for (int y = 0; y < A.n; ++y)
            for (int z = 0; z < A.n; ++z)
                if (!A.C(x, y, z).is_zero())
                    os << "C " << x << " " << y << " " << z << " " << A.C(x, y, z).to_string()
                       << "\n";
    return os.str();
}

} // namespace tlft
