#include "tlft/dw3.hpp"

#include <algorithm>
#include <queue>

namespace tlft {

namespace {

// Triangles as edge-index triples (e01, e12, e02) with vertices in O order,
// so the rule reads color(e02) = color(e12) * color(e01) once the two lower
// edges are oriented ascending.
struct TriangleRule {
    int e01, e12, e02;
};

struct Propagator {
    const FiniteGroup& G;
    std::vector<TriangleRule> rules;
    std::vector<std::vector<int>> rules_of_edge;
    int edge_count;

    Propagator(const Triangulation& T, const FiniteGroup& g) : G(g) {
        edge_count = static_cast<int>(T.faces[1].size());
        rules_of_edge.assign(static_cast<size_t>(edge_count), {});
        for (const auto& tri : T.faces[2]) {
            Simplex o = T.osorted(tri);
            TriangleRule r;
            auto eid = [&](int a, int b) {
                Simplex e{std::min(a, b), std::max(a, b)};
                return T.face_id(1, e);
            };
            r.e01 = eid(o[0], o[1]);
            r.e12 = eid(o[1], o[2]);
            r.e02 = eid(o[0], o[2]);
            int id = static_cast<int>(rules.size());
            rules.push_back(r);
            rules_of_edge[static_cast<size_t>(r.e01)].push_back(id);
            rules_of_edge[static_cast<size_t>(r.e12)].push_back(id);
            rules_of_edge[static_cast<size_t>(r.e02)].push_back(id);
        }
    }

    // Returns false on contradiction; `touched` records assignments made.
    bool assign(std::vector<int>& color, int edge, int value, std::vector<int>& touched) {
        if (color[static_cast<size_t>(edge)] >= 0)
            return color[static_cast<size_t>(edge)] == value;
        color[static_cast<size_t>(edge)] = value;
        touched.push_back(edge);
        std::queue<int> q;
        for (int rid : rules_of_edge[static_cast<size_t>(edge)]) q.push(rid);
        while (!q.empty()) {
            const TriangleRule& r = rules[static_cast<size_t>(q.front())];
            q.pop();
            int a = color[static_cast<size_t>(r.e01)];
            int b = color[static_cast<size_t>(r.e12)];
            int c = color[static_cast<size_t>(r.e02)];
            int known = (a >= 0) + (b >= 0) + (c >= 0);
            if (known < 2) continue;
            int edge2 = -1, val2 = -1;
            if (known == 3) {
                if (G.mul(b, a) != c) return false;
                continue;
            }
            if (a < 0) { edge2 = r.e01; val2 = G.mul(G.inv(b), c); }
            else if (b < 0) { edge2 = r.e12; val2 = G.mul(c, G.inv(a)); }
            else { edge2 = r.e02; val2 = G.mul(b, a); }
            if (color[static_cast<size_t>(edge2)] >= 0) {
                if (color[static_cast<size_t>(edge2)] != val2) return false;
                continue;
            }
            color[static_cast<size_t>(edge2)] = val2;
            touched.push_back(edge2);
            for (int rid : rules_of_edge[static_cast<size_t>(edge2)]) q.push(rid);
        }
        return true;
    }
};

// Edges of a spanning tree of the 1-skeleton (BFS from the O-least vertex).
std::vector<int> spanning_tree_edges(const Triangulation& T) {
    std::vector<std::vector<std::pair<int, int>>> adj(static_cast<size_t>(T.vertex_count));
    const auto& edges = T.faces[1];
    for (size_t e = 0; e < edges.size(); ++e) {
        adj[static_cast<size_t>(edges[e][0])].emplace_back(edges[e][1], static_cast<int>(e));
        adj[static_cast<size_t>(edges[e][1])].emplace_back(edges[e][0], static_cast<int>(e));
    }
    std::vector<int> tree;
    std::vector<bool> seen(static_cast<size_t>(T.vertex_count), false);
    int root = T.order_vert[0];
    std::queue<int> q;
    q.push(root);
    seen[static_cast<size_t>(root)] = true;
    while (!q.empty()) {
        int v = q.front();
        q.pop();
        for (auto [w, e] : adj[static_cast<size_t>(v)]) {
            if (seen[static_cast<size_t>(w)]) continue;
            seen[static_cast<size_t>(w)] = true;
            tree.push_back(e);
            q.push(w);
        }
    }
    return tree;
}

void dfs_enumerate(Propagator& P, std::vector<int>& color,
                   const std::function<void(const FlatColoring&)>& visit) {
    int branch = -1;
    for (int e = 0; e < P.edge_count; ++e)
        if (color[static_cast<size_t>(e)] < 0) { branch = e; break; }
    if (branch < 0) {
        visit(color);
        return;
    }
    for (int v = 0; v < P.G.order(); ++v) {
        std::vector<int> touched;
        if (P.assign(color, branch, v, touched))
            dfs_enumerate(P, color, visit);
        for (int e : touched) color[static_cast<size_t>(e)] = -1;
    }
}

} // namespace

void enumerate_flat_colorings(const Triangulation& T, const FiniteGroup& G,
                              const std::function<void(const FlatColoring&)>& visit,
                              bool gauge_fixed) {
    if (T.dim < 2) throw ValidationError("enumerate_flat_colorings: dimension too small");
    Propagator P(T, G);
    std::vector<int> color(static_cast<size_t>(P.edge_count), -1);
    if (gauge_fixed) {
        for (int e : spanning_tree_edges(T)) {
            std::vector<int> touched;
            if (!P.assign(color, e, G.identity(), touched))
                return; // no gauge-fixed coloring extends (cannot happen on valid complexes)
        }
    }
    dfs_enumerate(P, color, visit);
}

long long count_flat_colorings(const Triangulation& T, const FiniteGroup& G) {
    // Gauge-fixed representatives times |G|^{V-1}.
    long long reps = 0;
    enumerate_flat_colorings(T, G, [&](const FlatColoring&) { ++reps; }, true);
    long long total = reps;
    for (int i = 1; i < T.vertex_count; ++i) total *= G.order();
    return total;
}

CycScalar partition_dw3(const Triangulation& T, const DW3Cocycle& cocycle,
                        bool gauge_factorized) {
    if (T.dim != 3) throw ValidationError("partition_dw3: dimension must be 3");
    if (!T.oriented()) throw ValidationError("partition_dw3: complex must be oriented");
    if (!check_dw3(cocycle).empty())
        throw ValidationError("partition_dw3: cocycle fails the 3-cocycle condition");
    const FiniteGroup& G = cocycle.G;
    int N = cocycle.N;

    // Per-tetrahedron spine edges (01),(12),(23) in O order and the sign.
    struct TetRule {
        int e01, e12, e23;
        int eps;
    };
    std::vector<TetRule> tets;
    for (size_t f = 0; f < T.facets.size(); ++f) {
        Simplex o = T.osorted(T.facets[f]);
        auto eid = [&](int a, int b) {
            Simplex e{std::min(a, b), std::max(a, b)};
            return T.face_id(1, e);
        };
        tets.push_back(TetRule{eid(o[0], o[1]), eid(o[1], o[2]), eid(o[2], o[3]),
                               T.orient_sign[f]});
    }

    // Edge colors are stored for the ascending orientation; the spine reads
    // ascending edges directly.
    std::vector<long long> counts(static_cast<size_t>(N), 0);
    auto accumulate = [&](const FlatColoring& c) {
        long long e = 0;
        for (const auto& t : tets) {
            int g = c[static_cast<size_t>(t.e01)];
            int h = c[static_cast<size_t>(t.e12)];
            int k = c[static_cast<size_t>(t.e23)];
            e += t.eps * cocycle.e(g, h, k);
        }
        e %= N;
        if (e < 0) e += N;
        ++counts[static_cast<size_t>(e)];
    };
    enumerate_flat_colorings(T, G, accumulate, gauge_factorized);

    CycScalar sum = CycScalar::zero(N);
    for (int e = 0; e < N; ++e)
        if (counts[static_cast<size_t>(e)])
            sum += CycScalar::root(N, e).scale(Rational(counts[static_cast<size_t>(e)]));
    // Normalization |G|^{-V}; gauge factorization reinstates |G|^{V-1}.
    Rational norm(1);
    if (gauge_factorized) {
        norm = Rational(1, G.order());
    } else {
        for (int i = 0; i < T.vertex_count; ++i) norm = norm * Rational(1, G.order());
    }
    return sum.scale(norm);
}

} // namespace tlft
