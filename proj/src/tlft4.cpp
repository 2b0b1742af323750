#include "tlft/tlft4.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <numeric>
#include <queue>
#include <thread>

namespace tlft {

namespace {

// Flat color of the oriented edge a -> b (a == b allowed). Stored colors are
// for the O-ascending orientation.
int flat_color(const Triangulation& T, const FiniteGroup& G, const FlatColoring& c, int a,
               int b) {
    if (a == b) return G.identity();
    Simplex e{std::min(a, b), std::max(a, b)};
    int col = c[static_cast<size_t>(T.face_id(1, e))];
    return T.order_pos[static_cast<size_t>(a)] < T.order_pos[static_cast<size_t>(b)]
               ? col
               : G.inv(col);
}

int edge_id_of(const Triangulation& T, int a, int b) {
    Simplex e{std::min(a, b), std::max(a, b)};
    return T.face_id(1, e);
}

// +1 when the cyclic order (p, q, r) agrees with the positive circulation
// 0, 1, ..., L-1, i.e. starting from p one meets q before r.
int circulation_agreement(int p, int q, int r, int L) {
    int dq = (q - p + L) % L, dr = (r - p + L) % L;
    return dq < dr ? 1 : -1;
}

} // namespace

DualSkeleton build_dual(const Triangulation& T) {
    if (T.dim != 4) throw ValidationError("build_dual: dimension must be 4");
    if (!T.oriented()) throw ValidationError("build_dual: complex must be oriented");
    DualSkeleton D;
    D.facet_count = static_cast<int>(T.facets.size());

    // Rank 4-simplices lexicographically by O positions.
    std::vector<int> by_rank(T.facets.size());
    std::iota(by_rank.begin(), by_rank.end(), 0);
    std::sort(by_rank.begin(), by_rank.end(), [&](int a, int b) {
        return T.olex_less(T.facets[static_cast<size_t>(a)], T.facets[static_cast<size_t>(b)]);
    });
    D.dual_rank.assign(T.facets.size(), 0);
    for (size_t r = 0; r < by_rank.size(); ++r)
        D.dual_rank[static_cast<size_t>(by_rank[r])] = static_cast<int>(r);

    // Dual edges: one per tetrahedron, oriented by rank.
    const auto& tets = T.faces[3];
    D.dual_edges.assign(tets.size(), {});
    for (size_t t = 0; t < tets.size(); ++t) {
        const auto& cof = T.cofaces[3][t];
        if (cof.size() != 2) throw ValidationError("build_dual: tetrahedron not in 2 facets");
        int a = cof[0], b = cof[1];
        if (D.dual_rank[static_cast<size_t>(a)] > D.dual_rank[static_cast<size_t>(b)])
            std::swap(a, b);
        D.dual_edges[t] = {a, b};
    }

    // Dual polygons from the positively oriented link cycles.
    const auto& faces2 = T.faces[2];
    D.poly_facets.assign(faces2.size(), {});
    D.poly_tets.assign(faces2.size(), {});
    for (size_t F = 0; F < faces2.size(); ++F) {
        const Simplex& f = faces2[F];
        std::vector<int> cyc = face_link_cycle(T, f);
        size_t L = cyc.size();
        for (size_t i = 0; i < L; ++i) {
            Simplex facet = f, tet = f;
            facet.push_back(cyc[i]);
            facet.push_back(cyc[(i + 1) % L]);
            std::sort(facet.begin(), facet.end());
            D.poly_facets[F].push_back(T.face_id(4, facet));
            tet.push_back(cyc[(i + 1) % L]);
            std::sort(tet.begin(), tet.end());
            D.poly_tets[F].push_back(T.face_id(3, tet));
        }
    }

    // Dual 3-polytopes: one per edge; faces are the polygons of the 2-faces
    // containing the edge.
    const auto& edges = T.faces[1];
    D.polytope_faces.assign(edges.size(), {});
    for (size_t e = 0; e < edges.size(); ++e)
        for (int F : T.cofaces[1][e]) D.polytope_faces[e].push_back(F);
    return D;
}

ThreeFaceTriangulation triangulate_dual(const Triangulation& T, const DualSkeleton& D,
                                        int seed) {
    ThreeFaceTriangulation Phi;
    Phi.seed = seed;
    Phi.fans.assign(D.poly_facets.size(), {});
    for (size_t F = 0; F < D.poly_facets.size(); ++F) {
        const auto& circ = D.poly_facets[F];
        int L = static_cast<int>(circ.size());
        // Base at the dual-rank-least facet, rotated by the seed.
        int base = 0;
        for (int i = 1; i < L; ++i)
            if (D.dual_rank[static_cast<size_t>(circ[static_cast<size_t>(i)])] <
                D.dual_rank[static_cast<size_t>(circ[static_cast<size_t>(base)])])
                base = i;
        base = (base + seed) % L;
        for (int i = 1; i + 1 < L; ++i)
            Phi.fans[F].push_back({base, (base + i) % L, (base + i + 1) % L});
    }
    Phi.interior_vertices.assign(T.faces[1].size(), 1); // one barycenter per polytope
    return Phi;
}

DoubleLabel state_spin(const Triangulation& T, const FiniteGroup& G, const State4& s,
                       int tail, int head, int tet_index) {
    const Simplex& tet = T.faces[3][static_cast<size_t>(tet_index)];
    Simplex to = T.osorted(tet);
    int v0 = to[0];
    int g = flat_color(T, G, s.edge_color, tail, head);
    int w = flat_color(T, G, s.edge_color, v0, tail);
    int dual = G.conj(w, s.tet_n[static_cast<size_t>(tet_index)]);
    return DoubleLabel{g, dual};
}

bool state_is_admissible(const Triangulation& T, const DualSkeleton& D,
                         const FiniteGroup& G, const State4& s) {
    // Local rule on every face of every tetrahedron, via compose_labels.
    for (size_t t = 0; t < T.faces[3].size(); ++t) {
        Simplex to = T.osorted(T.faces[3][t]);
        for (int a = 0; a < 4; ++a)
            for (int b = a + 1; b < 4; ++b)
                for (int c = b + 1; c < 4; ++c) {
                    DoubleLabel e1 = state_spin(T, G, s, to[static_cast<size_t>(a)],
                                                to[static_cast<size_t>(b)], static_cast<int>(t));
                    DoubleLabel e2 = state_spin(T, G, s, to[static_cast<size_t>(b)],
                                                to[static_cast<size_t>(c)], static_cast<int>(t));
                    DoubleLabel e3 = state_spin(T, G, s, to[static_cast<size_t>(a)],
                                                to[static_cast<size_t>(c)], static_cast<int>(t));
                    auto forced = compose_labels(G, e1, e2);
                    if (!forced || !(*forced == e3)) return false;
                }
    }
    // Dual closure around every polygon.
    for (size_t F = 0; F < D.poly_facets.size(); ++F) {
        const Simplex& f = T.faces[2][F];
        int f0 = T.osorted(f)[0];
        int h = G.identity();
        size_t L = D.poly_facets[F].size();
        for (size_t i = 0; i < L; ++i) {
            int t = D.poly_tets[F][i];
            Simplex to = T.osorted(T.faces[3][static_cast<size_t>(t)]);
            int w = flat_color(T, G, s.edge_color, to[0], f0);
            int x = G.conj(w, s.tet_n[static_cast<size_t>(t)]);
            int from = D.poly_facets[F][i];
            int to_f = D.poly_facets[F][(i + 1) % L];
            if (D.dual_rank[static_cast<size_t>(from)] > D.dual_rank[static_cast<size_t>(to_f)])
                x = G.inv(x);
            h = G.mul(x, h);
        }
        if (h != G.identity()) return false;
    }
    return true;
}

namespace {

struct DualFactor {
    int tet;
    int sign; // +1 traversal along the dual edge, -1 against it
    int w;    // flat(v0_t -> f0), fixed once the flat coloring is fixed
};

struct DualConstraint {
    std::vector<DualFactor> factors; // traversal order around the polygon
};

// Propagates the per-face closure constraints over the tet_n variables for a
// fixed flat coloring.
struct DualPropagator {
    const FiniteGroup& G;
    const Triangulation& T;
    const FlatColoring& flat;
    std::vector<DualConstraint> cons;
    std::vector<std::vector<int>> cons_of_tet;
    long long* budget;
    long long spent = 0;

    DualPropagator(const Triangulation& t, const DualSkeleton& D, const FiniteGroup& g,
                   const FlatColoring& f, long long* b)
        : G(g), T(t), flat(f), budget(b) {
        cons.resize(D.poly_facets.size());
        cons_of_tet.assign(T.faces[3].size(), {});
        for (size_t F = 0; F < D.poly_facets.size(); ++F) {
            int f0 = T.osorted(T.faces[2][F])[0];
            size_t L = D.poly_facets[F].size();
            for (size_t i = 0; i < L; ++i) {
                int tet = D.poly_tets[F][i];
                int from = D.poly_facets[F][i];
                int to = D.poly_facets[F][(i + 1) % L];
                DualFactor df;
                df.tet = tet;
                df.sign = D.dual_rank[static_cast<size_t>(from)] <
                                  D.dual_rank[static_cast<size_t>(to)]
                              ? 1
                              : -1;
                int v0 = T.osorted(T.faces[3][static_cast<size_t>(tet)])[0];
                df.w = flat_color(T, G, flat, v0, f0);
                cons[F].factors.push_back(df);
                cons_of_tet[static_cast<size_t>(tet)].push_back(static_cast<int>(F));
            }
        }
    }

    void charge(long long units) {
        spent += units;
        if (budget && spent > *budget)
            throw BudgetExceeded("enumeration budget exhausted");
    }

    int factor_value(const DualFactor& df, const std::vector<int>& n) const {
        int x = G.conj(df.w, n[static_cast<size_t>(df.tet)]);
        return df.sign > 0 ? x : G.inv(x);
    }

    // Returns false on contradiction. Assigns forced variables transitively.
    bool assign(std::vector<int>& n, int tet, int value, std::vector<int>& touched) {
        if (n[static_cast<size_t>(tet)] >= 0) return n[static_cast<size_t>(tet)] == value;
        n[static_cast<size_t>(tet)] = value;
        touched.push_back(tet);
        std::queue<int> q;
        for (int F : cons_of_tet[static_cast<size_t>(tet)]) q.push(F);
        while (!q.empty()) {
            int F = q.front();
            q.pop();
            const auto& fac = cons[static_cast<size_t>(F)].factors;
            charge(static_cast<long long>(fac.size()));
            int unknown = -1, count = 0;
            for (size_t i = 0; i < fac.size(); ++i)
                if (n[static_cast<size_t>(fac[i].tet)] < 0) {
                    unknown = static_cast<int>(i);
                    ++count;
                    if (count > 1) break;
                }
            if (count > 1) continue;
            if (count == 0) {
                int h = G.identity();
                for (const auto& df : fac) h = G.mul(factor_value(df, n), h);
                if (h != G.identity()) return false;
                continue;
            }
            // Solve A * zeta * B = e for the single unknown factor.
            int A = G.identity(), B = G.identity();
            for (size_t i = 0; i < fac.size(); ++i) {
                if (static_cast<int>(i) == unknown) continue;
                int v = factor_value(fac[static_cast<size_t>(i)], n);
                if (static_cast<int>(i) < unknown) B = G.mul(v, B);
                else A = G.mul(v, A);
            }
            int zeta = G.mul(G.inv(A), G.inv(B));
            const DualFactor& df = fac[static_cast<size_t>(unknown)];
            int x = df.sign > 0 ? zeta : G.inv(zeta);
            int val = G.conj(G.inv(df.w), x);
            if (n[static_cast<size_t>(df.tet)] >= 0) {
                if (n[static_cast<size_t>(df.tet)] != val) return false;
                continue;
            }
            n[static_cast<size_t>(df.tet)] = val;
            touched.push_back(df.tet);
            for (int F2 : cons_of_tet[static_cast<size_t>(df.tet)]) q.push(F2);
        }
        return true;
    }

    void dfs(std::vector<int>& n, const std::function<void(const std::vector<int>&)>& visit) {
        int branch = -1;
        for (size_t t = 0; t < n.size(); ++t)
            if (n[t] < 0) { branch = static_cast<int>(t); break; }
        if (branch < 0) {
            visit(n);
            return;
        }
        for (int v = 0; v < G.order(); ++v) {
            std::vector<int> touched;
            charge(1);
            if (assign(n, branch, v, touched)) dfs(n, visit);
            for (int t : touched) n[static_cast<size_t>(t)] = -1;
        }
    }
};

} // namespace

void enumerate_states(const Triangulation& T, const DualSkeleton& D, const FiniteGroup& G,
                      const std::function<void(const State4&)>& visit, long long* budget) {
    enumerate_flat_colorings(T, G, [&](const FlatColoring& flat) {
        DualPropagator P(T, D, G, flat, budget);
        std::vector<int> n(T.faces[3].size(), -1);
        State4 s;
        s.edge_color = flat;
        P.dfs(n, [&](const std::vector<int>& filled) {
            s.tet_n = filled;
            visit(s);
        });
        if (budget) *budget -= P.spent;
    });
}

long long count_states(const Triangulation& T, const DualSkeleton& D, const FiniteGroup& G) {
    long long c = 0;
    enumerate_states(T, D, G, [&](const State4&) { ++c; });
    return c;
}

namespace {

// State-independent weight bookkeeping for one complex + fan choice.
struct WeightContext {
    struct TetCtx {
        int e01, e12, e23; // spine edge ids in O order
        int eps;
    };
    struct FaceCtx {
        int f0;              // O-least vertex of the face
        int e01, e12;        // edge ids (f0,f1), (f1,f2)
        std::vector<int> circ_tets;   // traversal order
        std::vector<int> circ_sign;   // +1 with the dual edge, -1 against
        std::vector<int> circ_v0;     // O-least vertex of each tet
        std::vector<std::array<int, 3>> fan_sorted; // positions sorted by dual rank
        std::vector<int> fan_eps;                   // +1 when (P,Q,R) runs against the circulation
        std::array<int, 3> edge_ids;  // (f0,f1), (f0,f2), (f1,f2)
        std::array<int, 3> eta;       // per edge of the face
        std::array<int, 3> reading;   // 0: conjugate by f0-path, 1: by f1-path
    };
    std::vector<TetCtx> tets;
    std::vector<FaceCtx> faces;
};

WeightContext build_context(const Triangulation& T, const DualSkeleton& D,
                            const ThreeFaceTriangulation& Phi) {
    WeightContext W;
    for (size_t t = 0; t < T.faces[3].size(); ++t) {
        Simplex to = T.osorted(T.faces[3][t]);
        WeightContext::TetCtx tc;
        tc.e01 = edge_id_of(T, to[0], to[1]);
        tc.e12 = edge_id_of(T, to[1], to[2]);
        tc.e23 = edge_id_of(T, to[2], to[3]);
        // eps: the sign of the facet whose (tet-sorted, v-last) tuple is
        // positively oriented.
        const auto& cof = T.cofaces[3][t];
        int eps = 0;
        for (int f : cof) {
            const Simplex& facet = T.facets[static_cast<size_t>(f)];
            int extra = -1;
            for (int v : facet)
                if (!std::binary_search(T.faces[3][t].begin(), T.faces[3][t].end(), v))
                    extra = v;
            std::vector<int> arranged = to;
            arranged.push_back(extra);
            int par = permutation_parity(T.osorted(facet), arranged);
            if (par * T.orient_sign[static_cast<size_t>(f)] > 0) {
                if (eps != 0) throw ValidationError("weight context: both cofacets positive");
                eps = T.orient_sign[static_cast<size_t>(f)];
            }
        }
        if (eps == 0) throw ValidationError("weight context: no positive cofacet");
        tc.eps = eps;
        W.tets.push_back(tc);
    }
    for (size_t F = 0; F < T.faces[2].size(); ++F) {
        Simplex fo = T.osorted(T.faces[2][F]);
        WeightContext::FaceCtx fc;
        fc.f0 = fo[0];
        fc.e01 = edge_id_of(T, fo[0], fo[1]);
        fc.e12 = edge_id_of(T, fo[1], fo[2]);
        const auto& circ = D.poly_facets[F];
        int L = static_cast<int>(circ.size());
        for (int i = 0; i < L; ++i) {
            int tet = D.poly_tets[F][static_cast<size_t>(i)];
            fc.circ_tets.push_back(tet);
            int from = circ[static_cast<size_t>(i)], to = circ[static_cast<size_t>((i + 1) % L)];
            fc.circ_sign.push_back(D.dual_rank[static_cast<size_t>(from)] <
                                           D.dual_rank[static_cast<size_t>(to)]
                                       ? 1
                                       : -1);
            fc.circ_v0.push_back(T.osorted(T.faces[3][static_cast<size_t>(tet)])[0]);
        }
        for (const auto& tri : Phi.fans[F]) {
            std::array<int, 3> pos = tri;
            std::sort(pos.begin(), pos.end(), [&](int a, int b) {
                return D.dual_rank[static_cast<size_t>(circ[static_cast<size_t>(a)])] <
                       D.dual_rank[static_cast<size_t>(circ[static_cast<size_t>(b)])];
            });
            fc.fan_sorted.push_back(pos);
            fc.fan_eps.push_back(-circulation_agreement(pos[0], pos[1], pos[2], L));
        }
        fc.edge_ids = {edge_id_of(T, fo[0], fo[1]), edge_id_of(T, fo[0], fo[2]),
                       edge_id_of(T, fo[1], fo[2])};
        fc.eta = {1, -1, 1}; // (-1)^{index of the omitted vertex}
        fc.reading = {0, 0, 1};
        W.faces.push_back(fc);
    }
    return W;
}

// Per-state, per-face transport data in the f0 reading. `ws` caches the
// conjugators flat(v0_t -> f0) for the current flat coloring.
struct FaceTransports {
    std::vector<int> pre; // pre[i] = transport from position 0 to position i
    int closure;          // transport all the way around (identity on states)
};

std::vector<int> face_conjugators(const FiniteGroup& G, const Triangulation& T,
                                  const WeightContext::FaceCtx& fc, const FlatColoring& flat) {
    std::vector<int> ws(fc.circ_tets.size());
    for (size_t i = 0; i < ws.size(); ++i)
        ws[i] = flat_color(T, G, flat, fc.circ_v0[i], fc.f0);
    return ws;
}

FaceTransports face_transports(const FiniteGroup& G, const WeightContext::FaceCtx& fc,
                               const std::vector<int>& ws, const State4& s) {
    FaceTransports ft;
    size_t L = fc.circ_tets.size();
    ft.pre.resize(L + 1);
    ft.pre[0] = G.identity();
    for (size_t i = 0; i < L; ++i) {
        int tet = fc.circ_tets[i];
        int x = G.conj(ws[i], s.tet_n[static_cast<size_t>(tet)]);
        if (fc.circ_sign[i] < 0) x = G.inv(x);
        ft.pre[i + 1] = G.mul(x, ft.pre[i]);
    }
    ft.closure = ft.pre[L];
    return ft;
}

// Directed transport between circulation positions in the f0 reading.
int side_color(const FiniteGroup& G, const FaceTransports& ft, int from, int to) {
    return G.mul(ft.pre[static_cast<size_t>(to)], G.inv(ft.pre[static_cast<size_t>(from)]));
}

// Accumulates the exponent contribution of one state; returns mod N.
struct ExponentAccumulator {
    const FiniteGroup& G;
    const CocycleSystem& sys;
    const Triangulation& T;
    const WeightContext& W;
    long long* budget;
    long long spent = 0;
    std::vector<std::vector<int>> face_ws; // per face: cached conjugators

    void prepare(const FlatColoring& flat) {
        face_ws.clear();
        face_ws.reserve(W.faces.size());
        for (const auto& fc : W.faces) face_ws.push_back(face_conjugators(G, T, fc, flat));
    }

    void charge(long long u) {
        spent += u;
        if (budget && spent > *budget) throw BudgetExceeded("evaluation budget exhausted");
    }

    int state_exponent(const State4& s) {
        long long e = 0;
        // Tetrahedra.
        for (size_t t = 0; t < W.tets.size(); ++t) {
            const auto& tc = W.tets[t];
            int m = s.edge_color[static_cast<size_t>(tc.e01)];
            int k = s.edge_color[static_cast<size_t>(tc.e12)];
            int g = s.edge_color[static_cast<size_t>(tc.e23)];
            int nn = s.tet_n[t];
            e += tc.eps * sys.ea(g, k, m, nn);
        }
        charge(static_cast<long long>(W.tets.size()));
        // Faces and edge-beta terms.
        for (size_t F = 0; F < W.faces.size(); ++F) {
            const auto& fc = W.faces[F];
            FaceTransports ft = face_transports(G, fc, face_ws[F], s);
            if (ft.closure != G.identity())
                throw ValidationError("state does not close around a dual polygon");
            int gF = s.edge_color[static_cast<size_t>(fc.e12)];
            int kF = s.edge_color[static_cast<size_t>(fc.e01)];
            int kcol = kF;
            for (size_t i = 0; i < fc.fan_sorted.size(); ++i) {
                auto [pP, pQ, pR] = fc.fan_sorted[i];
                int epsT = fc.fan_eps[i];
                int mQR = side_color(G, ft, pQ, pR);
                int lPQ = side_color(G, ft, pP, pQ);
                e += epsT * sys.ep(gF, kF, mQR, lPQ);
                // One cone tetrahedron per polytope containing this polygon.
                int kPR = side_color(G, ft, pP, pR);
                for (int which = 0; which < 3; ++which) {
                    int ge = s.edge_color[static_cast<size_t>(fc.edge_ids[static_cast<size_t>(which)])];
                    int j = mQR, kk = kPR, l = lPQ;
                    if (fc.reading[static_cast<size_t>(which)] == 1) {
                        j = G.conj(kcol, j);
                        kk = G.conj(kcol, kk);
                        l = G.conj(kcol, l);
                    }
                    e += epsT * fc.eta[static_cast<size_t>(which)] * sys.eb(ge, j, kk, l);
                }
            }
            charge(static_cast<long long>(fc.circ_tets.size() + 4 * fc.fan_sorted.size()));
        }
        int N = sys.N;
        int r = static_cast<int>(e % N);
        return r < 0 ? r + N : r;
    }
};

Rational pow_rational(const Rational& base, int e) {
    Rational r(1);
    for (int i = 0; i < e; ++i) r *= base;
    return r;
}

} // namespace

CycScalar weight_tet(const Triangulation& T, const CocycleSystem& sys, const State4& s,
                     int tet_index) {
    Simplex to = T.osorted(T.faces[3][static_cast<size_t>(tet_index)]);
    const auto& cof = T.cofaces[3][static_cast<size_t>(tet_index)];
    int eps = 0;
    for (int f : cof) {
        const Simplex& facet = T.facets[static_cast<size_t>(f)];
        int extra = -1;
        for (int v : facet)
            if (!std::binary_search(T.faces[3][static_cast<size_t>(tet_index)].begin(),
                                    T.faces[3][static_cast<size_t>(tet_index)].end(), v))
                extra = v;
        std::vector<int> arranged = to;
        arranged.push_back(extra);
        if (permutation_parity(T.osorted(facet), arranged) *
                T.orient_sign[static_cast<size_t>(f)] >
            0)
            eps = T.orient_sign[static_cast<size_t>(f)];
    }
    const FiniteGroup& G = sys.G;
    int m = flat_color(T, G, s.edge_color, to[0], to[1]);
    int k = flat_color(T, G, s.edge_color, to[1], to[2]);
    int g = flat_color(T, G, s.edge_color, to[2], to[3]);
    int nn = s.tet_n[static_cast<size_t>(tet_index)];
    int e = eps * sys.ea(g, k, m, nn);
    return CycScalar::root(sys.N, e);
}

CycScalar weight_face(const Triangulation& T, const DualSkeleton& D,
                      const ThreeFaceTriangulation& Phi, const CocycleSystem& sys,
                      const State4& s, int face_index) {
    WeightContext W = build_context(T, D, Phi);
    const auto& fc = W.faces[static_cast<size_t>(face_index)];
    const FiniteGroup& G = sys.G;
    FaceTransports ft = face_transports(G, fc, face_conjugators(G, T, fc, s.edge_color), s);
    int gF = s.edge_color[static_cast<size_t>(fc.e12)];
    int kF = s.edge_color[static_cast<size_t>(fc.e01)];
    long long e = 0;
    for (size_t i = 0; i < fc.fan_sorted.size(); ++i) {
        auto [pP, pQ, pR] = fc.fan_sorted[i];
        e += fc.fan_eps[i] * sys.ep(gF, kF, side_color(G, ft, pQ, pR), side_color(G, ft, pP, pQ));
    }
    int r = static_cast<int>(((e % sys.N) + sys.N) % sys.N);
    return CycScalar::root(sys.N, r);
}

CycScalar weight_edge(const Triangulation& T, const DualSkeleton& D,
                      const ThreeFaceTriangulation& Phi, const CocycleSystem& sys,
                      const State4& s, int edge_index) {
    WeightContext W = build_context(T, D, Phi);
    const FiniteGroup& G = sys.G;

    // Boundary vertices of the polytope are the facets containing the edge;
    // boundary sides are polygon edges and fan diagonals. Interior colorings
    // assign a dual part to each cone edge, propagated by flatness, with the
    // beta product read off the fan-triangle bases.
    struct Side {
        int u, v;  // facet ids, rank(u) < rank(v)
        int color; // dual part in the edge reading
    };
    std::vector<Side> sides;
    long long beta_exp = 0;

    for (int F : D.polytope_faces[static_cast<size_t>(edge_index)]) {
        const auto& fc = W.faces[static_cast<size_t>(F)];
        FaceTransports ft = face_transports(G, fc, face_conjugators(G, T, fc, s.edge_color), s);
        // Which edge of the face is ours?
        int which = -1;
        for (int w = 0; w < 3; ++w)
            if (fc.edge_ids[static_cast<size_t>(w)] == edge_index) which = w;
        if (which < 0) throw ValidationError("weight_edge: face does not contain edge");
        int kcol = s.edge_color[static_cast<size_t>(fc.e01)];
        auto reading = [&](int c) {
            return fc.reading[static_cast<size_t>(which)] == 1 ? G.conj(kcol, c) : c;
        };
        const auto& circ = D.poly_facets[static_cast<size_t>(F)];
        int L = static_cast<int>(circ.size());
        auto add_side = [&](int pa, int pb) {
            int fa = circ[static_cast<size_t>(pa)], fb = circ[static_cast<size_t>(pb)];
            int from = pa, to = pb;
            if (D.dual_rank[static_cast<size_t>(fa)] > D.dual_rank[static_cast<size_t>(fb)]) {
                std::swap(fa, fb);
                std::swap(from, to);
            }
            sides.push_back(Side{fa, fb, reading(side_color(G, ft, from, to))});
        };
        for (int i = 0; i < L; ++i) add_side(i, (i + 1) % L);
        for (size_t i = 0; i < fc.fan_sorted.size(); ++i) {
            auto [pP, pQ, pR] = fc.fan_sorted[i];
            if ((pR - pQ + L) % L != 1 && (pQ - pR + L) % L != 1) add_side(pQ, pR);
            if ((pQ - pP + L) % L != 1 && (pP - pQ + L) % L != 1) add_side(pP, pQ);
            if ((pR - pP + L) % L != 1 && (pP - pR + L) % L != 1) add_side(pP, pR);
            int ge = s.edge_color[static_cast<size_t>(edge_index)];
            int j = reading(side_color(G, ft, pQ, pR));
            int kk = reading(side_color(G, ft, pP, pR));
            int l = reading(side_color(G, ft, pP, pQ));
            beta_exp += fc.fan_eps[i] * fc.eta[static_cast<size_t>(which)] * sys.eb(ge, j, kk, l);
        }
    }

    // Interior sum: colorings of cone edges consistent with flatness over
    // every boundary side. The boundary sphere is connected, so the count is
    // |G| per interior vertex; every coloring leaves the beta product alone
    // because the fan-triangle bases avoid cone edges.
    std::map<int, int> cone; // facet -> dual part of (facet -> barycenter)
    long long interior = 0;
    std::vector<int> facets_of;
    for (const auto& sd : sides) {
        facets_of.push_back(sd.u);
        facets_of.push_back(sd.v);
    }
    std::sort(facets_of.begin(), facets_of.end());
    facets_of.erase(std::unique(facets_of.begin(), facets_of.end()), facets_of.end());
    for (int c0 = 0; c0 < G.order(); ++c0) {
        cone.clear();
        cone[facets_of[0]] = c0;
        bool changed = true, ok = true;
        while (changed && ok) {
            changed = false;
            for (const auto& sd : sides) {
                auto iu = cone.find(sd.u), iv = cone.find(sd.v);
                if (iu != cone.end() && iv == cone.end()) {
                    // x(u->c) = x(v->c) * x(u->v)
                    cone[sd.v] = G.mul(iu->second, G.inv(sd.color));
                    changed = true;
                } else if (iu == cone.end() && iv != cone.end()) {
                    cone[sd.u] = G.mul(iv->second, sd.color);
                    changed = true;
                } else if (iu != cone.end() && iv != cone.end()) {
                    if (iu->second != G.mul(iv->second, sd.color)) { ok = false; break; }
                }
            }
        }
        if (ok && static_cast<int>(cone.size()) == static_cast<int>(facets_of.size()))
            ++interior;
    }

    int N = sys.N;
    int r = static_cast<int>(((beta_exp % N) + N) % N);
    CycScalar val = CycScalar::root(N, r).scale(Rational(interior));
    int a_p = Phi.interior_vertices[static_cast<size_t>(edge_index)];
    return val.scale(pow_rational(Rational(1, G.order()), 2 * a_p));
}

Partition4Result partition_4d(const Triangulation& T, const CocycleSystem& sys,
                              const Partition4Options& opt) {
    if (T.dim != 4) throw ValidationError("partition_4d: dimension must be 4");
    if (!T.oriented()) throw ValidationError("partition_4d: complex must be oriented");
    if (!check_conditions(sys).empty())
        throw ValidationError("partition_4d: cocycle system fails the cocycle conditions");
    if (!check_symmetries(sys).empty())
        throw ValidationError("partition_4d: cocycle system fails the cocycle symmetries");

    const FiniteGroup& G = sys.G;
    DualSkeleton D = build_dual(T);
    ThreeFaceTriangulation Phi = triangulate_dual(T, D, opt.dual_seed);
    WeightContext W = build_context(T, D, Phi);

    // Collect flat colorings up front, then split across threads.
    std::vector<FlatColoring> flats;
    enumerate_flat_colorings(T, G, [&](const FlatColoring& f) { flats.push_back(f); });

    int N = sys.N;
    int nthreads = std::max(1, opt.threads);
    std::vector<std::vector<long long>> counts(
        flats.size(), std::vector<long long>()); // per flat: exponent histogram
    std::atomic<long long> budget_used{0};
    std::atomic<bool> failed{false};
    bool fail_is_budget = false;
    std::string fail_msg;
    std::mutex fail_mu;

    auto work = [&](int tid) {
        try {
            for (size_t fi = static_cast<size_t>(tid); fi < flats.size();
                 fi += static_cast<size_t>(nthreads)) {
                if (failed.load()) return;
                std::vector<long long> hist(static_cast<size_t>(N), 0);
                long long local_budget = opt.budget - budget_used.load();
                if (local_budget <= 0) throw BudgetExceeded("evaluation budget exhausted");
                DualPropagator P(T, D, G, flats[fi], &local_budget);
                ExponentAccumulator acc{G, sys, T, W, &local_budget, 0, {}};
                acc.prepare(flats[fi]);
                std::vector<int> n(T.faces[3].size(), -1);
                State4 s;
                s.edge_color = flats[fi];
                P.dfs(n, [&](const std::vector<int>& filled) {
                    s.tet_n = filled;
                    ++hist[static_cast<size_t>(acc.state_exponent(s))];
                });
                budget_used.fetch_add(P.spent + acc.spent);
                counts[fi] = std::move(hist);
            }
        } catch (const BudgetExceeded& ex) {
            std::lock_guard<std::mutex> lock(fail_mu);
            failed.store(true);
            if (fail_msg.empty()) { fail_msg = ex.what(); fail_is_budget = true; }
        } catch (const std::exception& ex) {
            std::lock_guard<std::mutex> lock(fail_mu);
            failed.store(true);
            if (fail_msg.empty()) fail_msg = ex.what();
        }
    };
    if (nthreads == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < nthreads; ++t) pool.emplace_back(work, t);
        for (auto& th : pool) th.join();
    }
    if (failed.load()) {
        if (fail_is_budget) throw BudgetExceeded(fail_msg);
        throw ValidationError(fail_msg);
    }

    std::vector<long long> total(static_cast<size_t>(N), 0);
    long long states = 0;
    for (const auto& h : counts)
        for (size_t e = 0; e < h.size(); ++e) {
            total[e] += h[e];
            states += h[e];
        }

    CycScalar sum = CycScalar::zero(N);
    for (int e = 0; e < N; ++e)
        if (total[static_cast<size_t>(e)])
            sum += CycScalar::root(N, e).scale(Rational(total[static_cast<size_t>(e)]));

    // Global normalization |G|^{-(V+P)}: the DW-style 1/|G| per primal vertex
    // and per dual vertex; the per-edge |G|^{a_p - 2 a_p} factors of the edge
    // weights cancel against interior sums of size |G|^{a_p}.
    int V = T.vertex_count;
    int P4 = static_cast<int>(T.facets.size());
    Partition4Result res{sum.scale(pow_rational(Rational(1, G.order()), V + P4)), states};
    return res;
}

} // namespace tlft
