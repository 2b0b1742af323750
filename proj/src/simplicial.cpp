#include "tlft/simplicial.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <sstream>

namespace tlft {

namespace {

void subsets_rec(const Simplex& s, size_t start, int need, Simplex& cur,
                 std::vector<Simplex>& out) {
    if (need == 0) { out.push_back(cur); return; }
    for (size_t i = start; i + static_cast<size_t>(need) <= s.size(); ++i) {
        cur.push_back(s[i]);
        subsets_rec(s, i + 1, need - 1, cur, out);
        cur.pop_back();
    }
}

std::vector<Simplex> subsets_of_size(const Simplex& s, int k) {
    std::vector<Simplex> out;
    Simplex cur;
    subsets_rec(s, 0, k, cur, out);
    return out;
}

} // namespace

int Triangulation::face_id(int k, const Simplex& s) const {
    auto it = face_index[static_cast<size_t>(k)].find(s);
    if (it == face_index[static_cast<size_t>(k)].end())
        throw ValidationError("simplex not in complex");
    return it->second;
}

bool Triangulation::has_face(int k, const Simplex& s) const {
    if (k < 0 || k > dim) return false;
    return face_index[static_cast<size_t>(k)].count(s) > 0;
}

Simplex Triangulation::osorted(const Simplex& s) const {
    Simplex r = s;
    std::sort(r.begin(), r.end(),
              [&](int a, int b) { return order_pos[static_cast<size_t>(a)] < order_pos[static_cast<size_t>(b)]; });
    return r;
}

bool Triangulation::olex_less(const Simplex& a, const Simplex& b) const {
    Simplex x = osorted(a), y = osorted(b);
    for (size_t i = 0; i < std::min(x.size(), y.size()); ++i) {
        int pa = order_pos[static_cast<size_t>(x[i])], pb = order_pos[static_cast<size_t>(y[i])];
        if (pa != pb) return pa < pb;
    }
    return x.size() < y.size();
}

Triangulation make_triangulation(int dim, int vertex_count, std::vector<Simplex> facets,
                                 std::vector<int> order, bool require_closed) {
    if (dim < 0 || dim > 4) throw ValidationError("dimension outside 0..4");
    if (vertex_count <= 0) throw ValidationError("no vertices");

    Triangulation T;
    T.dim = dim;
    T.vertex_count = vertex_count;
    if (order.empty()) {
        T.order_vert.resize(static_cast<size_t>(vertex_count));
        std::iota(T.order_vert.begin(), T.order_vert.end(), 0);
    } else {
        if (static_cast<int>(order.size()) != vertex_count)
            throw ValidationError("order is not a permutation of the vertex set");
        std::vector<bool> seen(static_cast<size_t>(vertex_count), false);
        for (int v : order) {
            if (v < 0 || v >= vertex_count || seen[static_cast<size_t>(v)])
                throw ValidationError("order is not a permutation of the vertex set");
            seen[static_cast<size_t>(v)] = true;
        }
        T.order_vert = order;
    }
    T.order_pos.assign(static_cast<size_t>(vertex_count), 0);
    for (int p = 0; p < vertex_count; ++p)
        T.order_pos[static_cast<size_t>(T.order_vert[static_cast<size_t>(p)])] = p;

    for (auto& f : facets) {
        if (static_cast<int>(f.size()) != dim + 1)
            throw ValidationError("facet arity does not match dimension");
        std::sort(f.begin(), f.end());
        for (size_t i = 0; i < f.size(); ++i) {
            if (f[i] < 0 || f[i] >= vertex_count) throw ValidationError("vertex out of range");
            if (i > 0 && f[i] == f[i - 1]) throw ValidationError("repeated vertex in a facet");
        }
    }
    std::sort(facets.begin(), facets.end());
    for (size_t i = 1; i < facets.size(); ++i)
        if (facets[i] == facets[i - 1]) throw ValidationError("duplicate facet");
    if (facets.empty()) throw ValidationError("no facets");
    T.facets = std::move(facets);

    // Face lattice: all k-subsets of facets, deduplicated.
    T.faces.assign(static_cast<size_t>(dim) + 1, {});
    T.face_index.assign(static_cast<size_t>(dim) + 1, {});
    for (int k = 0; k <= dim; ++k) {
        auto& idx = T.face_index[static_cast<size_t>(k)];
        for (const auto& f : T.facets)
            for (auto& s : subsets_of_size(f, k + 1)) idx.emplace(std::move(s), 0);
        auto& list = T.faces[static_cast<size_t>(k)];
        list.reserve(idx.size());
        int i = 0;
        for (auto& [s, id] : idx) {
            id = i++;
            list.push_back(s);
        }
    }
    T.cofaces.assign(static_cast<size_t>(dim) + 1, {});
    for (int k = 0; k < dim; ++k) {
        T.cofaces[static_cast<size_t>(k)].assign(T.faces[static_cast<size_t>(k)].size(), {});
        const auto& up = T.faces[static_cast<size_t>(k) + 1];
        for (size_t j = 0; j < up.size(); ++j)
            for (auto& s : subsets_of_size(up[j], k + 1))
                T.cofaces[static_cast<size_t>(k)][static_cast<size_t>(T.face_id(k, s))]
                    .push_back(static_cast<int>(j));
    }
    T.cofaces[static_cast<size_t>(dim)].assign(T.facets.size(), {});

    // Closed pseudo-manifold: every ridge in exactly 2 facets.
    T.closed = true;
    if (dim >= 1) {
        const auto& ridge_cof = T.cofaces[static_cast<size_t>(dim) - 1];
        for (size_t r = 0; r < ridge_cof.size(); ++r)
            if (ridge_cof[r].size() != 2) {
                T.closed = false;
                if (!require_closed) break;
                std::ostringstream os;
                os << "ridge { ";
                for (int v : T.faces[static_cast<size_t>(dim) - 1][r]) os << v << " ";
                os << "} contained in " << ridge_cof[r].size() << " facets (expected 2)";
                throw ValidationError(os.str());
            }
    }

    // Vertex links connected (dim >= 2).
    if (dim >= 2 && require_closed) {
        for (const auto& vf : T.faces[0]) {
            int v = vf[0];
            std::vector<int> lk; // facet indices containing v
            for (size_t j = 0; j < T.facets.size(); ++j)
                if (std::binary_search(T.facets[j].begin(), T.facets[j].end(), v))
                    lk.push_back(static_cast<int>(j));
            if (lk.empty()) throw ValidationError("isolated vertex");
            // Connectivity through shared ridges containing v.
            std::map<int, std::vector<size_t>> by_ridge;
            for (size_t a = 0; a < lk.size(); ++a) {
                const auto& f = T.facets[static_cast<size_t>(lk[a])];
                for (auto& r : subsets_of_size(f, dim)) {
                    if (!std::binary_search(r.begin(), r.end(), v)) continue;
                    by_ridge[T.face_id(dim - 1, r)].push_back(a);
                }
            }
            std::vector<int> comp(lk.size(), -1);
            std::queue<size_t> q;
            q.push(0);
            comp[0] = 0;
            while (!q.empty()) {
                size_t a = q.front();
                q.pop();
                const auto& f = T.facets[static_cast<size_t>(lk[a])];
                for (auto& r : subsets_of_size(f, dim)) {
                    if (!std::binary_search(r.begin(), r.end(), v)) continue;
                    for (size_t b : by_ridge[T.face_id(dim - 1, r)])
                        if (comp[b] < 0) { comp[b] = 0; q.push(b); }
                }
            }
            for (int c : comp)
                if (c < 0)
                    throw ValidationError("link of vertex " + std::to_string(v) +
                                          " is disconnected");
        }
    }
    return T;
}

Triangulation parse_triangulation(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int dim = -1;
    std::vector<int> order;
    std::vector<Simplex> facets;
    int max_vertex = -1;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        std::istringstream ls(line);
        std::string tok;
        if (!(ls >> tok)) continue;
        if (tok == "dim") {
            if (!(ls >> dim)) throw ValidationError("malformed dim line");
            if (dim < 2 || dim > 4) throw ValidationError("dimension outside 2-4");
        } else if (tok == "order") {
            int v;
            while (ls >> v) order.push_back(v);
        } else {
            if (dim < 0) throw ValidationError("facet line before dim line");
            Simplex f;
            try {
                f.push_back(std::stoi(tok));
            } catch (const std::exception&) {
                throw ValidationError("malformed facet line: " + line);
            }
            int v;
            while (ls >> v) f.push_back(v);
            if (!ls.eof()) throw ValidationError("malformed facet line: " + line);
            if (static_cast<int>(f.size()) != dim + 1)
                throw ValidationError("facet line has wrong arity: " + line);
            for (int u : f) {
                if (u < 0) throw ValidationError("negative vertex");
                max_vertex = std::max(max_vertex, u);
            }
            facets.push_back(std::move(f));
        }
    }
    if (dim < 0) throw ValidationError("missing dim line");
    int vcount = max_vertex + 1;
    if (!order.empty()) vcount = std::max(vcount, static_cast<int>(order.size()));
    return make_triangulation(dim, vcount, std::move(facets), std::move(order));
}

std::string serialize_triangulation(const Triangulation& T) {
    std::ostringstream os;
    os << "dim " << T.dim << "\n";
    bool natural = true;
    for (int p = 0; p < T.vertex_count; ++p)
        if (T.order_vert[static_cast<size_t>(p)] != p) natural = false;
    if (!natural) {
        os << "order";
        for (int v : T.order_vert) os << " " << v;
        os << "\n";
    }
    for (const auto& f : T.facets) {
        for (size_t i = 0; i < f.size(); ++i) os << (i ? " " : "") << f[i];
        os << "\n";
    }
    return os.str();
}

int euler_characteristic(const Triangulation& T) {
    int chi = 0;
    for (int k = 0; k <= T.dim; ++k) {
        int c = static_cast<int>(T.faces[static_cast<size_t>(k)].size());
        chi += (k % 2 == 0) ? c : -c;
    }
    return chi;
}

Triangulation link(const Triangulation& T, const SimplexRef& s) {
    if (!T.has_face(s.k, s.verts)) throw ValidationError("link: simplex not in complex");
    std::vector<Simplex> lk;
    for (const auto& f : T.facets) {
        if (!std::includes(f.begin(), f.end(), s.verts.begin(), s.verts.end())) continue;
        Simplex rest;
        std::set_difference(f.begin(), f.end(), s.verts.begin(), s.verts.end(),
                            std::back_inserter(rest));
        lk.push_back(std::move(rest));
    }
    Triangulation L;
    L.dim = T.dim - s.k - 1;
    L.vertex_count = T.vertex_count;
    L.order_vert = T.order_vert;
    L.order_pos = T.order_pos;
    std::sort(lk.begin(), lk.end());
    L.facets = std::move(lk);
    // Rebuild the lattice without the closed-complex checks: links of interior
    // simplices are closed by construction, and callers may inspect odd ones.
    L.faces.assign(static_cast<size_t>(L.dim) + 1, {});
    L.face_index.assign(static_cast<size_t>(L.dim) + 1, {});
    for (int k = 0; k <= L.dim; ++k) {
        auto& idx = L.face_index[static_cast<size_t>(k)];
        for (const auto& f : L.facets)
            for (auto& sub : subsets_of_size(f, k + 1)) idx.emplace(std::move(sub), 0);
        int i = 0;
        for (auto& [sx, id] : idx) {
            id = i++;
            L.faces[static_cast<size_t>(k)].push_back(sx);
        }
    }
    L.cofaces.assign(static_cast<size_t>(L.dim) + 1, {});
    for (int k = 0; k < L.dim; ++k) {
        L.cofaces[static_cast<size_t>(k)].assign(L.faces[static_cast<size_t>(k)].size(), {});
        const auto& up = L.faces[static_cast<size_t>(k) + 1];
        for (size_t j = 0; j < up.size(); ++j)
            for (auto& sub : subsets_of_size(up[j], k + 1))
                L.cofaces[static_cast<size_t>(k)][static_cast<size_t>(L.face_id(k, sub))]
                    .push_back(static_cast<int>(j));
    }
    L.cofaces[static_cast<size_t>(L.dim)].assign(L.facets.size(), {});
    L.closed = true;
    if (L.dim >= 1)
        for (const auto& cof : L.cofaces[static_cast<size_t>(L.dim) - 1])
            if (cof.size() != 2) L.closed = false;
    return L;
}

int permutation_parity(const std::vector<int>& from, const std::vector<int>& to) {
    std::vector<int> perm;
    perm.reserve(from.size());
    for (int v : to) {
        auto it = std::find(from.begin(), from.end(), v);
        if (it == from.end()) throw std::invalid_argument("permutation_parity: element mismatch");
        perm.push_back(static_cast<int>(it - from.begin()));
    }
    int sign = 1;
    std::vector<bool> seen(perm.size(), false);
    for (size_t i = 0; i < perm.size(); ++i) {
        if (seen[i]) continue;
        size_t j = i, len = 0;
        while (!seen[j]) {
            seen[j] = true;
            j = static_cast<size_t>(perm[j]);
            ++len;
        }
        if (len % 2 == 0) sign = -sign;
    }
    return sign;
}

namespace {

// Sign of the induced orientation of the ridge obtained by dropping the
// vertex at index i of the O-sorted facet tuple.
int induced_sign(int i) { return i % 2 == 0 ? 1 : -1; }

} // namespace

Triangulation orient(const Triangulation& T) {
    if (T.dim < 1) throw ValidationError("orient: dimension too small");
    Triangulation R = T;
    size_t nf = T.facets.size();
    std::vector<int> sign(nf, 0);

    // For each ridge, the facets containing it and the drop index in the
    // O-sorted facet tuple.
    const auto& ridge_cof = T.cofaces[static_cast<size_t>(T.dim) - 1];
    auto drop_index = [&](int fidx, const Simplex& ridge) {
        Simplex fo = T.osorted(T.facets[static_cast<size_t>(fidx)]);
        for (size_t i = 0; i < fo.size(); ++i) {
            bool in_ridge = std::find(ridge.begin(), ridge.end(), fo[i]) != ridge.end();
            if (!in_ridge) return static_cast<int>(i);
        }
        throw ValidationError("orient: ridge not a subset of facet");
    };

    std::queue<size_t> q;
    sign[0] = 1;
    q.push(0);
    size_t visited = 1;
    while (!q.empty()) {
        size_t f = q.front();
        q.pop();
        for (auto& ridge : subsets_of_size(T.facets[f], T.dim)) {
            int rid = T.face_id(T.dim - 1, ridge);
            for (int g : ridge_cof[static_cast<size_t>(rid)]) {
                if (static_cast<size_t>(g) == f) continue;
                int needed = -sign[f] * induced_sign(drop_index(static_cast<int>(f), ridge)) *
                             induced_sign(drop_index(g, ridge));
                if (sign[static_cast<size_t>(g)] == 0) {
                    sign[static_cast<size_t>(g)] = needed;
                    q.push(static_cast<size_t>(g));
                    ++visited;
                } else if (sign[static_cast<size_t>(g)] != needed) {
                    throw ValidationError("complex is non-orientable");
                }
            }
        }
    }
    if (visited != nf) throw ValidationError("orient: complex is disconnected");

    // Normalization: the O-lex least facet gets +1.
    size_t least = 0;
    for (size_t f = 1; f < nf; ++f)
        if (T.olex_less(T.facets[f], T.facets[least])) least = f;
    if (sign[least] < 0)
        for (auto& s : sign) s = -s;
    R.orient_sign = std::move(sign);
    return R;
}

Triangulation with_order(const Triangulation& T, const std::vector<int>& order) {
    Triangulation R = make_triangulation(T.dim, T.vertex_count, T.facets, order);
    if (T.oriented()) {
        R.orient_sign.resize(T.facets.size());
        for (size_t f = 0; f < T.facets.size(); ++f) {
            // Same underlying orientation: transform the stored sign by the
            // parity between old and new O-sorted tuples.
            int p = permutation_parity(T.osorted(T.facets[f]), R.osorted(R.facets[f]));
            R.orient_sign[f] = T.orient_sign[f] * p;
        }
    }
    return R;
}

Triangulation simplicial_product(const Triangulation& A, const Triangulation& B) {
    if (A.dim + B.dim > 4) throw ValidationError("product dimension exceeds 4");
    int n2 = B.vertex_count;
    auto enc = [n2](int a, int b) { return a * n2 + b; };

    std::vector<int> order(static_cast<size_t>(A.vertex_count) * B.vertex_count);
    size_t p = 0;
    for (int pa = 0; pa < A.vertex_count; ++pa)
        for (int pb = 0; pb < B.vertex_count; ++pb)
            order[p++] = enc(A.order_vert[static_cast<size_t>(pa)],
                             B.order_vert[static_cast<size_t>(pb)]);

    std::vector<Simplex> facets;
    int d1 = A.dim, d2 = B.dim;
    std::vector<int> steps(static_cast<size_t>(d1 + d2), 0);
    for (int i = 0; i < d1; ++i) steps[static_cast<size_t>(i)] = 0; // 0 = advance in A
    for (int i = d1; i < d1 + d2; ++i) steps[static_cast<size_t>(i)] = 1;
    std::sort(steps.begin(), steps.end());
    for (const auto& fa : A.facets) {
        Simplex sa = A.osorted(fa);
        for (const auto& fb : B.facets) {
            Simplex sb = B.osorted(fb);
            std::vector<int> path = steps;
            do {
                Simplex f;
                int ia = 0, ib = 0;
                f.push_back(enc(sa[0], sb[0]));
                for (int s : path) {
                    if (s == 0) ++ia;
                    else ++ib;
                    f.push_back(enc(sa[static_cast<size_t>(ia)], sb[static_cast<size_t>(ib)]));
                }
                facets.push_back(std::move(f));
            } while (std::next_permutation(path.begin(), path.end()));
        }
    }
    bool closed_inputs = A.closed && B.closed;
    return make_triangulation(d1 + d2, A.vertex_count * B.vertex_count, std::move(facets),
                              std::move(order), closed_inputs);
}

std::vector<int> face_link_cycle(const Triangulation& T, const Simplex& face) {
    if (T.dim != 4) throw ValidationError("face_link_cycle: dimension must be 4");
    if (!T.oriented()) throw ValidationError("face_link_cycle: complex must be oriented");
    Simplex f = face;
    std::sort(f.begin(), f.end());
    int fid = T.face_id(2, f);

    // Link vertices from tetrahedra, link edges from facets.
    std::map<int, std::vector<int>> nbrs;
    for (int t : T.cofaces[2][static_cast<size_t>(fid)]) {
        Simplex rest;
        std::set_difference(T.faces[3][static_cast<size_t>(t)].begin(),
                            T.faces[3][static_cast<size_t>(t)].end(), f.begin(), f.end(),
                            std::back_inserter(rest));
        nbrs[rest[0]]; // touch
    }
    for (const auto& F : T.facets) {
        if (!std::includes(F.begin(), F.end(), f.begin(), f.end())) continue;
        Simplex rest;
        std::set_difference(F.begin(), F.end(), f.begin(), f.end(), std::back_inserter(rest));
        nbrs[rest[0]].push_back(rest[1]);
        nbrs[rest[1]].push_back(rest[0]);
    }
    for (auto& [v, ns] : nbrs)
        if (ns.size() != 2)
            throw ValidationError("face link is not a single cycle");

    // Walk the cycle from the O-least link vertex.
    int start = nbrs.begin()->first;
    for (auto& [v, ns] : nbrs)
        if (T.order_pos[static_cast<size_t>(v)] < T.order_pos[static_cast<size_t>(start)])
            start = v;
    std::vector<int> cyc{start};
    int prev = -1, cur = start;
    do {
        auto& ns = nbrs[cur];
        int nxt = (ns[0] == prev) ? ns[1] : ns[0];
        prev = cur;
        cur = nxt;
        if (cur != start) cyc.push_back(cur);
        if (cyc.size() > nbrs.size()) throw ValidationError("face link is not a single cycle");
    } while (cur != start);
    if (cyc.size() != nbrs.size()) throw ValidationError("face link is not a single cycle");

    // Direction: the oriented 5-tuple (f sorted by O, u, v) must agree with
    // the manifold orientation for every consecutive pair (u, v).
    Simplex fo = T.osorted(f);
    auto pair_positive = [&](int u, int v) {
        Simplex F = f;
        F.push_back(u);
        F.push_back(v);
        std::sort(F.begin(), F.end());
        int Fid = T.face_id(4, F);
        std::vector<int> arranged = fo;
        arranged.push_back(u);
        arranged.push_back(v);
        int par = permutation_parity(T.osorted(F), arranged);
        return par * T.orient_sign[static_cast<size_t>(Fid)] > 0;
    };
    size_t L = cyc.size();
    if (!pair_positive(cyc[0], cyc[1 % L]))
        std::reverse(cyc.begin() + 1, cyc.end());
    for (size_t i = 0; i < L; ++i)
        if (!pair_positive(cyc[i], cyc[(i + 1) % L]))
            throw ValidationError("face link cycle has inconsistent orientation");
    return cyc;
}

Triangulation boundary_of_simplex(int n) {
    std::vector<Simplex> facets;
    Simplex all(static_cast<size_t>(n) + 1);
    std::iota(all.begin(), all.end(), 0);
    for (int drop = 0; drop <= n; ++drop) {
        Simplex f;
        for (int v = 0; v <= n; ++v)
            if (v != drop) f.push_back(v);
        facets.push_back(std::move(f));
    }
    return make_triangulation(n - 1, n + 1, std::move(facets));
}

Triangulation circle(int k) {
    std::vector<Simplex> facets;
    for (int i = 0; i < k; ++i) {
        Simplex e{i, (i + 1) % k};
        std::sort(e.begin(), e.end());
        facets.push_back(std::move(e));
    }
    return make_triangulation(1, k, std::move(facets));
}

} // namespace tlft
