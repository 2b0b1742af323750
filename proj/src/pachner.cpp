#include "tlft/pachner.hpp"

#include <algorithm>
#include <queue>
#include <random>
#include <set>
#include <sstream>

namespace tlft {

std::vector<MoveSite> find_moves(const Triangulation& T, int i, int j) {
    if (i + j != T.dim + 2 || i < 1 || j < 1)
        throw ValidationError("find_moves: invalid move type");
    int k = T.dim + 1 - i; // dimension of sigma
    std::vector<MoveSite> sites;
    const auto& sigmas = T.faces[static_cast<size_t>(k)];
    for (size_t s = 0; s < sigmas.size(); ++s) {
        const Simplex& sigma = sigmas[s];
        // Facets containing sigma.
        std::vector<int> star;
        for (size_t f = 0; f < T.facets.size(); ++f)
            if (std::includes(T.facets[f].begin(), T.facets[f].end(), sigma.begin(),
                              sigma.end()))
                star.push_back(static_cast<int>(f));
        if (static_cast<int>(star.size()) != i) continue;
        if (i == 1) {
            sites.push_back(MoveSite{i, j, sigma, {}});
            continue;
        }
        // Link vertex set; the link must be the boundary of the simplex on it.
        std::set<int> uset;
        for (int f : star) {
            Simplex rest;
            std::set_difference(T.facets[static_cast<size_t>(f)].begin(),
                                T.facets[static_cast<size_t>(f)].end(), sigma.begin(),
                                sigma.end(), std::back_inserter(rest));
            uset.insert(rest.begin(), rest.end());
        }
        if (static_cast<int>(uset.size()) != i) continue;
        Simplex tau(uset.begin(), uset.end());
        bool boundary_ok = true;
        for (int drop : tau) {
            Simplex facet = sigma;
            for (int u : tau)
                if (u != drop) facet.push_back(u);
            std::sort(facet.begin(), facet.end());
            if (!T.has_face(T.dim, facet)) { boundary_ok = false; break; }
        }
        if (!boundary_ok) continue;
        // Legality: the replacement complex must stay simplicial.
        if (T.has_face(i - 1, tau)) continue;
        sites.push_back(MoveSite{i, j, sigma, tau});
    }
    std::sort(sites.begin(), sites.end(),
              [](const MoveSite& a, const MoveSite& b) { return a.sigma < b.sigma; });
    return sites;
}

Triangulation apply_move(const Triangulation& T, const MoveSite& site) {
    Simplex sigma = site.sigma;
    std::sort(sigma.begin(), sigma.end());
    int k = static_cast<int>(sigma.size()) - 1;
    if (k != T.dim + 1 - site.i) throw ValidationError("apply_move: sigma arity mismatch");

    Simplex tau = site.tau;
    int vertex_count = T.vertex_count;
    std::vector<int> order = T.order_vert;
    if (site.i == 1) {
        // Fresh vertex appended at the end of the order.
        tau = {vertex_count};
        ++vertex_count;
        order.push_back(tau[0]);
    } else {
        std::sort(tau.begin(), tau.end());
        if (T.has_face(site.i - 1, tau))
            throw ValidationError("apply_move: replacement would duplicate a simplex");
    }

    // Stale-site check: star(sigma) must be exactly sigma * d(tau).
    std::vector<Simplex> removed;
    for (int u : tau) {
        Simplex f = sigma;
        for (int w : tau)
            if (w != u) f.push_back(w);
        std::sort(f.begin(), f.end());
        if (site.i >= 1 && static_cast<int>(f.size()) == T.dim + 1) {
            if (!T.has_face(T.dim, f)) throw ValidationError("apply_move: stale site");
            removed.push_back(std::move(f));
        }
    }
    for (size_t f = 0; f < T.facets.size(); ++f) {
        if (std::includes(T.facets[f].begin(), T.facets[f].end(), sigma.begin(), sigma.end())) {
            if (std::find(removed.begin(), removed.end(), T.facets[f]) == removed.end())
                throw ValidationError("apply_move: stale site");
        }
    }

    std::vector<Simplex> facets;
    std::set<Simplex> removed_set(removed.begin(), removed.end());
    for (const auto& f : T.facets)
        if (!removed_set.count(f)) facets.push_back(f);
    size_t survivors = facets.size();
    for (int y : sigma) {
        Simplex f;
        for (int w : sigma)
            if (w != y) f.push_back(w);
        f.insert(f.end(), tau.begin(), tau.end());
        std::sort(f.begin(), f.end());
        facets.push_back(std::move(f));
    }

    // Reducing moves can strand vertices; compact them away so that a
    // (1 <-> j) move followed by its reverse restores the input exactly.
    // Compaction preserves relative id and order positions, so orientation
    // signs carry over unchanged.
    std::vector<int> remap(static_cast<size_t>(vertex_count), -1);
    {
        std::vector<bool> used(static_cast<size_t>(vertex_count), false);
        for (const auto& f : facets)
            for (int v : f) used[static_cast<size_t>(v)] = true;
        int next = 0;
        for (int v = 0; v < vertex_count; ++v)
            if (used[static_cast<size_t>(v)]) remap[static_cast<size_t>(v)] = next++;
        if (next != vertex_count) {
            for (auto& f : facets)
                for (int& v : f) v = remap[static_cast<size_t>(v)];
            std::vector<int> new_order;
            for (int v : order)
                if (remap[static_cast<size_t>(v)] >= 0)
                    new_order.push_back(remap[static_cast<size_t>(v)]);
            order = std::move(new_order);
            vertex_count = next;
            for (auto& f : facets) std::sort(f.begin(), f.end());
        }
    }
    auto remapped = [&](Simplex f) {
        for (int& v : f) v = remap[static_cast<size_t>(v)];
        std::sort(f.begin(), f.end());
        return f;
    };

    Triangulation R = make_triangulation(T.dim, vertex_count, facets, order);

    if (T.oriented()) {
        if (survivors == 0) throw ValidationError("apply_move: no surviving facet to orient from");
        // Seed signs from surviving facets, then propagate into the new ball.
        std::vector<int> sign(R.facets.size(), 0);
        for (size_t f = 0; f < T.facets.size(); ++f) {
            if (removed_set.count(T.facets[f])) continue;
            Simplex rf = remapped(T.facets[f]);
            auto it = std::lower_bound(R.facets.begin(), R.facets.end(), rf);
            if (it != R.facets.end() && *it == rf)
                sign[static_cast<size_t>(it - R.facets.begin())] = T.orient_sign[f];
        }
        Triangulation fresh = orient(R);
        // orient() normalizes arbitrarily; align it with the seeded signs.
        int flip = 0;
        for (size_t f = 0; f < R.facets.size(); ++f)
            if (sign[f] != 0) { flip = sign[f] * fresh.orient_sign[f]; break; }
        for (size_t f = 0; f < R.facets.size(); ++f) {
            int v = fresh.orient_sign[f] * flip;
            if (sign[f] != 0 && sign[f] != v)
                throw ValidationError("apply_move: orientation propagation conflict");
            sign[f] = v;
        }
        R.orient_sign = std::move(sign);
    }
    return R;
}

MoveSite reverse_site(const Triangulation& before, const MoveSite& site) {
    MoveSite r;
    r.i = site.j;
    r.j = site.i;
    if (site.i == 1) {
        r.sigma = {before.vertex_count}; // the fresh vertex
        r.tau = site.sigma;
    } else {
        r.sigma = site.tau;
        r.tau = site.sigma;
    }
    std::sort(r.sigma.begin(), r.sigma.end());
    std::sort(r.tau.begin(), r.tau.end());
    return r;
}

namespace {

std::vector<std::pair<int, int>> move_types(int dim) {
    std::vector<std::pair<int, int>> t;
    for (int i = 1; i <= dim + 1; ++i) t.emplace_back(i, dim + 2 - i);
    return t;
}

std::string site_line(const MoveSite& s) {
    std::ostringstream os;
    os << "TYPE " << s.i << " " << s.j << " ; sigma";
    for (int v : s.sigma) os << " " << v;
    os << " ; apex";
    for (int v : s.tau) os << " " << v;
    return os.str();
}

} // namespace

WalkResult random_walk(const Triangulation& T, int steps, std::uint64_t seed, int max_facets) {
    WalkResult w{T, {}};
    std::mt19937_64 rng(seed);
    auto types = move_types(T.dim);
    for (int s = 0; s < steps; ++s) {
        std::vector<size_t> type_order(types.size());
        for (size_t t = 0; t < types.size(); ++t) type_order[t] = t;
        std::shuffle(type_order.begin(), type_order.end(), rng);
        bool applied = false;
        for (size_t t : type_order) {
            auto [i, j] = types[t];
            int growth = j - i;
            if (static_cast<int>(w.result.facets.size()) + growth > max_facets) continue;
            auto sites = find_moves(w.result, i, j);
            if (sites.empty()) continue;
            std::uniform_int_distribution<size_t> pick(0, sites.size() - 1);
            const MoveSite& site = sites[pick(rng)];
            w.log.push_back(MoveLogEntry{site, site_line(site)});
            w.result = apply_move(w.result, site);
            applied = true;
            break;
        }
        if (!applied) throw ValidationError("random_walk: no legal move available");
    }
    return w;
}

std::string serialize_move_log(const std::vector<MoveLogEntry>& log) {
    std::string s;
    for (const auto& e : log) {
        s += e.line;
        s += "\n";
    }
    return s;
}

std::vector<MoveSite> parse_move_log(const std::string& text) {
    std::vector<MoveSite> sites;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string tok;
        MoveSite s;
        ls >> tok;
        if (tok != "TYPE") throw ValidationError("move log: bad line: " + line);
        ls >> s.i >> s.j >> tok;
        if (tok != ";") throw ValidationError("move log: bad line: " + line);
        ls >> tok;
        if (tok != "sigma") throw ValidationError("move log: bad line: " + line);
        while (ls >> tok && tok != ";") s.sigma.push_back(std::stoi(tok));
        ls >> tok;
        if (tok != "apex") throw ValidationError("move log: bad line: " + line);
        int v;
        while (ls >> v) s.tau.push_back(v);
        sites.push_back(std::move(s));
    }
    return sites;
}

} // namespace tlft
