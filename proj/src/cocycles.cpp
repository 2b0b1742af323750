#include "tlft/cocycles.hpp"

#include <algorithm>
#include <functional>
#include <sstream>
#include <stdexcept>

namespace tlft {

namespace {

bool all_zero(const std::vector<int>& v) {
    for (int x : v)
        if (x) return false;
    return true;
}

// One multiplicative identity instance as a signed exponent sum. Offsets
// select the alpha/beta/phi block in the unknown vector.
struct Term {
    int block; // 0 alpha, 1 beta, 2 phi
    int a, b, c, d;
    int coef; // +1 or -1
};

// The four cocycle conditions, as functions from an index tuple to terms.
// Condition instances are enumerated over all of G^5.
std::vector<Term> condition_terms(int which, const FiniteGroup& G,
                                  const std::array<int, 5>& t) {
    auto mul = [&](int a, int b) { return G.mul(a, b); };
    auto cj = [&](int a, int b) { return G.conj(a, b); };
    switch (which) {
    case 0: { // alpha pentagon, tuple (g,k,m,p,q)
        auto [g, k, m, p, q] = t;
        return {{0, k, m, p, q, 1},
                {0, g, mul(k, m), p, q, 1},
                {0, g, k, m, cj(p, q), 1},
                {0, mul(g, k), m, p, q, -1},
                {0, g, k, mul(m, p), q, -1}};
    }
    case 1: { // beta pentagon, tuple (g,i,j,k,l)
        auto [g, i, j, k, l] = t;
        return {{1, g, j, k, l, 1},
                {1, g, i, mul(j, k), l, 1},
                {1, g, i, j, k, 1},
                {1, g, mul(i, j), k, l, -1},
                {1, g, i, j, mul(k, l), -1}};
    }
    case 2: { // alpha-phi cube, tuple (g,k,m,p,q)
        auto [g, k, m, p, q] = t;
        return {{0, g, k, m, p, 1},
                {0, g, k, m, q, 1},
                {2, k, m, p, q, 1},
                {2, g, mul(k, m), p, q, 1},
                {2, g, k, cj(m, p), cj(m, q), -1},
                {2, mul(g, k), m, p, q, -1},
                {0, g, k, m, mul(p, q), -1}};
    }
    case 3: { // beta-phi cube, tuple (g,k,p,r,s)
        auto [g, k, p, r, s] = t;
        return {{2, g, k, p, r, 1},
                {2, g, k, mul(p, r), s, 1},
                {1, mul(g, k), p, r, s, 1},
                {1, g, cj(k, p), cj(k, r), cj(k, s), -1},
                {1, k, p, r, s, -1},
                {2, g, k, r, s, -1},
                {2, g, k, p, mul(r, s), -1}};
    }
    default: throw std::logic_error("bad condition id");
    }
}

const char* condition_names[] = {"alpha-pentagon", "beta-pentagon", "alpha-phi-cube",
                                 "beta-phi-cube"};

// Cocycle symmetries: each is value * value' = 1, i.e. e + e' == 0 mod N.
// The second tuple per identity, as a function of (a,b,c,d).
std::vector<Term> symmetry_terms(int which, const FiniteGroup& G,
                                 const std::array<int, 5>& t) {
    auto mul = [&](int a, int b) { return G.mul(a, b); };
    auto inv = [&](int a) { return G.inv(a); };
    auto cj = [&](int a, int b) { return G.conj(a, b); };
    auto [a, b, c, d, unused] = t;
    switch (which) {
    case 0: return {{0, a, b, c, d, 1}, {0, inv(a), mul(a, b), c, d, 1}};
    case 1: return {{0, a, b, c, d, 1}, {0, mul(a, b), inv(b), mul(b, c), d, 1}};
    case 2: return {{0, a, b, c, d, 1}, {0, a, mul(b, c), inv(c), cj(c, d), 1}};
    case 3: return {{2, a, b, c, d, 1}, {2, inv(a), mul(a, b), c, d, 1}};
    case 4: return {{2, a, b, c, d, 1}, {2, mul(a, b), inv(b), cj(b, c), cj(b, d), 1}};
    case 5: return {{2, a, b, c, d, 1}, {2, a, b, mul(c, d), inv(d), 1}};
    case 6: return {{2, a, b, c, d, 1}, {2, a, b, inv(c), mul(c, inv(d)), 1}};
    case 7: return {{1, a, b, c, d, 1}, {1, a, inv(b), mul(b, c), d, 1}};
    case 8: return {{1, a, b, c, d, 1}, {1, a, mul(b, c), inv(c), mul(c, d), 1}};
    case 9: return {{1, a, b, c, d, 1}, {1, a, b, c, inv(d), 1}};
    default: throw std::logic_error("bad symmetry id");
    }
}

const char* symmetry_names[] = {"alpha-sym-1", "alpha-sym-2", "alpha-sym-3", "phi-sym-1",
                                "phi-sym-2",   "phi-sym-3",   "phi-sym-4",   "beta-sym-1",
                                "beta-sym-2",  "beta-sym-3"};

int eval_terms(const CocycleSystem& sys, const std::vector<Term>& terms) {
    int s = 0;
    for (const auto& t : terms) {
        int e = 0;
        switch (t.block) {
        case 0: e = sys.ea(t.a, t.b, t.c, t.d); break;
        case 1: e = sys.eb(t.a, t.b, t.c, t.d); break;
        case 2: e = sys.ep(t.a, t.b, t.c, t.d); break;
        }
        s += t.coef * e;
    }
    s %= sys.N;
    return s < 0 ? s + sys.N : s;
}

template <typename F>
void for_all_tuples(int n, int arity, F&& f) {
    std::array<int, 5> t{0, 0, 0, 0, 0};
    std::function<void(int)> rec = [&](int d) {
        if (d == arity) { f(t); return; }
        for (int v = 0; v < n; ++v) {
            t[static_cast<size_t>(d)] = v;
            rec(d + 1);
        }
    };
    rec(0);
}

} // namespace

bool CocycleSystem::is_trivial() const {
    return all_zero(alpha) && all_zero(beta) && all_zero(phi);
}

bool DW3Cocycle::is_trivial() const { return all_zero(alpha3); }

CocycleSystem trivial_system(const FiniteGroup& G, int N) {
    size_t sz = static_cast<size_t>(G.order());
    sz = sz * sz * sz * sz;
    return CocycleSystem{G, N, std::vector<int>(sz, 0), std::vector<int>(sz, 0),
                         std::vector<int>(sz, 0)};
}

DW3Cocycle trivial_dw3(const FiniteGroup& G, int N) {
    size_t sz = static_cast<size_t>(G.order());
    sz = sz * sz * sz;
    return DW3Cocycle{G, N, std::vector<int>(sz, 0)};
}

std::vector<Violation> check_conditions(const CocycleSystem& sys) {
    std::vector<Violation> out;
    int n = sys.G.order();
    for (int which = 0; which < 4; ++which) {
        for_all_tuples(n, 5, [&](const std::array<int, 5>& t) {
            if (eval_terms(sys, condition_terms(which, sys.G, t)) != 0)
                out.push_back(Violation{condition_names[which], t});
        });
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Violation> check_symmetries(const CocycleSystem& sys) {
    std::vector<Violation> out;
    int n = sys.G.order();
    for (int which = 0; which < 10; ++which) {
        for_all_tuples(n, 4, [&](const std::array<int, 5>& t) {
            if (eval_terms(sys, symmetry_terms(which, sys.G, t)) != 0)
                out.push_back(Violation{symmetry_names[which], {t[0], t[1], t[2], t[3], -1}});
        });
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Violation> check_dw3(const DW3Cocycle& c) {
    std::vector<Violation> out;
    int n = c.G.order();
    for_all_tuples(n, 4, [&](const std::array<int, 5>& t) {
        auto [g, h, k, l, unused] = t;
        int s = c.e(h, k, l) - c.e(c.G.mul(g, h), k, l) + c.e(g, c.G.mul(h, k), l) -
                c.e(g, h, c.G.mul(k, l)) + c.e(g, h, k);
        s %= c.N;
        if (s < 0) s += c.N;
        if (s != 0) out.push_back(Violation{"dw3-cocycle", {g, h, k, l, -1}});
    });
    std::sort(out.begin(), out.end());
    return out;
}

SearchResult search_systems(const FiniteGroup& G, int N, bool include_symmetries,
                            EliminationOrder order) {
    int n = G.order();
    int block = n * n * n * n;
    int unknowns = 3 * block;
    auto var = [&](const Term& t) {
        int base = t.block == 0 ? 0 : (t.block == 1 ? block : 2 * block);
        return base + ((t.a * n + t.b) * n + t.c) * n + t.d;
    };

    std::vector<SparseRow> rows;
    for (int which = 0; which < 4; ++which)
        for_all_tuples(n, 5, [&](const std::array<int, 5>& t) {
            SparseRow r;
            for (const auto& term : condition_terms(which, G, t))
                r.terms.emplace_back(var(term), term.coef < 0 ? N - 1 : 1);
            rows.push_back(std::move(r));
        });
    if (include_symmetries)
        for (int which = 0; which < 10; ++which)
            for_all_tuples(n, 4, [&](const std::array<int, 5>& t) {
                SparseRow r;
                for (const auto& term : symmetry_terms(which, G, t))
                    r.terms.emplace_back(var(term), 1);
                rows.push_back(std::move(r));
            });

    std::vector<int> col_order;
    if (order == EliminationOrder::Reverse) {
        col_order.resize(static_cast<size_t>(unknowns));
        for (int c = 0; c < unknowns; ++c)
            col_order[static_cast<size_t>(c)] = unknowns - 1 - c;
    }
    KernelResult K = kernel_mod_n(rows, unknowns, N, col_order);

    SearchResult res;
    res.rank = K.rank;
    res.unknowns = unknowns;
    for (const auto& x : K.basis) {
        CocycleSystem sys = trivial_system(G, N);
        std::copy(x.begin(), x.begin() + block, sys.alpha.begin());
        std::copy(x.begin() + block, x.begin() + 2 * block, sys.beta.begin());
        std::copy(x.begin() + 2 * block, x.end(), sys.phi.begin());
        res.generators.push_back(std::move(sys));
    }
    return res;
}

namespace {

struct CocycleFile {
    std::string group_spec;
    int rootorder = -1;
    std::vector<std::array<int, 5>> alpha, beta, phi; // (args..., exponent)
    std::vector<std::array<int, 4>> alpha3;           // (g,h,k, exponent)
};

CocycleFile parse_cocycle_lines(const std::string& text) {
    CocycleFile f;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        std::istringstream ls(line);
        std::string tok;
        if (!(ls >> tok)) continue;
        if (tok == "group") {
            ls >> f.group_spec;
        } else if (tok == "rootorder") {
            ls >> f.rootorder;
        } else if (tok == "alpha" || tok == "beta" || tok == "phi") {
            std::array<int, 5> v{};
            for (int i = 0; i < 5; ++i)
                if (!(ls >> v[static_cast<size_t>(i)]))
                    throw std::invalid_argument("cocycle file: bad line: " + line);
            (tok == "alpha" ? f.alpha : tok == "beta" ? f.beta : f.phi).push_back(v);
        } else if (tok == "alpha3") {
            std::array<int, 4> v{};
            for (int i = 0; i < 4; ++i)
                if (!(ls >> v[static_cast<size_t>(i)]))
                    throw std::invalid_argument("cocycle file: bad line: " + line);
            f.alpha3.push_back(v);
        } else {
            throw std::invalid_argument("cocycle file: unknown directive: " + tok);
        }
    }
    if (f.group_spec.empty() || f.rootorder < 1)
        throw std::invalid_argument("cocycle file: missing group or rootorder header");
    return f;
}

int checked_exp(int e, int N) {
    if (e < 0 || e >= N) throw std::invalid_argument("cocycle file: exponent out of range");
    return e;
}

int checked_elt(int g, int n) {
    if (g < 0 || g >= n) throw std::invalid_argument("cocycle file: group element out of range");
    return g;
}

} // namespace

CocycleSystem parse_cocycle_system(const std::string& text) {
    CocycleFile f = parse_cocycle_lines(text);
    FiniteGroup G = FiniteGroup::from_spec(f.group_spec);
    CocycleSystem sys = trivial_system(G, f.rootorder);
    int n = G.order();
    auto fill = [&](std::vector<int>& table, const std::vector<std::array<int, 5>>& lines) {
        for (const auto& v : lines) {
            int i = sys.idx(checked_elt(v[0], n), checked_elt(v[1], n), checked_elt(v[2], n),
                            checked_elt(v[3], n));
            table[static_cast<size_t>(i)] = checked_exp(v[4], sys.N);
        }
    };
    fill(sys.alpha, f.alpha);
    fill(sys.beta, f.beta);
    fill(sys.phi, f.phi);
    return sys;
}

DW3Cocycle parse_dw3_cocycle(const std::string& text) {
    CocycleFile f = parse_cocycle_lines(text);
    FiniteGroup G = FiniteGroup::from_spec(f.group_spec);
    DW3Cocycle c = trivial_dw3(G, f.rootorder);
    int n = G.order();
    for (const auto& v : f.alpha3) {
        int i = c.idx(checked_elt(v[0], n), checked_elt(v[1], n), checked_elt(v[2], n));
        c.alpha3[static_cast<size_t>(i)] = checked_exp(v[3], c.N);
    }
    return c;
}

std::string serialize_cocycle_system(const CocycleSystem& sys) {
    std::ostringstream os;
    os << "group " << sys.G.name() << "\n";
    os << "rootorder " << sys.N << "\n";
    int n = sys.G.order();
    auto dump = [&](const char* name, const std::vector<int>& table) {
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                for (int c = 0; c < n; ++c)
                    for (int d = 0; d < n; ++d) {
                        int e = table[static_cast<size_t>(sys.idx(a, b, c, d))];
                        if (e) os << name << " " << a << " " << b << " " << c << " " << d
                                  << " " << e << "\n";
                    }
    };
    dump("alpha", sys.alpha);
    dump("beta", sys.beta);
    dump("phi", sys.phi);
    return os.str();
}

} // namespace tlft
