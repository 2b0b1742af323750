// Command-line front end: validate complexes, compute the 2D/3D/4D state-sum
// invariants, run Pachner walks with before/after comparison, check and
// search cocycle systems, and dump dual-complex statistics.
//
// Structured JSON goes to stdout; human-readable notes go to stderr.
// Exit codes: 0 success, 1 validation error, 2 budget exhaustion.

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "tlft/cocycles.hpp"
#include "tlft/dw3.hpp"
#include "tlft/pachner.hpp"
#include "tlft/statesum2d.hpp"
#include "tlft/tlft4.hpp"

using json = nlohmann::ordered_json;
using namespace tlft;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

json scalar_json(const CycScalar& v) {
    json coeffs = json::array();
    for (const auto& c : v.coeffs()) coeffs.push_back(c.to_string());
    return json{{"N", v.root_order()}, {"coeffs", coeffs}};
}

json validator_json(const Triangulation& T) {
    json counts = json::array();
    for (int k = 0; k <= T.dim; ++k)
        counts.push_back(T.faces[static_cast<size_t>(k)].size());
    bool orientable = true;
    try {
        orient(T);
    } catch (const ValidationError&) {
        orientable = false;
    }
    return json{{"dim", T.dim},
                {"vertices", T.vertex_count},
                {"face_counts", counts},
                {"euler_characteristic", euler_characteristic(T)},
                {"closed", T.closed},
                {"orientable", orientable}};
}

// Orient under the file's own order first, so that --order permutations keep
// the same underlying oriented manifold.
Triangulation load_complex(const std::string& path, const std::vector<int>& order) {
    Triangulation T = orient(parse_triangulation(slurp(path)));
    if (!order.empty()) T = with_order(T, order);
    return T;
}

struct Timer {
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
    long long ms() const {
        return std::chrono::duration_cast<std::chrono::milliseconds>(
                   std::chrono::steady_clock::now() - t0)
            .count();
    }
};

CocycleSystem load_system(const std::string& spec, const std::string& group, int rootorder) {
    if (spec == "trivial") {
        if (group.empty() || rootorder < 1)
            throw ValidationError("--cocycle trivial needs --group and --rootorder");
        return trivial_system(FiniteGroup::from_spec(group), rootorder);
    }
    return parse_cocycle_system(slurp(spec));
}

DW3Cocycle load_dw3(const std::string& spec, const std::string& group, int rootorder) {
    if (spec == "trivial") {
        if (group.empty() || rootorder < 1)
            throw ValidationError("--cocycle trivial needs --group and --rootorder");
        return trivial_dw3(FiniteGroup::from_spec(group), rootorder);
    }
    return parse_dw3_cocycle(slurp(spec));
}

json violations_json(const std::vector<Violation>& vs, size_t cap = 64) {
    json arr = json::array();
    for (size_t i = 0; i < vs.size() && i < cap; ++i) {
        json args = json::array();
        for (int a : vs[i].args)
            if (a >= 0) args.push_back(a);
        arr.push_back(json{{"identity", vs[i].identity}, {"args", args}});
    }
    return arr;
}

CycScalar compute_invariant(int dim, const Triangulation& T, const std::string& algebra_file,
                            const std::string& cocycle, const std::string& group,
                            int rootorder, int dual_seed, long long budget, int threads,
                            json& extra) {
    if (dim == 2) {
        if (algebra_file.empty()) throw ValidationError("--dim 2 needs --algebra");
        AlgebraData A = parse_algebra(slurp(algebra_file));
        Rational v = partition_2d(T, A);
        extra["algebra_dim"] = A.n;
        return CycScalar::from_rational(1, v);
    }
    if (dim == 3) {
        DW3Cocycle c = load_dw3(cocycle, group, rootorder);
        extra["group"] = c.G.name();
        extra["rootorder"] = c.N;
        return partition_dw3(T, c);
    }
    if (dim == 4) {
        CocycleSystem sys = load_system(cocycle, group, rootorder);
        Partition4Options opt;
        opt.dual_seed = dual_seed;
        opt.budget = budget;
        opt.threads = threads;
        auto res = partition_4d(T, sys, opt);
        extra["group"] = sys.G.name();
        extra["rootorder"] = sys.N;
        extra["states"] = res.states;
        extra["dual_seed"] = dual_seed;
        return res.value;
    }
    throw ValidationError("--dim must be 2, 3 or 4");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"state-sum invariants of triangulated 2-, 3- and 4-manifolds"};
    app.require_subcommand(1);

    std::string complex_file, algebra_file, group_spec, cocycle_spec = "trivial";
    std::string check_file = "trivial";
    std::vector<std::string> order_tokens;
    int dim = 0, rootorder = 2, dual_seed = 0, threads = 1;
    int steps = 10, max_facets = 60;
    long long budget = 100000000;
    std::uint64_t seed = 1;
    bool symmetries = true;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--complex", complex_file, "triangulation file")->required();
        cmd->add_option("--order", order_tokens,
                        "vertex order: a permutation or 'natural' (default)");
    };

    auto* validate = app.add_subcommand("validate", "validate a triangulation file");
    validate->add_option("--complex", complex_file)->required();

    auto* invariant = app.add_subcommand("invariant", "compute a state-sum invariant");
    add_common(invariant);
    invariant->add_option("--dim", dim, "2, 3 or 4")->required();
    invariant->add_option("--algebra", algebra_file, "algebra file (dim 2)");
    invariant->add_option("--group", group_spec, "group spec, e.g. Z2, S3, Z2xZ2");
    invariant->add_option("--cocycle", cocycle_spec, "cocycle file or 'trivial'");
    invariant->add_option("--rootorder,-N", rootorder, "root-of-unity order for 'trivial'");
    invariant->add_option("--dual-seed", dual_seed, "3-face triangulation seed (dim 4)");
    invariant->add_option("--budget", budget, "rule-evaluation budget (dim 4)");
    invariant->add_option("--threads", threads, "parallel reduction width (dim 4)");

    auto* pachner = app.add_subcommand("pachner", "random walk + invariant before/after");
    add_common(pachner);
    pachner->add_option("--dim", dim)->required();
    pachner->add_option("--algebra", algebra_file);
    pachner->add_option("--group", group_spec);
    pachner->add_option("--cocycle", cocycle_spec);
    pachner->add_option("--rootorder,-N", rootorder);
    pachner->add_option("--dual-seed", dual_seed);
    pachner->add_option("--budget", budget);
    pachner->add_option("--threads", threads);
    pachner->add_option("--steps", steps, "number of moves");
    pachner->add_option("--seed", seed, "walk seed");
    pachner->add_option("--max-facets", max_facets, "facet cap for growing moves");

    auto* cocycle = app.add_subcommand("cocycle", "check or search cocycle systems");
    std::string mode;
    cocycle->add_option("mode", mode, "check | search")->required();
    cocycle->add_option("--file", check_file, "cocycle file or 'trivial' (check)");
    cocycle->add_option("--group", group_spec);
    cocycle->add_option("--rootorder,-N", rootorder);
    cocycle->add_flag("--symmetries,!--no-symmetries", symmetries,
                      "include the cocycle symmetries (default on)");
    std::string elim = "forward";
    cocycle->add_option("--elimination", elim, "forward | reverse");

    auto* dual = app.add_subcommand("dual", "dual complex and 3-face triangulation stats");
    add_common(dual);
    dual->add_option("--dual-seed", dual_seed);

    CLI11_PARSE(app, argc, argv);

    Timer timer;
    json report;
    try {
        std::vector<int> order;
        if (!(order_tokens.size() == 1 && order_tokens[0] == "natural"))
            for (const auto& t : order_tokens) order.push_back(std::stoi(t));
        if (validate->parsed()) {
            Triangulation T = parse_triangulation(slurp(complex_file));
            report["command"] = "validate";
            report["inputs"] = {{"complex", complex_file}};
            report["validator"] = validator_json(T);
        } else if (invariant->parsed()) {
            Triangulation T = load_complex(complex_file, order);
            if (T.dim != dim) throw ValidationError("--dim does not match the complex");
            report["command"] = "invariant";
            report["inputs"] = {{"complex", complex_file},
                                {"dim", dim},
                                {"cocycle", dim == 2 ? algebra_file : cocycle_spec}};
            json extra;
            CycScalar v = compute_invariant(dim, T, algebra_file, cocycle_spec, group_spec,
                                            rootorder, dual_seed, budget, threads, extra);
            report["result"] = scalar_json(v);
            for (auto& [k, val] : extra.items()) report[k] = val;
            report["validator"] = validator_json(T);
            std::cerr << "invariant = " << v.to_string() << "\n";
        } else if (pachner->parsed()) {
            Triangulation T = load_complex(complex_file, order);
            if (T.dim != dim) throw ValidationError("--dim does not match the complex");
            report["command"] = "pachner";
            report["inputs"] = {{"complex", complex_file}, {"dim", dim},
                                {"steps", steps},         {"seed", seed},
                                {"max_facets", max_facets}};
            json extra_before, extra_after;
            CycScalar before = compute_invariant(dim, T, algebra_file, cocycle_spec,
                                                 group_spec, rootorder, dual_seed, budget,
                                                 threads, extra_before);
            auto walk = random_walk(T, steps, seed, max_facets);
            CycScalar after = compute_invariant(dim, walk.result, algebra_file, cocycle_spec,
                                                group_spec, rootorder, dual_seed, budget,
                                                threads, extra_after);
            report["before"] = scalar_json(before);
            report["after"] = scalar_json(after);
            report["equal"] = before == after;
            report["moves_applied"] = walk.log.size();
            report["facets_after"] = walk.result.facets.size();
            json log = json::array();
            for (const auto& e : walk.log) log.push_back(e.line);
            report["move_log"] = log;
            report["validator"] = validator_json(walk.result);
            std::cerr << (before == after ? "invariant preserved" : "INVARIANT CHANGED")
                      << " across " << walk.log.size() << " moves\n";
        } else if (cocycle->parsed()) {
            report["command"] = "cocycle";
            if (mode == "check") {
                CocycleSystem sys = load_system(check_file, group_spec, rootorder);
                auto vc = check_conditions(sys);
                auto vs = symmetries ? check_symmetries(sys) : std::vector<Violation>{};
                report["inputs"] = {{"file", check_file},
                                    {"group", sys.G.name()},
                                    {"rootorder", sys.N},
                                    {"symmetries", symmetries}};
                report["condition_violations"] = vc.size();
                report["symmetry_violations"] = vs.size();
                report["violations"] = violations_json(vc);
                json sv = violations_json(vs);
                for (auto& v : sv) report["violations"].push_back(v);
                std::cerr << vc.size() << " condition and " << vs.size()
                          << " symmetry violations\n";
                if (!vc.empty() || !vs.empty()) {
                    std::cout << report.dump(2) << "\n";
                    return 1;
                }
            } else if (mode == "search") {
                if (group_spec.empty()) throw ValidationError("search needs --group");
                auto G = FiniteGroup::from_spec(group_spec);
                auto res = search_systems(G, rootorder, symmetries,
                                          elim == "reverse" ? EliminationOrder::Reverse
                                                            : EliminationOrder::Forward);
                report["inputs"] = {{"group", G.name()},
                                    {"rootorder", rootorder},
                                    {"symmetries", symmetries},
                                    {"elimination", elim}};
                report["rank"] = res.rank;
                report["unknowns"] = res.unknowns;
                report["generators"] = json::array();
                for (const auto& g : res.generators)
                    report["generators"].push_back(serialize_cocycle_system(g));
                std::cerr << res.generators.size() << " generators, rank " << res.rank
                          << "\n";
            } else {
                throw ValidationError("cocycle mode must be check or search");
            }
        } else if (dual->parsed()) {
            Triangulation T = load_complex(complex_file, order);
            if (T.dim != 4) throw ValidationError("dual: the complex must have dimension 4");
            auto D = build_dual(T);
            auto Phi = triangulate_dual(T, D, dual_seed);
            report["command"] = "dual";
            report["inputs"] = {{"complex", complex_file}, {"dual_seed", dual_seed}};
            json poly_sizes = json::array();
            size_t fan_triangles = 0;
            for (const auto& p : D.poly_facets) poly_sizes.push_back(p.size());
            for (const auto& f : Phi.fans) fan_triangles += f.size();
            report["dual_vertices"] = D.facet_count;
            report["dual_edges"] = D.dual_edges.size();
            report["dual_polygons"] = D.poly_facets.size();
            report["dual_polytopes"] = D.polytope_faces.size();
            report["polygon_sizes"] = poly_sizes;
            report["fan_triangles"] = fan_triangles;
            report["interior_vertices"] = Phi.total_interior();
        }
    } catch (const BudgetExceeded& ex) {
        json err{{"error", "budget"}, {"message", ex.what()}};
        std::cout << err.dump(2) << "\n";
        std::cerr << "budget exhausted: " << ex.what() << "\n";
        return 2;
    } catch (const std::exception& ex) {
        json err{{"error", "validation"}, {"message", ex.what()}};
        std::cout << err.dump(2) << "\n";
        std::cerr << "error: " << ex.what() << "\n";
        return 1;
    }
    report["elapsed_ms"] = timer.ms();
    std::cout << report.dump(2) << "\n";
    return 0;
}
