// stclab: generators, spanning tree builders, partitioners and verifiers for
// low-congestion spanning tree experiments, with machine-readable reports.

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "stc/constructions.hpp"
#include "stc/errors.hpp"
#include "stc/exact.hpp"
#include "stc/expander.hpp"
#include "stc/gl.hpp"
#include "stc/graph.hpp"
#include "stc/stc_tree.hpp"
#include "stc/tree.hpp"
#include "stc/vertex_cut.hpp"

using nlohmann::json;
using namespace stc;

namespace {

constexpr int EXIT_USAGE = 2;
constexpr int EXIT_INFEASIBLE = 3;
constexpr int EXIT_CONTRACT = 4;
constexpr int EXIT_CAP = 5;

uint64_t default_seed() {
    if (const char* env = std::getenv("STCLAB_SEED")) return std::strtoull(env, nullptr, 10);
    return 0;
}

double now_ms() {
    using namespace std::chrono;
    return duration<double, std::milli>(steady_clock::now().time_since_epoch()).count();
}

void write_json(const std::string& path, const json& j) {
    if (path.empty() || path == "-") {
        std::cout << j.dump(2) << '\n';
    } else {
        std::ofstream os(path);
        if (!os) throw std::runtime_error("cannot open for writing: " + path);
        os << j.dump(2) << '\n';
    }
}

void save_tree(const std::string& path, const Graph& g, const RootedTree& t) {
    Graph tg = Graph::from_edges(g.n, t.tree_edges());
    save_graph(path, tg);
}

RootedTree load_tree(const std::string& path, const Graph& g) {
    Graph tg = load_graph(path);
    if (tg.n != g.n) throw std::invalid_argument("tree file does not match graph size");
    RootedTree t = RootedTree::from_edges(tg.n, tg.edges, 0);
    t.validate_spanning(g);
    return t;
}

json congestion_json(const CongestionReport& rep) {
    return {{"max", rep.max}, {"total", rep.total}, {"edges", rep.per_edge.size()}};
}

json expander_bound_json(const ExpandingParams& p, int n) {
    auto b = expander_bound(p, n);
    json j;
    j["formula"] = "d3*(4*A*(1/(2*d1))^(log(2)/log(2-delta))+t), delta=t/(d1*n)";
    j["delta"] = p.delta(n);
    j["finite"] = b.finite;
    if (b.finite) {
        j["branchBound"] = b.branch_bound;
        j["congestionBound"] = b.congestion_bound;
        j["roundBound"] = b.round_bound;
    } else {
        j["note"] = "delta >= 1: the matching analysis gives no finite bound at these parameters";
    }
    return j;
}

// ------------------------------------------------------------------ gen

struct GenArgs {
    std::string kind;
    int n = 0;
    double p = 0.5;
    long long m = 0;
    uint64_t seed = 0;
    bool seed_set = false;
    std::string out;
    std::string provenance;
};

int run_gen(const GenArgs& a) {
    uint64_t seed = a.seed_set ? a.seed : default_seed();
    json prov = {{"kind", a.kind}, {"seed", seed}, {"n", a.n}};
    if (a.kind == "gnp") {
        if (a.p < 0 || a.p > 1) throw std::invalid_argument("gen gnp: p must lie in [0,1]");
        Graph g = gen_gnp(a.n, a.p, seed);
        save_graph(a.out, g);
        prov["p"] = a.p;
        prov["m"] = g.m();
    } else if (a.kind == "hnm") {
        auto res = gen_hnm(a.n, a.m, seed);
        save_graph(a.out, res.graph);
        prov["mBudget"] = a.m;
        prov["m"] = res.graph.m();
        prov["attempts"] = res.report.attempts;
        prov["verifyMode"] = res.report.verify_mode;
        prov["expansionVerified"] = res.report.expansion_verified;
        prov["warnings"] = res.report.warnings;
    } else if (a.kind == "lowerbound") {
        LbSpec spec{a.n, a.m};
        auto res = gen_lower_bound_graph(spec, seed);
        save_labeled_graph(a.out, res.lg);
        prov["mBudget"] = a.m;
        prov["overlap"] = spec.overlap();
        prov["vertices"] = res.lg.graph.n;
        prov["m"] = res.lg.graph.m();
        prov["warnings"] = res.warnings;
    } else {
        throw std::invalid_argument("gen: unknown kind " + a.kind);
    }
    if (!a.provenance.empty()) write_json(a.provenance, prov);
    std::cerr << "wrote " << a.out << " (" << prov["kind"] << ", n=" << prov.value("vertices", a.n)
              << ")\n";
    return 0;
}

// ------------------------------------------------------------------ tree

struct TreeArgs {
    std::string algo;
    std::string graph_path;
    std::string out;
    std::string report;
    double auto_p = 0;
    std::vector<double> params;  // s,d1,d2,d3,t
    bool no_gate = false;
    uint64_t seed = 0;
};

int run_tree(const TreeArgs& a) {
    Graph g = load_graph(a.graph_path);
    if (!is_connected(g)) {
        auto comp = component_of(g, 0);
        std::cerr << "input graph is disconnected; one component: ";
        for (size_t i = 0; i < std::min<size_t>(comp.size(), 20); ++i) std::cerr << comp[i] << ' ';
        std::cerr << (comp.size() > 20 ? "...\n" : "\n");
        return EXIT_INFEASIBLE;
    }
    json rep;
    rep["command"] = "tree";
    rep["algorithm"] = a.algo;
    rep["input"] = {{"path", a.graph_path}, {"n", g.n}, {"m", g.m()}};
    double t0 = now_ms();
    RootedTree tree;

    if (a.algo == "bfs") {
        tree = bfs_tree(g, 0);
    } else if (a.algo == "findlcst") {
        auto res = find_lcst(g);
        tree = res.tree;
        json nodes = json::array();
        for (const auto& nd : res.trace)
            nodes.push_back({{"n_H", nd.n_h},
                             {"m_H", nd.m_h},
                             {"branch", branch_name(nd.branch)},
                             {"k", nd.k},
                             {"congestionBound", nd.congestion_bound}});
        rep["recursion"] = nodes;
        double bound = 8.0 * std::sqrt(static_cast<double>(g.m()) * g.n);
        rep["bound"] = {{"formula", "8*sqrt(m*n)"}, {"value", bound}};
    } else if (a.algo == "expander") {
        ExpandingParams p;
        if (!a.params.empty()) {
            if (a.params.size() != 5)
                throw std::invalid_argument("tree expander: --params needs s,d1,d2,d3,t");
            p.s = static_cast<int>(a.params[0]);
            p.d1 = a.params[1];
            p.d2 = a.params[2];
            p.d3 = a.params[3];
            p.t = a.params[4];
        } else if (a.auto_p > 0) {
            p = gnp_expanding_params(g.n, a.auto_p);
        } else {
            throw std::invalid_argument("tree expander: pass --auto-params or --params");
        }
        rep["params"] = {{"s", p.s}, {"d1", p.d1}, {"d2", p.d2}, {"d3", p.d3}, {"t", p.t}};
        if (!a.no_gate) {
            auto gate = check_expanding(g, p, CheckMode::ExhaustiveCapped, a.seed);
            rep["gate"] = {{"pass", gate.pass}, {"failedCondition", gate.failed_condition}};
            if (!gate.pass) {
                rep["error"] = "expanding-property gate rejected the input";
                write_json(a.report, rep);
                return EXIT_INFEASIBLE;
            }
        }
        auto res = grow_tree(g, p);
        tree = res.tree;
        rep["trace"] = {{"phase1Rounds", res.trace.phase1_rounds},
                        {"transfers", res.trace.transfers},
                        {"phase2Rounds", res.trace.phase2_rounds},
                        {"branchSizesAfterPhase1", res.trace.branch_sizes_phase1},
                        {"branchSizesFinal", res.trace.branch_sizes_final}};
        rep["bound"] = expander_bound_json(p, g.n);
    } else {
        throw std::invalid_argument("tree: unknown algorithm " + a.algo);
    }

    auto cong = congestion(g, tree);
    rep["congestion"] = congestion_json(cong);
    if (a.algo == "findlcst") {
        double bound = rep["bound"]["value"].get<double>();
        rep["bound"]["holds"] = static_cast<double>(cong.max) <= bound;
    } else if (a.algo == "expander" && rep["bound"].value("finite", false)) {
        rep["bound"]["holds"] = static_cast<double>(cong.max) <= rep["bound"]["congestionBound"].get<double>();
    }
    rep["wallMs"] = now_ms() - t0;
    if (!a.out.empty()) save_tree(a.out, g, tree);
    write_json(a.report, rep);
    return 0;
}

// ------------------------------------------------------------------ partition

struct PartitionArgs {
    std::string graph_path, spec_path, out, report, trace_path;
    std::string variant = "full-k";
    int connectivity = 0;
};

int run_partition(const PartitionArgs& a) {
    Graph g = load_graph(a.graph_path);
    std::ifstream sf(a.spec_path);
    if (!sf) throw std::runtime_error("cannot open spec: " + a.spec_path);
    PartitionSpec spec = read_partition_spec(sf, g.n);
    GlOptions opts;
    if (a.variant == "half-k") {
        opts.variant = GlVariant::HalfK;
        opts.connectivity = a.connectivity;
    } else if (a.variant != "full-k") {
        throw std::invalid_argument("partition: variant must be full-k or half-k");
    }

    double t0 = now_ms();
    auto res = gl_partition(g, spec, opts);
    json rep;
    rep["command"] = "partition";
    rep["input"] = {{"graph", a.graph_path}, {"spec", a.spec_path}, {"n", g.n}, {"m", g.m()}};
    rep["variant"] = a.variant;
    rep["iterations"] = res.iterations;
    rep["iterationCap"] = {{"formula", "n*4^n"}, {"value", gl_iteration_bound(g.n)}};
    rep["maxRankSeen"] = res.max_rank_seen;
    rep["warnings"] = res.warnings;
    rep["partWeights"] = res.partition.weights;
    rep["validator"] = "pass";  // gl_partition validates before returning
    rep["wallMs"] = now_ms() - t0;

    if (!a.out.empty()) {
        std::ofstream os(a.out);
        write_partition(os, res.partition);
    }
    if (!a.trace_path.empty()) {
        json tr = json::array();
        for (size_t i = 0; i < res.trace.size(); ++i) {
            auto& cv = res.trace[i];
            size_t keep = cv.level_counts.size();
            while (keep > 1 && cv.level_counts[keep - 1] == 0) --keep;
            tr.push_back({{"iteration", i},
                          {"lightCount", cv.light_count},
                          {"levelCounts", std::vector<long long>(cv.level_counts.begin(),
                                                                 cv.level_counts.begin() + keep)}});
        }
        write_json(a.trace_path, tr);
    }
    write_json(a.report, rep);
    return 0;
}

// ------------------------------------------------------------------ verify

struct VerifyArgs {
    std::string what;
    std::string graph_path, tree_path, report;
    int cap = 10;
    double auto_p = 0;
    std::vector<double> params;
    uint64_t seed = 0;
};

int run_verify(const VerifyArgs& a) {
    json rep;
    rep["command"] = "verify";
    rep["what"] = a.what;
    double t0 = now_ms();
    if (a.what == "congestion") {
        Graph g = load_graph(a.graph_path);
        RootedTree t = load_tree(a.tree_path, g);
        auto via_cut = congestion(g, t);
        auto via_detours = congestion_via_detours(g, t);
        rep["cutRoute"] = congestion_json(via_cut);
        rep["detourRoute"] = congestion_json(via_detours);
        rep["agree"] = via_cut == via_detours;
        if (!rep["agree"].get<bool>()) {
            rep["wallMs"] = now_ms() - t0;
            write_json(a.report, rep);
            return EXIT_CONTRACT;
        }
    } else if (a.what == "stc-exact") {
        Graph g = load_graph(a.graph_path);
        auto res = exact_stc(g, a.cap);
        rep["value"] = res.value;
        json edges = json::array();
        for (auto [u, v] : res.tree.tree_edges()) edges.push_back({u, v});
        rep["witnessTree"] = edges;
    } else if (a.what == "expanding") {
        Graph g = load_graph(a.graph_path);
        ExpandingParams p;
        if (a.params.size() == 5) {
            p.s = static_cast<int>(a.params[0]);
            p.d1 = a.params[1];
            p.d2 = a.params[2];
            p.d3 = a.params[3];
            p.t = a.params[4];
        } else if (a.auto_p > 0) {
            p = gnp_expanding_params(g.n, a.auto_p);
        } else {
            throw std::invalid_argument("verify expanding: pass --auto-params or --params");
        }
        auto r = check_expanding(g, p, CheckMode::ExhaustiveCapped, a.seed);
        rep["pass"] = r.pass;
        rep["failedCondition"] = r.failed_condition;
        rep["witness"] = r.witness;
        json conds = json::array();
        for (auto& c : r.conditions)
            conds.push_back({{"exhaustive", c.exhaustive}, {"checked", c.checked}, {"pass", c.pass}});
        rep["conditions"] = conds;
    } else if (a.what == "certificate") {
        Graph g;
        std::optional<LabeledGraph> lg;
        try {
            lg = load_labeled_graph(a.graph_path);
            g = lg->graph;
        } catch (const std::invalid_argument&) {
            g = load_graph(a.graph_path);
        }
        RootedTree t = load_tree(a.tree_path, g);
        auto cert = centroid_lower_bound(g, t);
        auto cong = congestion(g, t);
        rep["centroid"] = cert.centroid_vertex;
        rep["cutSize"] = cert.cut_size;
        rep["crossingTreeEdges"] = cert.crossing_tree_edges;
        rep["bound"] = cert.bound;
        rep["congestion"] = cong.max;
        rep["sound"] = cong.max >= cert.bound;
        if (lg && lg->block_n > 0) {
            auto case_rep = lb_case_analysis(*lg, t);
            rep["caseAnalysis"] = {{"case", case_rep.case_id},
                                   {"b1", case_rep.b1},
                                   {"value", case_rep.value},
                                   {"swapped", case_rep.swapped},
                                   {"sound", case_rep.congestion >= case_rep.value}};
        }
        if (!rep["sound"].get<bool>()) {
            write_json(a.report, rep);
            return EXIT_CONTRACT;
        }
    } else {
        throw std::invalid_argument("verify: unknown target " + a.what);
    }
    rep["wallMs"] = now_ms() - t0;
    write_json(a.report, rep);
    return 0;
}

// ------------------------------------------------------------------ bench

struct BenchArgs {
    std::string suite_path;
    std::string outdir = "bench-out";
    std::string report;
    int jobs = 1;
};

json bench_row(const json& row, uint64_t seed, const std::string& algo, const std::string& outdir,
               int row_idx) {
    json out;
    out["row"] = row_idx;
    out["seed"] = seed;
    out["algorithm"] = algo;
    std::string stem = outdir + "/row" + std::to_string(row_idx) + "-s" + std::to_string(seed);
    try {
        const json& gen = row.at("generator");
        std::string kind = gen.at("kind").get<std::string>();
        int n = gen.at("n").get<int>();
        Graph g;
        if (kind == "gnp") {
            g = gen_gnp(n, gen.at("p").get<double>(), seed);
        } else if (kind == "hnm") {
            g = gen_hnm(n, gen.at("m").get<long long>(), seed).graph;
        } else if (kind == "lowerbound") {
            g = gen_lower_bound_graph(LbSpec{n, gen.at("m").get<long long>()}, seed).lg.graph;
        } else {
            throw std::invalid_argument("unknown generator kind " + kind);
        }
        if (!is_connected(g)) throw infeasible_error("generated graph is disconnected");
        std::string gpath = stem + "-graph.txt";
        save_graph(gpath, g);
        out["graph"] = gpath;
        out["n"] = g.n;
        out["m"] = g.m();

        double t0 = now_ms();
        if (algo == "gl") {
            int k = row.value("k", 2);
            PartitionSpec spec;
            spec.k = k;
            spec.weights.assign(g.n, 1);
            for (int j = 0; j < k; ++j) spec.terminals.push_back(j);
            spec.targets.assign(k, g.n / k);
            for (int j = 0; j < g.n % k; ++j) ++spec.targets[j];
            auto res = gl_partition(g, spec);
            std::string ppath = stem + "-partition.txt";
            std::ofstream os(ppath);
            write_partition(os, res.partition);
            out["partition"] = ppath;
            out["iterations"] = res.iterations;
        } else {
            RootedTree tree;
            if (algo == "bfs") {
                tree = bfs_tree(g, 0);
            } else if (algo == "findlcst") {
                tree = find_lcst(g).tree;
                out["bound"] = {{"formula", "8*sqrt(m*n)"},
                                {"value", 8.0 * std::sqrt(static_cast<double>(g.m()) * g.n)}};
            } else if (algo == "expander") {
                double p = row.value("expanderP", gen.value("p", 0.5));
                auto params = gnp_expanding_params(g.n, p);
                tree = grow_tree(g, params).tree;
                out["bound"] = expander_bound_json(params, g.n);
            } else {
                throw std::invalid_argument("unknown algorithm " + algo);
            }
            std::string tpath = stem + "-" + algo + "-tree.txt";
            save_tree(tpath, g, tree);
            out["tree"] = tpath;
            auto cong = congestion(g, tree);
            out["congestion"] = congestion_json(cong);
            auto cert = centroid_lower_bound(g, tree);
            out["certificateLowerBound"] = cert.bound;
            if (g.n <= 10) out["exact"] = exact_stc(g).value;
        }
        out["wallMs"] = now_ms() - t0;
        out["ok"] = true;
    } catch (const std::exception& e) {
        out["ok"] = false;
        out["error"] = e.what();
    }
    return out;
}

int run_bench(const BenchArgs& a) {
    std::ifstream sf(a.suite_path);
    if (!sf) throw std::runtime_error("cannot open suite: " + a.suite_path);
    json suite = json::parse(sf);
    std::filesystem::create_directories(a.outdir);

    struct Task {
        json row;
        uint64_t seed;
        std::string algo;
        int idx;
    };
    std::vector<Task> tasks;
    int idx = 0;
    for (const auto& row : suite.value("rows", json::array())) {
        if (!row.contains("seeds") || row["seeds"].empty())
            throw std::invalid_argument("bench: every row needs explicit seeds");
        for (const auto& s : row["seeds"])
            for (const auto& algo : row.value("algorithms", json::array({"bfs"})))
                tasks.push_back({row, s.get<uint64_t>(), algo.get<std::string>(), idx});
        ++idx;
    }
    std::vector<json> results(tasks.size());
    int jobs = std::max(1, a.jobs);
    std::atomic<size_t> next{0};
    auto worker = [&] {
        while (true) {
            size_t i = next.fetch_add(1);
            if (i >= tasks.size()) break;
            results[i] = bench_row(tasks[i].row, tasks[i].seed, tasks[i].algo, a.outdir,
                                   tasks[i].idx);
        }
    };
    std::vector<std::thread> pool;
    for (int j = 1; j < jobs; ++j) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();

    json rep;
    rep["command"] = "bench";
    rep["suite"] = a.suite_path;
    rep["rows"] = results;
    size_t failures = 0;
    for (const auto& r : results) failures += !r.value("ok", false);
    rep["failures"] = failures;
    write_json(a.report, rep);
    return (!tasks.empty() && failures == tasks.size()) ? EXIT_INFEASIBLE : 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"low-congestion spanning trees, connected partitions and their certificates"};
    app.require_subcommand(1);

    GenArgs gen_args;
    auto* gen = app.add_subcommand("gen", "generate graphs");
    gen->add_option("kind", gen_args.kind, "gnp | hnm | lowerbound")->required();
    gen->add_option("-n", gen_args.n, "vertex / block count")->required();
    gen->add_option("-p", gen_args.p, "edge probability (gnp)");
    gen->add_option("-m", gen_args.m, "edge budget (hnm, lowerbound)");
    auto* seed_opt = gen->add_option("-s,--seed", gen_args.seed, "seed (default: STCLAB_SEED or 0)");
    gen->add_option("-o,--out", gen_args.out, "output graph file")->required();
    gen->add_option("--provenance", gen_args.provenance, "provenance JSON path");

    TreeArgs tree_args;
    auto* tree = app.add_subcommand("tree", "build a spanning tree");
    tree->add_option("algorithm", tree_args.algo, "bfs | findlcst | expander")->required();
    tree->add_option("graph", tree_args.graph_path, "input graph")->required();
    tree->add_option("-o,--out", tree_args.out, "tree output file");
    tree->add_option("--report", tree_args.report, "report JSON path (default stdout)");
    tree->add_option("--auto-params", tree_args.auto_p, "derive expanding params from this p");
    tree->add_option("--params", tree_args.params, "explicit s,d1,d2,d3,t")->expected(5);
    tree->add_flag("--no-gate", tree_args.no_gate, "skip the expanding-property gate");
    tree->add_option("--seed", tree_args.seed, "seed for sampled checks");

    PartitionArgs part_args;
    auto* part = app.add_subcommand("partition", "connected weighted partition");
    part->add_option("graph", part_args.graph_path)->required();
    part->add_option("spec", part_args.spec_path)->required();
    part->add_option("-o,--out", part_args.out, "partition output file");
    part->add_option("--report", part_args.report, "report JSON path (default stdout)");
    part->add_option("--trace", part_args.trace_path, "iteration trace JSON path");
    part->add_option("--variant", part_args.variant, "full-k | half-k");
    part->add_option("--connectivity", part_args.connectivity, "connectivity promise for half-k");

    VerifyArgs ver_args;
    auto* ver = app.add_subcommand("verify", "run oracles and certificate checks");
    ver->add_option("what", ver_args.what, "congestion | stc-exact | expanding | certificate")
        ->required();
    ver->add_option("graph", ver_args.graph_path)->required();
    ver->add_option("tree", ver_args.tree_path, "tree file (congestion, certificate)");
    ver->add_option("--cap", ver_args.cap, "exact oracle vertex cap");
    ver->add_option("--auto-params", ver_args.auto_p, "derive expanding params from this p");
    ver->add_option("--params", ver_args.params, "explicit s,d1,d2,d3,t")->expected(5);
    ver->add_option("--seed", ver_args.seed, "seed for sampled checks");
    ver->add_option("--report", ver_args.report, "report JSON path (default stdout)");

    BenchArgs bench_args;
    auto* bench = app.add_subcommand("bench", "run a suite of generator x algorithm rows");
    bench->add_option("suite", bench_args.suite_path, "suite JSON")->required();
    bench->add_option("--outdir", bench_args.outdir, "artifact directory");
    bench->add_option("--report", bench_args.report, "report JSON path (default stdout)");
    bench->add_option("--jobs", bench_args.jobs, "concurrent rows");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : EXIT_USAGE;
    }

    try {
        gen_args.seed_set = seed_opt->count() > 0;
        if (gen->parsed()) return run_gen(gen_args);
        if (tree->parsed()) return run_tree(tree_args);
        if (part->parsed()) return run_partition(part_args);
        if (ver->parsed()) return run_verify(ver_args);
        if (bench->parsed()) return run_bench(bench_args);
    } catch (const resource_limit_error& e) {
        std::cerr << "resource cap: " << e.what() << '\n';
        return EXIT_CAP;
    } catch (const internal_error& e) {
        std::cerr << "contract violation: " << e.what() << '\n';
        return EXIT_CONTRACT;
    } catch (const infeasible_error& e) {
        std::cerr << "infeasible: " << e.what() << '\n';
        return EXIT_INFEASIBLE;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return EXIT_USAGE;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
