#include "stc/stc_tree.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "stc/errors.hpp"
#include "stc/vertex_cut.hpp"

namespace stc {

namespace {

// Near-equal targets summing to the total weight, then raised where a
// terminal is heavier than its share, stealing the excess from the largest
// remaining target.
std::vector<long long> balanced_targets(const std::vector<long long>& weights,
                                        const std::vector<int>& terminals) {
    int k = static_cast<int>(terminals.size());
    long long total = 0;
    for (long long w : weights) total += w;
    std::vector<long long> t(k, total / k);
    for (int j = 0; j < k; ++j)
        if (j < static_cast<int>(total % k)) ++t[j];
    for (int rounds = 0; rounds < k; ++rounds) {
        bool ok = true;
        for (int j = 0; j < k; ++j) {
            long long need = weights[terminals[j]] - t[j];
            if (need <= 0) continue;
            ok = false;
            int donor = -1;
            for (int i = 0; i < k; ++i)
                if (i != j && (donor < 0 || t[i] > t[donor])) donor = i;
            if (donor < 0 || t[donor] - need < weights[terminals[donor]])
                throw std::invalid_argument("targets: cannot satisfy terminal weights");
            t[donor] -= need;
            t[j] += need;
        }
        if (ok) break;
    }
    return t;
}

MinMaxResult run_min_max(const Graph& g, int ell, const std::vector<long long>& weights,
                         int known_connectivity) {
    if (ell < 1) throw std::invalid_argument("min_max_partition: ell must be positive");
    MinMaxResult res;
    int t1 = g.max_degree_vertex();
    res.terminals.push_back(t1);
    if (ell == 1) {
        // single part: the whole graph
        if (!is_connected(g)) throw std::invalid_argument("min_max_partition: graph disconnected");
        std::vector<int> all(g.n);
        for (int v = 0; v < g.n; ++v) all[v] = v;
        res.partition.parts = {all};
        long long w = 0;
        for (int v = 0; v < g.n; ++v) w += weights[v];
        res.partition.weights = {w};
        return res;
    }
    if (g.degree(t1) < ell - 1)
        throw connectivity_error("min_max_partition: max degree below ell-1");
    for (int i = 0; i < ell - 1; ++i) res.terminals.push_back(g.adj[t1][i]);

    PartitionSpec spec;
    spec.k = ell;
    spec.terminals = res.terminals;
    spec.weights = weights;
    spec.targets = balanced_targets(weights, res.terminals);

    GlOptions opts;
    if (known_connectivity > 0) {
        opts.variant = GlVariant::HalfK;
        opts.connectivity = known_connectivity;
    }
    res.gl = gl_partition(g, spec, opts);
    res.partition = res.gl.partition;
    return res;
}

}  // namespace

MinMaxResult min_max_partition(const Graph& g, int ell, int known_connectivity) {
    std::vector<long long> weights(g.n);
    for (int v = 0; v < g.n; ++v) weights[v] = g.degree(v);
    auto res = run_min_max(g, ell, weights, known_connectivity);
    // degree sum per part is at most 4m/ell for an ell-connected input
    if (ell >= 2) {
        for (const auto& part : res.partition.parts) {
            long long degsum = 0;
            for (int v : part) degsum += g.degree(v);
            if (degsum * ell > 4LL * g.m())
                throw internal_error("min_max_partition: part degree sum exceeds 4m/ell");
        }
    }
    return res;
}

MinMaxResult balanced_min_max_partition(const Graph& g, int ell, long long c_num, long long c_den,
                                        int known_connectivity) {
    if (c_num <= 0 || c_den <= 0)
        throw std::invalid_argument("balanced_min_max_partition: c must be positive");
    // ceil(c*m/n) + deg(v)
    long long q = (c_num * g.m() + c_den * g.n - 1) / (c_den * g.n);
    if (q < 1) q = 1;
    std::vector<long long> weights(g.n);
    for (int v = 0; v < g.n; ++v) weights[v] = q + g.degree(v);
    auto res = run_min_max(g, ell, weights, known_connectivity);
    if (ell >= 2) {
        for (const auto& part : res.partition.parts) {
            long long degsum = 0;
            for (int v : part) degsum += g.degree(v);
            // degsum <= (2c+4) m / ell  and  |part| <= (2c+4)/c * n/ell
            if (degsum * ell * c_den > (2 * c_num + 4 * c_den) * g.m())
                throw internal_error("balanced_min_max_partition: degree-sum bound violated");
            if (static_cast<long long>(part.size()) * ell * c_num > (2 * c_num + 4 * c_den) * g.n)
                throw internal_error("balanced_min_max_partition: vertex-count bound violated");
        }
    }
    return res;
}

RootedTree star_assemble(const Graph& g, const Partition& parts, int hub,
                         const std::vector<int>& spokes) {
    if (parts.parts.empty()) throw std::invalid_argument("star_assemble: no parts");
    if (spokes.size() + 1 != parts.parts.size())
        throw std::invalid_argument("star_assemble: need one spoke per part after the first");
    auto in_part = [&](int j, int v) {
        const auto& p = parts.parts[j];
        return std::binary_search(p.begin(), p.end(), v);
    };
    if (!in_part(0, hub)) throw std::invalid_argument("star_assemble: hub outside part 0");
    for (size_t i = 0; i < spokes.size(); ++i) {
        if (!in_part(static_cast<int>(i) + 1, spokes[i]))
            throw std::invalid_argument("star_assemble: spoke outside its part");
        if (!g.has_edge(hub, spokes[i]))
            throw std::invalid_argument("star_assemble: spoke not adjacent to hub");
    }

    std::vector<Edge> edges;
    for (size_t j = 0; j < parts.parts.size(); ++j) {
        int local_root = j == 0 ? hub : spokes[j - 1];
        auto view = induced_subgraph(g, parts.parts[j]);
        int lr = static_cast<int>(std::lower_bound(view.orig.begin(), view.orig.end(), local_root) -
                                  view.orig.begin());
        RootedTree tau = bfs_tree(view.graph, lr);
        for (Edge e : tau.tree_edges()) edges.push_back(make_edge(view.orig[e.first], view.orig[e.second]));
    }
    for (int s : spokes) edges.push_back(make_edge(hub, s));
    return RootedTree::from_edges(g.n, edges, hub);
}

namespace {

// smallest k with k*k*b >= a
int ceil_sqrt_ratio(long long a, long long b) {
    int k = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(a) / static_cast<double>(b))));
    if (k < 1) k = 1;
    while (static_cast<long long>(k) * k * b < a) ++k;
    while (k > 1 && static_cast<long long>(k - 1) * (k - 1) * b >= a) --k;
    return k;
}

struct LcstRun {
    long long m_hat;
    std::vector<RecursionNode> trace;

    std::vector<Edge> solve(const Graph& h) {
        RecursionNode node;
        node.n_h = h.n;
        node.m_h = h.m();
        node.m_hat = m_hat;
        node.congestion_bound = 8.0 * std::sqrt(static_cast<double>(m_hat) * h.n);
        size_t slot = trace.size();
        trace.push_back(node);

        // base: m_h <= 8*sqrt(m_hat*n_h), compared in integers
        if (static_cast<long long>(h.m()) * h.m() <= 64LL * m_hat * h.n) {
            trace[slot].branch = Branch::Base;
            return bfs_tree(h, 0).tree_edges();
        }

        int k = ceil_sqrt_ratio(m_hat, h.n);
        trace[slot].k = k;

        std::optional<std::vector<int>> cut;
        if (h.is_complete()) {
            // connectivity n-1; no vertex cut exists
            if (h.n - 1 < k) throw internal_error("find_lcst: complete graph below branch threshold");
        } else {
            cut = vertex_cut_below(h, k);
        }

        if (cut) {
            trace[slot].branch = Branch::LowSplit;
            trace[slot].cut_size = static_cast<int>(cut->size());
            std::vector<char> in_cut(h.n, 0);
            for (int v : *cut) in_cut[v] = 1;
            std::vector<int> rest;
            for (int v = 0; v < h.n; ++v)
                if (!in_cut[v]) rest.push_back(v);
            auto rest_view = induced_subgraph(h, rest);
            auto comps = components(rest_view.graph);
            for (auto& comp : comps)
                for (int& v : comp) v = rest_view.orig[v];
            // smallest component, ties by smallest contained id (components
            // are produced in order of smallest contained id already)
            size_t xi = 0;
            for (size_t i = 1; i < comps.size(); ++i)
                if (comps[i].size() < comps[xi].size()) xi = i;
            std::vector<int> xs = comps[xi];
            std::vector<int> yz = *cut;
            for (size_t i = 0; i < comps.size(); ++i)
                if (i != xi) yz.insert(yz.end(), comps[i].begin(), comps[i].end());
            std::sort(yz.begin(), yz.end());
            trace[slot].x_size = static_cast<int>(xs.size());
            trace[slot].z_size = static_cast<int>(yz.size() - cut->size());

            auto x_view = induced_subgraph(h, xs);
            auto yz_view = induced_subgraph(h, yz);
            if (!is_connected(yz_view.graph))
                throw internal_error("find_lcst: separator side lost connectivity");

            auto tau1 = solve(x_view.graph);
            auto tau2 = solve(yz_view.graph);

            std::vector<Edge> edges;
            for (Edge e : tau1) edges.push_back(make_edge(x_view.orig[e.first], x_view.orig[e.second]));
            for (Edge e : tau2) edges.push_back(make_edge(yz_view.orig[e.first], yz_view.orig[e.second]));
            // lexicographically smallest edge between X and Y
            std::vector<char> in_x(h.n, 0);
            for (int v : xs) in_x[v] = 1;
            Edge join{-1, -1};
            for (auto e : h.edges) {
                bool xy = (in_x[e.first] && in_cut[e.second]) || (in_cut[e.first] && in_x[e.second]);
                if (xy) {
                    join = e;
                    break;
                }
            }
            if (join.first < 0) throw internal_error("find_lcst: no edge between X and its separator");
            edges.push_back(join);
            return edges;
        }

        // high connectivity: partition into floor(k/2)+1 parts and star them
        int ell = k / 2 + 1;
        trace[slot].branch = Branch::HighPartition;
        trace[slot].parts = ell;
        auto mm = min_max_partition(h, ell, k);
        trace[slot].gl_iterations = mm.gl.iterations;
        std::vector<int> spokes(mm.terminals.begin() + 1, mm.terminals.end());
        RootedTree star = star_assemble(h, mm.partition, mm.terminals[0], spokes);
        return star.tree_edges();
    }
};

}  // namespace

FindLcstResult find_lcst(const Graph& g) {
    if (g.n == 0) throw std::invalid_argument("find_lcst: empty graph");
    if (!is_connected(g)) throw std::invalid_argument("find_lcst: graph is disconnected");
    LcstRun run;
    run.m_hat = g.m();
    auto edges = run.solve(g);
    FindLcstResult res;
    res.tree = RootedTree::from_edges(g.n, edges, 0);
    res.tree.validate_spanning(g);
    res.trace = std::move(run.trace);
    // vertex counts strictly decrease down the recursion; preorder makes the
    // parent precede its children, which is all the trace consumers need
    return res;
}

const char* branch_name(Branch b) {
    switch (b) {
        case Branch::Base: return "base";
        case Branch::LowSplit: return "low-split";
        case Branch::HighPartition: return "high-partition";
    }
    return "?";
}

}  // namespace stc
