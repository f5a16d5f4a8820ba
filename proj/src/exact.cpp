#include "stc/exact.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <stdexcept>

#include "stc/errors.hpp"

namespace stc {

namespace {

struct Enumerator {
    const Graph& g;
    int n;
    std::vector<uint32_t> edge_bits;   // per edge: two endpoint bits
    std::vector<Edge> picked;
    long long best = -1;
    std::vector<Edge> best_edges;
    long long floor_value;             // min degree; no tree can beat it

    explicit Enumerator(const Graph& graph) : g(graph), n(graph.n) {
        edge_bits.reserve(g.edges.size());
        for (auto [u, v] : g.edges)
            edge_bits.push_back((1u << u) | (1u << v));
        floor_value = g.n >= 2 ? g.min_degree() : 0;
    }

    // congestion max of the tree formed by `picked`
    long long evaluate() const {
        std::vector<std::vector<int>> adj(n);
        for (auto [u, v] : picked) {
            adj[u].push_back(v);
            adj[v].push_back(u);
        }
        std::vector<int> parent(n, -2), order;
        order.reserve(n);
        order.push_back(0);
        parent[0] = -1;
        for (size_t h = 0; h < order.size(); ++h)
            for (int w : adj[order[h]])
                if (parent[w] == -2) {
                    parent[w] = order[h];
                    order.push_back(w);
                }
        std::vector<uint32_t> sub(n);
        for (auto it = order.rbegin(); it != order.rend(); ++it) {
            sub[*it] |= 1u << *it;
            if (parent[*it] >= 0) sub[parent[*it]] |= sub[*it];
        }
        long long worst = 0;
        for (int v = 0; v < n; ++v) {
            if (parent[v] < 0) continue;
            uint32_t mask = sub[v];
            long long c = 0;
            for (uint32_t eb : edge_bits)
                c += std::popcount(eb & mask) == 1;
            worst = std::max(worst, c);
        }
        return worst;
    }

    // Remaining edges (from `idx` on) plus picked ones must still be able to
    // connect the graph, otherwise the branch is dead.
    bool can_connect(size_t idx) const {
        std::vector<int> dsu(n);
        std::iota(dsu.begin(), dsu.end(), 0);
        auto find = [&](int x) {
            while (dsu[x] != x) x = dsu[x] = dsu[dsu[x]];
            return x;
        };
        int comps = n;
        auto join = [&](int a, int b) {
            a = find(a);
            b = find(b);
            if (a != b) {
                dsu[a] = b;
                --comps;
            }
        };
        for (auto [u, v] : picked) join(u, v);
        for (size_t i = idx; i < g.edges.size() && comps > 1; ++i)
            join(g.edges[i].first, g.edges[i].second);
        return comps == 1;
    }

    bool creates_cycle(Edge e) const {
        std::vector<int> dsu(n);
        std::iota(dsu.begin(), dsu.end(), 0);
        auto find = [&](int x) {
            while (dsu[x] != x) x = dsu[x] = dsu[dsu[x]];
            return x;
        };
        for (auto [u, v] : picked) {
            int a = find(u), b = find(v);
            if (a != b) dsu[a] = b;
        }
        return find(e.first) == find(e.second);
    }

    void run(size_t idx) {
        if (best == floor_value) return;  // provably optimal already
        if (static_cast<int>(picked.size()) == n - 1) {
            long long c = evaluate();
            if (best < 0 || c < best) {
                best = c;
                best_edges = picked;
            }
            return;
        }
        if (idx >= g.edges.size()) return;
        if (!can_connect(idx)) return;

        if (!creates_cycle(g.edges[idx])) {
            picked.push_back(g.edges[idx]);
            run(idx + 1);
            picked.pop_back();
        }
        run(idx + 1);
    }
};

}  // namespace

ExactStcResult exact_stc(const Graph& g, int cap) {
    if (g.n > cap)
        throw resource_limit_error("exact_stc: n exceeds cap of " + std::to_string(cap));
    if (g.n > 31) throw resource_limit_error("exact_stc: n exceeds hard limit of 31");
    if (!is_connected(g)) throw std::invalid_argument("exact_stc: graph is disconnected");
    if (g.n == 1) {
        ExactStcResult r;
        r.value = 0;
        r.tree = RootedTree::from_parent(0, {-1});
        return r;
    }
    Enumerator en(g);
    en.run(0);
    if (en.best < 0) throw internal_error("exact_stc: no spanning tree found on connected input");
    ExactStcResult r;
    r.value = en.best;
    r.tree = RootedTree::from_edges(g.n, en.best_edges, 0);
    return r;
}

}  // namespace stc
