#include "stc/tree.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "stc/errors.hpp"
#include "stc/rng.hpp"

namespace stc {

std::vector<Edge> RootedTree::tree_edges() const {
    std::vector<Edge> out;
    out.reserve(parent.size() > 0 ? parent.size() - 1 : 0);
    for (int v = 0; v < n(); ++v)
        if (parent[v] >= 0) out.push_back(make_edge(v, parent[v]));
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<std::vector<int>> RootedTree::children() const {
    std::vector<std::vector<int>> ch(n());
    for (int v = 0; v < n(); ++v)
        if (parent[v] >= 0) ch[parent[v]].push_back(v);
    return ch;
}

std::vector<int> RootedTree::preorder() const {
    auto ch = children();
    std::vector<int> order;
    order.reserve(n());
    std::vector<int> stack{root};
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        order.push_back(v);
        for (auto it = ch[v].rbegin(); it != ch[v].rend(); ++it) stack.push_back(*it);
    }
    return order;
}

std::vector<int> RootedTree::depths() const {
    std::vector<int> d(n(), 0);
    for (int v : preorder())
        if (parent[v] >= 0) d[v] = d[parent[v]] + 1;
    return d;
}

std::vector<int> RootedTree::subtree_sizes() const {
    auto order = preorder();
    std::vector<int> sz(n(), 1);
    for (auto it = order.rbegin(); it != order.rend(); ++it)
        if (parent[*it] >= 0) sz[parent[*it]] += sz[*it];
    return sz;
}

RootedTree RootedTree::from_parent(int root, std::vector<int> parent) {
    RootedTree t;
    t.root = root;
    t.parent = std::move(parent);
    int n = t.n();
    if (root < 0 || root >= n || t.parent[root] != -1)
        throw std::invalid_argument("tree: bad root");
    if (static_cast<int>(t.preorder().size()) != n)
        throw std::invalid_argument("tree: parent array is not a spanning tree");
    return t;
}

RootedTree RootedTree::from_edges(int n, const std::vector<Edge>& edges, int root) {
    if (static_cast<int>(edges.size()) != n - 1)
        throw std::invalid_argument("tree: edge count is not n-1");
    std::vector<std::vector<int>> adj(n);
    for (auto [u, v] : edges) {
        adj[u].push_back(v);
        adj[v].push_back(u);
    }
    for (auto& nb : adj) std::sort(nb.begin(), nb.end());
    std::vector<int> parent(n, -2);
    std::vector<int> queue{root};
    parent[root] = -1;
    size_t head = 0;
    while (head < queue.size()) {
        int v = queue[head++];
        for (int w : adj[v])
            if (parent[w] == -2) {
                parent[w] = v;
                queue.push_back(w);
            }
    }
    if (static_cast<int>(queue.size()) != n)
        throw std::invalid_argument("tree: edges do not span all vertices");
    return from_parent(root, std::move(parent));
}

void RootedTree::validate_spanning(const Graph& g) const {
    if (n() != g.n) throw std::invalid_argument("tree: vertex count mismatch");
    for (int v = 0; v < n(); ++v)
        if (parent[v] >= 0 && !g.has_edge(v, parent[v]))
            throw std::invalid_argument("tree: edge not present in host graph");
}

RootedTree bfs_tree(const Graph& g, int root) {
    if (g.n == 0) throw std::invalid_argument("bfs_tree: empty graph");
    std::vector<int> parent(g.n, -2);
    std::vector<int> queue{root};
    parent[root] = -1;
    size_t head = 0;
    while (head < queue.size()) {
        int v = queue[head++];
        for (int w : g.adj[v])
            if (parent[w] == -2) {
                parent[w] = v;
                queue.push_back(w);
            }
    }
    if (static_cast<int>(queue.size()) != g.n)
        throw std::invalid_argument("bfs_tree: graph is disconnected");
    return RootedTree::from_parent(root, std::move(parent));
}

RootedTree random_spanning_tree(const Graph& g, uint64_t seed) {
    if (!is_connected(g)) throw std::invalid_argument("random_spanning_tree: disconnected graph");
    Rng rng(seed);
    std::vector<Edge> order = g.edges;
    rng.shuffle(order);
    std::vector<int> dsu(g.n);
    std::iota(dsu.begin(), dsu.end(), 0);
    auto find = [&](int x) {
        while (dsu[x] != x) x = dsu[x] = dsu[dsu[x]];
        return x;
    };
    std::vector<Edge> chosen;
    for (auto [u, v] : order) {
        int ru = find(u), rv = find(v);
        if (ru != rv) {
            dsu[ru] = rv;
            chosen.push_back({u, v});
            if (static_cast<int>(chosen.size()) == g.n - 1) break;
        }
    }
    return RootedTree::from_edges(g.n, chosen, 0);
}

namespace {

// Marks the subtree hanging below the deeper endpoint of e.
std::vector<char> below_side(const RootedTree& t, Edge e) {
    int child;
    if (t.parent[e.first] == e.second)
        child = e.first;
    else if (t.parent[e.second] == e.first)
        child = e.second;
    else
        throw std::invalid_argument("edge_congestion_cut: not a tree edge");
    auto ch = t.children();
    std::vector<char> in(t.n(), 0);
    std::vector<int> stack{child};
    in[child] = 1;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int w : ch[v]) {
            in[w] = 1;
            stack.push_back(w);
        }
    }
    return in;
}

}  // namespace

long long edge_congestion_cut(const Graph& g, const RootedTree& t, Edge e) {
    t.validate_spanning(g);
    auto in = below_side(t, e);
    long long cnt = 0;
    for (auto [u, v] : g.edges)
        if (in[u] != in[v]) ++cnt;
    return cnt;
}

CongestionReport congestion(const Graph& g, const RootedTree& t) {
    t.validate_spanning(g);
    CongestionReport rep;
    for (Edge e : t.tree_edges()) {
        long long c = edge_congestion_cut(g, t, e);
        rep.per_edge.emplace_back(e, c);
        rep.max = std::max(rep.max, c);
        rep.total += c;
    }
    return rep;
}

CongestionReport congestion_via_detours(const Graph& g, const RootedTree& t) {
    t.validate_spanning(g);
    auto depth = t.depths();
    // count per tree edge, keyed by the deeper endpoint
    std::vector<long long> cnt(t.n(), 0);
    for (auto [u, v] : g.edges) {
        int a = u, b = v;
        while (a != b) {
            if (depth[a] >= depth[b]) {
                ++cnt[a];
                a = t.parent[a];
            } else {
                ++cnt[b];
                b = t.parent[b];
            }
        }
    }
    CongestionReport rep;
    for (int v = 0; v < t.n(); ++v)
        if (t.parent[v] >= 0) rep.per_edge.emplace_back(make_edge(v, t.parent[v]), cnt[v]);
    std::sort(rep.per_edge.begin(), rep.per_edge.end());
    for (auto& [e, c] : rep.per_edge) {
        rep.max = std::max(rep.max, c);
        rep.total += c;
    }
    return rep;
}

int centroid(const RootedTree& t) {
    int n = t.n();
    if (n == 0) throw std::invalid_argument("centroid: empty tree");
    auto sz = t.subtree_sizes();
    auto ch = t.children();
    int best = -1, best_max = n + 1;
    for (int v = 0; v < n; ++v) {
        int worst = n - sz[v];
        for (int c : ch[v]) worst = std::max(worst, sz[c]);
        if (worst < best_max) {
            best_max = worst;
            best = v;
        }
    }
    return best;
}

}  // namespace stc
