#include "stc/graph.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "stc/errors.hpp"

namespace stc {

Graph Graph::from_edges(int n, std::vector<Edge> edges) {
    if (n < 0) throw std::invalid_argument("graph: negative vertex count");
    for (auto& e : edges) {
        if (e.first == e.second) throw std::invalid_argument("graph: self-loop rejected");
        if (e.first > e.second) std::swap(e.first, e.second);
        if (e.first < 0 || e.second >= n) throw std::invalid_argument("graph: endpoint out of range");
    }
    std::sort(edges.begin(), edges.end());
    if (std::adjacent_find(edges.begin(), edges.end()) != edges.end())
        throw std::invalid_argument("graph: parallel edge rejected");

    Graph g;
    g.n = n;
    g.edges = std::move(edges);
    g.adj.assign(n, {});
    for (auto [u, v] : g.edges) {
        g.adj[u].push_back(v);
        g.adj[v].push_back(u);
    }
    for (auto& nb : g.adj) std::sort(nb.begin(), nb.end());
    return g;
}

bool Graph::has_edge(int u, int v) const {
    if (u < 0 || v < 0 || u >= n || v >= n || u == v) return false;
    const auto& nb = adj[u];
    return std::binary_search(nb.begin(), nb.end(), v);
}

int Graph::max_degree() const {
    int d = 0;
    for (int v = 0; v < n; ++v) d = std::max(d, degree(v));
    return d;
}

int Graph::max_degree_vertex() const {
    int best = 0;
    for (int v = 1; v < n; ++v)
        if (degree(v) > degree(best)) best = v;
    return best;
}

int Graph::min_degree() const {
    if (n == 0) return 0;
    int d = degree(0);
    for (int v = 1; v < n; ++v) d = std::min(d, degree(v));
    return d;
}

bool Graph::is_complete() const {
    return static_cast<long long>(m()) * 2 == static_cast<long long>(n) * (n - 1);
}

std::vector<int> component_of(const Graph& g, int src) {
    std::vector<char> seen(g.n, 0);
    std::vector<int> stack{src}, out;
    seen[src] = 1;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        out.push_back(v);
        for (int w : g.adj[v])
            if (!seen[w]) {
                seen[w] = 1;
                stack.push_back(w);
            }
    }
    std::sort(out.begin(), out.end());
    return out;
}

bool is_connected(const Graph& g) {
    if (g.n == 0) return true;
    return static_cast<int>(component_of(g, 0).size()) == g.n;
}

std::vector<std::vector<int>> components(const Graph& g) {
    std::vector<char> seen(g.n, 0);
    std::vector<std::vector<int>> comps;
    for (int s = 0; s < g.n; ++s) {
        if (seen[s]) continue;
        std::vector<int> stack{s}, comp;
        seen[s] = 1;
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            comp.push_back(v);
            for (int w : g.adj[v])
                if (!seen[w]) {
                    seen[w] = 1;
                    stack.push_back(w);
                }
        }
        std::sort(comp.begin(), comp.end());
        comps.push_back(std::move(comp));
    }
    return comps;
}

bool subset_connected(const Graph& g, const std::vector<int>& verts) {
    if (verts.empty()) return true;
    std::vector<char> in(g.n, 0), seen(g.n, 0);
    for (int v : verts) in[v] = 1;
    std::vector<int> stack{verts[0]};
    seen[verts[0]] = 1;
    size_t cnt = 0;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        ++cnt;
        for (int w : g.adj[v])
            if (in[w] && !seen[w]) {
                seen[w] = 1;
                stack.push_back(w);
            }
    }
    return cnt == verts.size();
}

SubgraphView induced_subgraph(const Graph& g, std::vector<int> verts) {
    std::sort(verts.begin(), verts.end());
    verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
    std::vector<int> local(g.n, -1);
    for (size_t i = 0; i < verts.size(); ++i) local[verts[i]] = static_cast<int>(i);
    std::vector<Edge> edges;
    for (auto [u, v] : g.edges)
        if (local[u] >= 0 && local[v] >= 0) edges.emplace_back(local[u], local[v]);
    SubgraphView view;
    view.graph = Graph::from_edges(static_cast<int>(verts.size()), std::move(edges));
    view.orig = std::move(verts);
    return view;
}

void write_graph(std::ostream& os, const Graph& g) {
    os << g.n << ' ' << g.m() << '\n';
    for (auto [u, v] : g.edges) os << u << ' ' << v << '\n';
}

Graph read_graph(std::istream& is) {
    int n, m;
    if (!(is >> n >> m)) throw std::invalid_argument("graph read: missing header");
    if (n < 0 || m < 0) throw std::invalid_argument("graph read: negative header");
    std::vector<Edge> edges;
    edges.reserve(m);
    for (int i = 0; i < m; ++i) {
        int u, v;
        if (!(is >> u >> v)) throw std::invalid_argument("graph read: truncated edge list");
        edges.emplace_back(u, v);
    }
    return Graph::from_edges(n, std::move(edges));
}

void save_graph(const std::string& path, const Graph& g) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot open for writing: " + path);
    write_graph(os, g);
}

Graph load_graph(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("cannot open for reading: " + path);
    return read_graph(is);
}

}  // namespace stc
