#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace stc {

using Edge = std::pair<int, int>;  // normalized: first < second

inline Edge make_edge(int u, int v) { return u < v ? Edge{u, v} : Edge{v, u}; }

// Undirected simple graph over dense vertex ids 0..n-1.
struct Graph {
    int n = 0;
    std::vector<Edge> edges;              // sorted lexicographically, u < v
    std::vector<std::vector<int>> adj;    // sorted neighbor lists

    // Validates and normalizes: rejects loops, duplicates, out-of-range ids.
    static Graph from_edges(int n, std::vector<Edge> edges);

    int m() const { return static_cast<int>(edges.size()); }
    int degree(int v) const { return static_cast<int>(adj[v].size()); }
    bool has_edge(int u, int v) const;
    int max_degree() const;
    int max_degree_vertex() const;  // tie-break: smallest id
    int min_degree() const;
    bool is_complete() const;
};

bool is_connected(const Graph& g);
std::vector<int> component_of(const Graph& g, int src);
std::vector<std::vector<int>> components(const Graph& g);

// Connectivity of the subgraph induced by `verts` (empty set counts as connected).
bool subset_connected(const Graph& g, const std::vector<int>& verts);

// Induced subgraph with dense relabeling; orig[newId] = oldId, ascending.
struct SubgraphView {
    Graph graph;
    std::vector<int> orig;
};
SubgraphView induced_subgraph(const Graph& g, std::vector<int> verts);

// Text format: first line "n m", then m lines "u v" with u < v, sorted
// lexicographically on write. Readers accept any edge order and normalize.
void write_graph(std::ostream& os, const Graph& g);
Graph read_graph(std::istream& is);
void save_graph(const std::string& path, const Graph& g);
Graph load_graph(const std::string& path);

}  // namespace stc
