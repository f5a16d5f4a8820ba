#pragma once

#include <cstdint>
#include <vector>

#include "stc/graph.hpp"

namespace stc {

// Spanning tree with parent pointers. parent[root] == -1.
struct RootedTree {
    int root = 0;
    std::vector<int> parent;

    int n() const { return static_cast<int>(parent.size()); }
    std::vector<Edge> tree_edges() const;  // sorted, normalized
    std::vector<std::vector<int>> children() const;
    std::vector<int> depths() const;
    std::vector<int> preorder() const;
    std::vector<int> subtree_sizes() const;

    static RootedTree from_parent(int root, std::vector<int> parent);
    static RootedTree from_edges(int n, const std::vector<Edge>& edges, int root);

    // Checks this tree spans g: same n, every tree edge is a graph edge.
    void validate_spanning(const Graph& g) const;
};

RootedTree bfs_tree(const Graph& g, int root);
RootedTree random_spanning_tree(const Graph& g, uint64_t seed);

struct CongestionReport {
    std::vector<std::pair<Edge, long long>> per_edge;  // sorted by edge
    long long max = 0;
    long long total = 0;

    bool operator==(const CongestionReport&) const = default;
};

// Cut form: number of graph edges with exactly one endpoint in the component
// of T minus e that does not contain the root.
long long edge_congestion_cut(const Graph& g, const RootedTree& t, Edge e);

// Evaluates every tree edge through the cut form.
CongestionReport congestion(const Graph& g, const RootedTree& t);

// Independent route: walks the tree detour of every graph edge and increments
// the tree edges on it. Must agree with congestion() edge-for-edge.
CongestionReport congestion_via_detours(const Graph& g, const RootedTree& t);

// Vertex whose removal leaves components of size <= n/2; smallest id on ties.
int centroid(const RootedTree& t);

}  // namespace stc
