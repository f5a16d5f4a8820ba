#pragma once

// Shared test helpers: small brute-force oracles and seeded instance
// generators. Everything here is independent of the library paths it checks.

#include <algorithm>
#include <numeric>
#include <vector>

#include "stc/constructions.hpp"
#include "stc/graph.hpp"
#include "stc/rng.hpp"
#include "stc/vertex_cut.hpp"

namespace testsupport {

using stc::Edge;
using stc::Graph;

// all labeled connected graphs on n vertices (n small), by edge-subset masks
inline std::vector<Graph> enumerate_connected_graphs(int n) {
    std::vector<Edge> all;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) all.emplace_back(u, v);
    std::vector<Graph> out;
    for (uint64_t mask = 0; mask < (1ULL << all.size()); ++mask) {
        std::vector<Edge> edges;
        for (size_t i = 0; i < all.size(); ++i)
            if (mask >> i & 1) edges.push_back(all[i]);
        Graph g = Graph::from_edges(n, edges);
        if (stc::is_connected(g)) out.push_back(std::move(g));
    }
    return out;
}

inline Graph random_connected_gnp(int n, double p, uint64_t seed) {
    for (uint64_t attempt = 0;; ++attempt) {
        Graph g = stc::gen_gnp(n, p, stc::Rng::mix(seed, attempt));
        if (stc::is_connected(g)) return g;
    }
}

// random connected graph with m roughly n-1+extra edges
inline Graph random_sparse_connected(int n, int extra, uint64_t seed) {
    stc::Rng rng(seed);
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    rng.shuffle(perm);
    std::vector<Edge> edges;
    for (int i = 1; i < n; ++i)
        edges.push_back(stc::make_edge(perm[i], perm[static_cast<int>(rng.below(i))]));
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    int guard = 0;
    while (extra > 0 && ++guard < 1000) {
        int u = static_cast<int>(rng.below(n)), v = static_cast<int>(rng.below(n));
        if (u == v) continue;
        Edge e = stc::make_edge(u, v);
        if (std::binary_search(edges.begin(), edges.end(), e)) continue;
        edges.insert(std::lower_bound(edges.begin(), edges.end(), e), e);
        --extra;
    }
    return Graph::from_edges(n, edges);
}

inline Graph random_k_connected(int n, int k, double p, uint64_t seed) {
    for (uint64_t attempt = 0;; ++attempt) {
        Graph g = stc::gen_gnp(n, p, stc::Rng::mix(seed, attempt));
        if (!stc::is_connected(g)) continue;
        if (g.is_complete()) return g;
        if (!stc::vertex_cut_below(g, k)) return g;
    }
}

// brute-force minimum vertex cut by subset enumeration
inline std::vector<int> brute_min_vertex_cut(const Graph& g) {
    for (int size = 1; size < g.n - 1; ++size) {
        std::vector<int> idx(size);
        std::iota(idx.begin(), idx.end(), 0);
        while (true) {
            std::vector<char> removed(g.n, 0);
            for (int v : idx) removed[v] = 1;
            std::vector<int> rest;
            for (int v = 0; v < g.n; ++v)
                if (!removed[v]) rest.push_back(v);
            if (!rest.empty() && !stc::subset_connected(g, rest)) return idx;
            int i = size - 1;
            while (i >= 0 && idx[i] == g.n - size + i) --i;
            if (i < 0) break;
            ++idx[i];
            for (int j = i + 1; j < size; ++j) idx[j] = idx[j - 1] + 1;
        }
    }
    return {};  // complete graph
}

// brute-force maximum bipartite matching size via recursion over left side
inline int brute_matching_size(int nl, int nr, const std::vector<std::vector<int>>& adj) {
    std::vector<char> used(nr, 0);
    auto rec = [&](auto&& self, int l) -> int {
        if (l == nl) return 0;
        int best = self(self, l + 1);  // skip l
        for (int r : adj[l])
            if (!used[r]) {
                used[r] = 1;
                best = std::max(best, 1 + self(self, l + 1));
                used[r] = 0;
            }
        return best;
    };
    return rec(rec, 0);
}

}  // namespace testsupport
