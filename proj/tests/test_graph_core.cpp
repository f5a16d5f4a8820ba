#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "stc/errors.hpp"
#include "stc/exact.hpp"
#include "stc/graph.hpp"
#include "stc/tree.hpp"
#include "stc/vertex_cut.hpp"
#include "support.hpp"

using namespace stc;
using testsupport::brute_min_vertex_cut;
using testsupport::random_sparse_connected;

namespace {

Graph cycle(int n) {
    std::vector<Edge> e;
    for (int i = 0; i < n; ++i) e.push_back(make_edge(i, (i + 1) % n));
    return Graph::from_edges(n, e);
}

Graph complete(int n) {
    std::vector<Edge> e;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) e.emplace_back(u, v);
    return Graph::from_edges(n, e);
}

Graph path(int n) {
    std::vector<Edge> e;
    for (int i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
    return Graph::from_edges(n, e);
}

Graph star(int leaves) {
    std::vector<Edge> e;
    for (int i = 1; i <= leaves; ++i) e.emplace_back(0, i);
    return Graph::from_edges(leaves + 1, e);
}

RootedTree path_tree(int n) {
    std::vector<int> parent(n);
    parent[0] = -1;
    for (int i = 1; i < n; ++i) parent[i] = i - 1;
    return RootedTree::from_parent(0, parent);
}

void check_report_invariants(const Graph& g, const CongestionReport& rep) {
    if (g.n < 2) return;
    CHECK(rep.total >= g.m());
    CHECK(rep.max >= (rep.total + g.n - 2) / (g.n - 1));
    long long mx = 0, tot = 0;
    for (auto& [e, c] : rep.per_edge) {
        mx = std::max(mx, c);
        tot += c;
    }
    CHECK(rep.max == mx);
    CHECK(rep.total == tot);
}

}  // namespace

TEST_CASE("graph construction rejects malformed input") {
    CHECK_THROWS_AS(Graph::from_edges(3, {{0, 0}}), std::invalid_argument);
    CHECK_THROWS_AS(Graph::from_edges(3, {{0, 1}, {1, 0}}), std::invalid_argument);
    CHECK_THROWS_AS(Graph::from_edges(3, {{0, 3}}), std::invalid_argument);
    Graph g = Graph::from_edges(4, {{2, 1}, {0, 1}});
    CHECK(g.edges == std::vector<Edge>{{0, 1}, {1, 2}});
}

TEST_CASE("edge congestion through the cut form") {
    Graph c4 = cycle(4);
    RootedTree t = path_tree(4);
    CHECK(edge_congestion_cut(c4, t, {1, 2}) == 2);

    Graph k14 = star(4);
    RootedTree st = bfs_tree(k14, 0);
    for (Edge e : st.tree_edges()) CHECK(edge_congestion_cut(k14, st, e) == 1);

    Graph k4 = complete(4);
    RootedTree k4star = bfs_tree(k4, 0);  // star at 0
    // a leaf-side cut counts exactly the edges at the leaf
    CHECK(edge_congestion_cut(k4, k4star, {0, 1}) == k4.degree(1));
    CHECK(edge_congestion_cut(k4, k4star, {0, 1}) == 3);

    CHECK_THROWS_AS(edge_congestion_cut(c4, t, {0, 2}), std::invalid_argument);
}

TEST_CASE("congestion report on the 4-cycle path tree") {
    Graph c4 = cycle(4);
    RootedTree t = path_tree(4);
    auto rep = congestion(c4, t);
    CHECK(rep.max == 2);
    // every tree edge carries itself plus the closing chord
    for (auto& [e, c] : rep.per_edge) CHECK(c == 2);
    CHECK(rep.total == 6);
    check_report_invariants(c4, rep);

    auto rep2 = congestion_via_detours(c4, t);
    CHECK(rep == rep2);
}

TEST_CASE("congestion of a star tree in K4") {
    Graph k4 = complete(4);
    auto rep = congestion(k4, bfs_tree(k4, 0));
    CHECK(rep.max == 3);
    check_report_invariants(k4, rep);
}

TEST_CASE("a tree graph routed over itself has unit congestion") {
    for (uint64_t seed = 0; seed < 6; ++seed) {
        Graph g = random_sparse_connected(3 + static_cast<int>(seed), 0, seed);
        auto rep = congestion(g, bfs_tree(g, 0));
        CHECK(rep.max == 1);
        CHECK(rep.total == g.m());
    }
}

TEST_CASE("cut and detour routes agree on random instances") {
    for (uint64_t seed = 0; seed < 40; ++seed) {
        int n = 4 + static_cast<int>(seed % 7);
        Graph g = testsupport::random_connected_gnp(n, 0.45, seed);
        RootedTree t = random_spanning_tree(g, seed * 7 + 1);
        auto a = congestion(g, t);
        auto b = congestion_via_detours(g, t);
        CHECK(a == b);
        check_report_invariants(g, a);
    }
}

TEST_CASE("exact congestion oracle on cycles and cliques") {
    for (int n = 3; n <= 7; ++n) CHECK(exact_stc(cycle(n)).value == 2);
    CHECK(exact_stc(complete(4)).value == 3);
    CHECK(exact_stc(complete(6)).value == 5);
    // the witness achieves the reported value
    auto res = exact_stc(complete(5));
    CHECK(res.value == 4);
    CHECK(congestion(complete(5), res.tree).max == res.value);
}

TEST_CASE("exact oracle rejects bad input") {
    Graph g = Graph::from_edges(4, {{0, 1}, {2, 3}});
    CHECK_THROWS_AS(exact_stc(g), std::invalid_argument);
    CHECK_THROWS_AS(exact_stc(complete(6), 5), resource_limit_error);
}

TEST_CASE("exact value is at least the minimum degree") {
    for (uint64_t seed = 0; seed < 20; ++seed) {
        int n = 4 + static_cast<int>(seed % 5);
        Graph g = random_sparse_connected(n, 3, seed + 100);
        auto res = exact_stc(g);
        CHECK(res.value >= g.min_degree());
        CHECK(congestion(g, res.tree).max == res.value);
    }
}

TEST_CASE("minimum vertex cut on named instances") {
    CHECK(global_min_vertex_cut(path(3)) == std::vector<int>{1});

    auto c4cut = global_min_vertex_cut(cycle(4));
    CHECK(c4cut.size() == 2);
    // opposite pair: removing it disconnects
    std::vector<int> rest;
    for (int v = 0; v < 4; ++v)
        if (v != c4cut[0] && v != c4cut[1]) rest.push_back(v);
    CHECK_FALSE(subset_connected(cycle(4), rest));

    // two K4 blocks sharing exactly two vertices
    std::vector<Edge> e;
    for (int u = 0; u < 4; ++u)
        for (int v = u + 1; v < 4; ++v) e.push_back(make_edge(u, v));
    int ids[4] = {2, 3, 4, 5};  // share vertices 2 and 3
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j) e.push_back(make_edge(ids[i], ids[j]));
    std::sort(e.begin(), e.end());
    e.erase(std::unique(e.begin(), e.end()), e.end());
    Graph shared = Graph::from_edges(6, e);
    CHECK(global_min_vertex_cut(shared) == std::vector<int>{2, 3});

    CHECK_THROWS_AS(global_min_vertex_cut(complete(5)), no_cut_error);
    CHECK_THROWS_AS(global_min_vertex_cut(Graph::from_edges(4, {{0, 1}, {2, 3}})),
                    std::invalid_argument);
}

TEST_CASE("minimum vertex cut matches brute force") {
    for (uint64_t seed = 0; seed < 30; ++seed) {
        int n = 5 + static_cast<int>(seed % 5);
        Graph g = testsupport::random_connected_gnp(n, 0.5, seed + 7);
        if (g.is_complete()) continue;
        auto fast = global_min_vertex_cut(g);
        auto brute = brute_min_vertex_cut(g);
        CHECK(fast.size() == brute.size());
        // returned set really is a cut
        std::vector<int> rest;
        std::set<int> cut(fast.begin(), fast.end());
        for (int v = 0; v < n; ++v)
            if (!cut.count(v)) rest.push_back(v);
        CHECK_FALSE(subset_connected(g, rest));
    }
}

TEST_CASE("vertex_cut_below certifies connectivity thresholds") {
    Graph c6 = cycle(6);
    CHECK_FALSE(vertex_cut_below(c6, 2).has_value());  // kappa = 2
    auto cut = vertex_cut_below(c6, 3);
    REQUIRE(cut.has_value());
    CHECK(cut->size() == 2);
    CHECK_FALSE(vertex_cut_below(complete(5), 4).has_value());
}

TEST_CASE("centroid on paths, stars and random trees") {
    CHECK(centroid(path_tree(5)) == 2);
    Graph st = star(6);
    CHECK(centroid(bfs_tree(st, 1)) == 0);  // hub, regardless of root

    for (uint64_t seed = 0; seed < 25; ++seed) {
        int n = 2 + static_cast<int>(seed % 11);
        Graph g = random_sparse_connected(n, 0, seed + 5);
        RootedTree t = bfs_tree(g, 0);
        int c = centroid(t);
        // exhaustive verification of the <= n/2 property and minimality of id
        auto comp_ok = [&](int v) {
            auto sz = t.subtree_sizes();
            auto ch = t.children();
            int worst = n - sz[v];
            for (int x : ch[v]) worst = std::max(worst, sz[x]);
            return 2 * worst <= n;
        };
        CHECK(comp_ok(c));
        for (int v = 0; v < c; ++v) CHECK_FALSE(comp_ok(v));
    }
}
