#include "stc/vertex_cut.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

#include "stc/errors.hpp"

namespace stc {

namespace {

// Unit-capacity vertex-split flow network. Vertex v becomes v_in = 2v and
// v_out = 2v+1 joined by a capacity-1 arc; graph edges get effectively
// unbounded arcs both ways.
struct SplitFlow {
    int n;
    std::vector<int> head;
    std::vector<int> to, nxt, cap;

    explicit SplitFlow(const Graph& g) : n(g.n), head(2 * g.n, -1) {
        for (int v = 0; v < g.n; ++v) add(2 * v, 2 * v + 1, 1);
        for (auto [u, v] : g.edges) {
            add(2 * u + 1, 2 * v, n);
            add(2 * v + 1, 2 * u, n);
        }
    }

    void add(int u, int v, int c) {
        to.push_back(v);
        nxt.push_back(head[u]);
        cap.push_back(c);
        head[u] = static_cast<int>(to.size()) - 1;
        to.push_back(u);
        nxt.push_back(head[v]);
        cap.push_back(0);
        head[v] = static_cast<int>(to.size()) - 1;
    }

    // max-flow s->t, stopping once `limit` is reached
    int maxflow(int s, int t, int limit, std::vector<int>& base_cap) {
        cap = base_cap;
        int flow = 0;
        std::vector<int> pre(2 * n);
        while (flow < limit) {
            std::fill(pre.begin(), pre.end(), -1);
            std::vector<int> queue{s};
            pre[s] = -2;
            size_t h = 0;
            bool reached = false;
            while (h < queue.size() && !reached) {
                int v = queue[h++];
                for (int a = head[v]; a >= 0; a = nxt[a]) {
                    if (cap[a] <= 0 || pre[to[a]] != -1) continue;
                    pre[to[a]] = a;
                    if (to[a] == t) {
                        reached = true;
                        break;
                    }
                    queue.push_back(to[a]);
                }
            }
            if (!reached) break;
            for (int v = t; v != s;) {
                int a = pre[v];
                cap[a] -= 1;
                cap[a ^ 1] += 1;
                v = to[a ^ 1];
            }
            ++flow;
        }
        return flow;
    }

    // after maxflow: vertices v (not s,t) with v_in reachable, v_out not
    std::vector<int> residual_cut(int s, int t) const {
        std::vector<char> seen(2 * n, 0);
        std::vector<int> queue{s};
        seen[s] = 1;
        size_t h = 0;
        while (h < queue.size()) {
            int v = queue[h++];
            for (int a = head[v]; a >= 0; a = nxt[a])
                if (cap[a] > 0 && !seen[to[a]]) {
                    seen[to[a]] = 1;
                    queue.push_back(to[a]);
                }
        }
        // s_out is the source (always seen) and t_in is unreachable once the
        // flow is maximal, so endpoints exclude themselves.
        (void)t;
        std::vector<int> cut;
        for (int v = 0; v < n; ++v)
            if (seen[2 * v] && !seen[2 * v + 1]) cut.push_back(v);
        return cut;
    }
};

// Shared scan. `cap` bounds flows; returns the minimum cut found below cap,
// or nullopt when connectivity >= cap. Candidates are the first cap+1
// non-universal vertices (a min cut misses at least one of them); when fewer
// exist, scanning all non-universal vertices is enough because a cut never
// swallows every non-universal vertex.
std::optional<std::vector<int>> scan_min_cut(const Graph& g, int cap) {
    std::vector<int> candidates;
    for (int v = 0; v < g.n && static_cast<int>(candidates.size()) <= cap; ++v)
        if (g.degree(v) < g.n - 1) candidates.push_back(v);
    if (candidates.empty()) return std::nullopt;  // complete

    SplitFlow net(g);
    std::vector<int> base = net.cap;
    int best = cap;
    std::optional<std::vector<int>> best_cut;
    for (size_t i = 0; i < candidates.size() && static_cast<int>(i) <= best; ++i) {
        int s = candidates[i];
        for (int t = 0; t < g.n; ++t) {
            if (t == s || g.has_edge(s, t)) continue;
            int f = net.maxflow(2 * s + 1, 2 * t, best, base);
            if (f < best) {
                best = f;
                best_cut = net.residual_cut(2 * s + 1, 2 * t);
            }
        }
    }
    if (best_cut) std::sort(best_cut->begin(), best_cut->end());
    return best_cut;
}

}  // namespace

std::vector<int> global_min_vertex_cut(const Graph& g) {
    if (g.n < 2) throw std::invalid_argument("min vertex cut: need at least 2 vertices");
    if (!is_connected(g)) throw std::invalid_argument("min vertex cut: graph is disconnected");
    if (g.is_complete()) throw no_cut_error("min vertex cut: complete graph has no vertex cut");
    auto cut = scan_min_cut(g, g.n - 1);
    if (!cut) throw internal_error("min vertex cut: scan failed on non-complete graph");
    return *cut;
}

std::optional<std::vector<int>> vertex_cut_below(const Graph& g, int k) {
    if (g.n < 2 || k <= 0) return std::nullopt;
    if (!is_connected(g)) throw std::invalid_argument("vertex_cut_below: graph is disconnected");
    if (g.is_complete()) return std::nullopt;  // connectivity n-1 >= any realizable cut ask
    if (k > g.n - 1) k = g.n - 1;              // kappa <= n-2 for non-complete graphs
    return scan_min_cut(g, k);
}

int vertex_connectivity(const Graph& g) {
    if (g.n < 2) throw std::invalid_argument("vertex connectivity: need at least 2 vertices");
    if (!is_connected(g)) return 0;
    if (g.is_complete()) return g.n - 1;
    return static_cast<int>(global_min_vertex_cut(g).size());
}

}  // namespace stc
