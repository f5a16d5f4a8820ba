#include "stc/expander.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "stc/errors.hpp"
#include "stc/rng.hpp"

namespace stc {

// ---------------------------------------------------------------- params

long long ExpandingParams::saturation_threshold(int n) const {
    long long a = static_cast<long long>(std::ceil(3.0 * d1 * n / d2));
    return std::max<long long>(s + 1, a);
}

void ExpandingParams::validate(int n) const {
    if (s < 1) throw std::invalid_argument("expanding params: s must be >= 1");
    if (d1 <= 0 || d1 > 1) throw std::invalid_argument("expanding params: d1 must lie in (0,1]");
    if (d2 <= 0 || d3 <= 0) throw std::invalid_argument("expanding params: d2, d3 must be positive");
    if (t < 0) throw std::invalid_argument("expanding params: t must be nonnegative");
    long long a = saturation_threshold(n);
    if (a <= s) throw std::invalid_argument("expanding params: saturation threshold must exceed s");
    if (d1 * n / static_cast<double>(a) >= d2)
        throw std::invalid_argument("expanding params: d1*n/A must stay below d2");
}

ExpandingParams gnp_expanding_params(int n, double p) {
    if (p <= 0 || p > 1) throw std::invalid_argument("gnp params: p must lie in (0,1]");
    ExpandingParams e;
    e.s = static_cast<int>(std::ceil(1.0 / p));
    e.d1 = 1.0 / 25.0;
    e.d2 = n * p / 16.0;
    e.d3 = n * p;
    e.t = 12.0 / p;
    return e;
}

ExpanderBound expander_bound(const ExpandingParams& p, int n) {
    ExpanderBound b;
    double delta = p.delta(n);
    double inf = std::numeric_limits<double>::infinity();
    if (delta >= 1.0) {
        // the per-round growth factor 2-delta drops to 1 or below; the
        // matching analysis no longer bounds anything
        b.branch_bound = b.congestion_bound = b.round_bound = inf;
        b.finite = false;
        return b;
    }
    double a = static_cast<double>(p.saturation_threshold(n));
    double exponent = std::log(2.0) / std::log(2.0 - delta);
    b.branch_bound = 4.0 * a * std::pow(1.0 / (2.0 * p.d1), exponent) + p.t;
    b.congestion_bound = p.d3 * b.branch_bound;
    b.round_bound = std::max(0.0, std::ceil(std::log(1.0 / (2.0 * p.d1)) / std::log(2.0 - delta))) + 2;
    b.finite = true;
    return b;
}

// ---------------------------------------------------------------- checking

namespace {

long long neighborhood_size(const Graph& g, const std::vector<int>& s) {
    std::vector<char> in(g.n, 0), counted(g.n, 0);
    for (int v : s) in[v] = 1;
    long long c = 0;
    for (int v : s)
        for (int w : g.adj[v])
            if (!in[w] && !counted[w]) {
                counted[w] = 1;
                ++c;
            }
    return c;
}

long long cut_size(const Graph& g, const std::vector<char>& in) {
    long long c = 0;
    for (auto [u, v] : g.edges) c += in[u] != in[v];
    return c;
}

// neighbors of sprime that lie outside s
long long outside_neighbors(const Graph& g, const std::vector<char>& in_s,
                            const std::vector<int>& sprime) {
    std::vector<char> counted(g.n, 0);
    long long c = 0;
    for (int v : sprime)
        for (int w : g.adj[v])
            if (!in_s[w] && !counted[w]) {
                counted[w] = 1;
                ++c;
            }
    return c;
}

long long choose_capped(int n, int k, long long cap) {
    long long c = 1;
    for (int i = 0; i < k; ++i) {
        c = c * (n - i) / (i + 1);
        if (c > cap) return cap + 1;
    }
    return c;
}

// all k-subsets of 0..n-1, in lexicographic order
template <typename F>
void for_each_subset(int n, int k, F&& f) {
    std::vector<int> idx(k);
    std::iota(idx.begin(), idx.end(), 0);
    while (true) {
        f(idx);
        int i = k - 1;
        while (i >= 0 && idx[i] == n - k + i) --i;
        if (i < 0) break;
        ++idx[i];
        for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
}

std::vector<int> random_subset(Rng& rng, int n, int size) {
    std::vector<int> pool(n);
    std::iota(pool.begin(), pool.end(), 0);
    for (int i = 0; i < size; ++i) {
        int j = i + static_cast<int>(rng.below(n - i));
        std::swap(pool[i], pool[j]);
    }
    pool.resize(size);
    std::sort(pool.begin(), pool.end());
    return pool;
}

}  // namespace

ExpandingReport check_expanding(const Graph& g, const ExpandingParams& p, CheckMode mode,
                                uint64_t seed, long long samples, long long enum_cap) {
    p.validate(g.n);
    ExpandingReport rep;
    int n = g.n;
    Rng rng(seed);
    auto record_fail = [&](int cond, std::vector<int> witness) {
        auto& c = rep.conditions[cond - 1];
        c.pass = false;
        c.witness = witness;
        if (rep.pass) {
            rep.pass = false;
            rep.failed_condition = cond;
            rep.witness = std::move(witness);
        }
    };

    // (1) |N(S)| >= d1*n for all |S| = s
    {
        auto& c = rep.conditions[0];
        c.exhaustive = mode == CheckMode::ExhaustiveCapped &&
                       choose_capped(n, p.s, enum_cap) <= enum_cap && p.s <= n;
        auto test = [&](const std::vector<int>& s) {
            ++c.checked;
            if (neighborhood_size(g, s) < p.d1 * n && c.pass) record_fail(1, s);
        };
        if (c.exhaustive)
            for_each_subset(n, p.s, test);
        else
            for (long long i = 0; i < samples; ++i) test(random_subset(rng, n, std::min(p.s, n)));
    }

    // (2) |N(S)| >= d2*|S| for all |S| <= s
    {
        auto& c = rep.conditions[1];
        long long total = 0;
        for (int k = 1; k <= std::min(p.s, n); ++k) {
            total += choose_capped(n, k, enum_cap);
            if (total > enum_cap) break;
        }
        c.exhaustive = mode == CheckMode::ExhaustiveCapped && total <= enum_cap;
        auto test = [&](const std::vector<int>& s) {
            ++c.checked;
            if (neighborhood_size(g, s) < p.d2 * static_cast<double>(s.size()) && c.pass)
                record_fail(2, s);
        };
        if (c.exhaustive)
            for (int k = 1; k <= std::min(p.s, n); ++k) for_each_subset(n, k, test);
        else
            for (long long i = 0; i < samples; ++i)
                test(random_subset(rng, n, 1 + static_cast<int>(rng.below(std::min(p.s, n)))));
    }

    // (3) |N_{V-S}(S')| >= |S'| - t for |S| <= n/2, S' inside S.
    // Sampled pairs; S' = S is tested alongside a random subset since the
    // full set is the tightest choice.
    {
        auto& c = rep.conditions[2];
        c.exhaustive = false;
        for (long long i = 0; i < samples; ++i) {
            int size = 1 + static_cast<int>(rng.below(std::max(1, n / 2)));
            auto s = random_subset(rng, n, size);
            std::vector<char> in_s(n, 0);
            for (int v : s) in_s[v] = 1;
            std::vector<int> sprime;
            for (int v : s)
                if (rng.below(2)) sprime.push_back(v);
            for (const auto& sp : {s, sprime}) {
                ++c.checked;
                if (outside_neighbors(g, in_s, sp) <
                        static_cast<double>(sp.size()) - p.t &&
                    c.pass)
                    record_fail(3, s);
            }
        }
    }

    // (4) cut(S) <= d3*|S| for all S
    {
        auto& c = rep.conditions[3];
        c.exhaustive = mode == CheckMode::ExhaustiveCapped && n <= 62 &&
                       (1LL << n) <= enum_cap;
        if (c.exhaustive) {
            // Gray-code walk, cut maintained incrementally
            std::vector<char> in(n, 0);
            std::vector<int> nbr_in(n, 0);
            long long cut = 0, size = 0;
            uint64_t gray_prev = 0;
            for (uint64_t i = 1; i < (1ULL << n); ++i) {
                uint64_t gray = i ^ (i >> 1);
                int v = std::countr_zero(gray ^ gray_prev);
                gray_prev = gray;
                if (in[v]) {
                    in[v] = 0;
                    --size;
                    cut -= g.degree(v) - 2LL * nbr_in[v];
                    for (int w : g.adj[v]) --nbr_in[w];
                } else {
                    cut += g.degree(v) - 2LL * nbr_in[v];
                    for (int w : g.adj[v]) ++nbr_in[w];
                    in[v] = 1;
                    ++size;
                }
                ++c.checked;
                if (cut > p.d3 * size && c.pass) {
                    std::vector<int> witness;
                    for (int x = 0; x < n; ++x)
                        if (in[x]) witness.push_back(x);
                    record_fail(4, witness);
                }
            }
        } else {
            for (long long i = 0; i < samples; ++i) {
                std::vector<char> in(n, 0);
                std::vector<int> members;
                for (int v = 0; v < n; ++v)
                    if (rng.below(2)) {
                        in[v] = 1;
                        members.push_back(v);
                    }
                if (members.empty()) continue;
                ++c.checked;
                if (cut_size(g, in) > p.d3 * static_cast<double>(members.size()) && c.pass)
                    record_fail(4, members);
            }
        }
    }
    return rep;
}

// ---------------------------------------------------------------- matching

std::vector<std::pair<int, int>> max_bipartite_matching(const std::vector<int>& left,
                                                        const std::vector<int>& right,
                                                        const std::vector<std::pair<int, int>>& edges) {
    int nl = static_cast<int>(left.size()), nr = static_cast<int>(right.size());
    std::vector<int> lidx, ridx;
    {
        int maxid = -1;
        for (int v : left) maxid = std::max(maxid, v);
        for (int v : right) maxid = std::max(maxid, v);
        lidx.assign(maxid + 1, -1);
        ridx.assign(maxid + 1, -1);
        for (int i = 0; i < nl; ++i) lidx[left[i]] = i;
        for (int i = 0; i < nr; ++i) ridx[right[i]] = i;
    }
    std::vector<std::vector<int>> adj(nl);
    for (auto [l, r] : edges) {
        if (l < 0 || l >= static_cast<int>(lidx.size()) || lidx[l] < 0 || r < 0 ||
            r >= static_cast<int>(ridx.size()) || ridx[r] < 0)
            throw std::invalid_argument("matching: edge endpoint outside the bipartition");
        adj[lidx[l]].push_back(ridx[r]);
    }
    for (auto& a : adj) {
        std::sort(a.begin(), a.end());
        a.erase(std::unique(a.begin(), a.end()), a.end());
    }

    std::vector<int> match_r(nr, -1), match_l(nl, -1);
    std::vector<char> used(nr, 0);
    auto augment = [&](auto&& self, int l) -> bool {
        for (int r : adj[l]) {
            if (used[r]) continue;
            used[r] = 1;
            if (match_r[r] < 0 || self(self, match_r[r])) {
                match_r[r] = l;
                match_l[l] = r;
                return true;
            }
        }
        return false;
    };
    for (int l = 0; l < nl; ++l) {
        std::fill(used.begin(), used.end(), 0);
        augment(augment, l);
    }
    std::vector<std::pair<int, int>> out;
    for (int l = 0; l < nl; ++l)
        if (match_l[l] >= 0) out.emplace_back(left[l], right[match_l[l]]);
    return out;
}

// ---------------------------------------------------------------- growth

namespace {

struct Growth {
    const Graph& g;
    const ExpandingParams& p;
    long long a_cap;  // saturation threshold
    int root;
    std::vector<int> parent;
    std::vector<int> branch_of;  // -1 outside, -2 root
    std::vector<long long> branch_size;
    long long in_tree = 0;

    Growth(const Graph& graph, const ExpandingParams& params)
        : g(graph), p(params), a_cap(params.saturation_threshold(graph.n)) {
        root = g.max_degree_vertex();
        parent.assign(g.n, -3);
        branch_of.assign(g.n, -1);
        parent[root] = -1;
        branch_of[root] = -2;
        in_tree = 1;
        for (int w : g.adj[root]) {
            parent[w] = root;
            branch_of[w] = static_cast<int>(branch_size.size());
            branch_size.push_back(1);
            ++in_tree;
        }
    }

    bool saturated(int b) const { return branch_size[b] >= a_cap; }

    void attach(int b_vertex, int a_vertex) {
        parent[b_vertex] = a_vertex;
        int br = branch_of[a_vertex];
        if (br == -2) {  // new child of the root opens a branch
            br = static_cast<int>(branch_size.size());
            branch_size.push_back(0);
        }
        branch_of[b_vertex] = br;
        ++branch_size[br];
        ++in_tree;
    }

    std::vector<int> subtree(int x) const {
        std::vector<std::vector<int>> ch(g.n);
        for (int v = 0; v < g.n; ++v)
            if (parent[v] >= 0) ch[parent[v]].push_back(v);
        std::vector<int> out, stack{x};
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            out.push_back(v);
            for (int w : ch[v]) stack.push_back(w);
        }
        return out;
    }

    // action 1: smallest outside vertex adjacent to an unsaturated branch,
    // then its smallest tree neighbor in such a branch
    bool try_attach() {
        for (int b = 0; b < g.n; ++b) {
            if (branch_of[b] != -1) continue;
            for (int a : g.adj[b]) {
                if (branch_of[a] < 0) continue;
                if (saturated(branch_of[a])) continue;
                attach(b, a);
                return true;
            }
        }
        return false;
    }

    // action 2: transfer the smallest subtree that can move from a saturated
    // branch into another branch without saturating it, then pull one
    // outside vertex next to either touched branch
    bool try_transfer(long long& transfers) {
        std::vector<long long> subtree_size(g.n, 0);
        {
            // subtree sizes via reverse topological sweep
            std::vector<std::vector<int>> ch(g.n);
            for (int v = 0; v < g.n; ++v)
                if (parent[v] >= 0) ch[parent[v]].push_back(v);
            std::vector<int> order, stack{root};
            order.reserve(g.n);
            while (!stack.empty()) {
                int v = stack.back();
                stack.pop_back();
                order.push_back(v);
                for (int w : ch[v]) stack.push_back(w);
            }
            for (auto it = order.rbegin(); it != order.rend(); ++it) {
                subtree_size[*it] += 1;
                if (parent[*it] >= 0) subtree_size[parent[*it]] += subtree_size[*it];
            }
        }
        // transferable x with smallest subtree, ties by smallest id
        int best_x = -1;
        auto admits_target = [&](int x) {
            for (int y : g.adj[x]) {
                int by = branch_of[y];
                if (by >= 0 && by != branch_of[x] && branch_size[by] + subtree_size[x] < a_cap)
                    return true;
            }
            return false;
        };
        for (int x = 0; x < g.n; ++x) {
            int bx = branch_of[x];
            if (bx < 0 || !saturated(bx)) continue;
            if (best_x >= 0 && subtree_size[x] >= subtree_size[best_x]) continue;
            if (admits_target(x)) best_x = x;
        }
        if (best_x < 0) return false;
        // target branch with smallest index, then smallest attachment vertex
        int best_y = -1;
        for (int y : g.adj[best_x]) {
            int by = branch_of[y];
            if (by < 0 || by == branch_of[best_x]) continue;
            if (branch_size[by] + subtree_size[best_x] >= a_cap) continue;
            if (best_y < 0 || by < branch_of[best_y] || (by == branch_of[best_y] && y < best_y))
                best_y = y;
        }

        int from = branch_of[best_x], to = branch_of[best_y];
        auto moved = subtree(best_x);
        parent[best_x] = best_y;
        for (int v : moved) branch_of[v] = to;
        branch_size[from] -= static_cast<long long>(moved.size());
        branch_size[to] += static_cast<long long>(moved.size());
        ++transfers;
        if (saturated(from) || saturated(to))
            throw internal_error("grow_tree: transfer left a touched branch saturated");

        // step 2b: some outside vertex must border one of the touched branches
        for (int b = 0; b < g.n; ++b) {
            if (branch_of[b] != -1) continue;
            for (int a : g.adj[b]) {
                int ba = branch_of[a];
                if (ba == from || ba == to) {
                    attach(b, a);
                    return true;
                }
            }
        }
        throw expanding_violation_error(
            "grow_tree: no outside vertex borders the branches touched by a transfer");
    }
};

}  // namespace

GrowResult grow_tree(const Graph& g, const ExpandingParams& p) {
    p.validate(g.n);
    if (g.n == 0) throw std::invalid_argument("grow_tree: empty graph");
    GrowResult res;
    Growth growth(g, p);
    double goal = p.d1 * g.n;

    // Phase 1: balanced growth
    while (static_cast<double>(growth.in_tree) < goal && growth.in_tree < g.n) {
        if (growth.try_attach()) {
            ++res.trace.phase1_rounds;
            continue;
        }
        if (growth.try_transfer(res.trace.transfers)) {
            ++res.trace.phase1_rounds;
            continue;
        }
        long long saturated_count = 0;
        for (size_t b = 0; b < growth.branch_size.size(); ++b) saturated_count += growth.saturated(static_cast<int>(b));
        throw expanding_violation_error(
            "grow_tree: phase 1 deadlock with " + std::to_string(growth.in_tree) + "/" +
            std::to_string(static_cast<long long>(goal + 0.999)) + " vertices reached, " +
            std::to_string(saturated_count) + "/" + std::to_string(growth.branch_size.size()) +
            " branches saturated and no attachable or transferable vertex");
    }
    for (long long bs : growth.branch_size) {
        if (bs > growth.a_cap) throw internal_error("grow_tree: branch exceeded saturation cap");
        res.trace.branch_sizes_phase1.push_back(static_cast<int>(bs));
    }

    // Phase 2: matching rounds between the tree and its complement
    while (growth.in_tree < g.n) {
        std::vector<int> inside, outside;
        for (int v = 0; v < g.n; ++v)
            (growth.branch_of[v] != -1 ? inside : outside).push_back(v);
        std::vector<std::pair<int, int>> cross;
        for (int v : inside)
            for (int w : g.adj[v])
                if (growth.branch_of[w] == -1) cross.emplace_back(v, w);
        auto matching = max_bipartite_matching(inside, outside, cross);
        if (matching.empty())
            throw disconnected_error("grow_tree: no edges left between the tree and " +
                                     std::to_string(outside.size()) + " remaining vertices");
        for (auto [a, b] : matching) growth.attach(b, a);
        ++res.trace.phase2_rounds;
    }

    auto bound = expander_bound(p, g.n);
    if (bound.finite && static_cast<double>(res.trace.phase2_rounds) > bound.round_bound)
        throw internal_error("grow_tree: phase 2 used more rounds than the analysis allows");

    for (long long bs : growth.branch_size) res.trace.branch_sizes_final.push_back(static_cast<int>(bs));
    res.tree = RootedTree::from_parent(growth.root, growth.parent);
    return res;
}

}  // namespace stc
