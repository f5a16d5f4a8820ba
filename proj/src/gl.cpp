#include "stc/gl.hpp"

#include <algorithm>
#include <climits>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "stc/errors.hpp"
#include "stc/vertex_cut.hpp"

namespace stc {

// ---------------------------------------------------------------- spec

void PartitionSpec::validate(const Graph& g) const {
    if (k < 1) throw std::invalid_argument("spec: k must be positive");
    if (static_cast<int>(terminals.size()) != k) throw std::invalid_argument("spec: need k terminals");
    if (static_cast<int>(targets.size()) != k) throw std::invalid_argument("spec: need k targets");
    if (static_cast<int>(weights.size()) != g.n) throw std::invalid_argument("spec: need n weights");
    for (long long w : weights)
        if (w <= 0) throw std::invalid_argument("spec: weights must be positive");
    std::vector<int> ts = terminals;
    std::sort(ts.begin(), ts.end());
    if (std::adjacent_find(ts.begin(), ts.end()) != ts.end())
        throw std::invalid_argument("spec: terminals must be distinct");
    for (int t : terminals)
        if (t < 0 || t >= g.n) throw std::invalid_argument("spec: terminal out of range");
    long long total = 0;
    for (int j = 0; j < k; ++j) {
        if (targets[j] <= 0) throw std::invalid_argument("spec: targets must be positive");
        if (targets[j] < weights[terminals[j]])
            throw std::invalid_argument("spec: target below its terminal weight");
        total += targets[j];
    }
    long long wV = 0;
    for (long long w : weights) wV += w;
    if (total != wV) throw std::invalid_argument("spec: targets must sum to total weight");
}

long long PartitionSpec::max_weight() const {
    long long m = 0;
    for (long long w : weights) m = std::max(m, w);
    return m;
}

long long PartitionSpec::weight_of(const std::vector<int>& verts) const {
    long long s = 0;
    for (int v : verts) s += weights[v];
    return s;
}

PartitionSpec read_partition_spec(std::istream& is, int n) {
    PartitionSpec spec;
    std::string line;
    if (!std::getline(is, line)) throw std::invalid_argument("spec read: missing k line");
    spec.k = std::stoi(line);
    auto read_row = [&](const char* what) {
        if (!std::getline(is, line)) throw std::invalid_argument(std::string("spec read: missing ") + what);
        std::istringstream ss(line);
        std::vector<long long> row;
        long long x;
        while (ss >> x) row.push_back(x);
        return row;
    };
    for (long long t : read_row("terminals")) spec.terminals.push_back(static_cast<int>(t));
    spec.targets = read_row("targets");
    if (std::getline(is, line)) {
        std::istringstream ss(line);
        long long x;
        while (ss >> x) spec.weights.push_back(x);
    }
    if (spec.weights.empty()) spec.weights.assign(n, 1);
    return spec;
}

void write_partition_spec(std::ostream& os, const PartitionSpec& spec, bool write_weights) {
    os << spec.k << '\n';
    for (int j = 0; j < spec.k; ++j) os << spec.terminals[j] << (j + 1 == spec.k ? '\n' : ' ');
    for (int j = 0; j < spec.k; ++j) os << spec.targets[j] << (j + 1 == spec.k ? '\n' : ' ');
    if (write_weights) {
        for (size_t i = 0; i < spec.weights.size(); ++i)
            os << spec.weights[i] << (i + 1 == spec.weights.size() ? '\n' : ' ');
    }
}

// ---------------------------------------------------------------- labels

std::vector<int> Configuration::unassigned() const {
    std::vector<int> out;
    for (size_t v = 0; v < set_of.size(); ++v)
        if (set_of[v] < 0) out.push_back(static_cast<int>(v));
    return out;
}

int Configuration::assigned_count() const {
    int c = 0;
    for (auto& s : sets) c += static_cast<int>(s.size());
    return c;
}

std::vector<char> reservoir_mask(const Graph& g, const PartitionSpec& spec,
                                 const std::vector<std::vector<int>>& sets, int j, int v) {
    std::vector<char> in(g.n, 0), res(g.n, 0);
    for (int u : sets[j]) in[u] = 1;
    in[v] = 0;
    int t = spec.terminals[j];
    if (t == v || !in[t]) return res;
    std::vector<int> stack{t};
    res[t] = 1;
    while (!stack.empty()) {
        int x = stack.back();
        stack.pop_back();
        for (int w : g.adj[x])
            if (in[w] && !res[w]) {
                res[w] = 1;
                stack.push_back(w);
            }
    }
    return res;
}

void recompute_labels(const Graph& g, const PartitionSpec& spec, Configuration& c) {
    int n = g.n;
    c.set_of.assign(n, -1);
    for (int j = 0; j < spec.k; ++j)
        for (int v : c.sets[j]) {
            if (c.set_of[v] != -1) throw internal_error("labels: vertex in two sets");
            c.set_of[v] = j;
        }

    c.heavy.assign(spec.k, 0);
    for (int j = 0; j < spec.k; ++j)
        c.heavy[j] = spec.weight_of(c.sets[j]) >= spec.targets[j];

    // cascade structure: heavy sets only, members of the set, never the
    // terminal, no repeats, successor outside predecessor's reservoir
    std::vector<int> cascade_of(n, -1);
    for (int j = 0; j < spec.k; ++j) {
        const auto& cas = c.cascades[j];
        if (!cas.empty() && !c.heavy[j]) throw internal_error("labels: cascade on light set");
        for (size_t i = 0; i < cas.size(); ++i) {
            int z = cas[i];
            if (z < 0 || z >= n || c.set_of[z] != j) throw internal_error("labels: cascade vertex outside its set");
            if (z == spec.terminals[j]) throw internal_error("labels: terminal in cascade");
            if (cascade_of[z] != -1) throw internal_error("labels: repeated cascade vertex");
            cascade_of[z] = j;
        }
        for (size_t i = 0; i + 1 < cas.size(); ++i) {
            auto res = reservoir_mask(g, spec, c.sets, j, cas[i]);
            if (res[cas[i + 1]])
                throw internal_error("labels: cascade successor inside predecessor reservoir");
        }
    }

    // reservoirs of cascade vertices, needed for level propagation
    std::vector<std::vector<char>> res_of(n);
    std::vector<int> cascade_vertices;
    for (int j = 0; j < spec.k; ++j)
        for (int z : c.cascades[j]) {
            res_of[z] = reservoir_mask(g, spec, c.sets, j, z);
            cascade_vertices.push_back(z);
        }

    c.level.assign(n, LEVEL_INF);
    c.rank.assign(n, 0);
    for (int j = 0; j < spec.k; ++j)
        if (!c.heavy[j])
            for (int v : c.sets[j]) c.level[v] = 0;

    // staged fixed point: rank i+1 needs an edge to level i and none lower;
    // a rank-i reservoir grants level i to vertices not captured earlier
    for (int stage = 1; stage <= n + 1; ++stage) {
        bool progress = false;
        for (int z : cascade_vertices) {
            if (c.rank[z] != 0) continue;
            int lo = LEVEL_INF;
            for (int w : g.adj[z]) lo = std::min(lo, c.level[w]);
            if (lo == stage - 1) {
                c.rank[z] = stage;
                progress = true;
            }
        }
        for (int z : cascade_vertices) {
            if (c.rank[z] != stage) continue;
            for (int v = 0; v < n; ++v)
                if (res_of[z][v] && c.level[v] == LEVEL_INF) {
                    c.level[v] = stage;
                    progress = true;
                }
        }
        if (!progress) break;
    }

    for (int z : cascade_vertices)
        if (c.rank[z] == 0) throw internal_error("labels: cascade vertex has undefined rank");

    c.highest_rank = 0;
    for (int z : cascade_vertices) c.highest_rank = std::max(c.highest_rank, c.rank[z]);
}

ConfigVector config_vector(const Graph& g, const Configuration& c) {
    ConfigVector v;
    for (char h : c.heavy)
        if (!h) ++v.light_count;
    v.level_counts.assign(g.n + 1, 0);
    for (int x = 0; x < g.n; ++x)
        if (c.level[x] != LEVEL_INF) ++v.level_counts[c.level[x]];
    return v;
}

int compare(const ConfigVector& a, const ConfigVector& b) {
    return compare_prefix(a, b, static_cast<int>(std::max(a.level_counts.size(), b.level_counts.size())));
}

int compare_prefix(const ConfigVector& a, const ConfigVector& b, int ell) {
    if (a.light_count != b.light_count) return a.light_count < b.light_count ? 1 : -1;
    for (int i = 0; i <= ell; ++i) {
        long long ca = i < static_cast<int>(a.level_counts.size()) ? a.level_counts[i] : 0;
        long long cb = i < static_cast<int>(b.level_counts.size()) ? b.level_counts[i] : 0;
        if (ca != cb) return ca > cb ? 1 : -1;
    }
    return 0;
}

// ---------------------------------------------------------------- audit

void audit_configuration(const Graph& g, const PartitionSpec& spec, const Configuration& c) {
    if (static_cast<int>(c.sets.size()) != spec.k || static_cast<int>(c.cascades.size()) != spec.k)
        throw internal_error("audit: set/cascade arity mismatch");
    std::vector<char> seen(g.n, 0);
    long long wmax = spec.max_weight();
    for (int j = 0; j < spec.k; ++j) {
        const auto& a = c.sets[j];
        if (a.empty()) throw internal_error("audit: empty set");
        bool has_terminal = false;
        for (int v : a) {
            if (v < 0 || v >= g.n) throw internal_error("audit: vertex out of range");
            if (seen[v]) throw internal_error("audit: sets are not disjoint");
            seen[v] = 1;
            has_terminal |= v == spec.terminals[j];
        }
        if (!has_terminal) throw internal_error("audit: terminal missing from its set");
        if (!subset_connected(g, a)) throw internal_error("audit: set induces a disconnected subgraph");
        if (spec.weight_of(a) > spec.targets[j] + wmax - 1)
            throw internal_error("audit: set exceeds fitted weight bound");
    }
    for (int j = 0; j < spec.k; ++j) {
        const auto& cas = c.cascades[j];
        for (size_t i = 0; i + 1 < cas.size(); ++i)
            if (c.rank[cas[i]] >= c.rank[cas[i + 1]])
                throw internal_error("audit: cascade ranks not strictly increasing");
    }
}

// ---------------------------------------------------------------- goodness

std::vector<std::pair<int, int>> find_bridges(const Graph& g, const Configuration& c) {
    std::vector<std::pair<int, int>> out;
    for (int u = 0; u < g.n; ++u) {
        if (c.set_of[u] >= 0) continue;
        for (int v : g.adj[u])
            if (c.set_of[v] >= 0 && c.level[v] != LEVEL_INF) out.emplace_back(u, v);
    }
    std::sort(out.begin(), out.end());
    return out;
}

bool is_good(const Graph& g, const PartitionSpec& spec, const Configuration& c, int ell,
             std::string* why) {
    auto fail = [&](const std::string& msg) {
        if (why) *why = msg;
        return false;
    };
    if (c.highest_rank != ell)
        return fail("highest rank " + std::to_string(c.highest_rank) + " != " + std::to_string(ell));

    std::vector<char> is_terminal(g.n, 0);
    for (int t : spec.terminals) is_terminal[t] = 1;

    // ell-maximality: a vertex of level < ell may only neighbor cascade
    // vertices, terminals, or vertices of level at most its own + 1
    for (int v = 0; v < g.n; ++v) {
        if (c.level[v] == LEVEL_INF || c.level[v] > ell - 1) continue;
        for (int u : g.adj[v]) {
            if (c.rank[u] > 0 || is_terminal[u]) continue;
            if (c.level[u] == LEVEL_INF || c.level[u] > c.level[v] + 1)
                return fail("maximality fails at vertex " + std::to_string(v) + " via neighbor " +
                            std::to_string(u));
        }
    }
    for (auto [u, v] : find_bridges(g, c))
        if (c.level[v] != ell)
            return fail("bridge (" + std::to_string(u) + "," + std::to_string(v) +
                        ") lands on level " + std::to_string(c.level[v]));
    return true;
}

// ---------------------------------------------------------------- steps

Configuration initial_configuration(const Graph& g, const PartitionSpec& spec) {
    spec.validate(g);
    Configuration c;
    c.sets.assign(spec.k, {});
    c.cascades.assign(spec.k, {});
    for (int j = 0; j < spec.k; ++j) c.sets[j] = {spec.terminals[j]};
    recompute_labels(g, spec, c);
    audit_configuration(g, spec, c);
    if (!is_good(g, spec, c, 0)) throw internal_error("initial configuration is not 0-good");
    return c;
}

Configuration step_good_inc(const Graph& g, const PartitionSpec& spec, const Configuration& c) {
    int ell = c.highest_rank;
    std::string why;
    if (!is_good(g, spec, c, ell, &why))
        throw std::logic_error("step_good_inc precondition: configuration is not good: " + why);
    if (!find_bridges(g, c).empty())
        throw std::logic_error("step_good_inc precondition: configuration has a bridge");
    if (c.assigned_count() == g.n)
        throw std::logic_error("step_good_inc precondition: nothing left to assign");

    Configuration b = c;
    bool extended = false;
    for (int j = 0; j < spec.k; ++j) {
        if (!c.heavy[j]) continue;
        // X_j: unreached set members adjacent to the frontier level, excluding
        // the terminal and vertices already in a cascade (re-inserting one
        // would repeat it; only the last cascade vertex of a set can sit at
        // level infinity, and it already carries a rank)
        std::vector<int> x;
        for (int v : c.sets[j]) {
            if (c.level[v] != LEVEL_INF || v == spec.terminals[j] || c.rank[v] > 0) continue;
            bool frontier = false;
            for (int u : g.adj[v]) frontier |= c.level[u] == ell;
            if (frontier) x.push_back(v);
        }
        if (x.empty()) continue;
        int chosen = -1;
        for (int cand : x) {
            auto res = reservoir_mask(g, spec, c.sets, j, cand);
            bool covers = true;
            for (int other : x) covers &= other == cand || res[other];
            if (covers) {
                chosen = cand;
                break;
            }
        }
        if (chosen < 0)
            throw internal_error("step_good_inc: no extension vertex covers the rest of X_j");
        b.cascades[j].push_back(chosen);
        extended = true;
    }
    if (!extended)
        throw connectivity_error(
            "step_good_inc: every X_j is empty; the input is not k-connected "
            "(a cut of fewer than k vertices separates the unreached part)");

    recompute_labels(g, spec, b);
    audit_configuration(g, spec, b);
    if (!is_good(g, spec, b, ell + 1, &why))
        throw internal_error("step_good_inc: result is not (ell+1)-good: " + why);
    if (compare(config_vector(g, b), config_vector(g, c)) <= 0)
        throw internal_error("step_good_inc: result is not strictly better");
    return b;
}

namespace {

// DFS spanning tree of the subgraph induced by `mask`, rooted at r.
// Children lists follow sorted adjacency, so deletions are deterministic.
struct LocalTree {
    std::vector<int> parent;      // -1 root, -2 absent
    std::vector<int> degree_in;   // tree degree
    std::vector<int> members;

    LocalTree(const Graph& g, const std::vector<char>& mask, int r) {
        parent.assign(g.n, -2);
        degree_in.assign(g.n, 0);
        std::vector<int> stack{r};
        parent[r] = -1;
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            members.push_back(v);
            for (int w : g.adj[v])
                if (mask[w] && parent[w] == -2) {
                    parent[w] = v;
                    ++degree_in[v];
                    ++degree_in[w];
                    stack.push_back(w);
                }
        }
        std::sort(members.begin(), members.end());
    }

    bool contains(int v) const { return parent[v] != -2; }

    int smallest_leaf_excluding(int r) const {
        for (int v : members)
            if (v != r && contains(v) && degree_in[v] <= 1) return v;
        return -1;
    }

    void remove_leaf(int v) {
        if (parent[v] >= 0) --degree_in[parent[v]];
        parent[v] = -2;
        degree_in[v] = 0;
    }

    int size() const {
        int c = 0;
        for (int v : members) c += contains(v);
        return c;
    }
};

}  // namespace

Configuration step_bridging(const Graph& g, const PartitionSpec& spec, const Configuration& c,
                            std::pair<int, int> bridge) {
    int ell = c.highest_rank;
    std::string why;
    if (!is_good(g, spec, c, ell, &why))
        throw std::logic_error("step_bridging precondition: configuration is not good: " + why);
    auto [u, v] = bridge;
    if (u < 0 || u >= g.n || v < 0 || v >= g.n || c.set_of[u] >= 0 || c.set_of[v] < 0 ||
        c.level[v] == LEVEL_INF || !g.has_edge(u, v))
        throw std::invalid_argument("step_bridging: supplied edge is not a bridge");
    int js = c.set_of[v];
    long long wmax = spec.max_weight();

    Configuration b = c;
    if (!c.heavy[js]) {
        // light target set: absorb u, reset every cascade
        b.sets[js].push_back(u);
        std::sort(b.sets[js].begin(), b.sets[js].end());
        for (auto& cas : b.cascades) cas.clear();
    } else if (spec.weight_of(c.sets[js]) + spec.weights[u] <= spec.targets[js] + wmax - 1) {
        // heavy and still fits
        b.sets[js].push_back(u);
        std::sort(b.sets[js].begin(), b.sets[js].end());
    } else {
        // heavy and overflowing: absorb u, then shed level-infinity vertices
        // leaf by leaf until the set fits again
        const auto& cas = c.cascades[js];
        if (cas.empty() || c.rank[cas.back()] != ell)
            throw internal_error("step_bridging: target set lacks a frontier cascade vertex");
        int z = cas.back();

        auto rz = reservoir_mask(g, spec, c.sets, js, z);
        std::vector<char> shed_zone(g.n, 0);  // R-bar plus z
        for (int x : c.sets[js])
            if (!rz[x] && x != z) shed_zone[x] = 1;
        shed_zone[z] = 1;

        std::vector<char> present(g.n, 0);
        for (int x : c.sets[js]) present[x] = 1;
        present[u] = 1;
        long long weight = spec.weight_of(c.sets[js]) + spec.weights[u];
        long long cap = spec.targets[js] + wmax - 1;

        LocalTree tau(g, shed_zone, z);
        if (tau.size() == 0 || std::count(shed_zone.begin(), shed_zone.end(), 1) != tau.size())
            throw internal_error("step_bridging: shed zone is not connected through z");

        bool z_deleted = false;
        while (weight > cap) {
            int leaf = tau.smallest_leaf_excluding(z);
            if (leaf >= 0) {
                tau.remove_leaf(leaf);
                present[leaf] = 0;
                weight -= spec.weights[leaf];
                continue;
            }
            if (!z_deleted) {
                present[z] = 0;
                weight -= spec.weights[z];
                z_deleted = true;
                continue;
            }
            present[u] = 0;
            weight -= spec.weights[u];
            break;
        }
        if (weight > cap) throw internal_error("step_bridging: set still overflows after shedding");

        b.sets[js].clear();
        for (int x = 0; x < g.n; ++x)
            if (present[x]) b.sets[js].push_back(x);

        if (z_deleted) {
            // every cascade loses its frontier-rank vertex
            for (int j = 0; j < spec.k; ++j)
                if (!b.cascades[j].empty() && c.rank[b.cascades[j].back()] == ell)
                    b.cascades[j].pop_back();
        }
    }

    recompute_labels(g, spec, b);
    audit_configuration(g, spec, b);
    // contract: strictly better and equally good, or one level down with a
    // bridge to the new frontier
    int cmp = compare(config_vector(g, b), config_vector(g, c));
    if (cmp > 0) {
        if (!is_good(g, spec, b, b.highest_rank, &why))
            throw internal_error("step_bridging: improved result is not good: " + why);
    } else {
        if (compare_prefix(config_vector(g, b), config_vector(g, c), std::max(ell - 1, 0)) < 0)
            throw internal_error("step_bridging: result lost ground below the frontier");
        if (b.highest_rank != ell - 1)
            throw internal_error("step_bridging: non-improving result did not step down one level");
        if (!is_good(g, spec, b, ell - 1, &why))
            throw internal_error("step_bridging: result is not (ell-1)-good: " + why);
        if (find_bridges(g, b).empty())
            throw internal_error("step_bridging: demoted result has no bridge to continue with");
    }
    return b;
}

// ---------------------------------------------------------------- driver

void validate_partition(const Graph& g, const PartitionSpec& spec, const Partition& p) {
    if (static_cast<int>(p.parts.size()) != spec.k)
        throw internal_error("partition: wrong number of parts");
    std::vector<char> seen(g.n, 0);
    long long wmax = spec.max_weight();
    for (int j = 0; j < spec.k; ++j) {
        const auto& part = p.parts[j];
        if (part.empty()) throw internal_error("partition: empty part");
        bool has_terminal = false;
        for (int v : part) {
            if (seen[v]) throw internal_error("partition: parts overlap");
            seen[v] = 1;
            has_terminal |= v == spec.terminals[j];
        }
        if (!has_terminal) throw internal_error("partition: terminal outside its part");
        if (!subset_connected(g, part)) throw internal_error("partition: part is disconnected");
        if (spec.weight_of(part) > spec.targets[j] + wmax - 1)
            throw internal_error("partition: part exceeds fitted bound");
    }
    for (int v = 0; v < g.n; ++v)
        if (!seen[v]) throw internal_error("partition: vertex left uncovered");
}

void write_partition(std::ostream& os, const Partition& p) {
    for (const auto& part : p.parts) {
        for (size_t i = 0; i < part.size(); ++i) os << part[i] << (i + 1 == part.size() ? '\n' : ' ');
    }
}

long long gl_iteration_bound(int n) {
    if (n > 29) return LLONG_MAX;
    return static_cast<long long>(n) << (2 * n);
}

GlResult gl_partition(const Graph& g, const PartitionSpec& spec, GlOptions opts) {
    spec.validate(g);
    int need_k = opts.connectivity > 0 ? opts.connectivity : spec.k;
    if (opts.variant == GlVariant::HalfK && opts.connectivity <= 0)
        throw std::invalid_argument("gl_partition: half-k variant needs the connectivity promise");

    GlResult result;
    if (g.n <= 12) {
        if (g.is_complete()) {
            if (g.n - 1 < spec.k)
                throw connectivity_error("gl_partition: complete graph is only (n-1)-connected");
        } else if (auto cut = vertex_cut_below(g, need_k)) {
            throw connectivity_error("gl_partition: input has a vertex cut of size " +
                                     std::to_string(cut->size()) + " < " + std::to_string(need_k));
        }
    } else {
        result.warnings.push_back("connectivity unverified (n > 12); trusting the caller's promise");
    }

    Configuration cur = initial_configuration(g, spec);
    result.trace.push_back(config_vector(g, cur));
    result.max_rank_seen = cur.highest_rank;
    long long cap = gl_iteration_bound(g.n);

    while (cur.assigned_count() < g.n) {
        if (result.iterations >= cap)
            throw internal_error("gl_partition: iteration bound exceeded");

        auto bridges = find_bridges(g, cur);
        Configuration next = cur;
        if (bridges.empty()) {
            next = step_good_inc(g, spec, cur);
        } else {
            // absorb bridges; each non-improving application drops the
            // frontier one level, so this settles in at most ell+1 rounds
            Configuration inner = cur;
            int guard = cur.highest_rank + 2;
            while (true) {
                if (--guard < 0) throw internal_error("gl_partition: bridging did not settle");
                auto bs = find_bridges(g, inner);
                if (bs.empty()) throw internal_error("gl_partition: bridge vanished mid-iteration");
                inner = step_bridging(g, spec, inner, bs.front());
                result.max_rank_seen = std::max(result.max_rank_seen, inner.highest_rank);
                if (compare(config_vector(g, inner), config_vector(g, cur)) > 0) break;
            }
            next = inner;
        }
        if (compare(config_vector(g, next), config_vector(g, cur)) <= 0)
            throw internal_error("gl_partition: iteration failed to improve the configuration");
        cur = std::move(next);
        result.max_rank_seen = std::max(result.max_rank_seen, cur.highest_rank);
        result.trace.push_back(config_vector(g, cur));
        ++result.iterations;
    }

    if (opts.variant == GlVariant::HalfK && need_k >= 3) {
        long long rank_cap = (2LL * g.n + need_k - 3) / (need_k - 2);  // ceil(2n/(k-2))
        if (result.max_rank_seen > rank_cap)
            throw internal_error("gl_partition: observed rank " + std::to_string(result.max_rank_seen) +
                                 " exceeds cap " + std::to_string(rank_cap));
    }

    result.partition.parts = cur.sets;
    for (auto& part : result.partition.parts) std::sort(part.begin(), part.end());
    for (const auto& part : result.partition.parts)
        result.partition.weights.push_back(spec.weight_of(part));
    validate_partition(g, spec, result.partition);
    return result;
}

}  // namespace stc
