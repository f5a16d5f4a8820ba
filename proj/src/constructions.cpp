#include "stc/constructions.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "stc/errors.hpp"
#include "stc/rng.hpp"

namespace stc {

Graph gen_gnp(int n, double p, uint64_t seed) {
    if (n < 0) throw std::invalid_argument("gen_gnp: negative n");
    if (p < 0 || p > 1) throw std::invalid_argument("gen_gnp: p must lie in [0,1]");
    Rng rng(seed);
    std::vector<Edge> edges;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (rng.unit() < p) edges.emplace_back(u, v);
    return Graph::from_edges(n, std::move(edges));
}

namespace {

// exhaustive edge-expansion check for n <= 20 via a Gray-code walk
bool expansion_exhaustive(const Graph& g, double per_vertex) {
    int n = g.n;
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
        if (2 * size <= n && cut < per_vertex * size) return false;
    }
    return true;
}

double algebraic_connectivity(const Graph& g) {
    Eigen::MatrixXd lap = Eigen::MatrixXd::Zero(g.n, g.n);
    for (auto [u, v] : g.edges) {
        lap(u, u) += 1;
        lap(v, v) += 1;
        lap(u, v) -= 1;
        lap(v, u) -= 1;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(lap, Eigen::EigenvaluesOnly);
    return solver.eigenvalues()(1);
}

bool expansion_sampled(const Graph& g, double per_vertex, uint64_t seed, long long samples) {
    Rng rng(seed);
    for (long long i = 0; i < samples; ++i) {
        std::vector<char> in(g.n, 0);
        long long size = 0;
        for (int v = 0; v < g.n; ++v)
            if (rng.below(2)) {
                in[v] = 1;
                ++size;
            }
        if (size == 0 || 2 * size > g.n) continue;
        long long cut = 0;
        for (auto [u, v] : g.edges) cut += in[u] != in[v];
        if (cut < per_vertex * size) return false;
    }
    return true;
}

}  // namespace

HnmResult gen_hnm(int n, long long m, uint64_t seed, int max_attempts) {
    if (n < 2 || m < 1) throw std::invalid_argument("gen_hnm: need n >= 2 and m >= 1");
    HnmResult res;
    auto& rep = res.report;

    double threshold = 16.0 * n * std::log(static_cast<double>(n));
    if (static_cast<double>(m) < threshold) {
        rep.relaxed_regime = true;
        rep.warnings.push_back("m below 16 n ln n; expansion is measured, not promised");
    }
    if (2 * m > static_cast<long long>(n) * (n - 1)) {
        rep.warnings.push_back("m above n^2/2 regime; sampling probability clamped to 1");
        if (static_cast<long long>(n) * (n - 1) < m)  // even K_n cannot reach m/2 edges
            throw generation_error("gen_hnm: edge window [m/2, 2m] is unreachable for n=" +
                                   std::to_string(n) + ", m=" + std::to_string(m));
    }
    double p = std::min(1.0, 2.0 * static_cast<double>(m) / (static_cast<double>(n) * n));
    double per_vertex = static_cast<double>(m) / (2.0 * n);

    std::string last_reason = "no attempt made";
    for (int attempt = 0; attempt < max_attempts; ++attempt) {
        ++rep.attempts;
        Graph g = gen_gnp(n, p, Rng::mix(seed, attempt));
        if (!is_connected(g)) {
            last_reason = "disconnected sample";
            continue;
        }
        if (2 * g.m() < m || g.m() > 2 * m) {
            last_reason = "edge count " + std::to_string(g.m()) + " outside [m/2, 2m]";
            continue;
        }
        if (n <= 20) {
            rep.verify_mode = "exhaustive";
            if (!expansion_exhaustive(g, per_vertex)) {
                last_reason = "exhaustive expansion check failed";
                continue;
            }
            rep.expansion_verified = true;
        } else {
            rep.lambda2 = n <= 1500 ? algebraic_connectivity(g) : 0.0;
            if (rep.lambda2 >= static_cast<double>(m) / n) {
                // cut(S) >= lambda2 |S| (n-|S|)/n >= (m/2n)|S| for |S| <= n/2
                rep.verify_mode = "spectral";
                rep.expansion_verified = true;
            } else {
                rep.verify_mode = "sampled";
                rep.expansion_verified = false;
                if (!expansion_sampled(g, per_vertex, Rng::mix(seed, 1000 + attempt), 100000)) {
                    last_reason = "sampled expansion check found a violating set";
                    continue;
                }
                rep.warnings.push_back("expansion only spot-checked (lambda2 = " +
                                       std::to_string(rep.lambda2) + " below m/n)");
            }
        }
        res.graph = std::move(g);
        return res;
    }
    throw generation_error("gen_hnm: retry budget exhausted after " + std::to_string(max_attempts) +
                           " attempts (last failure: " + last_reason + ")");
}

// ---------------------------------------------------------------- lb graph

int LbSpec::overlap() const {
    int ov = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(m) / n)));
    while (static_cast<long long>(ov) * ov * n < m) ++ov;
    while (ov > 1 && static_cast<long long>(ov - 1) * (ov - 1) * n >= m) --ov;
    return ov;
}

std::vector<int> LabeledGraph::block(int which) const {
    std::vector<int> out;
    for (size_t v = 0; v < block_mask.size(); ++v)
        if (block_mask[v] & (1u << (which - 1))) out.push_back(static_cast<int>(v));
    return out;
}

LbResult gen_lower_bound_graph(const LbSpec& spec, uint64_t seed) {
    if (spec.n < 2 || spec.m < 1) throw std::invalid_argument("lb graph: need n >= 2 and m >= 1");
    int n = spec.n, ov = spec.overlap();
    if (2 * ov > n) throw std::invalid_argument("lb graph: overlap exceeds half a block");
    LbResult res;
    if (static_cast<double>(spec.m) < 16.0 * n * std::log(static_cast<double>(n)) ||
        static_cast<double>(spec.m) < 100.0 * n)
        res.warnings.push_back("below the m >= max(16 n log n, 100 n) regime; constants are measured");

    int total = spec.total_vertices();
    // block id ranges; overlaps are the shared boundary slices
    auto block_base = [&](int b) { return b == 0 ? 0 : (b == 1 ? n - ov : 2 * (n - ov)); };

    std::vector<Edge> edges;
    for (int b = 0; b < 3; ++b) {
        auto h = gen_hnm(n, spec.m, Rng::mix(seed, b));
        res.block_reports[b] = h.report;
        int base = block_base(b);
        for (auto [u, v] : h.graph.edges) edges.emplace_back(base + u, base + v);
    }
    // overlap vertices join everything in both of their blocks
    auto add_complete_join = [&](int lo_join, int hi_join, int lo_all, int hi_all) {
        for (int v = lo_join; v < hi_join; ++v)
            for (int u = lo_all; u < hi_all; ++u)
                if (u != v) edges.push_back(make_edge(u, v));
    };
    add_complete_join(n - ov, n, 0, 2 * n - ov);                          // V1 cap V2 to V1 union V2
    add_complete_join(2 * n - 2 * ov, 2 * n - ov, n - ov, 3 * n - 2 * ov);  // V2 cap V3 to V2 union V3

    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    res.lg.graph = Graph::from_edges(total, std::move(edges));
    res.lg.block_n = n;
    res.lg.block_m = spec.m;
    res.lg.block_mask.assign(total, 0);
    for (int v = 0; v < n; ++v) res.lg.block_mask[v] |= 1;
    for (int v = n - ov; v < 2 * n - ov; ++v) res.lg.block_mask[v] |= 2;
    for (int v = 2 * (n - ov); v < total; ++v) res.lg.block_mask[v] |= 4;

    if (res.lg.graph.n != total)
        throw internal_error("lb graph: vertex count drifted from 3n - 2*overlap");
    if (res.lg.graph.m() < spec.m || res.lg.graph.m() > 7 * spec.m)
        throw generation_error("lb graph: edge count " + std::to_string(res.lg.graph.m()) +
                               " fell outside [m, 7m]");
    return res;
}

void write_labeled_graph(std::ostream& os, const LabeledGraph& lg) {
    write_graph(os, lg.graph);
    for (size_t v = 0; v < lg.block_mask.size(); ++v)
        os << "b " << v << ' ' << static_cast<int>(lg.block_mask[v]) << '\n';
    os << "c " << lg.block_n << ' ' << lg.block_m << '\n';
}

LabeledGraph read_labeled_graph(std::istream& is) {
    LabeledGraph lg;
    lg.graph = read_graph(is);
    lg.block_mask.assign(lg.graph.n, 0);
    std::string tag;
    bool any_label = false;
    while (is >> tag) {
        if (tag == "b") {
            int v, mask;
            if (!(is >> v >> mask)) throw std::invalid_argument("labeled graph: bad b line");
            if (v < 0 || v >= lg.graph.n) throw std::invalid_argument("labeled graph: label out of range");
            lg.block_mask[v] = static_cast<uint8_t>(mask);
            any_label = true;
        } else if (tag == "c") {
            if (!(is >> lg.block_n >> lg.block_m)) throw std::invalid_argument("labeled graph: bad c line");
        } else {
            throw std::invalid_argument("labeled graph: unknown trailer tag " + tag);
        }
    }
    if (!any_label) throw std::invalid_argument("labeled graph: no block labels present");
    return lg;
}

void save_labeled_graph(const std::string& path, const LabeledGraph& lg) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot open for writing: " + path);
    write_labeled_graph(os, lg);
}

LabeledGraph load_labeled_graph(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("cannot open for reading: " + path);
    return read_labeled_graph(is);
}

// ---------------------------------------------------------------- certificates

namespace {

// components of t minus u, each sorted
std::vector<std::vector<int>> components_without(const RootedTree& t, int u) {
    auto ch = t.children();
    std::vector<std::vector<int>> comps;
    // each child subtree of u is one component
    for (int c : ch[u]) {
        std::vector<int> comp, stack{c};
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            comp.push_back(v);
            for (int w : ch[v]) stack.push_back(w);
        }
        std::sort(comp.begin(), comp.end());
        comps.push_back(std::move(comp));
    }
    // everything above u is one more component
    if (u != t.root) {
        std::vector<char> below(t.n(), 0);
        below[u] = 1;
        for (auto& comp : comps)
            for (int v : comp) below[v] = 1;
        std::vector<int> rest;
        for (int v = 0; v < t.n(); ++v)
            if (!below[v]) rest.push_back(v);
        comps.push_back(std::move(rest));
    }
    return comps;
}

}  // namespace

CentroidCertificate centroid_lower_bound(const Graph& g, const RootedTree& t) {
    t.validate_spanning(g);
    CentroidCertificate cert;
    cert.centroid_vertex = centroid(t);
    if (g.n <= 1) return cert;

    auto comps = components_without(t, cert.centroid_vertex);
    // one component with >= n/4 vertices if it exists, otherwise the fewest
    // large components whose union reaches n/4 (largest first)
    std::vector<size_t> order(comps.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
        if (comps[a].size() != comps[b].size()) return comps[a].size() > comps[b].size();
        return comps[a].front() < comps[b].front();
    });
    long long quarter = (g.n + 3) / 4;
    std::vector<char> in(g.n, 0);
    long long size = 0;
    for (size_t i : order) {
        for (int v : comps[i]) {
            in[v] = 1;
            cert.piece.push_back(v);
        }
        size += static_cast<long long>(comps[i].size());
        ++cert.crossing_tree_edges;  // each component meets the rest through one tree edge
        if (size >= quarter) break;
    }
    std::sort(cert.piece.begin(), cert.piece.end());
    if (2 * size > g.n)
        throw internal_error("centroid certificate: piece exceeded half the vertices");

    for (auto [u, v] : g.edges) cert.cut_size += in[u] != in[v];
    cert.bound = (cert.cut_size + cert.crossing_tree_edges - 1) / cert.crossing_tree_edges;
    if (cert.crossing_tree_edges > g.degree(cert.centroid_vertex))
        throw internal_error("centroid certificate: more crossing tree edges than centroid degree");
    return cert;
}

LbCaseReport lb_case_analysis(const LabeledGraph& lg, const RootedTree& t) {
    const Graph& g = lg.graph;
    if (static_cast<int>(lg.block_mask.size()) != g.n || lg.block_n <= 0)
        throw std::invalid_argument("lb_case_analysis: graph carries no usable block labels");
    t.validate_spanning(g);

    LbCaseReport rep;
    rep.centroid_vertex = centroid(t);
    long long n = lg.block_n, m = lg.block_m;

    uint8_t v1_bit = 1, v3_bit = 4;
    if (lg.block_mask[rep.centroid_vertex] & v1_bit) {
        std::swap(v1_bit, v3_bit);
        rep.swapped = true;
    }
    auto in_v1 = [&](int v) { return (lg.block_mask[v] & v1_bit) != 0; };
    auto in_v2 = [&](int v) { return (lg.block_mask[v] & 2) != 0; };

    auto comps = components_without(t, rep.centroid_vertex);
    size_t best = 0;
    long long best_count = -1;
    for (size_t i = 0; i < comps.size(); ++i) {
        long long cnt = 0;
        for (int v : comps[i]) cnt += in_v1(v);
        if (cnt > best_count) {
            best_count = cnt;
            best = i;
        }
    }
    const auto& u_comp = comps[best];
    std::vector<char> in_u(g.n, 0);
    for (int v : u_comp) in_u[v] = 1;

    rep.b1 = best_count;
    for (int v : u_comp) rep.overlap_in_component += in_v1(v) && in_v2(v);
    long long ov = 0;
    for (int v = 0; v < g.n; ++v) ov += in_v1(v) && in_v2(v);

    // case 1 when b1 <= n - n*sqrt(n/m), i.e. (n-b1)^2 m >= n^3
    rep.b1_above_floor = rep.b1 * rep.b1 * m >= n * n * n;
    bool case1 = (n - rep.b1) * (n - rep.b1) * m >= n * n * n;

    std::vector<char> side(g.n, 0);
    if (case1) {
        rep.case_id = 1;
        // edges from U cap V1 to V1 minus U
        for (int v = 0; v < g.n; ++v) side[v] = in_u[v] && in_v1(v);
        for (auto [a, b] : g.edges) {
            bool sa = side[a], sb = side[b];
            if (sa == sb) continue;
            int outside = sa ? b : a;
            rep.value += !in_u[outside] && in_v1(outside);
        }
    } else if (2 * rep.overlap_in_component <= ov) {
        rep.case_id = 2;
        // edges from U cap V1 to the overlap vertices left outside U
        for (int v = 0; v < g.n; ++v) side[v] = in_u[v] && in_v1(v);
        for (auto [a, b] : g.edges) {
            bool sa = side[a], sb = side[b];
            if (sa == sb) continue;
            int outside = sa ? b : a;
            rep.value += !in_u[outside] && in_v1(outside) && in_v2(outside);
        }
    } else {
        rep.case_id = 3;
        // edges inside V2 from (W' union Z) to the rest of V2, where W' is
        // the overlap share of U and Z the plain-V2 share of U
        for (int v = 0; v < g.n; ++v) side[v] = in_u[v] && in_v2(v);
        for (auto [a, b] : g.edges) {
            bool sa = side[a], sb = side[b];
            if (sa == sb) continue;
            int outside = sa ? b : a;
            rep.value += in_v2(outside) && !in_u[outside];
        }
    }

    rep.congestion = congestion(g, t).max;
    if (rep.congestion < rep.value)
        throw internal_error("lb_case_analysis: certified value exceeds the actual congestion");
    return rep;
}

}  // namespace stc
