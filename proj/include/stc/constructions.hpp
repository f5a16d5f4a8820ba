#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "stc/graph.hpp"
#include "stc/tree.hpp"

namespace stc {

// Each unordered pair appears independently with probability p, driven by a
// seeded deterministic stream; fixed seed gives a fixed graph.
Graph gen_gnp(int n, double p, uint64_t seed);

struct HnmReport {
    int attempts = 0;
    std::string verify_mode;       // exhaustive | spectral | sampled
    bool expansion_verified = false;  // exhaustive or spectral certificate
    double lambda2 = 0;            // algebraic connectivity when computed
    bool relaxed_regime = false;   // below the m >= 16 n ln n threshold
    std::vector<std::string> warnings;
};

struct HnmResult {
    Graph graph;
    HnmReport report;
};

// Samples G(n, 2m/n^2) until the result is connected, has between m/2 and 2m
// edges, and certifiably expands: every |S| <= n/2 sends at least (m/2n)|S|
// edges out. Verification is exhaustive for n <= 20, else by the spectral
// certificate lambda2 >= m/n (cut(S) >= lambda2 |S| (n-|S|)/n), else sampled.
HnmResult gen_hnm(int n, long long m, uint64_t seed, int max_attempts = 64);

struct LbSpec {
    int n = 0;        // block size
    long long m = 0;  // per-block edge budget
    int overlap() const;  // ceil(sqrt(m/n))
    int total_vertices() const { return 3 * n - 2 * overlap(); }
};

// Vertex blocks as id ranges: V1 = [0, n), V2 = [n-ov, 2n-ov), V3 = [2n-2ov, 3n-2ov).
struct LabeledGraph {
    Graph graph;
    std::vector<uint8_t> block_mask;  // bit0 V1, bit1 V2, bit2 V3
    int block_n = 0;
    long long block_m = 0;

    std::vector<int> block(int which) const;  // 1, 2 or 3
};

struct LbResult {
    LabeledGraph lg;
    std::vector<std::string> warnings;
    std::array<HnmReport, 3> block_reports;
};

// Three expander blocks with small overlaps; every overlap vertex is joined
// to all of both blocks it belongs to. Checks the emitted vertex and edge
// counts (3n - 2*overlap vertices, between m and 7m edges).
LbResult gen_lower_bound_graph(const LbSpec& spec, uint64_t seed);

// Labeled format: the plain graph, one "b <vertex> <mask>" line per vertex,
// then a "c <n> <m>" line recording the construction parameters.
void write_labeled_graph(std::ostream& os, const LabeledGraph& lg);
LabeledGraph read_labeled_graph(std::istream& is);
void save_labeled_graph(const std::string& path, const LabeledGraph& lg);
LabeledGraph load_labeled_graph(const std::string& path);

struct CentroidCertificate {
    int centroid_vertex = -1;
    std::vector<int> piece;        // union of components, n/4 <= |piece| <= n/2 when possible
    long long cut_size = 0;        // graph edges leaving the piece
    int crossing_tree_edges = 0;   // tree edges leaving the piece (each component adds one)
    long long bound = 0;           // ceil(cut / crossing): congestion lower bound
};

// Per-tree congestion lower bound from the centroid decomposition: every
// graph edge leaving the piece detours through one of the few tree edges
// that cross it.
CentroidCertificate centroid_lower_bound(const Graph& g, const RootedTree& t);

struct LbCaseReport {
    int centroid_vertex = -1;
    bool swapped = false;    // roles of V1 and V3 exchanged
    int case_id = 0;         // 1, 2 or 3
    long long b1 = 0;        // |U cap V1|
    long long overlap_in_component = 0;  // |U cap V1 cap V2|
    long long value = 0;     // certified congestion lower bound
    long long congestion = 0;
    bool b1_above_floor = false;  // b1 >= n * sqrt(n/m)
};

// Classifies the largest-V1-share component of the tree minus its centroid
// and counts the crossing edge family of the matching case. The returned
// value is a sound lower bound on the tree's congestion.
LbCaseReport lb_case_analysis(const LabeledGraph& lg, const RootedTree& t);

}  // namespace stc
