#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "stc/graph.hpp"
#include "stc/tree.hpp"

namespace stc {

// Parameters of the four neighborhood/cut conditions: size-s neighborhoods
// reach d1*n vertices, small sets expand by d2, every half-sized set has
// Hall deficiency at most t, and cuts are at most d3 per vertex.
struct ExpandingParams {
    int s = 1;
    double d1 = 0;
    double d2 = 0;
    double d3 = 0;
    double t = 0;

    double delta(int n) const { return t / (d1 * n); }
    // branch saturation threshold: max(s+1, ceil(3*d1*n/d2))
    long long saturation_threshold(int n) const;
    void validate(int n) const;
};

// The random-graph instantiation: s=ceil(1/p), d1=1/25, d2=np/16, d3=np, t=12/p.
ExpandingParams gnp_expanding_params(int n, double p);

// Closed-form guarantees for grow_tree. Finite only when t < d1*n (delta < 1);
// outside that regime the round analysis gives no bound and the fields are
// +infinity.
struct ExpanderBound {
    double branch_bound = 0;      // 4*A*(1/(2*d1))^(log 2 / log(2-delta)) + t
    double congestion_bound = 0;  // d3 * branch_bound
    double round_bound = 0;       // ceil(log_{2-delta}(1/(2*d1))) + 2
    bool finite = false;
};
ExpanderBound expander_bound(const ExpandingParams& p, int n);

struct ConditionReport {
    bool exhaustive = false;
    long long checked = 0;
    bool pass = true;
    std::vector<int> witness;
};

struct ExpandingReport {
    bool pass = true;
    int failed_condition = 0;  // 1..4, or 0
    std::vector<int> witness;
    std::array<ConditionReport, 4> conditions;
};

enum class CheckMode { ExhaustiveCapped, Sampled };

// Verifies the four conditions, enumerating exhaustively where the subset
// count fits under enum_cap and sampling seeded subsets otherwise.
ExpandingReport check_expanding(const Graph& g, const ExpandingParams& p, CheckMode mode,
                                uint64_t seed = 0, long long samples = 10000,
                                long long enum_cap = 1000000);

// Maximum-cardinality matching via augmenting paths; edges are (left, right)
// ids from the given vertex lists. Returns matched (left, right) pairs.
std::vector<std::pair<int, int>> max_bipartite_matching(const std::vector<int>& left,
                                                        const std::vector<int>& right,
                                                        const std::vector<std::pair<int, int>>& edges);

struct GrowTrace {
    long long phase1_rounds = 0;
    long long transfers = 0;
    long long phase2_rounds = 0;
    std::vector<int> branch_sizes_phase1;
    std::vector<int> branch_sizes_final;
};

struct GrowResult {
    RootedTree tree;
    GrowTrace trace;
};

// Two-phase spanning tree growth: balanced branch growth with subtree
// transfers until d1*n vertices are reached, then maximum-matching rounds
// until the tree spans. Throws expanding_violation_error when Phase 1 is
// stuck and disconnected_error when a matching round comes back empty.
GrowResult grow_tree(const Graph& g, const ExpandingParams& p);

}  // namespace stc
