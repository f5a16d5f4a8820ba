#pragma once

#include <string>
#include <vector>

#include "stc/gl.hpp"
#include "stc/graph.hpp"
#include "stc/tree.hpp"

namespace stc {

struct MinMaxResult {
    Partition partition;
    std::vector<int> terminals;  // terminals[0] is the hub
    GlResult gl;
};

// Connected ell-partition with per-part degree sums at most 4m/ell, built by
// running the local search with degree weights and near-equal targets.
// `known_connectivity` > 0 promises the input is that connected and switches
// the rank-bound accounting to the half-k regime.
MinMaxResult min_max_partition(const Graph& g, int ell, int known_connectivity = 0);

// Same with weights ceil(c*m/n) + deg(v), c = c_num/c_den > 0. Adds the
// vertex-count balance guarantee (2c+4)/c * n/ell per part.
MinMaxResult balanced_min_max_partition(const Graph& g, int ell, long long c_num, long long c_den,
                                        int known_connectivity = 0);

// Union of per-part spanning trees plus hub-spoke edges; congestion is at
// most the largest per-part degree sum.
RootedTree star_assemble(const Graph& g, const Partition& parts, int hub,
                         const std::vector<int>& spokes);

enum class Branch { Base, LowSplit, HighPartition };

struct RecursionNode {
    int n_h = 0;
    int m_h = 0;
    long long m_hat = 0;
    int k = 0;
    Branch branch = Branch::Base;
    double congestion_bound = 0;  // 8*sqrt(m_hat*n_h)
    int cut_size = -1;            // LowSplit
    int x_size = 0;
    int z_size = 0;
    int parts = 0;                // HighPartition
    long long gl_iterations = 0;
};

struct FindLcstResult {
    RootedTree tree;
    std::vector<RecursionNode> trace;  // preorder
};

// Recursive low-congestion spanning tree: base case below the edge budget,
// split on a small global vertex cut, or partition-and-star when highly
// connected. Output congestion stays within 8*sqrt(m*n) of the top call.
FindLcstResult find_lcst(const Graph& g);

const char* branch_name(Branch b);

}  // namespace stc
