#pragma once

#include "stc/graph.hpp"
#include "stc/tree.hpp"

namespace stc {

struct ExactStcResult {
    long long value = 0;
    RootedTree tree;
};

// Brute-force oracle: enumerates all spanning trees by recursive edge
// inclusion/exclusion with connectivity pruning and returns the minimum
// congestion plus a witness tree. Deterministic; capped at `cap` vertices.
ExactStcResult exact_stc(const Graph& g, int cap = 10);

}  // namespace stc
