#pragma once

#include <optional>
#include <vector>

#include "stc/graph.hpp"

namespace stc {

// Minimum-cardinality vertex set whose removal disconnects g, found by
// vertex-splitting unit-capacity max-flow over non-adjacent pairs.
// Throws no_cut_error on complete graphs, invalid_argument when disconnected.
std::vector<int> global_min_vertex_cut(const Graph& g);

// Threshold variant: a global minimum vertex cut if its size is below `k`,
// std::nullopt as a certificate that vertex connectivity is >= k.
std::optional<std::vector<int>> vertex_cut_below(const Graph& g, int k);

// Exact vertex connectivity (n-1 for complete graphs).
int vertex_connectivity(const Graph& g);

}  // namespace stc
