#pragma once

#include <iosfwd>
#include <limits>
#include <string>
#include <vector>

#include "stc/graph.hpp"

namespace stc {

inline constexpr int LEVEL_INF = std::numeric_limits<int>::max();

// Terminals, weight targets and per-vertex weights for a connected partition.
struct PartitionSpec {
    int k = 0;
    std::vector<int> terminals;        // k distinct vertex ids
    std::vector<long long> targets;    // k positive integers, sum = w(V)
    std::vector<long long> weights;    // per vertex, positive

    void validate(const Graph& g) const;  // throws std::invalid_argument
    long long max_weight() const;
    long long weight_of(const std::vector<int>& verts) const;
};

// File format: line 1 "k"; line 2 terminals; line 3 targets; optional line 4
// per-vertex weights (defaults to all ones).
PartitionSpec read_partition_spec(std::istream& is, int n);
void write_partition_spec(std::ostream& os, const PartitionSpec& spec, bool write_weights);

// Full local-search state: the partial partition sets and their cascades,
// plus labels derived from them by recompute_labels.
struct Configuration {
    std::vector<std::vector<int>> sets;      // A_j, sorted; t_j in A_j
    std::vector<std::vector<int>> cascades;  // per set; empty for light sets

    // derived labels
    std::vector<int> set_of;   // -1 for unassigned
    std::vector<int> level;    // LEVEL_INF when unreached
    std::vector<int> rank;     // 0 for non-cascade vertices
    std::vector<char> heavy;   // per set
    int highest_rank = 0;

    std::vector<int> unassigned() const;      // S_A, sorted
    int assigned_count() const;
};

struct ConfigVector {
    int light_count = 0;
    std::vector<long long> level_counts;  // finite levels 0..n

    bool operator==(const ConfigVector&) const = default;
};

// Total order: fewer light sets wins, then lexicographic on level counts
// (larger count wins at the first difference). Returns <0, 0, >0.
int compare(const ConfigVector& a, const ConfigVector& b);
// Same, restricted to (light_count, N^0..N^ell).
int compare_prefix(const ConfigVector& a, const ConfigVector& b, int ell);

Configuration initial_configuration(const Graph& g, const PartitionSpec& spec);

// Recomputes heavy flags, ranks and levels from sets+cascades by fixed-point
// propagation. Throws internal_error when a cascade vertex ends up unranked
// or the cascade structure is malformed.
void recompute_labels(const Graph& g, const PartitionSpec& spec, Configuration& c);

ConfigVector config_vector(const Graph& g, const Configuration& c);

// Component of t_j in G[A_j] minus v, as a vertex mask.
std::vector<char> reservoir_mask(const Graph& g, const PartitionSpec& spec,
                                 const std::vector<std::vector<int>>& sets, int j, int v);

// Full validity audit: disjointness, terminal membership, induced
// connectivity, fitted weights, cascade structure, strictly increasing ranks.
void audit_configuration(const Graph& g, const PartitionSpec& spec, const Configuration& c);

// Bridges (u, v): u unassigned, v assigned with finite level. Sorted.
std::vector<std::pair<int, int>> find_bridges(const Graph& g, const Configuration& c);

// ell-goodness: highest rank is exactly ell, ell-maximality holds, and all
// bridges land on level-ell vertices.
bool is_good(const Graph& g, const PartitionSpec& spec, const Configuration& c, int ell,
             std::string* why = nullptr);

// One cascade-extension step for a bridge-free ell-good configuration;
// returns an (ell+1)-good configuration that is strictly better.
Configuration step_good_inc(const Graph& g, const PartitionSpec& spec, const Configuration& c);

// One bridge-absorption step; follows the case split on the target set
// (light / heavy-and-fits / heavy-and-overflows with leaf deletions).
Configuration step_bridging(const Graph& g, const PartitionSpec& spec, const Configuration& c,
                            std::pair<int, int> bridge);

struct Partition {
    std::vector<std::vector<int>> parts;  // sorted vertex lists, one per terminal
    std::vector<long long> weights;
};

// Disjoint, covering, connected, terminal-containing, fitted. Throws.
void validate_partition(const Graph& g, const PartitionSpec& spec, const Partition& p);

void write_partition(std::ostream& os, const Partition& p);

enum class GlVariant { FullK, HalfK };

struct GlOptions {
    GlVariant variant = GlVariant::FullK;
    // Connectivity promise of the input. For HalfK this is the k such that
    // spec.k = floor(k/2)+1 parts are being requested; it drives the rank
    // bound. Defaults to spec.k.
    int connectivity = 0;
};

struct GlResult {
    Partition partition;
    std::vector<ConfigVector> trace;  // strictly increasing; entry 0 = initial
    long long iterations = 0;
    int max_rank_seen = 0;
    std::vector<std::string> warnings;
};

// The local search: strictly improving iterations until the partial
// partition covers every vertex.
GlResult gl_partition(const Graph& g, const PartitionSpec& spec, GlOptions opts = {});

// Iteration cap n * 4^n, saturated to LLONG_MAX for large n.
long long gl_iteration_bound(int n);

}  // namespace stc
