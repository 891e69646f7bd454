// Exact machinery for tests and small graphs: induced-subgraph enumeration,
// explicit relationship-graph construction, brute-force corresponding-state
// enumeration and exact stationary laws.
#pragma once

#include <cstdint>
#include <vector>

#include "graphlet/catalog.hpp"
#include "graphlet/graph.hpp"
#include "graphlet/walk.hpp"

namespace graphlet {

struct ExactCounts {
    int k = 0;
    std::vector<std::uint64_t> counts;  // per class, reference order
    std::uint64_t total = 0;

    std::vector<double> concentration() const;
};

// Exact per-class counts of connected induced k-subgraphs via recursive
// exclusive-neighborhood expansion (each subgraph visited exactly once).
ExactCounts exact_enumerate(const Graph& g, int k);

// Independent second route: iterate all C(|V|, k) node subsets. Guarded to
// |V| <= 12.
ExactCounts exact_enumerate_by_subsets(const Graph& g, int k);

struct RelationshipGraph {
    Graph graph;                        // explicit G^(d), states as dense ids
    std::vector<SubgraphState> states;  // id -> d-node state

    std::int64_t index_of(const SubgraphState& s) const;  // -1 if absent
};

// Explicit G^(d) with a state-index mapping. Throws when the state count
// exceeds max_states.
RelationshipGraph build_relationship_graph(const Graph& g, int d,
                                           std::size_t max_states = 2'000'000);

// All l-tuples of d-node connected induced subgraphs of s whose consecutive
// elements are relationship-adjacent and whose union equals s's node set.
std::vector<std::vector<SubgraphState>> brute_corresponding_states(
    const Graph& g, std::span<const NodeId> subgraph_nodes, int d, int l);

// Degree-proportional stationary law of a simple random walk on an explicit
// relationship graph.
std::vector<double> exact_stationary(const Graph& relationship_graph);

}  // namespace graphlet
