// Random walks on the d-node subgraph relationship graph without
// materializing it: on-the-fly neighbor generation, expanded-chain window
// maintenance, incremental induced-edge tracking and stationary weights.
#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "graphlet/access.hpp"
#include "graphlet/catalog.hpp"
#include "graphlet/graph.hpp"

namespace graphlet {

enum class WalkMode { simple, non_backtracking };

// A connected d-node induced subgraph of G, nodes ascending. d <= 4 for
// walks (d < k <= 5).
struct SubgraphState {
    std::array<NodeId, 4> nodes{};
    std::uint8_t size = 0;

    static SubgraphState of(std::span<const NodeId> ids);
    bool operator==(const SubgraphState& o) const {
        if (size != o.size) return false;
        for (int i = 0; i < size; ++i) {
            if (nodes[i] != o.nodes[i]) return false;
        }
        return true;
    }
    std::span<const NodeId> view() const { return {nodes.data(), size}; }
};

// The expanded-chain window X^(l) = (X_1, ..., X_l), l = k - d + 1, plus the
// union node set and its induced edge set, maintained incrementally: each
// transition introduces at most one new node, whose adjacencies are resolved
// with at most k - 1 ordered searches in its fetched neighbor list.
class Walker {
public:
    Walker(const NeighborOracle& oracle, int k, int d, WalkMode mode, std::uint64_t seed);

    // Grows a random connected d-node start state from `start` (or a random
    // node) and walks until the window holds l states.
    void init(std::optional<NodeId> start = std::nullopt);

    // Rebuilds the window from an explicit state sequence (tests, worked
    // examples). Consecutive states must be relationship-adjacent.
    void set_window(std::span<const SubgraphState> states);

    // One transition: appends a neighbor of the head state (uniform, or the
    // non-backtracking law), drops X_1.
    void step();

    int k() const { return k_; }
    int d() const { return d_; }
    int window_length() const { return l_; }
    WalkMode mode() const { return mode_; }

    bool valid() const { return union_size_ == k_; }
    int union_size() const { return union_size_; }
    std::vector<SubgraphState> states() const;  // X_1..X_l
    std::vector<NodeId> union_nodes() const;
    std::vector<std::pair<NodeId, NodeId>> induced_edges() const;

    // Edge mask of the induced subgraph over the sorted union nodes (valid
    // windows only) and its classification.
    EdgeMask window_mask() const;
    int classify() const;
    const Catalog::Mapping& classify_mapped() const;

    // Unnormalized stationary weight of the current window: product over the
    // middle states of 1/d_X, with nominal degrees max(d_X - 1, 1) in
    // non-backtracking mode. 1 for l == 2.
    double pi_tilde();

    // Corresponding-state sampling weight p~ = 2|R^(d)| p of the current
    // sample; valid windows with l > 2 only.
    double css_weight();

    // Walker-local count of neighbor-list fetches.
    std::uint64_t api_calls() const { return api_calls_; }

    std::mt19937_64& rng() { return rng_; }

    // Neighbor machinery, exposed for tests and the oracle equivalences.
    SubgraphState random_neighbor(const SubgraphState& x);
    std::uint64_t state_degree(const SubgraphState& x);
    std::vector<SubgraphState> enumerate_neighbors(const SubgraphState& x);

private:
    struct NodeEntry {
        NodeId node = 0;
        std::span<const NodeId> nbrs;
        std::uint32_t degree = 0;
        std::uint8_t count = 0;  // window states containing this node
    };

    const NeighborOracle& oracle_;
    const Catalog& catalog_;
    int k_, d_, l_;
    WalkMode mode_;
    std::mt19937_64 rng_;

    std::array<SubgraphState, 5> ring_{};
    std::array<std::int64_t, 5> ring_degree_{};  // -1 = unknown, per ring slot
    int ring_len_ = 0;

    std::array<NodeEntry, 8> entries_{};
    int entry_count_ = 0;
    std::array<std::pair<NodeId, NodeId>, 16> edges_{};
    int edge_count_ = 0;
    int union_size_ = 0;

    std::uint64_t api_calls_ = 0;

    // reused across steps to keep full neighbor enumeration allocation-free
    std::vector<NodeId> scratch_nodes_;
    std::vector<SubgraphState> scratch_states_;

    const std::vector<SubgraphState>& neighbors_scratch(const SubgraphState& x);
    const NodeEntry& fetch_entry(NodeId v);  // must be present
    const NodeEntry* find_entry(NodeId v) const;
    void add_state(const SubgraphState& s);
    void drop_state(const SubgraphState& s);
    void append(const SubgraphState& s);  // ring push without drop

    SubgraphState nb_neighbor(const SubgraphState& head, const SubgraphState& prev);
    SubgraphState random_neighbor_d1(NodeId v);
    SubgraphState random_neighbor_d2(NodeId u, NodeId v);
    std::int64_t ring_state_degree(int slot);
    double middle_degree_weight(std::int64_t deg) const;
};

// Stationary weight of an explicit state tuple (middle-state degrees fetched
// through the oracle); used by the brute-force cross checks.
double pi_tilde_of_tuple(const NeighborOracle& oracle, std::span<const SubgraphState> tuple,
                         WalkMode mode);

// p~ of an explicit sample given by its node set and induced edges.
double css_weight_of_sample(const NeighborOracle& oracle, int k, int d,
                            std::span<const NodeId> nodes,
                            std::span<const std::pair<NodeId, NodeId>> edges, WalkMode mode);

std::uint64_t state_degree_of(const NeighborOracle& oracle, const SubgraphState& x);

}  // namespace graphlet
