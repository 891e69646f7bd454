// Canonical inventory of 3/4/5-node graphlet classes, constant-time
// classification of small edge sets, and the state-corresponding
// coefficients alpha.
#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "graphlet/graph.hpp"

namespace graphlet {

// Adjacency of up to 5 nodes packed into the upper triangle, bit index
// pair_bit(k, i, j) for i < j.
using EdgeMask = std::uint16_t;
using NodeMask = std::uint8_t;

inline int pair_bit(int k, int i, int j) {
    // row-major upper triangle, i < j
    return i * k - i * (i + 1) / 2 + (j - i - 1);
}

struct GraphletClass {
    int k = 0;
    int index = 0;  // 1-based, reference-table order
    EdgeMask canonical_code = 0;
    std::array<std::uint8_t, 5> degree_signature{};  // ascending, first k entries
    int edge_count = 0;
};

struct AlphaTable {
    int k = 0;
    int d = 0;
    std::vector<std::int64_t> alpha;  // full alpha, not halved
};

class Catalog {
public:
    static constexpr int kDisconnected = -1;

    static const Catalog& instance();

    // All connected non-isomorphic k-node graphs in reference-table order.
    const std::vector<GraphletClass>& classes(int k) const;

    // Full alpha vector for SRW(d); 1 <= d <= k (d == k gives the trivial
    // single-state coefficient 1 for every class).
    const AlphaTable& alpha_table(int k, int d) const;

    // 0-based class index for a window edge mask, kDisconnected otherwise.
    int classify_mask(int k, EdgeMask m) const;

    struct Mapping {
        int cls = kDisconnected;                    // 0-based
        std::array<std::uint8_t, 5> to_canonical{};  // node position -> canonical node
    };
    const Mapping& classify_mask_mapped(int k, EdgeMask m) const;

    // Classification of an explicit induced edge set over k arbitrary node
    // ids; returns the 0-based class index or kDisconnected.
    int classify(int k, std::span<const NodeId> nodes,
                 std::span<const std::pair<NodeId, NodeId>> edges) const;

    // Tuple templates for the corresponding-state sum, grouped by the
    // multiset of middle subgraphs. Valid when l = k - d + 1 > 2.
    struct CssGroup {
        std::array<NodeMask, 3> middles{};
        std::uint8_t middle_count = 0;
        std::int64_t multiplicity = 0;
    };
    const std::vector<CssGroup>& css_groups(int k, int d, int cls) const;

    // Degree signatures shared by more than one class (resolved by canonical
    // code during classification).
    const std::vector<std::array<std::uint8_t, 5>>& signature_collisions(int k) const;

    // --- small-graph combinatorics over explicit edge masks ---

    // All node subsets of size d whose induced subgraph is connected.
    static std::vector<NodeMask> connected_subsets(EdgeMask g, int k, int d);

    // Adjacency in the d-node subgraph relationship sense: share d-1 nodes
    // for d >= 2, joined by an edge of g for d = 1.
    static bool subsets_adjacent(EdgeMask g, int k, int d, NodeMask a, NodeMask b);

    // Number of ordered l-tuples (l = k - d + 1) of distinct connected d-node
    // induced subgraphs whose consecutive elements are adjacent and whose
    // union covers all k nodes.
    static std::int64_t alpha_of(EdgeMask g, int k, int d);

    static bool mask_connected(EdgeMask g, int k, NodeMask nodes);
    static EdgeMask permute_mask(EdgeMask m, int k, const std::array<std::uint8_t, 5>& perm);

private:
    Catalog();

    struct PerK {
        std::vector<GraphletClass> classes;
        std::vector<AlphaTable> alphas;          // index d-1, d = 1..k
        std::vector<Mapping> classify_table;     // size 1 << C(k,2)
        std::vector<std::vector<std::vector<CssGroup>>> css;  // [d-1][cls]
        std::vector<std::array<std::uint8_t, 5>> collisions;
    };
    std::array<PerK, 3> per_k_;  // k = 3, 4, 5

    const PerK& at(int k) const;
    void build_k(int k);
};

// Spec-level convenience mirroring the class inventory operations.
std::int64_t compute_alpha(const GraphletClass& cls, int d);

}  // namespace graphlet
