// Immutable undirected simple graph with CSR adjacency, dense 0-based ids.
#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace graphlet {

using NodeId = std::uint32_t;

class Graph {
public:
    Graph() = default;

    // Builds from an edge list over arbitrary int64 labels. Self-loops are
    // dropped, duplicates (in either direction) merged, labels relabeled to
    // dense ids in ascending label order.
    static Graph from_edges(std::vector<std::pair<std::int64_t, std::int64_t>> edges);

    std::uint32_t node_count() const { return static_cast<std::uint32_t>(offsets_.size()) - 1; }
    std::uint64_t edge_count() const { return edge_count_; }

    std::uint32_t degree(NodeId v) const { return offsets_[v + 1] - offsets_[v]; }

    std::span<const NodeId> neighbors(NodeId v) const {
        return {neighbors_.data() + offsets_[v], neighbors_.data() + offsets_[v + 1]};
    }

    // Ordered search in the shorter adjacency list. Throws on out-of-range ids.
    bool has_edge(NodeId u, NodeId v) const;

    std::int64_t original_label(NodeId v) const { return original_labels_[v]; }

private:
    std::vector<std::uint32_t> offsets_{0};  // size n+1
    std::vector<NodeId> neighbors_;          // 2|E|, each list strictly ascending
    std::vector<std::int64_t> original_labels_;
    std::uint64_t edge_count_ = 0;
};

// Parses whitespace-separated integer pairs, one edge per line. Lines starting
// with '#' are comments, blank lines are skipped. Throws std::runtime_error
// with the line number on malformed input and on an empty graph.
Graph load_edge_list(std::istream& in);
Graph load_edge_list_file(const std::string& path);

// Induced subgraph on the largest component, relabeled dense. Ties broken by
// the smallest minimum original label.
Graph largest_connected_component(const Graph& g);

// Edge count of the 2-node subgraph relationship graph: (1/2) * sum over
// edges (u,v) of (d_u + d_v - 2). Single pass over the adjacency.
std::uint64_t r2_size(const Graph& g);

// Writes "label label" per edge (u < v in dense order) using original labels.
void serialize_edge_list(const Graph& g, std::ostream& out);

}  // namespace graphlet
