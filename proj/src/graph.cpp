#include "graphlet/graph.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <queue>
#include <stdexcept>
#include <unordered_map>

namespace graphlet {

Graph Graph::from_edges(std::vector<std::pair<std::int64_t, std::int64_t>> edges) {
    // Collect labels, map to dense ids in ascending label order.
    std::vector<std::int64_t> labels;
    labels.reserve(edges.size() * 2);
    for (const auto& [a, b] : edges) {
        labels.push_back(a);
        labels.push_back(b);
    }
    std::sort(labels.begin(), labels.end());
    labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
    if (labels.empty()) {
        throw std::runtime_error("empty graph: no nodes");
    }

    std::unordered_map<std::int64_t, NodeId> dense;
    dense.reserve(labels.size() * 2);
    for (NodeId i = 0; i < labels.size(); ++i) dense.emplace(labels[i], i);

    const std::uint32_t n = static_cast<std::uint32_t>(labels.size());
    std::vector<std::pair<NodeId, NodeId>> undirected;
    undirected.reserve(edges.size());
    for (const auto& [a, b] : edges) {
        if (a == b) continue;  // self-loop
        NodeId u = dense.at(a), v = dense.at(b);
        if (u > v) std::swap(u, v);
        undirected.emplace_back(u, v);
    }
    std::sort(undirected.begin(), undirected.end());
    undirected.erase(std::unique(undirected.begin(), undirected.end()), undirected.end());

    Graph g;
    g.original_labels_ = std::move(labels);
    g.edge_count_ = undirected.size();
    g.offsets_.assign(n + 1, 0);
    for (const auto& [u, v] : undirected) {
        ++g.offsets_[u + 1];
        ++g.offsets_[v + 1];
    }
    for (std::uint32_t i = 0; i < n; ++i) g.offsets_[i + 1] += g.offsets_[i];
    g.neighbors_.resize(2 * undirected.size());
    std::vector<std::uint32_t> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
    for (const auto& [u, v] : undirected) {
        g.neighbors_[cursor[u]++] = v;
        g.neighbors_[cursor[v]++] = u;
    }
    // undirected is sorted, so each adjacency list comes out strictly ascending
    // for the first endpoint; second endpoints need a per-list sort.
    for (std::uint32_t v = 0; v < n; ++v) {
        std::sort(g.neighbors_.begin() + g.offsets_[v], g.neighbors_.begin() + g.offsets_[v + 1]);
    }
    return g;
}

bool Graph::has_edge(NodeId u, NodeId v) const {
    const std::uint32_t n = node_count();
    if (u >= n || v >= n) throw std::out_of_range("has_edge: node id out of range");
    if (u == v) return false;
    if (degree(u) > degree(v)) std::swap(u, v);
    auto nb = neighbors(u);
    return std::binary_search(nb.begin(), nb.end(), v);
}

Graph load_edge_list(std::istream& in) {
    std::vector<std::pair<std::int64_t, std::int64_t>> edges;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::size_t pos = line.find_first_not_of(" \t\r");
        if (pos == std::string::npos || line[pos] == '#') continue;

        const char* p = line.data() + pos;
        const char* end = line.data() + line.size();
        std::int64_t tok[2];
        int ntok = 0;
        while (p < end) {
            while (p < end && std::isspace(static_cast<unsigned char>(*p))) ++p;
            if (p == end) break;
            if (ntok == 2) {
                throw std::runtime_error("parse error at line " + std::to_string(lineno) +
                                         ": expected two integers");
            }
            std::int64_t value = 0;
            auto [next, ec] = std::from_chars(p, end, value);
            if (ec != std::errc{} ||
                (next < end && !std::isspace(static_cast<unsigned char>(*next)))) {
                throw std::runtime_error("parse error at line " + std::to_string(lineno) +
                                         ": non-integer token");
            }
            tok[ntok++] = value;
            p = next;
        }
        if (ntok != 2) {
            throw std::runtime_error("parse error at line " + std::to_string(lineno) +
                                     ": expected two integers");
        }
        edges.emplace_back(tok[0], tok[1]);
    }
    if (edges.empty()) throw std::runtime_error("empty graph: no edges in input");
    return Graph::from_edges(std::move(edges));
}

Graph load_edge_list_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open graph file: " + path);
    return load_edge_list(in);
}

Graph largest_connected_component(const Graph& g) {
    const std::uint32_t n = g.node_count();
    if (n == 0) throw std::runtime_error("empty graph");

    std::vector<std::int32_t> comp(n, -1);
    std::int32_t ncomp = 0;
    std::vector<NodeId> queue;
    for (NodeId s = 0; s < n; ++s) {
        if (comp[s] >= 0) continue;
        comp[s] = ncomp;
        queue.assign(1, s);
        while (!queue.empty()) {
            NodeId v = queue.back();
            queue.pop_back();
            for (NodeId w : g.neighbors(v)) {
                if (comp[w] < 0) {
                    comp[w] = ncomp;
                    queue.push_back(w);
                }
            }
        }
        ++ncomp;
    }

    // Pick by size, ties by smallest minimum original label. Dense ids are
    // label-ordered, so the smallest node id in a component carries its
    // minimum label.
    std::vector<std::uint32_t> size(ncomp, 0);
    std::vector<NodeId> first(ncomp, n);
    for (NodeId v = 0; v < n; ++v) {
        ++size[comp[v]];
        first[comp[v]] = std::min(first[comp[v]], v);
    }
    std::int32_t best = 0;
    for (std::int32_t c = 1; c < ncomp; ++c) {
        if (size[c] > size[best] || (size[c] == size[best] && first[c] < first[best])) best = c;
    }

    std::vector<std::pair<std::int64_t, std::int64_t>> edges;
    for (NodeId v = 0; v < n; ++v) {
        if (comp[v] != best) continue;
        for (NodeId w : g.neighbors(v)) {
            if (v < w) edges.emplace_back(g.original_label(v), g.original_label(w));
        }
    }
    if (edges.empty()) {
        // single-node component
        edges.emplace_back(g.original_label(first[best]), g.original_label(first[best]));
    }
    return Graph::from_edges(std::move(edges));
}

std::uint64_t r2_size(const Graph& g) {
    std::uint64_t sum = 0;
    for (NodeId v = 0; v < g.node_count(); ++v) {
        for (NodeId w : g.neighbors(v)) {
            if (v < w) sum += g.degree(v) + g.degree(w) - 2;
        }
    }
    return sum / 2;
}

void serialize_edge_list(const Graph& g, std::ostream& out) {
    for (NodeId v = 0; v < g.node_count(); ++v) {
        for (NodeId w : g.neighbors(v)) {
            if (v < w) out << g.original_label(v) << ' ' << g.original_label(w) << '\n';
        }
    }
}

}  // namespace graphlet
