#include "graphlet/oracle.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace graphlet {

std::vector<double> ExactCounts::concentration() const {
    std::vector<double> c(counts.size(), 0.0);
    if (total == 0) return c;
    for (std::size_t i = 0; i < counts.size(); ++i) {
        c[i] = static_cast<double>(counts[i]) / static_cast<double>(total);
    }
    return c;
}

namespace {

// Recursive exclusive-neighborhood extension; each connected induced
// k-subgraph is reached exactly once per root. Candidate sets live as
// segments of a shared arena; `visited` marks nodes already offered as
// candidates along the current root's search tree.
struct Enumerator {
    const Graph& g;
    int k;
    const Catalog& cat;
    std::vector<std::uint64_t> counts;
    std::array<NodeId, 5> sub{};
    std::array<std::uint8_t, 5> adj{};  // induced adjacency bits among sub
    int depth = 0;
    NodeId root = 0;
    std::vector<bool> visited;
    std::vector<NodeId> arena;
    std::vector<NodeId> undo;

    Enumerator(const Graph& graph, int kk)
        : g(graph), k(kk), cat(Catalog::instance()), counts(cat.classes(kk).size(), 0),
          visited(graph.node_count(), false) {}

    void push_node(NodeId v) {
        std::uint8_t bits = 0;
        for (int i = 0; i < depth; ++i) {
            if (g.has_edge(sub[i], v)) {
                bits |= std::uint8_t(1u << i);
                adj[i] |= std::uint8_t(1u << depth);
            }
        }
        adj[depth] = bits;
        sub[depth] = v;
        ++depth;
    }

    void pop_node() {
        --depth;
        for (int i = 0; i < depth; ++i) adj[i] &= std::uint8_t(~(1u << depth));
    }

    void record() {
        EdgeMask m = 0;
        for (int i = 0; i < k; ++i) {
            for (int j = i + 1; j < k; ++j) {
                if (adj[i] & (1u << j)) m |= EdgeMask{1} << pair_bit(k, i, j);
            }
        }
        ++counts[cat.classify_mask(k, m)];
    }

    void extend(std::size_t beg, std::size_t end) {
        if (depth + 1 == k) {
            // leaf level: every candidate completes a subgraph
            for (std::size_t i = beg; i < end; ++i) {
                push_node(arena[i]);
                record();
                pop_node();
            }
            return;
        }
        for (std::size_t i = beg; i < end; ++i) {
            NodeId w = arena[i];
            const std::size_t nbeg = arena.size();
            for (std::size_t j = i + 1; j < end; ++j) arena.push_back(arena[j]);
            const std::size_t undo_begin = undo.size();
            for (NodeId u : g.neighbors(w)) {
                if (u > root && !visited[u]) {
                    visited[u] = true;
                    undo.push_back(u);
                    arena.push_back(u);
                }
            }
            push_node(w);
            extend(nbeg, arena.size());
            pop_node();
            for (std::size_t j = undo_begin; j < undo.size(); ++j) visited[undo[j]] = false;
            undo.resize(undo_begin);
            arena.resize(nbeg);
        }
    }

    void run() {
        for (NodeId v = 0; v < g.node_count(); ++v) {
            root = v;
            arena.clear();
            undo.clear();
            std::vector<NodeId> marked;
            for (NodeId u : g.neighbors(v)) {
                if (u > v) {
                    visited[u] = true;
                    marked.push_back(u);
                    arena.push_back(u);
                }
            }
            push_node(v);
            extend(0, arena.size());
            pop_node();
            for (NodeId u : marked) visited[u] = false;
        }
    }
};

}  // namespace

ExactCounts exact_enumerate(const Graph& g, int k) {
    if (k < 3 || k > 5) throw std::invalid_argument("exact_enumerate: k must be 3, 4 or 5");
    Enumerator e(g, k);
    e.run();
    ExactCounts out;
    out.k = k;
    out.counts = std::move(e.counts);
    out.total = 0;
    for (auto c : out.counts) out.total += c;
    return out;
}

ExactCounts exact_enumerate_by_subsets(const Graph& g, int k) {
    if (k < 3 || k > 5) throw std::invalid_argument("exact_enumerate_by_subsets: bad k");
    const std::uint32_t n = g.node_count();
    if (n > 12) throw std::invalid_argument("exact_enumerate_by_subsets: guarded to |V| <= 12");
    const Catalog& cat = Catalog::instance();
    ExactCounts out;
    out.k = k;
    out.counts.assign(cat.classes(k).size(), 0);

    std::vector<int> pick(k);
    for (int i = 0; i < k; ++i) pick[i] = i;
    auto advance = [&]() -> bool {
        int i = k - 1;
        while (i >= 0 && pick[i] == static_cast<int>(n) - k + i) --i;
        if (i < 0) return false;
        ++pick[i];
        for (int j = i + 1; j < k; ++j) pick[j] = pick[j - 1] + 1;
        return true;
    };
    if (static_cast<int>(n) < k) return out;
    do {
        EdgeMask m = 0;
        for (int i = 0; i < k; ++i) {
            for (int j = i + 1; j < k; ++j) {
                if (g.has_edge(NodeId(pick[i]), NodeId(pick[j]))) {
                    m |= EdgeMask{1} << pair_bit(k, i, j);
                }
            }
        }
        int cls = cat.classify_mask(k, m);
        if (cls >= 0) ++out.counts[cls];
    } while (advance());
    for (auto c : out.counts) out.total += c;
    return out;
}

std::int64_t RelationshipGraph::index_of(const SubgraphState& s) const {
    auto less = [](const SubgraphState& a, const SubgraphState& b) {
        return std::lexicographical_compare(a.nodes.begin(), a.nodes.begin() + a.size,
                                            b.nodes.begin(), b.nodes.begin() + b.size);
    };
    auto it = std::lower_bound(states.begin(), states.end(), s, less);
    if (it == states.end() || !(*it == s)) return -1;
    return it - states.begin();
}

RelationshipGraph build_relationship_graph(const Graph& g, int d, std::size_t max_states) {
    if (d < 1) throw std::invalid_argument("build_relationship_graph: d must be >= 1");
    RelationshipGraph out;
    if (d == 1) {
        out.graph = g;
        for (NodeId v = 0; v < g.node_count(); ++v) {
            SubgraphState s;
            s.nodes[0] = v;
            s.size = 1;
            out.states.push_back(s);
        }
        return out;
    }
    if (d > 4) throw std::invalid_argument("build_relationship_graph: d > 4 unsupported");

    // enumerate connected d-subsets by extension from each root
    std::vector<SubgraphState> states;
    std::vector<NodeId> sub;
    auto grow = [&](auto&& self, NodeId root) -> void {
        if (sub.size() == static_cast<std::size_t>(d)) {
            states.push_back(SubgraphState::of(sub));
            return;
        }
        // candidates: neighbors of current nodes, > root, not already chosen
        std::vector<NodeId> cands;
        for (NodeId u : sub) {
            for (NodeId w : g.neighbors(u)) {
                if (w > root && std::find(sub.begin(), sub.end(), w) == sub.end()) {
                    cands.push_back(w);
                }
            }
        }
        std::sort(cands.begin(), cands.end());
        cands.erase(std::unique(cands.begin(), cands.end()), cands.end());
        for (NodeId w : cands) {
            sub.push_back(w);
            self(self, root);
            sub.pop_back();
        }
    };
    for (NodeId v = 0; v < g.node_count(); ++v) {
        sub.assign(1, v);
        grow(grow, v);
        if (states.size() > max_states * 4) {
            throw std::runtime_error("build_relationship_graph: state guard exceeded");
        }
    }
    auto less = [](const SubgraphState& a, const SubgraphState& b) {
        return std::lexicographical_compare(a.nodes.begin(), a.nodes.begin() + a.size,
                                            b.nodes.begin(), b.nodes.begin() + b.size);
    };
    std::sort(states.begin(), states.end(), less);
    states.erase(std::unique(states.begin(), states.end()), states.end());
    if (states.size() > max_states) {
        throw std::runtime_error("build_relationship_graph: state guard exceeded");
    }

    out.states = states;
    // edges: states sharing d-1 nodes; via single-swap generation and lookup
    std::vector<std::pair<std::int64_t, std::int64_t>> rel_edges;
    NeighborOracle oracle(g);
    Walker scratch(oracle, d + 1 <= 5 ? d + 1 : 5, d, WalkMode::simple, 0);
    for (std::size_t i = 0; i < states.size(); ++i) {
        for (const SubgraphState& nb : scratch.enumerate_neighbors(states[i])) {
            std::int64_t j = out.index_of(nb);
            if (j < 0) throw std::logic_error("relationship graph: neighbor state missing");
            if (static_cast<std::int64_t>(i) < j) {
                rel_edges.emplace_back(static_cast<std::int64_t>(i), j);
            }
        }
    }
    if (rel_edges.empty()) {
        // G^(d) with a single state (e.g. K_d on d nodes): emit the node alone
        rel_edges.emplace_back(0, 0);
    }
    out.graph = Graph::from_edges(std::move(rel_edges));
    if (out.graph.node_count() != out.states.size()) {
        throw std::runtime_error("build_relationship_graph: input graph must be connected");
    }
    return out;
}

std::vector<std::vector<SubgraphState>> brute_corresponding_states(
    const Graph& g, std::span<const NodeId> subgraph_nodes, int d, int l) {
    const int k = static_cast<int>(subgraph_nodes.size());
    std::vector<NodeId> nodes(subgraph_nodes.begin(), subgraph_nodes.end());
    std::sort(nodes.begin(), nodes.end());

    // d-node connected induced subgraphs of s
    std::vector<SubgraphState> subs;
    std::vector<int> pick(d);
    for (int i = 0; i < d; ++i) pick[i] = i;
    auto advance = [&]() -> bool {
        int i = d - 1;
        while (i >= 0 && pick[i] == k - d + i) --i;
        if (i < 0) return false;
        ++pick[i];
        for (int j = i + 1; j < d; ++j) pick[j] = pick[j - 1] + 1;
        return true;
    };
    do {
        std::vector<NodeId> ids;
        for (int i : pick) ids.push_back(nodes[i]);
        // connectivity within the induced subgraph
        std::vector<bool> seen(d, false);
        std::vector<int> stack{0};
        seen[0] = true;
        int reached = 1;
        while (!stack.empty()) {
            int a = stack.back();
            stack.pop_back();
            for (int b = 0; b < d; ++b) {
                if (!seen[b] && g.has_edge(ids[a], ids[b])) {
                    seen[b] = true;
                    ++reached;
                    stack.push_back(b);
                }
            }
        }
        if (reached == d) subs.push_back(SubgraphState::of(ids));
    } while (advance());

    auto adjacent = [&](const SubgraphState& a, const SubgraphState& b) {
        if (a == b) return false;
        if (d == 1) return g.has_edge(a.nodes[0], b.nodes[0]);
        int shared = 0;
        for (int i = 0; i < d; ++i) {
            for (int j = 0; j < d; ++j) shared += (a.nodes[i] == b.nodes[j]);
        }
        return shared == d - 1;
    };

    std::vector<std::vector<SubgraphState>> tuples;
    std::vector<int> idx(l, 0);
    std::vector<SubgraphState> cur(l);
    auto rec = [&](auto&& self, int pos, std::uint32_t cover) -> void {
        if (pos == l) {
            if (std::popcount(cover) == k) tuples.push_back(cur);
            return;
        }
        for (const SubgraphState& s : subs) {
            if (pos > 0 && !adjacent(cur[pos - 1], s)) continue;
            std::uint32_t c = cover;
            for (int i = 0; i < s.size; ++i) {
                auto it = std::lower_bound(nodes.begin(), nodes.end(), s.nodes[i]);
                c |= 1u << (it - nodes.begin());
            }
            cur[pos] = s;
            self(self, pos + 1, c);
        }
    };
    rec(rec, 0, 0);
    return tuples;
}

std::vector<double> exact_stationary(const Graph& relationship_graph) {
    const double denom = 2.0 * static_cast<double>(relationship_graph.edge_count());
    std::vector<double> pi(relationship_graph.node_count(), 0.0);
    for (NodeId v = 0; v < relationship_graph.node_count(); ++v) {
        pi[v] = static_cast<double>(relationship_graph.degree(v)) / denom;
    }
    return pi;
}

}  // namespace graphlet
