#include "graphlet/walk.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

namespace graphlet {

namespace {

// Connectivity of a candidate state given adjacency bits over its <= 4 nodes.
bool tiny_connected(int n, const std::array<std::uint8_t, 4>& adj) {
    std::uint8_t seen = 1, frontier = 1;
    while (frontier) {
        std::uint8_t next = 0;
        for (int i = 0; i < n; ++i) {
            if (frontier & (1u << i)) next |= adj[i];
        }
        next &= static_cast<std::uint8_t>(~seen);
        seen |= next;
        frontier = next;
    }
    return seen == (1u << n) - 1;
}

// Appends the full relationship-graph neighbor set of x to `out`, reusing
// `cands` as scratch. Candidate order is deterministic but unsorted.
template <class HoodFn>
void enumerate_neighbors_impl(const SubgraphState& x, int d, HoodFn hood,
                              std::vector<NodeId>& cands, std::vector<SubgraphState>& out) {
    out.clear();
    if (d == 1) {
        auto h = hood(x.nodes[0]);
        out.reserve(h.degree);
        for (NodeId w : h.neighbors) {
            SubgraphState s;
            s.nodes[0] = w;
            s.size = 1;
            out.push_back(s);
        }
        return;
    }

    std::array<NeighborOracle::Neighborhood, 4> hoods;
    for (int i = 0; i < d; ++i) hoods[i] = hood(x.nodes[i]);

    auto in_state = [&](NodeId v) {
        for (int i = 0; i < d; ++i) {
            if (x.nodes[i] == v) return true;
        }
        return false;
    };
    auto connected_to = [&](int rest_idx, NodeId v) {
        const auto& nb = hoods[rest_idx].neighbors;
        return std::binary_search(nb.begin(), nb.end(), v);
    };

    if (d == 3) {
        // candidate {a, b, w} is connected iff a~b (any w from either list
        // works) or w is adjacent to both; both cases are a single merge of
        // the two sorted kept lists
        for (int drop = 0; drop < d; ++drop) {
            const int ka = (drop + 1) % 3, kb = (drop + 2) % 3;
            const NodeId a = x.nodes[ka], b = x.nodes[kb];
            const auto& na = hoods[ka].neighbors;
            const auto& nb = hoods[kb].neighbors;
            const bool ab = std::binary_search(na.begin(), na.end(), b);
            cands.clear();
            std::size_t i = 0, j = 0;
            while (i < na.size() || j < nb.size()) {
                NodeId w;
                bool in_both = false;
                if (j == nb.size() || (i < na.size() && na[i] < nb[j])) {
                    w = na[i++];
                } else if (i == na.size() || nb[j] < na[i]) {
                    w = nb[j++];
                } else {
                    w = na[i];
                    ++i;
                    ++j;
                    in_both = true;
                }
                if (!ab && !in_both) continue;
                if (in_state(w)) continue;
                cands.push_back(w);
            }
            for (NodeId w : cands) {
                std::array<NodeId, 3> ids{a, b, w};
                out.push_back(SubgraphState::of(ids));
            }
        }
        return;
    }

    for (int drop = 0; drop < d; ++drop) {
        cands.clear();
        for (int i = 0; i < d; ++i) {
            if (i == drop) continue;
            for (NodeId w : hoods[i].neighbors) {
                if (!in_state(w)) cands.push_back(w);
            }
        }
        std::sort(cands.begin(), cands.end());
        cands.erase(std::unique(cands.begin(), cands.end()), cands.end());

        // positions 0..d-2 = kept nodes, position d-1 = the incoming node
        std::array<int, 4> kept{};
        int nk = 0;
        for (int i = 0; i < d; ++i) {
            if (i != drop) kept[nk++] = i;
        }
        std::array<std::uint8_t, 4> base_adj{};
        for (int a = 0; a < nk; ++a) {
            for (int b = a + 1; b < nk; ++b) {
                if (connected_to(kept[a], x.nodes[kept[b]])) {
                    base_adj[a] |= std::uint8_t(1u << b);
                    base_adj[b] |= std::uint8_t(1u << a);
                }
            }
        }
        for (NodeId w : cands) {
            std::array<std::uint8_t, 4> adj = base_adj;
            for (int a = 0; a < nk; ++a) {
                if (connected_to(kept[a], w)) {
                    adj[a] |= std::uint8_t(1u << nk);
                    adj[nk] |= std::uint8_t(1u << a);
                }
            }
            if (!tiny_connected(nk + 1, adj)) continue;
            std::array<NodeId, 5> ids{};
            for (int a = 0; a < nk; ++a) ids[a] = x.nodes[kept[a]];
            ids[nk] = w;
            out.push_back(SubgraphState::of({ids.data(), static_cast<std::size_t>(nk + 1)}));
        }
    }
}

}  // namespace

SubgraphState SubgraphState::of(std::span<const NodeId> ids) {
    SubgraphState s;
    s.size = static_cast<std::uint8_t>(ids.size());
    std::copy(ids.begin(), ids.end(), s.nodes.begin());
    std::sort(s.nodes.begin(), s.nodes.begin() + s.size);
    return s;
}

Walker::Walker(const NeighborOracle& oracle, int k, int d, WalkMode mode, std::uint64_t seed)
    : oracle_(oracle), catalog_(Catalog::instance()), k_(k), d_(d), l_(k - d + 1), mode_(mode),
      rng_(seed) {
    if (k < 3 || k > 5) throw std::invalid_argument("walker: k must be 3, 4 or 5");
    if (d < 1 || d >= k) throw std::invalid_argument("walker: require 1 <= d < k");
    ring_degree_.fill(-1);
}

const Walker::NodeEntry* Walker::find_entry(NodeId v) const {
    for (int i = 0; i < entry_count_; ++i) {
        if (entries_[i].node == v) return &entries_[i];
    }
    return nullptr;
}

const Walker::NodeEntry& Walker::fetch_entry(NodeId v) {
    const NodeEntry* e = find_entry(v);
    if (e) return *e;
    throw std::logic_error("walker: node not in window");
}

void Walker::add_state(const SubgraphState& s) {
    for (int i = 0; i < s.size; ++i) {
        NodeId v = s.nodes[i];
        int pos = 0;
        while (pos < entry_count_ && entries_[pos].node < v) ++pos;
        if (pos < entry_count_ && entries_[pos].node == v) {
            ++entries_[pos].count;
            continue;
        }
        auto h = oracle_.fetch_neighbors(v);
        ++api_calls_;
        for (int j = entry_count_; j > pos; --j) entries_[j] = entries_[j - 1];
        entries_[pos] = NodeEntry{v, h.neighbors, h.degree, 1};
        ++entry_count_;
        // adjacency of the incoming node against the rest of the union:
        // ordered searches in its own fetched list
        for (int j = 0; j < entry_count_; ++j) {
            if (entries_[j].node == v) continue;
            if (std::binary_search(h.neighbors.begin(), h.neighbors.end(), entries_[j].node)) {
                NodeId a = std::min(v, entries_[j].node), b = std::max(v, entries_[j].node);
                edges_[edge_count_++] = {a, b};
            }
        }
    }
    union_size_ = entry_count_;
}

void Walker::drop_state(const SubgraphState& s) {
    for (int i = 0; i < s.size; ++i) {
        NodeId v = s.nodes[i];
        int pos = 0;
        while (entries_[pos].node != v) ++pos;
        if (--entries_[pos].count > 0) continue;
        for (int j = pos; j + 1 < entry_count_; ++j) entries_[j] = entries_[j + 1];
        --entry_count_;
        for (int j = 0; j < edge_count_;) {
            if (edges_[j].first == v || edges_[j].second == v) {
                edges_[j] = edges_[--edge_count_];
            } else {
                ++j;
            }
        }
    }
    union_size_ = entry_count_;
}

void Walker::append(const SubgraphState& s) {
    ring_[ring_len_] = s;
    ring_degree_[ring_len_] = -1;
    ++ring_len_;
    add_state(s);
}

void Walker::init(std::optional<NodeId> start) {
    const std::uint32_t n = oracle_.node_count();
    if (n < static_cast<std::uint32_t>(k_)) {
        throw std::invalid_argument("walker: graph has fewer than k nodes");
    }
    ring_len_ = 0;
    entry_count_ = 0;
    edge_count_ = 0;
    union_size_ = 0;

    NodeId v0 = start ? *start : NodeId(rng_() % n);
    std::array<NodeId, 4> grown{};
    grown[0] = v0;
    int gsize = 1;
    auto contains = [&](NodeId w) {
        for (int i = 0; i < gsize; ++i) {
            if (grown[i] == w) return true;
        }
        return false;
    };
    while (gsize < d_) {
        bool extended = false;
        for (int attempt = 0; attempt < 32 && !extended; ++attempt) {
            NodeId u = grown[rng_() % gsize];
            auto h = oracle_.fetch_neighbors(u);
            ++api_calls_;
            if (h.degree == 0) break;
            NodeId w = h.neighbors[rng_() % h.degree];
            if (!contains(w)) {
                grown[gsize++] = w;
                extended = true;
            }
        }
        if (!extended) {
            // exhaustive frontier; empty means the component is smaller than d
            std::vector<NodeId> frontier;
            for (int i = 0; i < gsize; ++i) {
                auto h = oracle_.fetch_neighbors(grown[i]);
                ++api_calls_;
                for (NodeId w : h.neighbors) {
                    if (!contains(w)) frontier.push_back(w);
                }
            }
            std::sort(frontier.begin(), frontier.end());
            frontier.erase(std::unique(frontier.begin(), frontier.end()), frontier.end());
            if (frontier.empty()) {
                throw std::runtime_error("walker: start component smaller than d");
            }
            grown[gsize++] = frontier[rng_() % frontier.size()];
        }
    }
    append(SubgraphState::of({grown.data(), static_cast<std::size_t>(gsize)}));
    while (ring_len_ < l_) {
        const SubgraphState& head = ring_[ring_len_ - 1];
        SubgraphState next = (mode_ == WalkMode::non_backtracking && ring_len_ >= 2)
                                 ? nb_neighbor(head, ring_[ring_len_ - 2])
                                 : random_neighbor(head);
        append(next);
    }
}

void Walker::set_window(std::span<const SubgraphState> states) {
    if (static_cast<int>(states.size()) != l_) {
        throw std::invalid_argument("set_window: expected l states");
    }
    ring_len_ = 0;
    entry_count_ = 0;
    edge_count_ = 0;
    union_size_ = 0;
    for (const auto& s : states) {
        if (s.size != d_) throw std::invalid_argument("set_window: state size != d");
        if (ring_len_ > 0) {
            const SubgraphState& prev = ring_[ring_len_ - 1];
            bool adjacent;
            if (d_ == 1) {
                const NodeEntry& e = fetch_entry(prev.nodes[0]);
                adjacent = std::binary_search(e.nbrs.begin(), e.nbrs.end(), s.nodes[0]);
            } else {
                int shared = 0;
                for (int i = 0; i < d_; ++i) {
                    for (int j = 0; j < d_; ++j) {
                        shared += (prev.nodes[i] == s.nodes[j]);
                    }
                }
                adjacent = (shared == d_ - 1);
            }
            if (!adjacent) throw std::invalid_argument("set_window: states not adjacent");
        }
        append(s);
    }
}

void Walker::step() {
    const SubgraphState& head = ring_[l_ - 1];
    SubgraphState next = (mode_ == WalkMode::non_backtracking) ? nb_neighbor(head, ring_[l_ - 2])
                                                               : random_neighbor(head);
    SubgraphState dropped = ring_[0];
    for (int i = 0; i + 1 < l_; ++i) {
        ring_[i] = ring_[i + 1];
        ring_degree_[i] = ring_degree_[i + 1];
    }
    ring_[l_ - 1] = next;
    ring_degree_[l_ - 1] = -1;
    add_state(next);
    drop_state(dropped);
}

SubgraphState Walker::random_neighbor_d1(NodeId v) {
    const NodeEntry* e = find_entry(v);
    std::span<const NodeId> nbrs;
    std::uint32_t deg;
    if (e) {
        nbrs = e->nbrs;
        deg = e->degree;
    } else {
        auto h = oracle_.fetch_neighbors(v);
        ++api_calls_;
        nbrs = h.neighbors;
        deg = h.degree;
    }
    if (deg == 0) throw std::runtime_error("walker: isolated node has no neighbors");
    SubgraphState s;
    s.nodes[0] = nbrs[rng_() % deg];
    s.size = 1;
    return s;
}

SubgraphState Walker::random_neighbor_d2(NodeId u, NodeId v) {
    auto hood_of = [&](NodeId x) -> NeighborOracle::Neighborhood {
        const NodeEntry* e = find_entry(x);
        if (e) return {e->nbrs, e->degree};
        auto h = oracle_.fetch_neighbors(x);
        ++api_calls_;
        return h;
    };
    auto hu = hood_of(u), hv = hood_of(v);
    if (hu.degree + hv.degree < 3) {
        throw std::runtime_error("walker: edge state has no neighbors");
    }
    // Pick an endpoint degree-proportionally, then a uniform neighbor of it;
    // drawing the other endpoint restarts the whole process, which makes the
    // accepted neighbor exactly uniform over the d_u + d_v - 2 candidates.
    for (;;) {
        std::uint64_t r = rng_() % (hu.degree + hv.degree);
        bool pick_u = r < hu.degree;
        NodeId kept = pick_u ? u : v;
        NodeId other = pick_u ? v : u;
        const auto& h = pick_u ? hu : hv;
        NodeId w = h.neighbors[rng_() % h.degree];
        if (w == other) continue;
        std::array<NodeId, 2> ids{kept, w};
        return SubgraphState::of(ids);
    }
}

SubgraphState Walker::random_neighbor(const SubgraphState& x) {
    if (d_ == 1) return random_neighbor_d1(x.nodes[0]);
    if (d_ == 2) return random_neighbor_d2(x.nodes[0], x.nodes[1]);
    const auto& cands = neighbors_scratch(x);
    if (cands.empty()) throw std::runtime_error("walker: state has no neighbors");
    return cands[rng_() % cands.size()];
}

SubgraphState Walker::nb_neighbor(const SubgraphState& head, const SubgraphState& prev) {
    if (d_ == 1) {
        NodeId v = head.nodes[0], p = prev.nodes[0];
        const NodeEntry* e = find_entry(v);
        std::span<const NodeId> nbrs;
        std::uint32_t deg;
        if (e) {
            nbrs = e->nbrs;
            deg = e->degree;
        } else {
            auto h = oracle_.fetch_neighbors(v);
            ++api_calls_;
            nbrs = h.neighbors;
            deg = h.degree;
        }
        if (deg == 1) return prev;  // forced return at a degree-1 state
        auto it = std::lower_bound(nbrs.begin(), nbrs.end(), p);
        std::size_t ppos = static_cast<std::size_t>(it - nbrs.begin());
        std::size_t idx = rng_() % (deg - 1);
        if (idx >= ppos) ++idx;
        SubgraphState s;
        s.nodes[0] = nbrs[idx];
        s.size = 1;
        return s;
    }
    if (d_ == 2) {
        if (state_degree(head) == 1) return prev;
        for (;;) {
            SubgraphState cand = random_neighbor_d2(head.nodes[0], head.nodes[1]);
            if (!(cand == prev)) return cand;
        }
    }
    const auto& all = neighbors_scratch(head);
    // reservoir over candidates differing from the previous state
    std::size_t n_other = all.size();
    for (const auto& c : all) {
        if (c == prev) --n_other;
    }
    if (n_other == 0) return prev;
    std::size_t idx = rng_() % n_other;
    for (const auto& c : all) {
        if (c == prev) continue;
        if (idx == 0) return c;
        --idx;
    }
    return prev;  // unreachable
}

const std::vector<SubgraphState>& Walker::neighbors_scratch(const SubgraphState& x) {
    auto hood = [&](NodeId v) -> NeighborOracle::Neighborhood {
        const NodeEntry* e = find_entry(v);
        if (e) return {e->nbrs, e->degree};
        auto h = oracle_.fetch_neighbors(v);
        ++api_calls_;
        return h;
    };
    enumerate_neighbors_impl(x, d_, hood, scratch_nodes_, scratch_states_);
    return scratch_states_;
}

std::vector<SubgraphState> Walker::enumerate_neighbors(const SubgraphState& x) {
    std::vector<SubgraphState> out = neighbors_scratch(x);
    std::sort(out.begin(), out.end(), [](const SubgraphState& a, const SubgraphState& b) {
        return std::lexicographical_compare(a.nodes.begin(), a.nodes.begin() + a.size,
                                            b.nodes.begin(), b.nodes.begin() + b.size);
    });
    return out;
}

std::uint64_t Walker::state_degree(const SubgraphState& x) {
    auto hood = [&](NodeId v) -> NeighborOracle::Neighborhood {
        const NodeEntry* e = find_entry(v);
        if (e) return {e->nbrs, e->degree};
        auto h = oracle_.fetch_neighbors(v);
        ++api_calls_;
        return h;
    };
    if (x.size == 1) return hood(x.nodes[0]).degree;
    if (x.size == 2) return hood(x.nodes[0]).degree + hood(x.nodes[1]).degree - 2;
    enumerate_neighbors_impl(x, x.size, hood, scratch_nodes_, scratch_states_);
    return scratch_states_.size();
}

std::int64_t Walker::ring_state_degree(int slot) {
    if (ring_degree_[slot] < 0) {
        ring_degree_[slot] = static_cast<std::int64_t>(state_degree(ring_[slot]));
    }
    return ring_degree_[slot];
}

double Walker::middle_degree_weight(std::int64_t deg) const {
    if (mode_ == WalkMode::non_backtracking) deg = std::max<std::int64_t>(deg - 1, 1);
    return static_cast<double>(deg);
}

double Walker::pi_tilde() {
    if (l_ == 2) return 1.0;
    double w = 1.0;
    for (int slot = 1; slot + 1 < l_; ++slot) {
        w /= middle_degree_weight(ring_state_degree(slot));
    }
    return w;
}

std::vector<SubgraphState> Walker::states() const {
    return {ring_.begin(), ring_.begin() + ring_len_};
}

std::vector<NodeId> Walker::union_nodes() const {
    std::vector<NodeId> out;
    out.reserve(entry_count_);
    for (int i = 0; i < entry_count_; ++i) out.push_back(entries_[i].node);
    return out;
}

std::vector<std::pair<NodeId, NodeId>> Walker::induced_edges() const {
    std::vector<std::pair<NodeId, NodeId>> out(edges_.begin(), edges_.begin() + edge_count_);
    std::sort(out.begin(), out.end());
    return out;
}

EdgeMask Walker::window_mask() const {
    auto pos = [&](NodeId v) -> int {
        for (int i = 0; i < entry_count_; ++i) {
            if (entries_[i].node == v) return i;
        }
        return -1;
    };
    EdgeMask m = 0;
    for (int i = 0; i < edge_count_; ++i) {
        int a = pos(edges_[i].first), b = pos(edges_[i].second);
        if (a > b) std::swap(a, b);
        m |= EdgeMask{1} << pair_bit(k_, a, b);
    }
    return m;
}

int Walker::classify() const { return catalog_.classify_mask(k_, window_mask()); }

const Catalog::Mapping& Walker::classify_mapped() const {
    return catalog_.classify_mask_mapped(k_, window_mask());
}

double Walker::css_weight() {
    if (l_ <= 2) {
        throw std::logic_error("css_weight: corresponding-state weights need l > 2");
    }
    const auto& mapping = classify_mapped();
    const auto& groups = catalog_.css_groups(k_, d_, mapping.cls);
    std::array<int, 5> inv{};
    for (int i = 0; i < k_; ++i) inv[mapping.to_canonical[i]] = i;

    std::array<double, 32> memo;
    memo.fill(-1.0);
    auto mask_weight = [&](NodeMask mask) -> double {
        double& m = memo[mask];
        if (m >= 0.0) return m;
        std::array<NodeId, 4> ids{};
        int nids = 0;
        for (int c = 0; c < k_; ++c) {
            if (mask & (1u << c)) ids[nids++] = entries_[inv[c]].node;
        }
        std::int64_t deg;
        if (nids == 1) {
            deg = fetch_entry(ids[0]).degree;
        } else if (nids == 2) {
            deg = static_cast<std::int64_t>(fetch_entry(ids[0]).degree) +
                  fetch_entry(ids[1]).degree - 2;
        } else {
            deg = static_cast<std::int64_t>(
                state_degree(SubgraphState::of({ids.data(), static_cast<std::size_t>(nids)})));
        }
        m = middle_degree_weight(deg);
        return m;
    };

    double total = 0.0;
    for (const auto& g : groups) {
        double w = static_cast<double>(g.multiplicity);
        for (int i = 0; i < g.middle_count; ++i) w /= mask_weight(g.middles[i]);
        total += w;
    }
    return total;
}

double pi_tilde_of_tuple(const NeighborOracle& oracle, std::span<const SubgraphState> tuple,
                         WalkMode mode) {
    const std::size_t l = tuple.size();
    if (l == 1) {
        std::int64_t deg = static_cast<std::int64_t>(state_degree_of(oracle, tuple[0]));
        if (mode == WalkMode::non_backtracking) deg = std::max<std::int64_t>(deg - 1, 1);
        return static_cast<double>(deg);
    }
    if (l == 2) return 1.0;
    double w = 1.0;
    for (std::size_t i = 1; i + 1 < l; ++i) {
        std::int64_t deg = static_cast<std::int64_t>(state_degree_of(oracle, tuple[i]));
        if (mode == WalkMode::non_backtracking) deg = std::max<std::int64_t>(deg - 1, 1);
        w /= static_cast<double>(deg);
    }
    return w;
}

std::uint64_t state_degree_of(const NeighborOracle& oracle, const SubgraphState& x) {
    auto hood = [&](NodeId v) { return oracle.fetch_neighbors(v); };
    if (x.size == 1) return hood(x.nodes[0]).degree;
    if (x.size == 2) return hood(x.nodes[0]).degree + hood(x.nodes[1]).degree - 2;
    std::vector<NodeId> cands;
    std::vector<SubgraphState> out;
    enumerate_neighbors_impl(x, x.size, hood, cands, out);
    return out.size();
}

double css_weight_of_sample(const NeighborOracle& oracle, int k, int d,
                            std::span<const NodeId> nodes,
                            std::span<const std::pair<NodeId, NodeId>> edges, WalkMode mode) {
    if (k - d + 1 <= 2) {
        throw std::invalid_argument("css_weight_of_sample: requires l = k - d + 1 > 2");
    }
    const Catalog& cat = Catalog::instance();
    std::array<NodeId, 5> sorted{};
    std::copy(nodes.begin(), nodes.end(), sorted.begin());
    std::sort(sorted.begin(), sorted.begin() + k);
    auto pos = [&](NodeId v) -> int {
        for (int i = 0; i < k; ++i) {
            if (sorted[i] == v) return i;
        }
        throw std::invalid_argument("css_weight_of_sample: edge endpoint outside node set");
    };
    EdgeMask m = 0;
    for (const auto& [u, v] : edges) {
        int a = pos(u), b = pos(v);
        if (a > b) std::swap(a, b);
        m |= EdgeMask{1} << pair_bit(k, a, b);
    }
    const auto& mapping = cat.classify_mask_mapped(k, m);
    if (mapping.cls < 0) throw std::invalid_argument("css_weight_of_sample: sample disconnected");
    std::array<int, 5> inv{};
    for (int i = 0; i < k; ++i) inv[mapping.to_canonical[i]] = i;

    double total = 0.0;
    std::array<double, 32> memo;
    memo.fill(-1.0);
    for (const auto& g : cat.css_groups(k, d, mapping.cls)) {
        double w = static_cast<double>(g.multiplicity);
        for (int i = 0; i < g.middle_count; ++i) {
            NodeMask mask = g.middles[i];
            if (memo[mask] < 0.0) {
                std::array<NodeId, 4> ids{};
                int nids = 0;
                for (int c = 0; c < k; ++c) {
                    if (mask & (1u << c)) ids[nids++] = sorted[inv[c]];
                }
                std::int64_t deg = static_cast<std::int64_t>(state_degree_of(
                    oracle, SubgraphState::of({ids.data(), static_cast<std::size_t>(nids)})));
                if (mode == WalkMode::non_backtracking) deg = std::max<std::int64_t>(deg - 1, 1);
                memo[mask] = static_cast<double>(deg);
            }
            w /= memo[mask];
        }
        total += w;
    }
    return total;
}

}  // namespace graphlet
