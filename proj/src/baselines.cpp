#include "graphlet/baselines.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include "graphlet/catalog.hpp"

namespace graphlet {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double ms_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
        .count();
}

// index into a cumulative weight table
std::size_t pick_cumulative(const std::vector<double>& cum, double r) {
    auto it = std::upper_bound(cum.begin(), cum.end(), r);
    std::size_t idx = static_cast<std::size_t>(it - cum.begin());
    return std::min(idx, cum.size() - 1);
}

// uniform unordered pair of distinct indices in [0, n)
std::pair<std::uint32_t, std::uint32_t> uniform_pair(std::mt19937_64& rng, std::uint32_t n) {
    std::uint32_t a = static_cast<std::uint32_t>(rng() % n);
    std::uint32_t b = static_cast<std::uint32_t>(rng() % (n - 1));
    if (b >= a) ++b;
    return {a, b};
}

}  // namespace

BaselineReport wedge_sampling(const Graph& g, std::uint64_t n, std::uint64_t seed) {
    BaselineReport rep;
    rep.method = "wedge";
    rep.samples = n;

    auto t0 = std::chrono::steady_clock::now();
    std::vector<double> cum(g.node_count(), 0.0);
    double total_wedges = 0.0;
    for (NodeId v = 0; v < g.node_count(); ++v) {
        double dv = g.degree(v);
        total_wedges += dv * (dv - 1) / 2.0;
        cum[v] = total_wedges;
    }
    rep.preprocess_ms = ms_since(t0);
    if (total_wedges <= 0.0) {
        throw std::invalid_argument("wedge_sampling: graph has no wedges (max degree <= 1)");
    }

    t0 = std::chrono::steady_clock::now();
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unif(0.0, total_wedges);
    std::uint64_t closed = 0;
    for (std::uint64_t i = 0; i < n; ++i) {
        NodeId v;
        do {
            v = static_cast<NodeId>(pick_cumulative(cum, unif(rng)));
        } while (g.degree(v) < 2);
        auto nb = g.neighbors(v);
        auto [a, b] = uniform_pair(rng, g.degree(v));
        if (g.has_edge(nb[a], nb[b])) ++closed;
    }
    rep.sample_ms = ms_since(t0);
    rep.kept = n;

    const double kappa = static_cast<double>(closed) / static_cast<double>(n);
    const double c32 = kappa * total_wedges / 3.0;       // each triangle closes 3 wedges
    const double c31 = (1.0 - kappa) * total_wedges;
    rep.counts = {c31, c32};
    const double tot = c31 + c32;
    rep.concentration = {tot > 0 ? c31 / tot : kNaN, tot > 0 ? c32 / tot : kNaN};
    return rep;
}

BaselineReport path3_sampling(const Graph& g, std::uint64_t n, std::uint64_t seed) {
    BaselineReport rep;
    rep.method = "path3";
    rep.samples = n;

    auto t0 = std::chrono::steady_clock::now();
    std::vector<std::pair<NodeId, NodeId>> edges;
    edges.reserve(g.edge_count());
    std::vector<double> cum;
    cum.reserve(g.edge_count());
    double S = 0.0;
    for (NodeId u = 0; u < g.node_count(); ++u) {
        for (NodeId v : g.neighbors(u)) {
            if (u < v) {
                S += static_cast<double>(g.degree(u) - 1) * (g.degree(v) - 1);
                edges.emplace_back(u, v);
                cum.push_back(S);
            }
        }
    }
    rep.preprocess_ms = ms_since(t0);
    if (S <= 0.0) throw std::invalid_argument("path3_sampling: no 3-paths in the graph");

    // Non-induced 3-path counts per 4-node class; the 3-star contains none.
    static constexpr double kPathsPerClass[6] = {1, 0, 4, 2, 6, 12};
    const Catalog& cat = Catalog::instance();

    t0 = std::chrono::steady_clock::now();
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unif(0.0, S);
    std::array<std::uint64_t, 6> hits{};
    std::uint64_t kept = 0;
    for (std::uint64_t i = 0; i < n; ++i) {
        std::pair<NodeId, NodeId> e;
        do {
            e = edges[pick_cumulative(cum, unif(rng))];
        } while (g.degree(e.first) < 2 || g.degree(e.second) < 2);
        auto [u, v] = e;
        auto nu = g.neighbors(u);
        auto nv = g.neighbors(v);
        // uniform neighbor of u other than v (and symmetrically for v)
        auto pick_other = [&](std::span<const NodeId> nb, std::uint32_t deg, NodeId excl) {
            auto it = std::lower_bound(nb.begin(), nb.end(), excl);
            std::size_t pos = static_cast<std::size_t>(it - nb.begin());
            std::size_t idx = rng() % (deg - 1);
            if (idx >= pos) ++idx;
            return nb[idx];
        };
        NodeId up = pick_other(nu, g.degree(u), v);
        NodeId vp = pick_other(nv, g.degree(v), u);
        if (up == vp || up == v || vp == u) continue;  // fewer than 4 distinct nodes
        ++kept;
        std::array<NodeId, 4> nodes{up, u, v, vp};
        std::vector<std::pair<NodeId, NodeId>> es;
        for (int a = 0; a < 4; ++a) {
            for (int b = a + 1; b < 4; ++b) {
                if (g.has_edge(nodes[a], nodes[b])) es.emplace_back(nodes[a], nodes[b]);
            }
        }
        int cls = cat.classify(4, nodes, es);
        ++hits[cls];
    }
    rep.sample_ms = ms_since(t0);
    rep.kept = kept;

    rep.counts.assign(6, kNaN);
    rep.concentration.assign(6, kNaN);
    rep.not_estimable = {2};
    double total = 0.0;
    for (int c = 0; c < 6; ++c) {
        if (kPathsPerClass[c] == 0) continue;
        rep.counts[c] =
            S / kPathsPerClass[c] * static_cast<double>(hits[c]) / static_cast<double>(n);
        total += rep.counts[c];
    }
    if (total > 0) {
        for (int c = 0; c < 6; ++c) {
            if (kPathsPerClass[c] > 0) rep.concentration[c] = rep.counts[c] / total;
        }
    }
    return rep;
}

BaselineReport mhrw_wedge_sampling(const NeighborOracle& oracle, std::uint64_t n,
                                   std::uint64_t seed, MhrwRule rule, std::optional<NodeId> start,
                                   std::vector<std::uint64_t>* visit_counts) {
    BaselineReport rep;
    rep.method = "mhrw-wedge";
    rep.samples = n;

    std::mt19937_64 rng(seed);
    const std::uint32_t nn = oracle.node_count();
    NodeId v = 0;
    std::uint32_t dv = 0;
    if (start) {
        v = *start;
        dv = oracle.fetch_neighbors(v).degree;
        if (dv < 2) throw std::invalid_argument("mhrw_wedge_sampling: start degree < 2");
    } else {
        for (;;) {
            v = static_cast<NodeId>(rng() % nn);
            dv = oracle.fetch_neighbors(v).degree;
            if (dv >= 2) break;
        }
    }

    auto t0 = std::chrono::steady_clock::now();
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    std::uint64_t open = 0, closed = 0;
    if (visit_counts) visit_counts->assign(nn, 0);
    const std::uint64_t calls_before = oracle.calls() + oracle.cached_hits();
    for (std::uint64_t t = 0; t < n; ++t) {
        if (visit_counts) ++(*visit_counts)[v];
        auto hv = oracle.fetch_neighbors(v);  // 1st call of the step
        auto [a, b] = uniform_pair(rng, hv.degree);
        NodeId x = hv.neighbors[a], y = hv.neighbors[b];
        auto hx = oracle.fetch_neighbors(x);  // 2nd call: closure check
        if (std::binary_search(hx.neighbors.begin(), hx.neighbors.end(), y)) {
            ++closed;
        } else {
            ++open;
        }
        NodeId w = hv.neighbors[rng() % hv.degree];
        auto hw = oracle.fetch_neighbors(w);  // 3rd call: proposal degree
        double ratio;
        if (rule == MhrwRule::hastings) {
            ratio = static_cast<double>(hw.degree - 1) / static_cast<double>(hv.degree - 1);
        } else {
            ratio = static_cast<double>(hw.degree) * (hw.degree - 1) /
                    (static_cast<double>(hv.degree) * (hv.degree - 1));
        }
        if (hw.degree >= 2 && unif(rng) <= std::min(1.0, ratio)) v = w;
    }
    rep.sample_ms = ms_since(t0);
    rep.api_calls = oracle.calls() + oracle.cached_hits() - calls_before;
    rep.kept = n;

    // Open tallies count each wedge once; closed tallies count each triangle
    // three times.
    const double denom3 = 3.0 * static_cast<double>(open) + static_cast<double>(closed);
    rep.counts = {kNaN, kNaN};
    rep.not_estimable = {};
    if (denom3 > 0) {
        rep.concentration = {3.0 * static_cast<double>(open) / denom3,
                             static_cast<double>(closed) / denom3};
    } else {
        rep.concentration = {kNaN, kNaN};
    }
    return rep;
}

}  // namespace graphlet
