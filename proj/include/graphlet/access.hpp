// Neighbor-list oracle modelling API-restricted graph access, with call
// accounting. Walkers read adjacency exclusively through this interface.
#pragma once

#include <atomic>
#include <chrono>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <thread>
#include <vector>

#include "graphlet/graph.hpp"

namespace graphlet {

struct OracleOptions {
    bool memoize = false;         // repeated fetches of a node count as cache hits
    std::int64_t latency_us = 0;  // simulated per-call delay
};

class NeighborOracle {
public:
    struct Neighborhood {
        std::span<const NodeId> neighbors;  // ascending
        std::uint32_t degree;
    };

    using Options = OracleOptions;

    explicit NeighborOracle(const Graph& g, Options opt = {})
        : graph_(&g), opt_(opt), touched_(g.node_count()) {
        for (auto& t : touched_) t.store(false, std::memory_order_relaxed);
    }

    Neighborhood fetch_neighbors(NodeId v) const {
        if (v >= graph_->node_count()) throw std::out_of_range("fetch_neighbors: invalid node id");
        bool seen = touched_[v].exchange(true, std::memory_order_relaxed);
        if (!seen) distinct_.fetch_add(1, std::memory_order_relaxed);
        if (opt_.memoize && seen) {
            cached_hits_.fetch_add(1, std::memory_order_relaxed);
        } else {
            calls_.fetch_add(1, std::memory_order_relaxed);
            if (opt_.latency_us > 0) {
                std::this_thread::sleep_for(std::chrono::microseconds(opt_.latency_us));
            }
        }
        return {graph_->neighbors(v), graph_->degree(v)};
    }

    std::uint64_t calls() const { return calls_.load(std::memory_order_relaxed); }
    std::uint64_t cached_hits() const { return cached_hits_.load(std::memory_order_relaxed); }
    std::uint64_t distinct_touched() const { return distinct_.load(std::memory_order_relaxed); }

    void reset_counters() {
        calls_ = 0;
        cached_hits_ = 0;
        distinct_ = 0;
        for (auto& t : touched_) t.store(false, std::memory_order_relaxed);
    }

    const Graph& graph() const { return *graph_; }
    std::uint32_t node_count() const { return graph_->node_count(); }

private:
    const Graph* graph_;
    Options opt_;
    mutable std::atomic<std::uint64_t> calls_{0};
    mutable std::atomic<std::uint64_t> cached_hits_{0};
    mutable std::atomic<std::uint64_t> distinct_{0};
    mutable std::vector<std::atomic<bool>> touched_;
};

}  // namespace graphlet
