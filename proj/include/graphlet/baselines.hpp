// Competing samplers: full-access wedge sampling and 3-path sampling, and
// the restricted-access Metropolis-Hastings wedge sampler.
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "graphlet/access.hpp"
#include "graphlet/graph.hpp"

namespace graphlet {

struct BaselineReport {
    std::string method;
    std::uint64_t samples = 0;
    std::uint64_t kept = 0;  // samples with the full node-count (path3)
    std::vector<double> counts;         // per class; NaN where not estimable
    std::vector<double> concentration;  // per class; NaN where not estimable
    std::vector<int> not_estimable;     // 1-based class indices
    std::uint64_t api_calls = 0;        // restricted-access methods only
    double preprocess_ms = 0.0;
    double sample_ms = 0.0;
    std::string graph_name = "<memory>";
};

// Node picked proportionally to (d_v choose 2), then a uniform neighbor
// pair; the closed-wedge fraction recovers triangle and wedge counts through
// the total wedge count.
BaselineReport wedge_sampling(const Graph& g, std::uint64_t n, std::uint64_t seed);

// Edge picked proportionally to (d_u - 1)(d_v - 1), extended by one uniform
// neighbor on each side; samples with fewer than 4 distinct nodes are
// discarded but still consume budget. The 3-star is not estimable.
BaselineReport path3_sampling(const Graph& g, std::uint64_t n, std::uint64_t seed);

enum class MhrwRule {
    hastings,      // accept with min{1, (d_w - 1)/(d_v - 1)}
    degree_ratio,  // accept with min{1, d_w(d_w - 1)/(d_v(d_v - 1))}
};

// Metropolis-Hastings walk targeting pi(v) proportional to (d_v choose 2);
// each step tallies one uniform wedge at the current node and consumes
// exactly three neighbor-list fetches. `visit_counts`, when given, receives
// the per-node occupation counts of the chain.
BaselineReport mhrw_wedge_sampling(const NeighborOracle& oracle, std::uint64_t n,
                                   std::uint64_t seed, MhrwRule rule = MhrwRule::hastings,
                                   std::optional<NodeId> start = std::nullopt,
                                   std::vector<std::uint64_t>* visit_counts = nullptr);

}  // namespace graphlet
