// Concentration and count estimators over expanded-chain windows: the base
// re-weighted estimator and the corresponding-state-sampling variant.
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "graphlet/access.hpp"
#include "graphlet/catalog.hpp"
#include "graphlet/walk.hpp"

namespace graphlet {

enum class Method { base, css };

struct EstimatorConfig {
    int k = 3;
    int d = 1;
    std::uint64_t steps = 10000;
    Method method = Method::base;
    WalkMode walk = WalkMode::simple;
    std::uint64_t seed = 0;
    std::uint64_t burn_in = 0;
    std::optional<NodeId> start;
    double weight_scale = 1.0;  // diagnostic: concentrations are invariant to it
    std::string graph_name = "<memory>";
};

struct EstimateReport {
    EstimatorConfig config;
    Method effective_method = Method::base;
    std::vector<double> accumulator;    // per class, weighted sums
    std::vector<double> concentration;  // NaN for not-estimable classes
    std::vector<int> not_estimable;     // 1-based class indices with alpha = 0
    std::optional<std::vector<double>> counts;
    std::uint64_t steps = 0;
    std::uint64_t valid_windows = 0;
    std::uint64_t api_calls = 0;
    bool degenerate = false;  // no valid window observed
    std::vector<std::string> notes;
};

// Runs n steps of the configured walk; every valid window adds
// 1/(alpha_i * pi~) (base) or 1/p~ (css) to its class accumulator.
EstimateReport run_estimate(const EstimatorConfig& cfg, const NeighborOracle& oracle);

// Independent chains with deterministically derived seeds; chain 0 uses
// cfg.seed itself. threads = 0 picks hardware concurrency capped by the
// GRAPHLET_THREADS environment variable.
std::vector<EstimateReport> run_parallel(const EstimatorConfig& cfg, const NeighborOracle& oracle,
                                         unsigned chains, unsigned threads = 0);

// Absolute counts from a report's accumulators, given r_d = |R^(d)|.
std::vector<double> estimate_counts(const EstimateReport& report, std::uint64_t r_d);

// p~ of the sample under a window; thin wrapper kept for symmetry with the
// brute-force cross checks.
double css_probability(Walker& walker);

// Deterministic per-chain / per-cell seed derivation (splitmix64 chain);
// salt 0 returns base unchanged.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t salt);

unsigned effective_threads(unsigned requested, unsigned jobs);

}  // namespace graphlet
