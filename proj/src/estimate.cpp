#include "graphlet/estimate.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <stdexcept>
#include <thread>

namespace graphlet {

namespace {

// Compensated accumulator; the window weights span orders of magnitude on
// skewed-degree graphs.
struct Kahan {
    double sum = 0.0;
    double carry = 0.0;

    void add(double x) {
        double y = x - carry;
        double t = sum + y;
        carry = (t - sum) - y;
        sum = t;
    }
};

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t salt) {
    if (salt == 0) return base;
    return splitmix64(base + salt * 0x9E3779B97F4A7C15ULL);
}

unsigned effective_threads(unsigned requested, unsigned jobs) {
    unsigned t = requested;
    if (t == 0) {
        t = std::thread::hardware_concurrency();
        if (t == 0) t = 1;
        if (const char* env = std::getenv("GRAPHLET_THREADS")) {
            long cap = std::strtol(env, nullptr, 10);
            if (cap > 0) t = std::min<unsigned>(t, static_cast<unsigned>(cap));
        }
    }
    return std::max(1u, std::min(t, std::max(jobs, 1u)));
}

EstimateReport run_estimate(const EstimatorConfig& cfg, const NeighborOracle& oracle) {
    if (cfg.k < 3 || cfg.k > 5) throw std::invalid_argument("estimate: k must be 3, 4 or 5");
    if (cfg.d < 1 || cfg.d >= cfg.k) throw std::invalid_argument("estimate: require 1 <= d < k");
    if (cfg.steps == 0) throw std::invalid_argument("estimate: steps must be positive");
    if (oracle.node_count() < static_cast<std::uint32_t>(cfg.k)) {
        throw std::invalid_argument("estimate: graph has fewer than k nodes");
    }

    const Catalog& cat = Catalog::instance();
    const auto& alpha = cat.alpha_table(cfg.k, cfg.d).alpha;
    const std::size_t m = alpha.size();
    if (std::all_of(alpha.begin(), alpha.end(), [](std::int64_t a) { return a == 0; })) {
        throw std::invalid_argument("estimate: all alpha coefficients are zero for this (k, d)");
    }

    EstimateReport rep;
    rep.config = cfg;
    rep.effective_method = cfg.method;
    const int l = cfg.k - cfg.d + 1;
    if (cfg.method == Method::css && l == 2) {
        // With two-state windows every corresponding state has the same
        // inclusion probability, so the correction coincides with the base
        // weighting.
        rep.effective_method = Method::base;
        rep.notes.push_back("css reduces to base for l == 2");
    }

    Walker walker(oracle, cfg.k, cfg.d, cfg.walk, cfg.seed);
    walker.init(cfg.start);
    for (std::uint64_t i = 0; i < cfg.burn_in; ++i) walker.step();

    std::vector<Kahan> acc(m);
    std::uint64_t valid = 0;
    const bool use_css = rep.effective_method == Method::css;
    for (std::uint64_t t = 0; t < cfg.steps; ++t) {
        if (walker.valid()) {
            ++valid;
            int cls = walker.classify();
            double weight = use_css ? walker.css_weight()
                                    : static_cast<double>(alpha[cls]) * walker.pi_tilde();
            acc[cls].add(1.0 / (weight * cfg.weight_scale));
        }
        walker.step();
    }

    rep.steps = cfg.steps;
    rep.valid_windows = valid;
    rep.api_calls = walker.api_calls();
    rep.accumulator.resize(m);
    for (std::size_t i = 0; i < m; ++i) rep.accumulator[i] = acc[i].sum;

    for (std::size_t i = 0; i < m; ++i) {
        if (alpha[i] == 0) rep.not_estimable.push_back(static_cast<int>(i) + 1);
    }
    rep.degenerate = (valid == 0);
    rep.concentration.assign(m, std::numeric_limits<double>::quiet_NaN());
    if (!rep.degenerate) {
        double total = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            if (alpha[i] > 0) total += rep.accumulator[i];
        }
        for (std::size_t i = 0; i < m; ++i) {
            if (alpha[i] > 0) rep.concentration[i] = rep.accumulator[i] / total;
        }
    }
    return rep;
}

std::vector<EstimateReport> run_parallel(const EstimatorConfig& cfg, const NeighborOracle& oracle,
                                         unsigned chains, unsigned threads) {
    if (chains == 0) throw std::invalid_argument("run_parallel: chains must be >= 1");
    std::vector<EstimateReport> reports(chains);
    const unsigned nthreads = effective_threads(threads, chains);
    std::atomic<unsigned> next{0};
    auto worker = [&]() {
        for (;;) {
            unsigned i = next.fetch_add(1);
            if (i >= chains) return;
            EstimatorConfig chain_cfg = cfg;
            chain_cfg.seed = derive_seed(cfg.seed, i);
            reports[i] = run_estimate(chain_cfg, oracle);
        }
    };
    if (nthreads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(nthreads);
        for (unsigned t = 0; t < nthreads; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    return reports;
}

std::vector<double> estimate_counts(const EstimateReport& report, std::uint64_t r_d) {
    if (r_d == 0) throw std::invalid_argument("estimate_counts: |R^(d)| must be positive");
    const double scale =
        2.0 * static_cast<double>(r_d) / static_cast<double>(report.steps) * report.config.weight_scale;
    std::vector<double> counts(report.accumulator.size(),
                               std::numeric_limits<double>::quiet_NaN());
    const auto& alpha = Catalog::instance().alpha_table(report.config.k, report.config.d).alpha;
    for (std::size_t i = 0; i < counts.size(); ++i) {
        if (alpha[i] > 0) counts[i] = scale * report.accumulator[i];
    }
    return counts;
}

double css_probability(Walker& walker) { return walker.css_weight(); }

}  // namespace graphlet
