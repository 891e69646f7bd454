#include <cmath>
#include <numeric>

#include "doctest.h"

#include "corpus.hpp"
#include "graphlet/estimate.hpp"
#include "graphlet/oracle.hpp"

using namespace graphlet;
using namespace graphlet::testing;

namespace {

// mean and standard error of per-chain values
std::pair<double, double> mean_se(const std::vector<double>& xs) {
    double mean = std::accumulate(xs.begin(), xs.end(), 0.0) / xs.size();
    double var = 0.0;
    for (double x : xs) var += (x - mean) * (x - mean);
    var /= static_cast<double>(xs.size() - 1);
    return {mean, std::sqrt(var / xs.size())};
}

}  // namespace

TEST_CASE("wedge/triangle split on the worked-example graph") {
    Graph g = fig1_graph();
    NeighborOracle oracle(g);
    EstimatorConfig cfg;
    cfg.k = 3;
    cfg.d = 1;
    cfg.steps = 5000;
    cfg.seed = 2024;
    auto reports = run_parallel(cfg, oracle, 200);
    std::vector<double> c2;
    for (const auto& r : reports) c2.push_back(r.concentration[1]);
    auto [mean, se] = mean_se(c2);
    CHECK(std::abs(mean - 0.5) < 3 * se);
}

TEST_CASE("single-class graphs give exact concentrations") {
    SUBCASE("the 4-node worked example has only g4_5") {
        Graph g = fig1_graph();
        NeighborOracle oracle(g);
        EstimatorConfig cfg;
        cfg.k = 4;
        cfg.d = 2;
        cfg.steps = 2000;
        cfg.seed = 9;
        auto rep = run_estimate(cfg, oracle);
        CHECK(rep.valid_windows > 0);
        CHECK(rep.concentration[4] == 1.0);
        for (int i : {0, 1, 2, 3, 5}) CHECK(rep.concentration[i] == 0.0);
    }
    SUBCASE("K5 is all triangles") {
        Graph g = complete_graph(5);
        NeighborOracle oracle(g);
        for (int d : {1, 2}) {
            EstimatorConfig cfg;
            cfg.k = 3;
            cfg.d = d;
            cfg.steps = 1000;
            cfg.seed = 3;
            auto rep = run_estimate(cfg, oracle);
            CHECK(rep.concentration[1] == 1.0);
            CHECK(rep.concentration[0] == 0.0);
        }
    }
}

TEST_CASE("css weight equals the brute-force corresponding-state sum") {
    struct Config {
        int k, d;
    };
    Graph g = er_graph(12, 0.3, 5);
    NeighborOracle oracle(g);
    for (Config c : {Config{3, 1}, Config{4, 2}, Config{4, 1}, Config{5, 2}}) {
        for (WalkMode mode : {WalkMode::simple, WalkMode::non_backtracking}) {
            Walker w(oracle, c.k, c.d, mode, 77);
            w.init();
            int checked = 0;
            for (int i = 0; i < 4000 && checked < 200; ++i) {
                w.step();
                if (!w.valid()) continue;
                ++checked;
                double got = w.css_weight();
                auto tuples =
                    brute_corresponding_states(g, w.union_nodes(), c.d, c.k - c.d + 1);
                double expect = 0.0;
                for (const auto& t : tuples) expect += pi_tilde_of_tuple(oracle, t, mode);
                REQUIRE(got == doctest::Approx(expect).epsilon(1e-10));
            }
            CHECK(checked > 0);
        }
    }
}

TEST_CASE("css examples on the worked-example graph") {
    Graph g = fig1_graph();
    NeighborOracle oracle(g);
    Walker w(oracle, 3, 1, WalkMode::simple, 0);
    std::array<NodeId, 3> tri{0, 1, 2};
    std::vector<std::pair<NodeId, NodeId>> tri_edges{{0, 1}, {1, 2}, {0, 2}};
    CHECK(css_weight_of_sample(oracle, 3, 1, tri, tri_edges, WalkMode::simple) ==
          doctest::Approx(7.0 / 3.0));
    std::array<NodeId, 3> wedge{3, 0, 1};
    std::vector<std::pair<NodeId, NodeId>> wedge_edges{{3, 0}, {0, 1}};
    CHECK(css_weight_of_sample(oracle, 3, 1, wedge, wedge_edges, WalkMode::simple) ==
          doctest::Approx(2.0 / 3.0));
}

TEST_CASE("css estimator is consistent too") {
    Graph g = fig1_graph();
    NeighborOracle oracle(g);
    EstimatorConfig cfg;
    cfg.k = 3;
    cfg.d = 1;
    cfg.steps = 5000;
    cfg.seed = 31;
    cfg.method = Method::css;
    auto reports = run_parallel(cfg, oracle, 200);
    std::vector<double> c2;
    for (const auto& r : reports) c2.push_back(r.concentration[1]);
    auto [mean, se] = mean_se(c2);
    CHECK(std::abs(mean - 0.5) < 3 * se);
}

TEST_CASE("absolute count estimation") {
    SUBCASE("triangle and wedge counts of the worked example") {
        Graph g = fig1_graph();
        NeighborOracle oracle(g);
        EstimatorConfig cfg;
        cfg.k = 3;
        cfg.d = 1;
        cfg.steps = 10000;
        cfg.seed = 17;
        auto reports = run_parallel(cfg, oracle, 300);
        std::vector<double> tri, wed;
        for (const auto& r : reports) {
            auto counts = estimate_counts(r, g.edge_count());
            wed.push_back(counts[0]);
            tri.push_back(counts[1]);
        }
        auto [mt, st] = mean_se(tri);
        auto [mw, sw] = mean_se(wed);
        CHECK(std::abs(mt - 2.0) < 3 * st);
        CHECK(std::abs(mw - 2.0) < 3 * sw);
        CHECK(std::abs(mt - 2.0) < 0.1);
        CHECK(std::abs(mw - 2.0) < 0.1);
    }
    SUBCASE("K4 clique count via d = 2") {
        Graph g = complete_graph(4);
        CHECK(r2_size(g) == 12);
        NeighborOracle oracle(g);
        EstimatorConfig cfg;
        cfg.k = 4;
        cfg.d = 2;
        cfg.steps = 4000;
        cfg.seed = 23;
        auto reports = run_parallel(cfg, oracle, 200);
        std::vector<double> k4;
        for (const auto& r : reports) k4.push_back(estimate_counts(r, 12)[5]);
        auto [m, s] = mean_se(k4);
        CHECK(std::abs(m - 1.0) < 3 * s);
    }
    SUBCASE("r_d = 0 is rejected") {
        Graph g = fig1_graph();
        NeighborOracle oracle(g);
        EstimatorConfig cfg;
        cfg.k = 3;
        cfg.d = 1;
        cfg.steps = 100;
        auto rep = run_estimate(cfg, oracle);
        CHECK_THROWS_AS(estimate_counts(rep, 0), std::invalid_argument);
    }
}

TEST_CASE("parallel chains are deterministic") {
    Graph g = er_graph(40, 0.15, 6);
    NeighborOracle oracle(g);
    EstimatorConfig cfg;
    cfg.k = 4;
    cfg.d = 2;
    cfg.steps = 2000;
    cfg.seed = 55;

    auto single = run_estimate(cfg, oracle);
    auto par1 = run_parallel(cfg, oracle, 1);
    REQUIRE(par1.size() == 1);
    CHECK(par1[0].accumulator == single.accumulator);
    CHECK(par1[0].valid_windows == single.valid_windows);

    auto a = run_parallel(cfg, oracle, 4, 2);
    auto b = run_parallel(cfg, oracle, 4, 1);
    for (int i = 0; i < 4; ++i) {
        CHECK(a[i].accumulator == b[i].accumulator);
        CHECK(a[i].valid_windows == b[i].valid_windows);
        CHECK(a[i].api_calls == b[i].api_calls);
    }
}

TEST_CASE("concentrations are invariant to weight rescaling") {
    Graph g = er_graph(30, 0.2, 13);
    NeighborOracle oracle(g);
    EstimatorConfig cfg;
    cfg.k = 4;
    cfg.d = 2;
    cfg.steps = 3000;
    cfg.seed = 101;
    auto base = run_estimate(cfg, oracle);
    cfg.weight_scale = 7.0;
    auto scaled = run_estimate(cfg, oracle);
    for (std::size_t i = 0; i < base.concentration.size(); ++i) {
        CHECK(scaled.concentration[i] == doctest::Approx(base.concentration[i]).epsilon(1e-12));
    }
}

TEST_CASE("concentrations sum to one over estimable classes") {
    Graph g = er_graph(50, 0.12, 70);
    NeighborOracle oracle(g);
    struct Config {
        int k, d;
    };
    for (Config c : {Config{3, 1}, Config{3, 2}, Config{4, 2}, Config{4, 3}, Config{5, 2},
                     Config{5, 1}}) {
        for (Method m : {Method::base, Method::css}) {
            EstimatorConfig cfg;
            cfg.k = c.k;
            cfg.d = c.d;
            cfg.method = m;
            cfg.steps = 3000;
            cfg.seed = 7;
            auto rep = run_estimate(cfg, oracle);
            double sum = 0.0;
            for (double x : rep.concentration) {
                if (!std::isnan(x)) {
                    CHECK(x >= 0.0);
                    sum += x;
                }
            }
            CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
        }
    }
}

TEST_CASE("css silently degrades to base when l = 2") {
    Graph g = er_graph(30, 0.2, 8);
    NeighborOracle oracle(g);
    EstimatorConfig cfg;
    cfg.k = 4;
    cfg.d = 3;  // l = 2
    cfg.steps = 1000;
    cfg.seed = 12;
    cfg.method = Method::css;
    auto css = run_estimate(cfg, oracle);
    REQUIRE(css.notes.size() == 1);
    CHECK(css.effective_method == Method::base);
    cfg.method = Method::base;
    auto base = run_estimate(cfg, oracle);
    CHECK(css.accumulator == base.accumulator);
}

TEST_CASE("not-estimable classes are flagged and excluded") {
    Graph g = er_graph(30, 0.2, 9);
    NeighborOracle oracle(g);
    EstimatorConfig cfg;
    cfg.k = 4;
    cfg.d = 1;
    cfg.steps = 2000;
    cfg.seed = 40;
    auto rep = run_estimate(cfg, oracle);
    CHECK(rep.not_estimable == std::vector<int>{2});
    CHECK(std::isnan(rep.concentration[1]));
    cfg.k = 5;
    auto rep5 = run_estimate(cfg, oracle);
    CHECK(rep5.not_estimable == std::vector<int>{2, 3, 6});
}

TEST_CASE("degenerate runs are flagged") {
    // on a 3-star every 4-step node walk revisits the center; no window ever
    // touches 4 distinct nodes
    Graph g = star_graph(3);
    NeighborOracle oracle(g);
    EstimatorConfig cfg;
    cfg.k = 4;
    cfg.d = 1;
    cfg.steps = 500;
    cfg.seed = 3;
    auto rep = run_estimate(cfg, oracle);
    CHECK(rep.degenerate);
    CHECK(rep.valid_windows == 0);
    for (double x : rep.concentration) CHECK(std::isnan(x));
}

TEST_CASE("configuration errors") {
    Graph g = fig1_graph();
    NeighborOracle oracle(g);
    EstimatorConfig cfg;
    cfg.k = 5;
    cfg.d = 2;
    cfg.steps = 10;
    CHECK_THROWS_AS(run_estimate(cfg, oracle), std::invalid_argument);  // |V| < k
    cfg.k = 4;
    cfg.d = 4;
    CHECK_THROWS_AS(run_estimate(cfg, oracle), std::invalid_argument);
    cfg.d = 2;
    cfg.steps = 0;
    CHECK_THROWS_AS(run_estimate(cfg, oracle), std::invalid_argument);
    CHECK_THROWS_AS(run_parallel(cfg, oracle, 0), std::invalid_argument);
}

TEST_CASE("light unbiasedness sweep against the exact oracle") {
    Graph g = er_graph(20, 0.2, 31);
    NeighborOracle oracle(g);
    struct Config {
        int k, d;
    };
    for (Config c : {Config{3, 1}, Config{3, 2}, Config{4, 2}, Config{4, 3}}) {
        auto truth = exact_enumerate(g, c.k).concentration();
        for (Method m : {Method::base, Method::css}) {
            EstimatorConfig cfg;
            cfg.k = c.k;
            cfg.d = c.d;
            cfg.method = m;
            cfg.steps = 4000;
            cfg.seed = 1009 + c.k * 10 + c.d;
            auto reports = run_parallel(cfg, oracle, 120);
            for (std::size_t cls = 0; cls < truth.size(); ++cls) {
                if (truth[cls] < 5e-3) continue;
                std::vector<double> xs;
                for (const auto& r : reports) xs.push_back(r.concentration[cls]);
                auto [mean, se] = mean_se(xs);
                // 4 standard errors keeps the fixed-seed sweep comfortably off
                // the flakiness boundary; the acceptance suite runs the strict
                // version
                CHECK(std::abs(mean - truth[cls]) < 4 * se + 1e-12);
            }
        }
    }
}
