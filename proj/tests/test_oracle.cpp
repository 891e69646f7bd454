#include <cmath>
#include <numeric>

#include "doctest.h"

#include "corpus.hpp"
#include "graphlet/oracle.hpp"

using namespace graphlet;
using namespace graphlet::testing;

TEST_CASE("exact counts on the worked-example graph") {
    Graph g = fig1_graph();
    auto c3 = exact_enumerate(g, 3);
    CHECK(c3.counts == std::vector<std::uint64_t>{2, 2});
    CHECK(c3.total == 4);
    CHECK(c3.concentration()[0] == doctest::Approx(0.5));
    CHECK(c3.concentration()[1] == doctest::Approx(0.5));

    auto c4 = exact_enumerate(g, 4);
    CHECK(c4.counts == std::vector<std::uint64_t>{0, 0, 0, 0, 1, 0});
}

TEST_CASE("exact counts on cliques") {
    auto c5 = exact_enumerate(complete_graph(5), 5);
    std::vector<std::uint64_t> expect(21, 0);
    expect[20] = 1;
    CHECK(c5.counts == expect);

    auto c3 = exact_enumerate(complete_graph(5), 3);
    CHECK(c3.counts == std::vector<std::uint64_t>{0, 10});
}

TEST_CASE("two independent enumeration routes agree") {
    std::vector<Graph> graphs;
    graphs.push_back(fig1_graph());
    graphs.push_back(er_graph(10, 0.3, 21));
    graphs.push_back(er_graph(12, 0.25, 22));
    graphs.push_back(ba_graph(12, 3, 23));
    for (const Graph& g : graphs) {
        for (int k = 3; k <= 5; ++k) {
            auto a = exact_enumerate(g, k);
            auto b = exact_enumerate_by_subsets(g, k);
            REQUIRE(a.counts == b.counts);
        }
    }
    CHECK_THROWS_AS(exact_enumerate_by_subsets(er_graph(20, 0.3, 1), 3), std::invalid_argument);
}

TEST_CASE("explicit relationship graphs") {
    Graph g = fig1_graph();
    auto rel2 = build_relationship_graph(g, 2);
    CHECK(rel2.states.size() == 5);
    CHECK(rel2.graph.edge_count() == 8);

    auto rel3 = build_relationship_graph(g, 3);
    CHECK(rel3.states.size() == 4);
    CHECK(rel3.graph.edge_count() == 6);

    auto rel1 = build_relationship_graph(g, 1);
    CHECK(rel1.graph.node_count() == g.node_count());
    CHECK(rel1.graph.edge_count() == g.edge_count());

    // connected input gives a connected relationship graph
    for (int d = 2; d <= 3; ++d) {
        for (std::uint64_t seed : {31u, 32u}) {
            Graph h = er_graph(12, 0.3, seed);
            auto rel = build_relationship_graph(h, d);
            std::vector<bool> seen(rel.graph.node_count(), false);
            std::vector<NodeId> stack{0};
            seen[0] = true;
            std::uint32_t reached = 1;
            while (!stack.empty()) {
                NodeId v = stack.back();
                stack.pop_back();
                for (NodeId w : rel.graph.neighbors(v)) {
                    if (!seen[w]) {
                        seen[w] = true;
                        ++reached;
                        stack.push_back(w);
                    }
                }
            }
            CHECK(reached == rel.graph.node_count());
        }
    }
}

TEST_CASE("exact stationary law") {
    Graph g = fig1_graph();
    auto rel = build_relationship_graph(g, 2);
    auto pi = exact_stationary(rel.graph);
    // state (1,3): dense pair (0,2), degree 4 of 16 half-edges
    std::array<NodeId, 2> ids{0, 2};
    auto idx = rel.index_of(SubgraphState::of(ids));
    REQUIRE(idx >= 0);
    CHECK(pi[idx] == doctest::Approx(4.0 / 16.0));
    CHECK(std::accumulate(pi.begin(), pi.end(), 0.0) == doctest::Approx(1.0));

    // regular graph: uniform law
    auto relc = build_relationship_graph(cycle_graph(6), 2);
    auto pic = exact_stationary(relc.graph);
    for (double x : pic) CHECK(x == doctest::Approx(1.0 / pic.size()));
}

TEST_CASE("corresponding-state counts") {
    Graph g = fig1_graph();
    auto triangle = brute_corresponding_states(g, std::array<NodeId, 3>{0, 1, 2}, 1, 3);
    CHECK(triangle.size() == 6);
    auto wedge = brute_corresponding_states(g, std::array<NodeId, 3>{3, 0, 1}, 1, 3);
    CHECK(wedge.size() == 2);
}

TEST_CASE("corresponding-state counts equal alpha across a small corpus") {
    const Catalog& cat = Catalog::instance();
    std::vector<Graph> graphs;
    graphs.push_back(fig1_graph());
    graphs.push_back(er_graph(9, 0.35, 41));
    for (const Graph& g : graphs) {
        for (int k = 3; k <= 4; ++k) {
            auto subsets = exact_enumerate_by_subsets(g, k);
            (void)subsets;
            // iterate all connected k-subsets explicitly
            std::vector<int> pick(k);
            std::iota(pick.begin(), pick.end(), 0);
            auto advance = [&]() -> bool {
                int i = k - 1;
                const int n = static_cast<int>(g.node_count());
                while (i >= 0 && pick[i] == n - k + i) --i;
                if (i < 0) return false;
                ++pick[i];
                for (int j = i + 1; j < k; ++j) pick[j] = pick[j - 1] + 1;
                return true;
            };
            do {
                std::vector<NodeId> nodes(pick.begin(), pick.end());
                std::vector<std::pair<NodeId, NodeId>> edges;
                for (int i = 0; i < k; ++i) {
                    for (int j = i + 1; j < k; ++j) {
                        if (g.has_edge(nodes[i], nodes[j])) edges.emplace_back(nodes[i], nodes[j]);
                    }
                }
                int cls = cat.classify(k, nodes, edges);
                if (cls == Catalog::kDisconnected) continue;
                for (int d = 1; d < k; ++d) {
                    auto tuples = brute_corresponding_states(g, nodes, d, k - d + 1);
                    std::int64_t alpha = cat.alpha_table(k, d).alpha[cls];
                    REQUIRE(static_cast<std::int64_t>(tuples.size()) == alpha);
                }
            } while (advance());
        }
    }
}
