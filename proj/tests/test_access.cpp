#include "doctest.h"

#include "corpus.hpp"
#include "graphlet/access.hpp"

using namespace graphlet;
using namespace graphlet::testing;

TEST_CASE("oracle counting semantics") {
    Graph g = fig1_graph();
    NeighborOracle o(g);
    CHECK(o.calls() == 0);
    CHECK(o.distinct_touched() == 0);

    auto h = o.fetch_neighbors(0);  // original node 1
    CHECK(h.degree == 3);
    CHECK(h.neighbors[0] == 1);
    CHECK(h.neighbors[1] == 2);
    CHECK(h.neighbors[2] == 3);

    o.fetch_neighbors(0);
    CHECK(o.calls() == 2);
    CHECK(o.distinct_touched() == 1);

    o.fetch_neighbors(1);
    o.fetch_neighbors(2);
    o.fetch_neighbors(3);
    CHECK(o.calls() == 5);
    CHECK(o.distinct_touched() == 4);
    CHECK(o.distinct_touched() <= o.calls());

    CHECK_THROWS_AS(o.fetch_neighbors(4), std::out_of_range);

    o.reset_counters();
    CHECK(o.calls() == 0);
    CHECK(o.distinct_touched() == 0);
}

TEST_CASE("oracle memoization splits hits from raw calls") {
    Graph g = fig1_graph();
    NeighborOracle o(g, {.memoize = true});
    o.fetch_neighbors(2);
    o.fetch_neighbors(2);
    o.fetch_neighbors(2);
    CHECK(o.calls() == 1);
    CHECK(o.cached_hits() == 2);
    CHECK(o.distinct_touched() == 1);

    // the returned list is identical either way
    auto a = o.fetch_neighbors(2);
    NeighborOracle plain(g);
    auto b = plain.fetch_neighbors(2);
    REQUIRE(a.degree == b.degree);
    CHECK(std::equal(a.neighbors.begin(), a.neighbors.end(), b.neighbors.begin()));
}
