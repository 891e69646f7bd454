#include <algorithm>
#include <array>
#include <bit>
#include <numeric>
#include <vector>

#include "doctest.h"

#include "graphlet/catalog.hpp"

using namespace graphlet;

namespace {

// Independent route to alpha: DFS over simple paths of l distinct subsets in
// the relationship sense, counting those whose union covers every node. For
// d = 1 this is exactly the directed Hamilton-path count of the class.
std::int64_t alpha_by_path_dfs(EdgeMask g, int k, int d) {
    const int l = k - d + 1;
    // connected subsets via BFS reachability (separate from the catalog's
    // union-find-free mask walk: recompute adjacency per pair here)
    std::vector<NodeMask> subs;
    for (NodeMask m = 1; m < (1u << k); ++m) {
        if (std::popcount(unsigned(m)) != d) continue;
        // BFS over the induced subgraph
        int start = std::countr_zero(unsigned(m));
        NodeMask seen = NodeMask(1u << start);
        bool grew = true;
        while (grew) {
            grew = false;
            for (int i = 0; i < k; ++i) {
                if (!(seen & (1u << i))) continue;
                for (int j = 0; j < k; ++j) {
                    if (!(m & (1u << j)) || (seen & (1u << j)) || i == j) continue;
                    int a = std::min(i, j), b = std::max(i, j);
                    if (g & (EdgeMask{1} << pair_bit(k, a, b))) {
                        seen |= NodeMask(1u << j);
                        grew = true;
                    }
                }
            }
        }
        if (seen == m) subs.push_back(m);
    }

    auto adjacent = [&](NodeMask a, NodeMask b) {
        return Catalog::subsets_adjacent(g, k, d, a, b);
    };
    std::int64_t count = 0;
    std::vector<int> path;
    std::vector<bool> used(subs.size(), false);
    const NodeMask full = NodeMask((1u << k) - 1);
    auto rec = [&](auto&& self, NodeMask cover) -> void {
        if (static_cast<int>(path.size()) == l) {
            if (cover == full) ++count;
            return;
        }
        for (std::size_t i = 0; i < subs.size(); ++i) {
            if (used[i]) continue;
            if (!path.empty() && !adjacent(subs[path.back()], subs[i])) continue;
            used[i] = true;
            path.push_back(static_cast<int>(i));
            self(self, NodeMask(cover | subs[i]));
            path.pop_back();
            used[i] = false;
        }
    };
    rec(rec, 0);
    return count;
}

}  // namespace

TEST_CASE("class inventory sizes and order anchors") {
    const Catalog& cat = Catalog::instance();
    CHECK(cat.classes(3).size() == 2);
    CHECK(cat.classes(4).size() == 6);
    CHECK(cat.classes(5).size() == 21);

    CHECK(cat.classes(3)[0].edge_count == 2);  // path
    CHECK(cat.classes(3)[1].edge_count == 3);  // triangle
    CHECK(cat.classes(4)[5].edge_count == 6);  // K4 last
    CHECK(cat.classes(5)[20].edge_count == 10);  // K5 last
    CHECK(cat.classes(5)[0].degree_signature == std::array<std::uint8_t, 5>{1, 1, 2, 2, 2});
    CHECK(cat.classes(5)[2].degree_signature == std::array<std::uint8_t, 5>{1, 1, 1, 1, 4});
    CHECK(cat.classes(5)[20].degree_signature == std::array<std::uint8_t, 5>{4, 4, 4, 4, 4});

    // reference order is edge-count ascending
    for (int k = 3; k <= 5; ++k) {
        const auto& classes = cat.classes(k);
        for (std::size_t i = 1; i < classes.size(); ++i) {
            CHECK(classes[i - 1].edge_count <= classes[i].edge_count);
        }
    }
}

TEST_CASE("classify worked examples") {
    const Catalog& cat = Catalog::instance();
    {
        std::array<NodeId, 3> nodes{1, 2, 3};
        std::vector<std::pair<NodeId, NodeId>> edges{{1, 2}, {2, 3}, {1, 3}};
        CHECK(cat.classify(3, nodes, edges) == 1);  // triangle = g3_2
    }
    {
        // the worked-example graph's full 4-node edge set: 5 edges = g4_5
        std::array<NodeId, 4> nodes{1, 2, 3, 4};
        std::vector<std::pair<NodeId, NodeId>> edges{{1, 2}, {1, 3}, {1, 4}, {2, 3}, {3, 4}};
        CHECK(cat.classify(4, nodes, edges) == 4);
    }
    {
        std::array<NodeId, 4> nodes{1, 2, 3, 4};
        std::vector<std::pair<NodeId, NodeId>> edges{{1, 2}, {3, 4}};
        CHECK(cat.classify(4, nodes, edges) == Catalog::kDisconnected);
    }
}

TEST_CASE("classify is invariant under node relabeling") {
    const Catalog& cat = Catalog::instance();
    for (int k = 3; k <= 5; ++k) {
        for (const auto& cls : cat.classes(k)) {
            std::array<int, 5> perm{};
            std::iota(perm.begin(), perm.begin() + k, 0);
            do {
                // give nodes arbitrary ids; permute roles
                std::array<NodeId, 5> nodes{};
                for (int i = 0; i < k; ++i) nodes[i] = 100 + 7 * static_cast<NodeId>(i);
                std::vector<std::pair<NodeId, NodeId>> edges;
                for (int i = 0; i < k; ++i) {
                    for (int j = i + 1; j < k; ++j) {
                        if (cls.canonical_code & (EdgeMask{1} << pair_bit(k, i, j))) {
                            edges.emplace_back(nodes[perm[i]], nodes[perm[j]]);
                        }
                    }
                }
                int got = cat.classify(k, std::span<const NodeId>(nodes.data(), k), edges);
                REQUIRE(got == cls.index - 1);
            } while (std::next_permutation(perm.begin(), perm.begin() + k));
        }
    }
}

TEST_CASE("degree-signature collision audit is stable") {
    const Catalog& cat = Catalog::instance();
    CHECK(cat.signature_collisions(3).empty());
    CHECK(cat.signature_collisions(4).empty());
    const auto& c5 = cat.signature_collisions(5);
    REQUIRE(c5.size() == 2);
    CHECK(c5[0] == std::array<std::uint8_t, 5>{1, 2, 2, 2, 3});
    CHECK(c5[1] == std::array<std::uint8_t, 5>{2, 2, 2, 3, 3});
}

TEST_CASE("connected d-subgraph enumeration") {
    const Catalog& cat = Catalog::instance();
    const EdgeMask triangle = cat.classes(3)[1].canonical_code;
    CHECK(Catalog::connected_subsets(triangle, 3, 2).size() == 3);

    const EdgeMask star = cat.classes(4)[1].canonical_code;
    CHECK(Catalog::connected_subsets(star, 4, 2).size() == 3);

    const EdgeMask k4 = cat.classes(4)[5].canonical_code;
    CHECK(Catalog::connected_subsets(k4, 4, 3).size() == 4);
}

TEST_CASE("alpha worked examples") {
    const Catalog& cat = Catalog::instance();
    CHECK(compute_alpha(cat.classes(3)[1], 1) == 6);    // triangle, walk on G
    CHECK(compute_alpha(cat.classes(4)[1], 1) == 0);    // 3-star unreachable
    CHECK(compute_alpha(cat.classes(4)[5], 3) == 12);   // K4, d = 3
    CHECK(compute_alpha(cat.classes(5)[20], 2) == 480);  // K5, d = 2
}

TEST_CASE("alpha tables match the reference rows") {
    const Catalog& cat = Catalog::instance();
    auto half = [](const AlphaTable& t) {
        std::vector<double> h;
        for (auto a : t.alpha) h.push_back(static_cast<double>(a) / 2.0);
        return h;
    };
    CHECK(half(cat.alpha_table(3, 1)) == std::vector<double>{1, 3});
    CHECK(half(cat.alpha_table(3, 2)) == std::vector<double>{1, 3});
    CHECK(half(cat.alpha_table(3, 3)) == std::vector<double>{0.5, 0.5});
    CHECK(half(cat.alpha_table(4, 1)) == std::vector<double>{1, 0, 4, 2, 6, 12});
    CHECK(half(cat.alpha_table(4, 2)) == std::vector<double>{1, 3, 4, 5, 12, 24});
    CHECK(half(cat.alpha_table(4, 3)) == std::vector<double>{1, 3, 6, 3, 6, 6});
    CHECK(half(cat.alpha_table(5, 1)) == std::vector<double>{1,  0,  0,  1, 2, 0,  5,
                                                             2,  2,  4,  4, 6, 7,  6,
                                                             6,  10, 14, 18, 24, 36, 60});
    CHECK(half(cat.alpha_table(5, 2)) ==
          std::vector<double>{1,  2,  12, 5,  4,  16, 5,  6,  24, 24, 12,
                              18, 15, 54, 36, 42, 34, 82, 76, 144, 240});
    CHECK(half(cat.alpha_table(5, 3)) ==
          std::vector<double>{1,  5,  24, 8,  5,  24, 5,  16, 30, 24, 16,
                              63, 26, 63, 30, 43, 63, 63, 90, 90, 90});
    // d = k - 1 coefficients follow the complete-relationship pair count
    // |S|(|S|-1); packed here after cross-checking against the path DFS below
    CHECK(half(cat.alpha_table(5, 4)) == std::vector<double>{1,  3,  6,  3, 3, 6,  10,
                                                             6,  6,  6,  6, 10, 10, 10,
                                                             6,  10, 10, 10, 10, 10, 10});
}

TEST_CASE("alpha cross-checked by independent path enumeration") {
    const Catalog& cat = Catalog::instance();
    for (int k = 3; k <= 5; ++k) {
        for (const auto& cls : cat.classes(k)) {
            for (int d = 1; d < k; ++d) {
                std::int64_t expect = alpha_by_path_dfs(cls.canonical_code, k, d);
                CHECK(compute_alpha(cls, d) == expect);
            }
        }
    }
}

TEST_CASE("alpha parity and zero classes") {
    const Catalog& cat = Catalog::instance();
    for (int k = 3; k <= 5; ++k) {
        for (int d = 1; d < k; ++d) {
            for (auto a : cat.alpha_table(k, d).alpha) CHECK(a % 2 == 0);
        }
    }
    std::vector<int> zeros4;
    const auto& a41 = cat.alpha_table(4, 1).alpha;
    for (std::size_t i = 0; i < a41.size(); ++i) {
        if (a41[i] == 0) zeros4.push_back(static_cast<int>(i) + 1);
    }
    CHECK(zeros4 == std::vector<int>{2});
    std::vector<int> zeros5;
    const auto& a51 = cat.alpha_table(5, 1).alpha;
    for (std::size_t i = 0; i < a51.size(); ++i) {
        if (a51[i] == 0) zeros5.push_back(static_cast<int>(i) + 1);
    }
    CHECK(zeros5 == std::vector<int>{2, 3, 6});
}
