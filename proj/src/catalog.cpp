#include "graphlet/catalog.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <numeric>
#include <stdexcept>

namespace graphlet {

namespace {

// Full alpha values (twice the reference tables, which list alpha/2) for
// SRW(d) rows. Column order is the reference order of the class inventory;
// these rows both pin the expected values and fix the class indexing.
constexpr std::int64_t kAlphaK3[3][2] = {
    {2, 6},  // d=1
    {2, 6},  // d=2
    {1, 1},  // d=3 (single-state windows)
};

constexpr std::int64_t kAlphaK4[3][6] = {
    {2, 0, 8, 4, 12, 24},   // d=1
    {2, 6, 8, 10, 24, 48},  // d=2
    {2, 6, 12, 6, 12, 12},  // d=3
};

// The d = 1..3 rows suffice to identify every k = 5 column uniquely.
constexpr std::int64_t kAlphaK5[3][21] = {
    {2, 0, 0, 2, 4, 0, 10, 4, 4, 8, 8, 12, 14, 12, 12, 20, 28, 36, 48, 72, 120},
    {2, 4, 24, 10, 8, 32, 10, 12, 48, 48, 24, 36, 30, 108, 72, 84, 68, 164, 152, 288, 480},
    {2, 10, 48, 16, 10, 48, 10, 32, 60, 48, 32, 126, 52, 126, 60, 86, 126, 126, 180, 180, 180},
};

int mask_bits(int k) { return k * (k - 1) / 2; }

std::array<std::uint8_t, 5> identity_perm() { return {0, 1, 2, 3, 4}; }

}  // namespace

EdgeMask Catalog::permute_mask(EdgeMask m, int k, const std::array<std::uint8_t, 5>& perm) {
    EdgeMask out = 0;
    for (int i = 0; i < k; ++i) {
        for (int j = i + 1; j < k; ++j) {
            if (m & (EdgeMask{1} << pair_bit(k, i, j))) {
                int a = perm[i], b = perm[j];
                if (a > b) std::swap(a, b);
                out |= EdgeMask{1} << pair_bit(k, a, b);
            }
        }
    }
    return out;
}

bool Catalog::mask_connected(EdgeMask g, int k, NodeMask nodes) {
    if (nodes == 0) return false;
    int start = std::countr_zero(nodes);
    NodeMask seen = NodeMask(1u << start);
    NodeMask frontier = seen;
    while (frontier) {
        NodeMask next = 0;
        for (int i = 0; i < k; ++i) {
            if (!(frontier & (1u << i))) continue;
            for (int j = 0; j < k; ++j) {
                if (i == j || !(nodes & (1u << j)) || (seen & (1u << j))) continue;
                int a = std::min(i, j), b = std::max(i, j);
                if (g & (EdgeMask{1} << pair_bit(k, a, b))) next |= NodeMask(1u << j);
            }
        }
        seen |= next;
        frontier = next;
    }
    return seen == nodes;
}

std::vector<NodeMask> Catalog::connected_subsets(EdgeMask g, int k, int d) {
    std::vector<NodeMask> out;
    for (NodeMask m = 1; m < (1u << k); ++m) {
        if (std::popcount(unsigned(m)) != d) continue;
        if (mask_connected(g, k, m)) out.push_back(m);
    }
    return out;
}

bool Catalog::subsets_adjacent(EdgeMask g, int k, int d, NodeMask a, NodeMask b) {
    if (a == b) return false;
    if (d == 1) {
        int i = std::countr_zero(unsigned(a)), j = std::countr_zero(unsigned(b));
        if (i > j) std::swap(i, j);
        return (g & (EdgeMask{1} << pair_bit(k, i, j))) != 0;
    }
    return std::popcount(unsigned(a & b)) == d - 1;
}

std::int64_t Catalog::alpha_of(EdgeMask g, int k, int d) {
    const int l = k - d + 1;
    const auto subs = connected_subsets(g, k, d);
    const int ns = static_cast<int>(subs.size());
    if (l > ns) return 0;
    const NodeMask full = NodeMask((1u << k) - 1);

    std::int64_t count = 0;
    std::vector<int> pick(l);
    // iterate combinations of l distinct subset indices
    std::iota(pick.begin(), pick.end(), 0);
    auto advance = [&]() -> bool {
        int i = l - 1;
        while (i >= 0 && pick[i] == ns - l + i) --i;
        if (i < 0) return false;
        ++pick[i];
        for (int j = i + 1; j < l; ++j) pick[j] = pick[j - 1] + 1;
        return true;
    };
    do {
        NodeMask uni = 0;
        for (int i : pick) uni = NodeMask(uni | subs[i]);
        if (uni != full) continue;
        std::vector<int> perm(pick);
        std::sort(perm.begin(), perm.end());
        do {
            bool ok = true;
            for (int i = 0; i + 1 < l && ok; ++i) {
                ok = subsets_adjacent(g, k, d, subs[perm[i]], subs[perm[i + 1]]);
            }
            if (ok) ++count;
        } while (std::next_permutation(perm.begin(), perm.end()));
    } while (advance());
    return count;
}

Catalog::Catalog() {
    build_k(3);
    build_k(4);
    build_k(5);
}

void Catalog::build_k(int k) {
    PerK& pk = per_k_[k - 3];
    const int bits = mask_bits(k);
    const EdgeMask nmask = EdgeMask(1u << bits);
    const NodeMask full = NodeMask((1u << k) - 1);

    std::array<std::uint8_t, 5> perm = identity_perm();

    // Canonicalize every connected mask; collect classes by canonical code.
    pk.classify_table.assign(nmask, Mapping{});
    std::map<EdgeMask, std::vector<EdgeMask>> by_code;  // code -> member masks
    for (EdgeMask m = 0; m < nmask; ++m) {
        if (!mask_connected(m, k, full)) {
            pk.classify_table[m].cls = kDisconnected;
            continue;
        }
        EdgeMask best = permute_mask(m, k, perm);
        std::array<std::uint8_t, 5> best_perm = perm;
        std::array<std::uint8_t, 5> p = perm;
        while (std::next_permutation(p.begin(), p.begin() + k)) {
            EdgeMask c = permute_mask(m, k, p);
            if (c < best) {
                best = c;
                best_perm = p;
            }
        }
        pk.classify_table[m].to_canonical = best_perm;
        by_code[best].push_back(m);
        pk.classify_table[m].cls = -2;  // resolved below
    }

    // Compute alpha signatures and match against the reference rows to
    // recover the table's class order.
    const int drows = 3;
    auto ref_alpha = [&](int d, int col) -> std::int64_t {
        if (k == 3) return kAlphaK3[d - 1][col];
        if (k == 4) return kAlphaK4[d - 1][col];
        return kAlphaK5[d - 1][col];
    };
    const int ncols = (k == 3) ? 2 : (k == 4 ? 6 : 21);
    if (static_cast<int>(by_code.size()) != ncols) {
        throw std::logic_error("catalog: unexpected class count");
    }

    std::vector<GraphletClass> ordered(ncols);
    std::vector<bool> col_used(ncols, false);
    for (const auto& [code, members] : by_code) {
        std::vector<std::int64_t> sig(drows);
        for (int d = 1; d <= drows; ++d) sig[d - 1] = alpha_of(code, k, d);
        int col = -1;
        for (int c = 0; c < ncols; ++c) {
            bool match = true;
            for (int d = 1; d <= drows && match; ++d) match = (ref_alpha(d, c) == sig[d - 1]);
            if (match) {
                if (col >= 0) throw std::logic_error("catalog: ambiguous alpha signature");
                col = c;
            }
        }
        if (col < 0 || col_used[col]) throw std::logic_error("catalog: alpha signature mismatch");
        col_used[col] = true;

        GraphletClass cls;
        cls.k = k;
        cls.index = col + 1;
        cls.canonical_code = code;
        cls.edge_count = std::popcount(unsigned(code));
        std::array<std::uint8_t, 5> deg{};
        for (int i = 0; i < k; ++i) {
            for (int j = 0; j < k; ++j) {
                if (i == j) continue;
                int a = std::min(i, j), b = std::max(i, j);
                if (code & (EdgeMask{1} << pair_bit(k, a, b))) ++deg[i];
            }
        }
        std::sort(deg.begin(), deg.begin() + k);
        cls.degree_signature = deg;
        ordered[col] = cls;
        for (EdgeMask m : members) pk.classify_table[m].cls = col;
    }
    pk.classes = std::move(ordered);

    // alpha tables for d = 1..k
    pk.alphas.resize(k);
    for (int d = 1; d <= k; ++d) {
        AlphaTable t{k, d, {}};
        t.alpha.reserve(ncols);
        for (const auto& cls : pk.classes) t.alpha.push_back(alpha_of(cls.canonical_code, k, d));
        pk.alphas[d - 1] = std::move(t);
    }

    // degree-signature collision audit
    std::map<std::array<std::uint8_t, 5>, int> sig_count;
    for (const auto& cls : pk.classes) ++sig_count[cls.degree_signature];
    for (const auto& [sig, cnt] : sig_count) {
        if (cnt > 1) pk.collisions.push_back(sig);
    }

    // corresponding-state tuple templates per (d, class), grouped by the
    // multiset of middle subgraphs
    pk.css.assign(k, {});
    for (int d = 1; d < k; ++d) {
        const int l = k - d + 1;
        pk.css[d - 1].assign(ncols, {});
        if (l <= 2) continue;
        for (int c = 0; c < ncols; ++c) {
            const EdgeMask g = pk.classes[c].canonical_code;
            const auto subs = connected_subsets(g, k, d);
            const int ns = static_cast<int>(subs.size());
            if (l > ns) continue;
            std::map<std::array<NodeMask, 3>, std::int64_t> groups;
            std::vector<int> pick(l);
            std::iota(pick.begin(), pick.end(), 0);
            auto advance = [&]() -> bool {
                int i = l - 1;
                while (i >= 0 && pick[i] == ns - l + i) --i;
                if (i < 0) return false;
                ++pick[i];
                for (int j = i + 1; j < l; ++j) pick[j] = pick[j - 1] + 1;
                return true;
            };
            do {
                NodeMask uni = 0;
                for (int i : pick) uni = NodeMask(uni | subs[i]);
                if (uni != full) continue;
                std::vector<int> perm(pick);
                std::sort(perm.begin(), perm.end());
                do {
                    bool ok = true;
                    for (int i = 0; i + 1 < l && ok; ++i) {
                        ok = subsets_adjacent(g, k, d, subs[perm[i]], subs[perm[i + 1]]);
                    }
                    if (!ok) continue;
                    std::array<NodeMask, 3> mid{};
                    for (int i = 1; i + 1 < l; ++i) mid[i - 1] = subs[perm[i]];
                    std::sort(mid.begin(), mid.begin() + (l - 2));
                    ++groups[mid];
                } while (std::next_permutation(perm.begin(), perm.end()));
            } while (advance());
            auto& out = pk.css[d - 1][c];
            out.reserve(groups.size());
            for (const auto& [mid, mult] : groups) {
                CssGroup cg;
                cg.middles = mid;
                cg.middle_count = static_cast<std::uint8_t>(l - 2);
                cg.multiplicity = mult;
                out.push_back(cg);
            }
        }
    }
}

const Catalog& Catalog::instance() {
    static const Catalog cat;
    return cat;
}

const Catalog::PerK& Catalog::at(int k) const {
    if (k < 3 || k > 5) throw std::invalid_argument("graphlet size k must be 3, 4 or 5");
    return per_k_[k - 3];
}

const std::vector<GraphletClass>& Catalog::classes(int k) const { return at(k).classes; }

const AlphaTable& Catalog::alpha_table(int k, int d) const {
    const PerK& pk = at(k);
    if (d < 1 || d > k) throw std::invalid_argument("alpha_table: require 1 <= d <= k");
    return pk.alphas[d - 1];
}

int Catalog::classify_mask(int k, EdgeMask m) const { return at(k).classify_table[m].cls; }

const Catalog::Mapping& Catalog::classify_mask_mapped(int k, EdgeMask m) const {
    return at(k).classify_table[m];
}

int Catalog::classify(int k, std::span<const NodeId> nodes,
                      std::span<const std::pair<NodeId, NodeId>> edges) const {
    if (static_cast<int>(nodes.size()) != k) throw std::invalid_argument("classify: |nodes| != k");
    std::array<NodeId, 5> sorted{};
    std::copy(nodes.begin(), nodes.end(), sorted.begin());
    std::sort(sorted.begin(), sorted.begin() + k);
    auto pos = [&](NodeId v) -> int {
        for (int i = 0; i < k; ++i) {
            if (sorted[i] == v) return i;
        }
        throw std::invalid_argument("classify: edge endpoint outside node set");
    };
    EdgeMask m = 0;
    for (const auto& [u, v] : edges) {
        int a = pos(u), b = pos(v);
        if (a == b) continue;
        if (a > b) std::swap(a, b);
        m |= EdgeMask{1} << pair_bit(k, a, b);
    }
    return classify_mask(k, m);
}

const std::vector<Catalog::CssGroup>& Catalog::css_groups(int k, int d, int cls) const {
    const PerK& pk = at(k);
    if (d < 1 || d >= k) throw std::invalid_argument("css_groups: require 1 <= d < k");
    return pk.css[d - 1].at(cls);
}

const std::vector<std::array<std::uint8_t, 5>>& Catalog::signature_collisions(int k) const {
    return at(k).collisions;
}

std::int64_t compute_alpha(const GraphletClass& cls, int d) {
    return Catalog::alpha_of(cls.canonical_code, cls.k, d);
}

}  // namespace graphlet
