#include "crtmst/exact_mst.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <queue>
#include <stdexcept>
#include <utility>

#include "crtmst/errors.hpp"

namespace crtmst {

UnionFind::UnionFind(std::size_t n) : parent_(n), rank_(n, 0), components_(n) {
    std::iota(parent_.begin(), parent_.end(), Vertex{0});
}

Vertex UnionFind::find(Vertex x) {
    Vertex root = x;
    while (parent_[root] != root) root = parent_[root];
    while (parent_[x] != root) {
        const Vertex next = parent_[x];
        parent_[x] = root;
        x = next;
    }
    return root;
}

bool UnionFind::unite(Vertex a, Vertex b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (rank_[a] < rank_[b]) std::swap(a, b);
    parent_[b] = a;
    if (rank_[a] == rank_[b]) ++rank_[a];
    --components_;
    return true;
}

namespace {

void checked_add(std::uint64_t& total, std::uint64_t w) {
    if (__builtin_add_overflow(total, w, &total)) {
        throw std::overflow_error("MST weight overflows 64 bits");
    }
}

void require_vertices(const Graph& g) {
    if (g.vertex_count() == 0) {
        throw std::invalid_argument("graph has no vertices");
    }
}

}  // namespace

MstResult prim_mst(const Graph& g) {
    require_vertices(g);
    const std::size_t n = g.vertex_count();
    using Item = std::pair<Weight, Vertex>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
    std::vector<char> in_tree(n, 0);

    MstResult result;
    std::size_t scanned = 0;
    heap.emplace(0, 0);
    // Lazy deletion: stale entries are skipped when popped.
    while (!heap.empty() && scanned < n) {
        const auto [w, v] = heap.top();
        heap.pop();
        if (in_tree[v]) continue;
        in_tree[v] = 1;
        ++scanned;
        checked_add(result.weight, w);
        for (const Neighbor& nb : g.neighbors(v)) {
            ++result.edges_examined;
            if (!in_tree[nb.to]) heap.emplace(nb.weight, nb.to);
        }
    }
    if (scanned < n) {
        throw DisconnectedGraph("graph is disconnected: Prim reached " + std::to_string(scanned) +
                                " of " + std::to_string(n) + " vertices");
    }
    return result;
}

MstResult kruskal_mst(const Graph& g) {
    require_vertices(g);
    const std::size_t n = g.vertex_count();
    std::vector<Edge> edges;
    edges.reserve(g.edge_count());
    for (Vertex u = 0; u < n; ++u) {
        for (const Neighbor& nb : g.neighbors(u)) {
            if (u < nb.to) edges.push_back({u, nb.to, nb.weight});
        }
    }
    std::stable_sort(edges.begin(), edges.end(),
                     [](const Edge& a, const Edge& b) { return a.weight < b.weight; });

    UnionFind uf(n);
    MstResult result;
    std::size_t accepted = 0;
    for (const Edge& e : edges) {
        if (accepted + 1 >= n) break;
        ++result.edges_examined;
        if (uf.unite(e.u, e.v)) {
            checked_add(result.weight, e.weight);
            ++accepted;
        }
    }
    if (accepted + 1 < n) {
        throw DisconnectedGraph("graph is disconnected: Kruskal accepted " +
                                std::to_string(accepted) + " of " + std::to_string(n - 1) +
                                " tree edges");
    }
    return result;
}

std::size_t exact_components(const Graph& g, Weight i) {
    UnionFind uf(g.vertex_count());
    for (Vertex u = 0; u < g.vertex_count(); ++u) {
        for (const Neighbor& nb : g.neighbors_up_to(u, i)) {
            uf.unite(u, nb.to);
        }
    }
    return uf.components();
}

std::vector<std::size_t> component_profile(const Graph& g) {
    const Weight w_max = g.max_weight();
    std::vector<std::vector<Edge>> by_weight(std::size_t{w_max} + 1);
    for (const Edge& e : g.edge_list()) {
        by_weight[e.weight].push_back(e);
    }
    UnionFind uf(g.vertex_count());
    std::vector<std::size_t> profile(std::size_t{w_max} + 1);
    for (Weight i = 0; i <= w_max; ++i) {
        for (const Edge& e : by_weight[i]) uf.unite(e.u, e.v);
        profile[i] = uf.components();
    }
    return profile;
}

std::uint64_t mst_weight_via_components(const Graph& g) {
    require_vertices(g);
    const std::vector<std::size_t> c = component_profile(g);
    const Weight w_max = g.max_weight();
    if (c.back() != 1) {
        throw DisconnectedGraph("graph is disconnected: " + std::to_string(c.back()) +
                                " components");
    }
    if (w_max == 0) {
        return 0;  // single vertex
    }
    std::uint64_t total = g.vertex_count() - w_max;  // may wrap; corrected by the sum
    for (Weight i = 1; i < w_max; ++i) {
        total += c[i];
    }
    return total;
}

}  // namespace crtmst
