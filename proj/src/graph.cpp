#include "crtmst/graph.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

namespace crtmst {

void GraphBuilder::add_edge(Vertex u, Vertex v, Weight weight) {
    if (u >= n_ || v >= n_) {
        throw std::out_of_range("edge endpoint out of range: (" + std::to_string(u) + ", " +
                                std::to_string(v) + ") with n=" + std::to_string(n_));
    }
    if (weight < 1) {
        throw std::invalid_argument("edge weight must be >= 1");
    }
    edges_.push_back({u, v, weight});
}

void GraphBuilder::canonicalize() {
    for (Edge& e : edges_) {
        if (e.v < e.u) std::swap(e.u, e.v);
    }
    std::sort(edges_.begin(), edges_.end(), [](const Edge& a, const Edge& b) {
        if (a.u != b.u) return a.u < b.u;
        if (a.v != b.v) return a.v < b.v;
        return a.weight < b.weight;
    });
}

Graph GraphBuilder::freeze() const {
    Graph g;
    g.n_ = n_;
    g.m_ = edges_.size();
    g.connected_ = connected_;

    // Stable order by weight; distributing edges in this order leaves every
    // adjacency list weight-sorted with ties in insertion order.
    std::vector<std::size_t> order(edges_.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return edges_[a].weight < edges_[b].weight;
    });

    std::vector<std::size_t> degree(n_, 0);
    for (const Edge& e : edges_) {
        g.w_max_ = std::max(g.w_max_, e.weight);
        ++degree[e.u];
        if (e.u != e.v) {
            ++degree[e.v];
        } else {
            ++g.loops_;
        }
    }

    g.offsets_.assign(n_ + 1, 0);
    for (std::size_t v = 0; v < n_; ++v) {
        g.offsets_[v + 1] = g.offsets_[v] + degree[v];
    }
    g.adjacency_.resize(g.offsets_[n_]);

    std::vector<std::size_t> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
    for (std::size_t idx : order) {
        const Edge& e = edges_[idx];
        g.adjacency_[cursor[e.u]++] = {e.v, e.weight};
        if (e.u != e.v) {
            g.adjacency_[cursor[e.v]++] = {e.u, e.weight};
        }
    }

    const std::size_t width = std::size_t{g.w_max_} + 1;
    g.edges_up_to_.assign(width, 0);
    for (const Edge& e : edges_) {
        ++g.edges_up_to_[e.weight];
    }
    std::partial_sum(g.edges_up_to_.begin(), g.edges_up_to_.end(), g.edges_up_to_.begin());

    if (g.w_max_ <= Graph::kDenseWeightLimit) {
        g.prefix_.assign(n_ * width, 0);
        for (std::size_t v = 0; v < n_; ++v) {
            std::uint32_t* row = g.prefix_.data() + v * width;
            for (std::size_t k = g.offsets_[v]; k < g.offsets_[v + 1]; ++k) {
                ++row[g.adjacency_[k].weight];
            }
            std::partial_sum(row, row + width, row);
        }
    }
    return g;
}

void Graph::check_vertex(Vertex v) const {
    if (v >= n_) {
        throw std::out_of_range("vertex " + std::to_string(v) + " out of range (n=" +
                                std::to_string(n_) + ")");
    }
}

std::size_t Graph::prefix_length(Vertex v, Weight i) const {
    if (i >= w_max_) {
        return offsets_[v + 1] - offsets_[v];
    }
    if (!prefix_.empty()) {
        return prefix_[std::size_t{v} * (std::size_t{w_max_} + 1) + i];
    }
    const auto first = adjacency_.begin() + static_cast<std::ptrdiff_t>(offsets_[v]);
    const auto last = adjacency_.begin() + static_cast<std::ptrdiff_t>(offsets_[v + 1]);
    const auto it = std::upper_bound(first, last, i, [](Weight t, const Neighbor& nb) {
        return t < nb.weight;
    });
    return static_cast<std::size_t>(it - first);
}

std::span<const Neighbor> Graph::neighbors(Vertex v) const {
    check_vertex(v);
    return {adjacency_.data() + offsets_[v], offsets_[v + 1] - offsets_[v]};
}

std::span<const Neighbor> Graph::neighbors_up_to(Vertex v, Weight i) const {
    check_vertex(v);
    return {adjacency_.data() + offsets_[v], prefix_length(v, i)};
}

std::size_t Graph::degree(Vertex v) const {
    check_vertex(v);
    return offsets_[v + 1] - offsets_[v];
}

std::size_t Graph::degree_up_to(Vertex v, Weight i) const {
    check_vertex(v);
    return prefix_length(v, i);
}

std::size_t Graph::edges_up_to(Weight i) const {
    if (edges_up_to_.empty()) {
        return 0;
    }
    return edges_up_to_[std::min<std::size_t>(i, w_max_)];
}

std::vector<Edge> Graph::edge_list() const {
    std::vector<Edge> out;
    out.reserve(m_);
    for (Vertex u = 0; u < n_; ++u) {
        for (std::size_t k = offsets_[u]; k < offsets_[u + 1]; ++k) {
            const Neighbor& nb = adjacency_[k];
            if (u <= nb.to) {
                out.push_back({u, nb.to, nb.weight});
            }
        }
    }
    std::sort(out.begin(), out.end(), [](const Edge& a, const Edge& b) {
        if (a.u != b.u) return a.u < b.u;
        if (a.v != b.v) return a.v < b.v;
        return a.weight < b.weight;
    });
    return out;
}

double average_degree_exact(const Graph& g) {
    double mean = 0.0;
    for (std::size_t v = 0; v < g.vertex_count(); ++v) {
        const double d = static_cast<double>(g.degree(static_cast<Vertex>(v)));
        mean += (d - mean) / static_cast<double>(v + 1);
    }
    return mean;
}

bool is_connected(const Graph& g) {
    const std::size_t n = g.vertex_count();
    if (n == 0) {
        return false;
    }
    std::vector<char> seen(n, 0);
    std::vector<Vertex> queue{0};
    queue.reserve(n);
    seen[0] = 1;
    for (std::size_t head = 0; head < queue.size(); ++head) {
        for (const Neighbor& nb : g.neighbors(queue[head])) {
            if (!seen[nb.to]) {
                seen[nb.to] = 1;
                queue.push_back(nb.to);
            }
        }
    }
    return queue.size() == n;
}

}  // namespace crtmst
