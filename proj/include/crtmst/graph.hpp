#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace crtmst {

using Vertex = std::uint32_t;
using Weight = std::uint32_t;

struct Neighbor {
    Vertex to;
    Weight weight;

    friend bool operator==(const Neighbor&, const Neighbor&) = default;
};

struct Edge {
    Vertex u;
    Vertex v;
    Weight weight;

    friend bool operator==(const Edge&, const Edge&) = default;
};

class Graph;

// Single-owner edge accumulator. Nothing is validated against other edges:
// duplicates and self-loops are accepted here and left to the producer.
class GraphBuilder {
public:
    explicit GraphBuilder(std::size_t n) : n_(n) {}

    // Throws std::out_of_range for an endpoint >= n and
    // std::invalid_argument for a zero weight.
    void add_edge(Vertex u, Vertex v, Weight weight);
    void reserve(std::size_t m) { edges_.reserve(m); }

    // Orients every edge as (min, max) and sorts by (u, v, weight): the
    // order load_ssv sees after save_ssv.
    void canonicalize();

    // Producers that guarantee connectivity (the generators) record it here
    // so consumers can reject disconnected input without a traversal.
    void mark_connected(bool connected) { connected_ = connected; }

    std::size_t vertex_count() const { return n_; }
    std::size_t edge_count() const { return edges_.size(); }
    std::span<const Edge> edges() const { return edges_; }

    Graph freeze() const;

private:
    std::size_t n_;
    std::vector<Edge> edges_;
    std::optional<bool> connected_;
};

/**
 * Immutable weighted undirected graph stored as adjacency lists.
 *
 * Every list is sorted by weight (ties keep insertion order), so the
 * threshold subgraph G_i -- all vertices, edges of weight <= i -- is the
 * prefix of each list. For small maximum weights a dense per-vertex prefix
 * count table gives the prefix length in O(1); above kDenseWeightLimit the
 * length comes from a binary search over the list.
 *
 * Self-loops are stored once, in the owner's list, and counted by
 * loop_count(). Parallel edges are kept as given.
 */
class Graph {
public:
    static constexpr Weight kDenseWeightLimit = 128;

    Graph() = default;

    std::size_t vertex_count() const { return n_; }
    std::size_t edge_count() const { return m_; }
    Weight max_weight() const { return w_max_; }
    std::size_t loop_count() const { return loops_; }

    std::span<const Neighbor> neighbors(Vertex v) const;
    std::span<const Neighbor> neighbors_up_to(Vertex v, Weight i) const;
    std::size_t degree(Vertex v) const;
    std::size_t degree_up_to(Vertex v, Weight i) const;

    // Number of undirected edges with weight <= i.
    std::size_t edges_up_to(Weight i) const;

    bool has_dense_prefix_index() const { return !prefix_.empty() || n_ == 0; }

    // Set when the producer vouched for connectivity; empty otherwise.
    std::optional<bool> known_connected() const { return connected_; }

    // Each undirected edge once as (min, max, weight), sorted by (u, v, weight).
    std::vector<Edge> edge_list() const;

    friend bool operator==(const Graph& a, const Graph& b) {
        return a.n_ == b.n_ && a.m_ == b.m_ && a.w_max_ == b.w_max_ &&
               a.offsets_ == b.offsets_ && a.adjacency_ == b.adjacency_;
    }

private:
    friend class GraphBuilder;

    // Unchecked variant used once the vertex is known to be valid.
    std::size_t prefix_length(Vertex v, Weight i) const;
    void check_vertex(Vertex v) const;

    std::size_t n_ = 0;
    std::size_t m_ = 0;
    Weight w_max_ = 0;
    std::size_t loops_ = 0;
    std::optional<bool> connected_;
    std::vector<std::size_t> offsets_;
    std::vector<Neighbor> adjacency_;
    std::vector<std::uint32_t> prefix_;      // n * (w_max + 1), dense mode only
    std::vector<std::size_t> edges_up_to_;   // w_max + 1
};

// (sum of degrees) / n as a running mean, one vertex at a time.
double average_degree_exact(const Graph& g);

// One BFS from vertex 0.
bool is_connected(const Graph& g);

}  // namespace crtmst
