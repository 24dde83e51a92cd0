#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "crtmst/graph.hpp"

namespace crtmst {

// Disjoint sets with union by rank and full path compression.
class UnionFind {
public:
    explicit UnionFind(std::size_t n);

    Vertex find(Vertex x);
    // True iff a and b were in different sets (the component count drops by one).
    bool unite(Vertex a, Vertex b);

    std::size_t size() const { return parent_.size(); }
    std::size_t components() const { return components_; }

private:
    std::vector<Vertex> parent_;
    std::vector<std::uint8_t> rank_;
    std::size_t components_;
};

struct MstResult {
    std::uint64_t weight = 0;
    // Adjacency entries (Prim) or edge records (Kruskal) touched.
    std::uint64_t edges_examined = 0;
};

// Both throw DisconnectedGraph when no spanning tree exists, and
// std::overflow_error if the weight sum leaves 64 bits. Self-loops are skipped.
MstResult prim_mst(const Graph& g);
MstResult kruskal_mst(const Graph& g);

inline std::uint64_t prim_mst_weight(const Graph& g) { return prim_mst(g).weight; }
inline std::uint64_t kruskal_mst_weight(const Graph& g) { return kruskal_mst(g).weight; }

// Components of the threshold subgraph: all n vertices, edges of weight <= i.
std::size_t exact_components(const Graph& g, Weight i);

// c_0 .. c_{w_max} from one incremental union-find pass over the weight-sorted edges.
std::vector<std::size_t> component_profile(const Graph& g);

// n - w_max + sum_{i=1}^{w_max-1} c_i, which equals the MST weight of a
// connected graph with integer weights in [1, w_max].
std::uint64_t mst_weight_via_components(const Graph& g);

}  // namespace crtmst
