#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "crtmst/graph.hpp"
#include "crtmst/sampling.hpp"

namespace crtmst {

enum class Model { uniform, gaussian, smallworld, scalefree };
enum class WeightDist { uniform, powerlaw };

std::string_view to_string(Model model);
std::string_view to_string(WeightDist dist);
// Throw std::invalid_argument on unknown names.
Model parse_model(std::string_view name);
WeightDist parse_weight_dist(std::string_view name);

struct GeneratorConfig {
    Model model = Model::uniform;
    std::size_t n = 0;
    std::size_t m = 0;  // ignored by scalefree
    Weight w = 1;
    WeightDist weight_dist = WeightDist::uniform;
    std::uint64_t seed = 0;
};

// Draws edge weights in [1, w]: uniform, or P(k) proportional to 1/k for powerlaw.
class WeightSampler {
public:
    WeightSampler(Weight w, WeightDist dist);

    Weight operator()(SeededRng& rng) const;
    double probability(Weight k) const;

private:
    Weight w_;
    WeightDist dist_;
    std::vector<double> cdf_;  // powerlaw only
};

using VertexPair = std::pair<Vertex, Vertex>;

// Both endpoints uniform over [0, n); self-pairs are redrawn. Pairs come out as (min, max).
class UniformPairSampler {
public:
    explicit UniformPairSampler(std::size_t n);
    VertexPair operator()(SeededRng& rng) const;

private:
    std::size_t n_;
};

// Endpoints are round(Normal(n/2, n/8)) clamped to [0, n-1]: one dense cluster
// in the middle of the id range. Self-pairs are redrawn.
class GaussianPairSampler {
public:
    explicit GaussianPairSampler(std::size_t n);
    Vertex endpoint(SeededRng& rng) const;
    VertexPair operator()(SeededRng& rng) const;

private:
    std::size_t n_;
    double mean_;
    double stddev_;
};

/**
 * Watts-Strogatz candidates: ring-lattice edges (v, v + j mod n) for
 * j = 1..k/2, emitted nearest ring first, each rewired with probability
 * beta to a uniform non-self target. Returns nullopt once the lattice is
 * exhausted; deduplication is left to the caller.
 */
class SmallWorldSampler {
public:
    static constexpr double kDefaultRewire = 0.1;

    SmallWorldSampler(std::size_t n, std::size_t k, double beta = kDefaultRewire);
    std::optional<VertexPair> operator()(SeededRng& rng);

    std::size_t lattice_degree() const { return k_; }

private:
    std::size_t n_;
    std::size_t k_;
    double beta_;
    std::size_t ring_ = 1;
    std::size_t vertex_ = 0;
};

// Even ring-lattice degree for a target of m edges on n vertices.
std::size_t smallworld_lattice_degree(std::size_t n, std::size_t m);

// Degree-proportional target selection: every edge endpoint is one ticket.
class PreferentialAttachment {
public:
    void add_edge(Vertex u, Vertex v);
    Vertex pick(SeededRng& rng) const;

    // Exact selection probability of v in the current state.
    double probability(Vertex v) const;

private:
    std::vector<Vertex> tickets_;
    std::vector<std::size_t> degree_;
};

// Random permutation v0..v{n-1}; v{t+1} attaches to a uniform vertex among
// v0..vt. Exactly n-1 edges, connected, acyclic.
GraphBuilder random_spanning_tree(std::size_t n, Weight w, WeightDist dist, SeededRng& rng);

// Connected simple graph per cfg. Throws std::invalid_argument when the
// configuration is unsatisfiable.
Graph generate(const GeneratorConfig& cfg);

}  // namespace crtmst
