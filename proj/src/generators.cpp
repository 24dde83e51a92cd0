#include "crtmst/generators.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>
#include <unordered_set>

namespace crtmst {

std::string_view to_string(Model model) {
    switch (model) {
        case Model::uniform: return "uniform";
        case Model::gaussian: return "gaussian";
        case Model::smallworld: return "smallworld";
        case Model::scalefree: return "scalefree";
    }
    return "?";
}

std::string_view to_string(WeightDist dist) {
    return dist == WeightDist::uniform ? "uniform" : "powerlaw";
}

Model parse_model(std::string_view name) {
    for (Model m : {Model::uniform, Model::gaussian, Model::smallworld, Model::scalefree}) {
        if (name == to_string(m)) return m;
    }
    throw std::invalid_argument("unknown model '" + std::string(name) + "'");
}

WeightDist parse_weight_dist(std::string_view name) {
    if (name == "uniform") return WeightDist::uniform;
    if (name == "powerlaw") return WeightDist::powerlaw;
    throw std::invalid_argument("unknown weight distribution '" + std::string(name) + "'");
}

WeightSampler::WeightSampler(Weight w, WeightDist dist) : w_(w), dist_(dist) {
    if (w < 1) {
        throw std::invalid_argument("maximum weight must be >= 1");
    }
    if (dist_ == WeightDist::powerlaw) {
        cdf_.resize(w);
        double acc = 0.0;
        for (Weight k = 1; k <= w; ++k) {
            acc += 1.0 / k;
            cdf_[k - 1] = acc;
        }
        for (double& c : cdf_) c /= acc;
        cdf_.back() = 1.0;
    }
}

Weight WeightSampler::operator()(SeededRng& rng) const {
    if (dist_ == WeightDist::uniform) {
        return static_cast<Weight>(uniform_int(rng, 1, w_));
    }
    const double u = uniform_real(rng);
    const auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
    const auto k = static_cast<Weight>(it - cdf_.begin()) + 1;
    return std::min(k, w_);
}

double WeightSampler::probability(Weight k) const {
    if (k < 1 || k > w_) return 0.0;
    if (dist_ == WeightDist::uniform) return 1.0 / w_;
    return cdf_[k - 1] - (k > 1 ? cdf_[k - 2] : 0.0);
}

UniformPairSampler::UniformPairSampler(std::size_t n) : n_(n) {
    if (n < 2) {
        throw std::invalid_argument("pair sampler needs n >= 2");
    }
}

VertexPair UniformPairSampler::operator()(SeededRng& rng) const {
    while (true) {
        const auto u = static_cast<Vertex>(uniform_int(rng, 0, n_ - 1));
        const auto v = static_cast<Vertex>(uniform_int(rng, 0, n_ - 1));
        if (u != v) return std::minmax(u, v);
    }
}

GaussianPairSampler::GaussianPairSampler(std::size_t n)
    : n_(n), mean_(static_cast<double>(n) / 2.0), stddev_(static_cast<double>(n) / 8.0) {
    if (n < 2) {
        throw std::invalid_argument("pair sampler needs n >= 2");
    }
}

Vertex GaussianPairSampler::endpoint(SeededRng& rng) const {
    const double x = std::round(mean_ + stddev_ * standard_normal(rng));
    const double hi = static_cast<double>(n_ - 1);
    return static_cast<Vertex>(std::clamp(x, 0.0, hi));
}

VertexPair GaussianPairSampler::operator()(SeededRng& rng) const {
    while (true) {
        const Vertex u = endpoint(rng);
        const Vertex v = endpoint(rng);
        if (u != v) return std::minmax(u, v);
    }
}

std::size_t smallworld_lattice_degree(std::size_t n, std::size_t m) {
    if (n < 3) return 0;
    auto k = static_cast<std::size_t>(std::llround(2.0 * static_cast<double>(m) / static_cast<double>(n)));
    if (k % 2) ++k;
    const std::size_t cap = (n - 1) - ((n - 1) % 2);
    return std::clamp<std::size_t>(k, 2, cap);
}

SmallWorldSampler::SmallWorldSampler(std::size_t n, std::size_t k, double beta)
    : n_(n), k_(k), beta_(beta) {
    if (k % 2 || (n > 0 && k >= n)) {
        throw std::invalid_argument("lattice degree must be even and < n");
    }
}

std::optional<VertexPair> SmallWorldSampler::operator()(SeededRng& rng) {
    if (ring_ > k_ / 2 || n_ < 2) {
        return std::nullopt;
    }
    const auto u = static_cast<Vertex>(vertex_);
    auto v = static_cast<Vertex>((vertex_ + ring_) % n_);
    if (uniform_real(rng) < beta_) {
        do {
            v = static_cast<Vertex>(uniform_int(rng, 0, n_ - 1));
        } while (v == u);
    }
    if (++vertex_ == n_) {
        vertex_ = 0;
        ++ring_;
    }
    return std::minmax(u, v);
}

void PreferentialAttachment::add_edge(Vertex u, Vertex v) {
    const std::size_t need = std::size_t{std::max(u, v)} + 1;
    if (degree_.size() < need) degree_.resize(need, 0);
    tickets_.push_back(u);
    tickets_.push_back(v);
    ++degree_[u];
    ++degree_[v];
}

Vertex PreferentialAttachment::pick(SeededRng& rng) const {
    if (tickets_.empty()) {
        throw std::logic_error("preferential attachment needs at least one edge");
    }
    return tickets_[uniform_int(rng, 0, tickets_.size() - 1)];
}

double PreferentialAttachment::probability(Vertex v) const {
    if (tickets_.empty() || v >= degree_.size()) return 0.0;
    return static_cast<double>(degree_[v]) / static_cast<double>(tickets_.size());
}

namespace {

std::vector<Vertex> shuffled_vertices(std::size_t n, SeededRng& rng) {
    std::vector<Vertex> perm(n);
    std::iota(perm.begin(), perm.end(), Vertex{0});
    for (std::size_t i = n; i > 1; --i) {
        const auto j = static_cast<std::size_t>(uniform_int(rng, 0, i - 1));
        std::swap(perm[i - 1], perm[j]);
    }
    return perm;
}

std::uint64_t pair_key(Vertex u, Vertex v) {
    const auto [a, b] = std::minmax(u, v);
    return (std::uint64_t{a} << 32) | b;
}

// Simple-graph accumulator: rejects self-loops and repeated pairs, weights
// each accepted edge as it arrives.
class SimpleEdgeSet {
public:
    SimpleEdgeSet(GraphBuilder builder, const WeightSampler& weights)
        : builder_(std::move(builder)), weights_(weights) {
        keys_.reserve(builder_.edge_count() * 2);
        for (const Edge& e : builder_.edges()) keys_.insert(pair_key(e.u, e.v));
    }

    void reserve(std::size_t m) {
        builder_.reserve(m);
        keys_.reserve(m);
    }

    bool try_add(Vertex u, Vertex v, SeededRng& rng) {
        if (u == v || !keys_.insert(pair_key(u, v)).second) return false;
        builder_.add_edge(u, v, weights_(rng));
        return true;
    }

    bool contains(Vertex u, Vertex v) const { return keys_.count(pair_key(u, v)) != 0; }
    std::size_t size() const { return builder_.edge_count(); }
    std::size_t vertex_count() const { return builder_.vertex_count(); }
    GraphBuilder& builder() { return builder_; }

private:
    GraphBuilder builder_;
    const WeightSampler& weights_;
    std::unordered_set<std::uint64_t> keys_;
};

std::size_t pair_capacity(std::size_t n) {
    return n * (n - 1) / 2;
}

// Tops the set up to `target` edges with uniformly random absent pairs. When
// more than half of the remaining pairs are needed, the absent pairs are
// enumerated and a uniform subset is drawn by a partial Fisher-Yates pass,
// which keeps the cost O(n^2) = O(m) instead of rejection-sampling a nearly
// full graph.
void fill_uniform(SimpleEdgeSet& edges, std::size_t target, SeededRng& rng) {
    const std::size_t n = edges.vertex_count();
    const std::size_t free_pairs = pair_capacity(n) - edges.size();
    const std::size_t needed = target - edges.size();
    if (needed == 0) return;
    if (needed * 2 > free_pairs) {
        std::vector<VertexPair> absent;
        absent.reserve(free_pairs);
        for (Vertex u = 0; u < n; ++u) {
            for (Vertex v = u + 1; v < n; ++v) {
                if (!edges.contains(u, v)) absent.emplace_back(u, v);
            }
        }
        for (std::size_t i = 0; i < needed; ++i) {
            const auto j = static_cast<std::size_t>(uniform_int(rng, i, absent.size() - 1));
            std::swap(absent[i], absent[j]);
            edges.try_add(absent[i].first, absent[i].second, rng);
        }
        return;
    }
    const UniformPairSampler sampler(n);
    while (edges.size() < target) {
        const auto [u, v] = sampler(rng);
        edges.try_add(u, v, rng);
    }
}

void fill_gaussian(SimpleEdgeSet& edges, std::size_t target, SeededRng& rng) {
    const std::size_t n = edges.vertex_count();
    const GaussianPairSampler sampler(n);
    // Near-saturated clusters make rejection hopeless; hand the tail to the
    // uniform filler after this many consecutive misses.
    const std::size_t stall_limit = 100 * (n + 1);
    std::size_t misses = 0;
    while (edges.size() < target) {
        const auto [u, v] = sampler(rng);
        if (edges.try_add(u, v, rng)) {
            misses = 0;
        } else if (++misses > stall_limit) {
            fill_uniform(edges, target, rng);
            return;
        }
    }
}

void fill_smallworld(SimpleEdgeSet& edges, std::size_t target, SeededRng& rng) {
    const std::size_t n = edges.vertex_count();
    SmallWorldSampler lattice(n, smallworld_lattice_degree(n, target));
    while (edges.size() < target) {
        const auto pair = lattice(rng);
        if (!pair) break;
        edges.try_add(pair->first, pair->second, rng);
    }
    fill_uniform(edges, target, rng);
}

Graph generate_scalefree(const GeneratorConfig& cfg, const WeightSampler& weights, SeededRng& rng) {
    if (cfg.n < 2) {
        throw std::invalid_argument("scalefree model needs n >= 2");
    }
    const std::vector<Vertex> order = shuffled_vertices(cfg.n, rng);
    GraphBuilder builder(cfg.n);
    builder.reserve(cfg.n - 1);
    PreferentialAttachment attachment;
    // Seed graph: complete graph on two vertices.
    builder.add_edge(order[0], order[1], weights(rng));
    attachment.add_edge(order[0], order[1]);
    for (std::size_t t = 2; t < cfg.n; ++t) {
        const Vertex target = attachment.pick(rng);
        builder.add_edge(order[t], target, weights(rng));
        attachment.add_edge(order[t], target);
    }
    builder.mark_connected(true);
    builder.canonicalize();
    return builder.freeze();
}

}  // namespace

GraphBuilder random_spanning_tree(std::size_t n, Weight w, WeightDist dist, SeededRng& rng) {
    if (n < 1) {
        throw std::invalid_argument("spanning tree needs n >= 1");
    }
    const WeightSampler weights(w, dist);
    const std::vector<Vertex> order = shuffled_vertices(n, rng);
    GraphBuilder builder(n);
    builder.reserve(n - 1);
    for (std::size_t tau = 0; tau + 1 < n; ++tau) {
        const auto s = static_cast<std::size_t>(uniform_int(rng, 0, tau));
        builder.add_edge(order[s], order[tau + 1], weights(rng));
    }
    builder.mark_connected(true);
    return builder;
}

Graph generate(const GeneratorConfig& cfg) {
    if (cfg.n < 1) {
        throw std::invalid_argument("n must be >= 1");
    }
    if (cfg.w < 1) {
        throw std::invalid_argument("w must be >= 1");
    }
    SeededRng rng(cfg.seed);
    const WeightSampler weights(cfg.w, cfg.weight_dist);

    if (cfg.model == Model::scalefree) {
        return generate_scalefree(cfg, weights, rng);
    }
    if (cfg.m + 1 < cfg.n) {
        throw std::invalid_argument("m < n-1: " + std::to_string(cfg.m) + " edges cannot connect " +
                                    std::to_string(cfg.n) + " vertices");
    }
    if (cfg.m > pair_capacity(cfg.n)) {
        throw std::invalid_argument("m > n(n-1)/2: too many edges for a simple graph");
    }

    SimpleEdgeSet edges(random_spanning_tree(cfg.n, cfg.w, cfg.weight_dist, rng), weights);
    edges.reserve(cfg.m);
    switch (cfg.model) {
        case Model::uniform: fill_uniform(edges, cfg.m, rng); break;
        case Model::gaussian: fill_gaussian(edges, cfg.m, rng); break;
        case Model::smallworld: fill_smallworld(edges, cfg.m, rng); break;
        case Model::scalefree: break;
    }
    edges.builder().mark_connected(true);
    edges.builder().canonicalize();
    return edges.builder().freeze();
}

}  // namespace crtmst
