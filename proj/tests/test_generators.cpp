#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "crtmst/generators.hpp"
#include "crtmst/ssv.hpp"

using namespace crtmst;

namespace {

constexpr Model kAllModels[] = {Model::uniform, Model::gaussian, Model::smallworld,
                                Model::scalefree};

void check_simple(const Graph& g) {
    std::set<std::pair<Vertex, Vertex>> seen;
    for (const Edge& e : g.edge_list()) {
        REQUIRE(e.u != e.v);
        REQUIRE(seen.emplace(e.u, e.v).second);
    }
    CHECK(g.loop_count() == 0);
}

std::string ssv_bytes(const Graph& g) {
    std::ostringstream out;
    write_ssv(g, out);
    return out.str();
}

}  // namespace

TEST_SUITE("generators") {

TEST_CASE("spanning tree backbone") {
    SeededRng rng(1);
    CHECK(random_spanning_tree(1, 5, WeightDist::uniform, rng).edge_count() == 0);
    const auto two = random_spanning_tree(2, 5, WeightDist::uniform, rng).freeze();
    CHECK(two.edge_count() == 1);
    CHECK(is_connected(two));
    for (std::uint64_t s = 0; s < 100; ++s) {
        SeededRng r(s);
        const Graph t = random_spanning_tree(1000, 9, WeightDist::uniform, r).freeze();
        REQUIRE(t.edge_count() == 999);
        REQUIRE(is_connected(t));
        REQUIRE(t.known_connected() == true);
    }
}

TEST_CASE("every model is connected, simple and hits m") {
    for (Model model : kAllModels) {
        for (std::uint64_t seed = 0; seed < 10; ++seed) {
            const std::size_t n = 50 + 37 * seed;
            const std::size_t m = n * (1 + seed % 4);
            const GeneratorConfig cfg{model, n, m, 7, WeightDist::uniform, seed};
            const Graph g = generate(cfg);
            CAPTURE(to_string(model));
            CAPTURE(seed);
            REQUIRE(is_connected(g));
            CHECK(g.vertex_count() == n);
            if (model == Model::scalefree) {
                CHECK(g.edge_count() == n - 1);
            } else {
                CHECK(g.edge_count() == m);
            }
            check_simple(g);
            for (const Edge& e : g.edge_list()) {
                REQUIRE(e.weight >= 1);
                REQUIRE(e.weight <= 7);
            }
        }
    }
}

TEST_CASE("tree-forcing and dense configurations") {
    const Graph tree = generate({Model::uniform, 4, 3, 5, WeightDist::uniform, 1});
    CHECK(tree.edge_count() == 3);
    CHECK(is_connected(tree));
    for (Model model : {Model::uniform, Model::gaussian, Model::smallworld}) {
        const Graph full = generate({model, 12, 66, 3, WeightDist::uniform, 2});
        CHECK(full.edge_count() == 66);
        const Graph near = generate({model, 30, 400, 3, WeightDist::uniform, 3});
        CHECK(near.edge_count() == 400);
        check_simple(near);
    }
    CHECK(generate({Model::uniform, 1, 0, 1, WeightDist::uniform, 0}).vertex_count() == 1);
}

TEST_CASE("uniform n=5000 m=50000 has average degree 20") {
    const Graph g = generate({Model::uniform, 5000, 50000, 20, WeightDist::uniform, 5});
    CHECK(average_degree_exact(g) == doctest::Approx(20.0).epsilon(1e-12));
}

TEST_CASE("generator errors") {
    CHECK_THROWS_AS(generate({Model::uniform, 10, 8, 5, WeightDist::uniform, 0}), std::invalid_argument);
    CHECK_THROWS_AS(generate({Model::gaussian, 10, 46, 5, WeightDist::uniform, 0}), std::invalid_argument);
    CHECK_THROWS_AS(generate({Model::uniform, 0, 0, 5, WeightDist::uniform, 0}), std::invalid_argument);
    CHECK_THROWS_AS(generate({Model::uniform, 5, 6, 0, WeightDist::uniform, 0}), std::invalid_argument);
    CHECK_THROWS_AS(generate({Model::scalefree, 1, 0, 5, WeightDist::uniform, 0}), std::invalid_argument);
    CHECK_THROWS_AS(parse_model("lattice"), std::invalid_argument);
    CHECK_THROWS_AS(parse_weight_dist("zipf"), std::invalid_argument);
}

TEST_CASE("determinism: same config gives identical ssv bytes") {
    for (Model model : kAllModels) {
        const GeneratorConfig cfg{model, 300, 1500, 9, WeightDist::powerlaw, 77};
        const Graph a = generate(cfg);
        const Graph b = generate(cfg);
        CHECK(a == b);
        CHECK(ssv_bytes(a) == ssv_bytes(b));
        GeneratorConfig other = cfg;
        other.seed = 78;
        CHECK(ssv_bytes(generate(other)) != ssv_bytes(a));
    }
}

TEST_CASE("generated graphs survive an ssv round trip unchanged") {
    for (Model model : kAllModels) {
        const Graph g = generate({model, 200, 800, 6, WeightDist::uniform, 4});
        std::istringstream in(ssv_bytes(g));
        CHECK(read_ssv(in) == g);
    }
}

TEST_CASE("uniform weight classes within 4 sigma") {
    const std::size_t m = 100000;
    const Weight w = 20;
    const Graph g = generate({Model::uniform, 10000, m, w, WeightDist::uniform, 6});
    std::vector<std::size_t> counts(w + 1, 0);
    for (const Edge& e : g.edge_list()) ++counts[e.weight];
    const double p = 1.0 / w;
    const double sigma = std::sqrt(m * p * (1 - p));
    for (Weight k = 1; k <= w; ++k) {
        CHECK(std::abs(static_cast<double>(counts[k]) - m * p) <= 4 * sigma);
    }
}

TEST_CASE("powerlaw weights follow 1/k") {
    const WeightSampler sampler(10, WeightDist::powerlaw);
    double harmonic = 0.0;
    for (int k = 1; k <= 10; ++k) harmonic += 1.0 / k;
    double total = 0.0;
    for (Weight k = 1; k <= 10; ++k) {
        CHECK(sampler.probability(k) == doctest::Approx(1.0 / (k * harmonic)));
        total += sampler.probability(k);
    }
    CHECK(total == doctest::Approx(1.0));

    SeededRng rng(9);
    const std::size_t draws = 200000;
    std::vector<std::size_t> counts(11, 0);
    for (std::size_t d = 0; d < draws; ++d) ++counts[sampler(rng)];
    for (Weight k = 1; k <= 10; ++k) {
        const double p = sampler.probability(k);
        CHECK(std::abs(static_cast<double>(counts[k]) - draws * p) <= 4 * std::sqrt(draws * p * (1 - p)));
    }
}

TEST_CASE("uniform pair sampler") {
    SeededRng rng(1);
    const UniformPairSampler two(2);
    for (int k = 0; k < 20; ++k) CHECK(two(rng) == VertexPair{0, 1});
    CHECK_THROWS_AS(UniformPairSampler(1), std::invalid_argument);
}

TEST_CASE("gaussian endpoints form one central cluster") {
    const std::size_t n = 10000;
    const GaussianPairSampler sampler(n);
    SeededRng rng(10);
    const std::size_t bins = 20;
    std::vector<double> hist(bins, 0.0);
    for (int k = 0; k < 100000; ++k) {
        const auto [u, v] = sampler(rng);
        ++hist[u * bins / n];
        ++hist[v * bins / n];
    }
    const auto mode = static_cast<std::size_t>(std::max_element(hist.begin(), hist.end()) - hist.begin());
    const double center = (mode + 0.5) * static_cast<double>(n) / bins;
    CHECK(std::abs(center - n / 2.0) <= n / 20.0);
    // Unimodal up to counting noise.
    for (std::size_t b = 1; b <= mode; ++b) CHECK(hist[b] + 4 * std::sqrt(hist[b] + 1) >= hist[b - 1]);
    for (std::size_t b = mode + 1; b < bins; ++b) CHECK(hist[b] <= hist[b - 1] + 4 * std::sqrt(hist[b - 1] + 1));
}

TEST_CASE("small-world lattice degree") {
    CHECK(smallworld_lattice_degree(1000, 10000) == 20);
    CHECK(smallworld_lattice_degree(1000, 1500) == 4);  // 3 bumped to even
    CHECK(smallworld_lattice_degree(10, 45) == 8);      // capped below n
    CHECK(smallworld_lattice_degree(100, 99) == 2);
    SmallWorldSampler ring(10, 2, 0.0);
    SeededRng rng(1);
    std::set<VertexPair> pairs;
    while (auto p = ring(rng)) pairs.insert(std::minmax(p->first, p->second));
    CHECK(pairs.size() == 10);
    CHECK(pairs.count({0, 9}) == 1);
}

TEST_CASE("preferential attachment probabilities are degree proportional") {
    PreferentialAttachment pa;
    // Frozen 10-vertex state: a star on 0 plus a path 5-6-7-8-9.
    for (Vertex v = 1; v <= 5; ++v) pa.add_edge(0, v);
    for (Vertex v = 5; v < 9; ++v) pa.add_edge(v, v + 1);
    const std::vector<double> degree{5, 1, 1, 1, 1, 2, 2, 2, 2, 1};
    const double tickets = 18.0;
    for (Vertex v = 0; v < 10; ++v) CHECK(pa.probability(v) == doctest::Approx(degree[v] / tickets));

    SeededRng rng(12);
    const std::size_t draws = 180000;
    std::vector<std::size_t> counts(10, 0);
    for (std::size_t k = 0; k < draws; ++k) ++counts[pa.pick(rng)];
    double stat = 0.0;
    for (Vertex v = 0; v < 10; ++v) {
        const double expected = draws * degree[v] / tickets;
        stat += (counts[v] - expected) * (counts[v] - expected) / expected;
    }
    CHECK(stat < 27.877);  // chi-square, df 9, p = 0.001
}

TEST_CASE("scalefree: m/n near 1 and heavy-tailed degrees") {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const Graph g = generate({Model::scalefree, 10000, 0, 10, WeightDist::uniform, seed});
        const double ratio = static_cast<double>(g.edge_count()) / g.vertex_count();
        CHECK(ratio >= 0.9);
        CHECK(ratio <= 1.1);
        std::vector<std::size_t> deg;
        for (Vertex v = 0; v < g.vertex_count(); ++v) deg.push_back(g.degree(v));
        std::nth_element(deg.begin(), deg.begin() + deg.size() / 2, deg.end());
        const std::size_t median = deg[deg.size() / 2];
        const std::size_t max_deg = *std::max_element(deg.begin(), deg.end());
        CHECK(max_deg > 10 * median);
    }
}

}  // TEST_SUITE
