// grandom: write a connected random graph as .ssv

#include <cstdint>
#include <iostream>
#include <optional>
#include <random>
#include <string>

#include <CLI11.hpp>

#include "crtmst/generators.hpp"
#include "crtmst/ssv.hpp"

using namespace crtmst;

int main(int argc, char** argv) {
    CLI::App app{"Generate a connected weighted random graph (.ssv edge list)", "grandom"};

    std::string model_name = "uniform";
    std::size_t n = 0;
    std::size_t m = 0;
    Weight w = 1;
    std::string dist_name = "uniform";
    std::optional<std::uint64_t> seed;
    std::string out_path;

    app.add_option("--model", model_name, "uniform | gaussian | smallworld | scalefree")
        ->capture_default_str();
    app.add_option("-n,--nodes", n, "number of vertices")->required();
    app.add_option("-m,--edges", m, "number of edges (ignored by scalefree)");
    app.add_option("-w,--max-weight", w, "maximum edge weight")->capture_default_str();
    app.add_option("--weight-dist", dist_name, "uniform | powerlaw")->capture_default_str();
    app.add_option("--seed", seed, "64-bit seed (entropy when omitted)");
    app.add_option("-o,--out", out_path, "output .ssv path (stdout when omitted)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "grandom: error: " << e.what() << '\n';
        return 1;
    }

    try {
        GeneratorConfig cfg;
        cfg.model = parse_model(model_name);
        cfg.weight_dist = parse_weight_dist(dist_name);
        cfg.n = n;
        cfg.m = m;
        cfg.w = w;
        if (seed) {
            cfg.seed = *seed;
        } else {
            std::random_device rd;
            cfg.seed = (std::uint64_t{rd()} << 32) | rd();
        }
        const Graph g = generate(cfg);
        if (!seed) std::cerr << "grandom: seed " << cfg.seed << '\n';
        if (out_path.empty() || out_path == "-") {
            write_ssv(g, std::cout);
        } else {
            save_ssv(g, out_path);
        }
    } catch (const std::exception& e) {
        std::cerr << "grandom: error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
