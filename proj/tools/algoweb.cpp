// algoweb: one MST-weight run (crt, prim or kruskal) on an .ssv graph
//
// Exit codes: 0 success, 1 I/O or parse error, 2 infeasible parameters.

#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <string>
#include <utility>

#include <CLI11.hpp>

#include "crtmst/bench_harness.hpp"
#include "crtmst/crt_estimator.hpp"
#include "crtmst/errors.hpp"
#include "crtmst/exact_mst.hpp"
#include "crtmst/ssv.hpp"

using namespace crtmst;

namespace {

// Second member is true when the seed came from entropy.
std::pair<std::uint64_t, bool> resolve_seed(const std::optional<std::uint64_t>& flag) {
    if (flag) return {*flag, false};
    if (const char* env = std::getenv("ALGOWEB_SEED"); env && *env) {
        std::size_t used = 0;
        const std::string text(env);
        const auto value = std::stoull(text, &used, 10);
        if (used != text.size() || text.front() == '-') {
            throw std::invalid_argument("ALGOWEB_SEED is not a decimal 64-bit integer: " + text);
        }
        return {value, false};
    }
    std::random_device rd;
    return {(std::uint64_t{rd()} << 32) | rd(), true};
}

template <typename F>
RunRecord time_exact(const Graph& g, Algo algo, F&& solver) {
    RunRecord rec;
    rec.algo = algo;
    const auto start = std::chrono::steady_clock::now();
    const MstResult res = solver(g);
    rec.elapsed_ns = std::chrono::duration_cast<std::chrono::nanoseconds>(
                         std::chrono::steady_clock::now() - start)
                         .count();
    rec.weight = static_cast<double>(res.weight);
    rec.exact_weight = res.weight;
    return rec;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Compute or estimate the MST weight of an .ssv graph", "algoweb"};

    std::string graph_path;
    double epsilon = 0.3;
    std::string algo_name = "crt";
    std::string out_path;
    std::optional<std::uint64_t> seed_flag;
    StoppingOverrides stopping;
    std::optional<std::uint32_t> flip_cap;
    bool parallel = false;
    unsigned threads = 0;
    bool with_exact = false;

    app.add_option("-g,--graph", graph_path, ".ssv input graph")->required();
    app.add_option("-e,--epsilon", epsilon, "approximation parameter in (0, 1/2)")
        ->capture_default_str();
    app.add_option("-a,--algo", algo_name, "crt | prim | kruskal")->capture_default_str();
    app.add_option("-o,--out", out_path, "write the run as a one-row CSV");
    app.add_option("--seed", seed_flag, "64-bit seed (falls back to ALGOWEB_SEED, then entropy)");
    app.add_option("--hub-mult", stopping.hub_mult, "hub threshold multiplier")
        ->capture_default_str();
    app.add_option("--budget-mult", stopping.budget_mult, "per-BFS edge budget multiplier")
        ->capture_default_str();
    app.add_option("--flip-cap", flip_cap, "coin flips allowed per BFS");
    app.add_option("--parallel", parallel, "estimate thresholds concurrently (true/false)")
        ->capture_default_str();
    app.add_option("--threads", threads, "worker threads for --parallel (0: all cores)");
    app.add_flag("--exact", with_exact, "also run Prim and fill the error columns");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "algoweb: error: " << e.what() << '\n';
        return 1;
    }

    try {
        const Algo algo = parse_algo(algo_name);
        const Graph g = load_ssv(graph_path);

        RunRecord rec;
        if (algo == Algo::crt) {
            stopping.flip_cap = flip_cap;
            const auto [seed, from_entropy] = resolve_seed(seed_flag);
            CrtEstimator estimator(g, {stopping, parallel, threads});
            const EstimateReport report = estimator.run(epsilon, SeededRng(seed));
            if (from_entropy) std::cerr << "algoweb: seed " << seed << '\n';
            for (const std::string& warning : report.params.warnings) {
                std::cerr << "algoweb: warning: " << warning << '\n';
            }
            rec.algo = Algo::crt;
            rec.epsilon = epsilon;
            rec.seed = seed;
            rec.weight = report.v_hat;
            rec.elapsed_ns = report.elapsed.count();
            rec.edges_examined = report.counters.edges_examined;
            if (report.params.r) rec.r = report.params.r;
            if (report.params.C) rec.C = report.params.C;
            if (with_exact) {
                rec.exact_weight = prim_mst_weight(g);
                fill_error_columns(rec);
            }

            std::cout << "weight " << report.v_hat << '\n'
                      << "elapsed_ns " << report.elapsed.count() << '\n'
                      << "r " << report.params.r << "\nC " << report.params.C << '\n'
                      << "d_star " << report.params.d_star << '\n'
                      << "edges_examined " << report.counters.edges_examined << '\n'
                      << "bfs_started " << report.counters.started << '\n'
                      << "bfs_completed " << report.counters.completed << '\n'
                      << "bfs_aborted_hub " << report.counters.aborted_hub << '\n'
                      << "bfs_aborted_budget " << report.counters.aborted_budget << '\n'
                      << "bfs_aborted_tails " << report.counters.aborted_tails << '\n';
            if (rec.exact_weight) {
                std::cout << "exact_weight " << *rec.exact_weight << '\n'
                          << "rel_error " << *rec.rel_error << '\n';
            }
        } else {
            rec = algo == Algo::prim ? time_exact(g, algo, prim_mst) : time_exact(g, algo, kruskal_mst);
            fill_error_columns(rec);
            std::cout << "weight " << *rec.exact_weight << '\n'
                      << "elapsed_ns " << *rec.elapsed_ns << '\n';
        }

        rec.model = "file";
        rec.n = g.vertex_count();
        rec.m = g.edge_count();
        rec.w = g.max_weight();
        if (!out_path.empty()) {
            std::ofstream out(out_path, std::ios::binary | std::ios::trunc);
            if (!out) throw std::runtime_error("cannot write '" + out_path + "'");
            write_csv(out, {rec});
            if (!out) throw std::runtime_error("write failed for '" + out_path + "'");
        }
    } catch (const InfeasibleParams& e) {
        std::cerr << "algoweb: infeasible: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "algoweb: error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
