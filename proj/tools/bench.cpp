// bench: grid runner and CSV summarizer
//
//   bench run --out results/ [--models uniform,gaussian] [--n 25000,50000] ...
//   bench summarize --csv results/merged.csv [--out summary.csv]

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "crtmst/bench_harness.hpp"

using namespace crtmst;

int main(int argc, char** argv) {
    CLI::App app{"Benchmark grid for the MST-weight estimator and exact baselines", "bench"};
    app.require_subcommand(1);

    GridSpec spec;
    std::vector<std::string> model_names;
    std::string dist_name = "uniform";
    std::string out_dir;
    std::string cache_dir;
    std::optional<std::uint32_t> flip_cap;

    CLI::App* run = app.add_subcommand("run", "run a grid and write CSVs into --out");
    run->add_option("-o,--out", out_dir, "output directory")->required();
    run->add_option("--models", model_names, "comma-separated models (default: all four)")
        ->delimiter(',');
    run->add_option("--n", spec.ns, "vertex counts")->delimiter(',');
    run->add_option("--degrees", spec.degrees, "average degrees d, m = d*n/2")->delimiter(',');
    run->add_option("--w", spec.ws, "maximum weights")->delimiter(',');
    run->add_option("--eps", spec.epsilons, "epsilon values")->delimiter(',');
    run->add_option("--reps", spec.repetitions, "estimator repetitions per epsilon")
        ->capture_default_str();
    run->add_option("--seed", spec.master_seed, "master seed")->capture_default_str();
    run->add_option("--weight-dist", dist_name, "uniform | powerlaw")->capture_default_str();
    run->add_flag("--kruskal", spec.include_kruskal, "also time Kruskal");
    run->add_option("--cache", cache_dir, "directory for cached .ssv graphs");
    run->add_option("--jobs", spec.jobs, "cells processed concurrently")->capture_default_str();
    run->add_option("--parallel", spec.estimator.parallel, "estimate thresholds concurrently")
        ->capture_default_str();
    run->add_option("--hub-mult", spec.estimator.stopping.hub_mult, "hub threshold multiplier")
        ->capture_default_str();
    run->add_option("--budget-mult", spec.estimator.stopping.budget_mult,
                    "per-BFS edge budget multiplier")
        ->capture_default_str();
    run->add_option("--flip-cap", flip_cap, "coin flips allowed per BFS");

    std::string csv_in;
    std::string summary_out;
    CLI::App* summarize_cmd = app.add_subcommand("summarize", "aggregate a harness CSV per cell");
    summarize_cmd->add_option("--csv", csv_in, "harness CSV")->required();
    summarize_cmd->add_option("-o,--out", summary_out, "summary CSV (stdout when omitted)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "bench: error: " << e.what() << '\n';
        return 1;
    }

    try {
        if (*run) {
            if (!model_names.empty()) {
                spec.models.clear();
                for (const std::string& name : model_names) spec.models.push_back(parse_model(name));
            }
            spec.weight_dist = parse_weight_dist(dist_name);
            if (!cache_dir.empty()) spec.cache_dir = cache_dir;
            spec.estimator.stopping.flip_cap = flip_cap;
            const GridResult result = run_grid(spec, out_dir);
            std::size_t skipped = 0;
            for (const RunRecord& rec : result.rows) skipped += rec.skipped();
            std::cout << result.rows.size() << " rows (" << skipped << " skipped)\n";
            for (const auto& path : result.files) std::cout << path.string() << '\n';
        } else {
            std::ifstream in(csv_in, std::ios::binary);
            if (!in) throw std::runtime_error("cannot open '" + csv_in + "'");
            const std::vector<CellSummary> cells = summarize(read_csv(in));
            if (summary_out.empty()) {
                write_summary_csv(std::cout, cells);
            } else {
                std::ofstream out(summary_out, std::ios::binary | std::ios::trunc);
                if (!out) throw std::runtime_error("cannot write '" + summary_out + "'");
                write_summary_csv(out, cells);
            }
        }
    } catch (const std::exception& e) {
        std::cerr << "bench: error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
