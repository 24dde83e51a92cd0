#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "crtmst/crt_estimator.hpp"
#include "crtmst/generators.hpp"

namespace crtmst {

enum class Algo { crt, prim, kruskal };

std::string_view to_string(Algo algo);
Algo parse_algo(std::string_view name);

// One benchmark observation: one CSV row.
//
// Optional fields are written as empty cells: non-crt rows have no epsilon,
// r, C, edges_examined or cone; a crt row for an infeasible cell has no
// measurements and carries `skip_reason` in the weight column as
// "skipped:<reason>".
struct RunRecord {
    std::string model;
    std::uint64_t n = 0;
    std::uint64_t m = 0;
    std::uint64_t w = 0;
    std::optional<double> epsilon;
    Algo algo = Algo::crt;
    std::uint64_t seed = 0;
    std::uint64_t rep = 0;
    std::optional<double> weight;
    std::optional<std::int64_t> elapsed_ns;
    std::optional<std::uint64_t> edges_examined;
    std::optional<std::uint64_t> r;
    std::optional<std::uint64_t> C;
    std::optional<std::uint64_t> exact_weight;
    std::optional<double> abs_error;
    std::optional<double> rel_error;
    std::optional<double> cone_lo;
    std::optional<double> cone_hi;
    std::string skip_reason;

    bool skipped() const { return !skip_reason.empty(); }
};

inline constexpr std::string_view kCsvHeader =
    "model,n,m,w,epsilon,algo,seed,rep,weight,elapsed_ns,edges_examined,r,C,exact_weight,"
    "abs_error,rel_error,cone_lo,cone_hi";

// Fills abs/rel error and the tolerance cone from weight, exact weight and epsilon.
void fill_error_columns(RunRecord& rec);

std::string format_csv_row(const RunRecord& rec);
RunRecord parse_csv_row(std::string_view line, std::size_t line_no = 0);

void write_csv(std::ostream& out, const std::vector<RunRecord>& rows);
// Throws ParseError on a missing/foreign header or malformed rows.
std::vector<RunRecord> read_csv(std::istream& in);

struct GridSpec {
    std::vector<Model> models{Model::uniform, Model::gaussian, Model::smallworld, Model::scalefree};
    std::vector<std::size_t> ns{25000, 50000, 100000, 200000};
    std::vector<std::size_t> degrees{20};  // m = d * n / 2
    std::vector<Weight> ws{20};
    std::vector<double> epsilons{0.3, 0.4};
    std::size_t repetitions = 10;
    std::uint64_t master_seed = 1;
    WeightDist weight_dist = WeightDist::uniform;
    bool include_kruskal = false;
    std::optional<std::filesystem::path> cache_dir;
    unsigned jobs = 1;  // cells processed concurrently
    EstimatorOptions estimator;

    // Throws std::invalid_argument on an empty list or zero repetitions.
    void validate() const;
};

struct CellSummary {
    std::string model;
    std::uint64_t n = 0;
    std::uint64_t m = 0;
    std::uint64_t w = 0;
    std::optional<double> epsilon;
    Algo algo = Algo::crt;
    std::size_t runs = 0;
    std::size_t skipped = 0;
    double mean_ns = 0.0;
    std::int64_t min_ns = 0;
    std::int64_t max_ns = 0;
    double mean_weight = 0.0;
    double representative_weight = 0.0;  // one row picked by a seeded draw
    double mean_abs_rel_error = 0.0;
    double in_cone_fraction = 0.0;       // crt only
    double mean_edges_examined = 0.0;
};

// One summary per (model, n, m, w, epsilon, algo) in first-appearance order.
std::vector<CellSummary> summarize(const std::vector<RunRecord>& rows);
void write_summary_csv(std::ostream& out, const std::vector<CellSummary>& cells);

struct GridResult {
    std::vector<RunRecord> rows;
    std::vector<CellSummary> summary;
    std::vector<std::filesystem::path> files;
};

/**
 * Runs every (model, n, d, w) cell: generates (or loads from the cache) the
 * graph, computes the exact weight once with Prim, optionally times Kruskal,
 * then runs the estimator `repetitions` times per epsilon. Writes
 * `<model>.csv` per model, `merged.csv` and `summary.csv` into out_dir.
 *
 * Only the algorithm calls are timed. Output is a deterministic function of
 * the grid settings apart from the elapsed_ns column.
 */
GridResult run_grid(const GridSpec& spec, const std::filesystem::path& out_dir);

// Seed helpers shared with the CLI so single runs can reproduce grid rows.
std::uint64_t graph_seed(std::uint64_t master, Model model, std::size_t n, std::size_t m, Weight w);
std::uint64_t run_seed(std::uint64_t graph_seed, double epsilon, std::size_t rep);

}  // namespace crtmst
