#include "crtmst/bench_harness.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <stdexcept>
#include <thread>
#include <tuple>

#include "crtmst/errors.hpp"
#include "crtmst/exact_mst.hpp"
#include "crtmst/ssv.hpp"

namespace crtmst {

std::string_view to_string(Algo algo) {
    switch (algo) {
        case Algo::crt: return "crt";
        case Algo::prim: return "prim";
        case Algo::kruskal: return "kruskal";
    }
    return "?";
}

Algo parse_algo(std::string_view name) {
    for (Algo a : {Algo::crt, Algo::prim, Algo::kruskal}) {
        if (name == to_string(a)) return a;
    }
    throw std::invalid_argument("unknown algorithm '" + std::string(name) + "'");
}

void fill_error_columns(RunRecord& rec) {
    if (!rec.weight || !rec.exact_weight) return;
    const auto exact = static_cast<double>(*rec.exact_weight);
    rec.abs_error = *rec.weight - exact;
    rec.rel_error = exact != 0.0 ? *rec.abs_error / exact : 0.0;
    if (rec.epsilon) {
        rec.cone_lo = exact * (1.0 - *rec.epsilon);
        rec.cone_hi = exact * (1.0 + *rec.epsilon);
    }
}

namespace {

void append_double(std::string& out, double x) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    out.append(buf, res.ptr);
}

template <typename T>
void append_opt(std::string& out, const std::optional<T>& v) {
    if (!v) return;
    if constexpr (std::is_floating_point_v<T>) {
        append_double(out, *v);
    } else {
        out += std::to_string(*v);
    }
}

std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = line.find(',', start);
        fields.push_back(line.substr(start, comma == std::string_view::npos ? comma : comma - start));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return fields;
}

template <typename T>
std::optional<T> parse_opt(std::string_view field, std::size_t line_no, std::string_view column) {
    if (field.empty()) return std::nullopt;
    T value{};
    const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (ec != std::errc{} || ptr != field.data() + field.size()) {
        throw ParseError("bad value '" + std::string(field) + "' in column " + std::string(column),
                         line_no);
    }
    return value;
}

template <typename T>
T parse_req(std::string_view field, std::size_t line_no, std::string_view column) {
    auto v = parse_opt<T>(field, line_no, column);
    if (!v) throw ParseError("missing value in column " + std::string(column), line_no);
    return *v;
}

std::string sanitize_reason(std::string reason) {
    std::replace(reason.begin(), reason.end(), ',', ';');
    std::replace(reason.begin(), reason.end(), '\n', ' ');
    return reason;
}

constexpr std::string_view kSkipPrefix = "skipped:";

}  // namespace

std::string format_csv_row(const RunRecord& rec) {
    std::string out;
    out.reserve(160);
    out += rec.model;
    out += ',' + std::to_string(rec.n) + ',' + std::to_string(rec.m) + ',' + std::to_string(rec.w) + ',';
    append_opt(out, rec.epsilon);
    out += ',';
    out += to_string(rec.algo);
    out += ',' + std::to_string(rec.seed) + ',' + std::to_string(rec.rep) + ',';
    if (rec.skipped()) {
        out += kSkipPrefix;
        out += sanitize_reason(rec.skip_reason);
    } else {
        append_opt(out, rec.weight);
    }
    out += ',';
    append_opt(out, rec.elapsed_ns);
    out += ',';
    append_opt(out, rec.edges_examined);
    out += ',';
    append_opt(out, rec.r);
    out += ',';
    append_opt(out, rec.C);
    out += ',';
    append_opt(out, rec.exact_weight);
    out += ',';
    append_opt(out, rec.abs_error);
    out += ',';
    append_opt(out, rec.rel_error);
    out += ',';
    append_opt(out, rec.cone_lo);
    out += ',';
    append_opt(out, rec.cone_hi);
    return out;
}

RunRecord parse_csv_row(std::string_view line, std::size_t line_no) {
    const auto f = split_fields(line);
    if (f.size() != 18) {
        throw ParseError("expected 18 columns, got " + std::to_string(f.size()), line_no);
    }
    RunRecord rec;
    rec.model = std::string(f[0]);
    if (rec.model.empty()) throw ParseError("missing model", line_no);
    rec.n = parse_req<std::uint64_t>(f[1], line_no, "n");
    rec.m = parse_req<std::uint64_t>(f[2], line_no, "m");
    rec.w = parse_req<std::uint64_t>(f[3], line_no, "w");
    rec.epsilon = parse_opt<double>(f[4], line_no, "epsilon");
    try {
        rec.algo = parse_algo(f[5]);
    } catch (const std::invalid_argument& e) {
        throw ParseError(e.what(), line_no);
    }
    rec.seed = parse_req<std::uint64_t>(f[6], line_no, "seed");
    rec.rep = parse_req<std::uint64_t>(f[7], line_no, "rep");
    if (f[8].starts_with(kSkipPrefix)) {
        rec.skip_reason = std::string(f[8].substr(kSkipPrefix.size()));
        if (rec.skip_reason.empty()) rec.skip_reason = "unspecified";
    } else {
        rec.weight = parse_opt<double>(f[8], line_no, "weight");
    }
    rec.elapsed_ns = parse_opt<std::int64_t>(f[9], line_no, "elapsed_ns");
    rec.edges_examined = parse_opt<std::uint64_t>(f[10], line_no, "edges_examined");
    rec.r = parse_opt<std::uint64_t>(f[11], line_no, "r");
    rec.C = parse_opt<std::uint64_t>(f[12], line_no, "C");
    rec.exact_weight = parse_opt<std::uint64_t>(f[13], line_no, "exact_weight");
    rec.abs_error = parse_opt<double>(f[14], line_no, "abs_error");
    rec.rel_error = parse_opt<double>(f[15], line_no, "rel_error");
    rec.cone_lo = parse_opt<double>(f[16], line_no, "cone_lo");
    rec.cone_hi = parse_opt<double>(f[17], line_no, "cone_hi");
    return rec;
}

void write_csv(std::ostream& out, const std::vector<RunRecord>& rows) {
    out << kCsvHeader << '\n';
    for (const RunRecord& rec : rows) {
        out << format_csv_row(rec) << '\n';
    }
}

std::vector<RunRecord> read_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || line != kCsvHeader) {
        throw ParseError("missing or unexpected CSV header", 1);
    }
    std::vector<RunRecord> rows;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        rows.push_back(parse_csv_row(line, line_no));
    }
    return rows;
}

void GridSpec::validate() const {
    if (models.empty() || ns.empty() || degrees.empty() || ws.empty() || epsilons.empty()) {
        throw std::invalid_argument("grid lists must be non-empty");
    }
    if (repetitions < 1) {
        throw std::invalid_argument("repetitions must be >= 1");
    }
}

std::vector<CellSummary> summarize(const std::vector<RunRecord>& rows) {
    using Key = std::tuple<std::string, std::uint64_t, std::uint64_t, std::uint64_t,
                           std::optional<double>, Algo>;
    std::map<Key, std::size_t> index;
    std::vector<CellSummary> cells;
    std::vector<std::vector<const RunRecord*>> members;

    for (const RunRecord& rec : rows) {
        const Key key{rec.model, rec.n, rec.m, rec.w, rec.epsilon, rec.algo};
        auto [it, inserted] = index.try_emplace(key, cells.size());
        if (inserted) {
            CellSummary c;
            c.model = rec.model;
            c.n = rec.n;
            c.m = rec.m;
            c.w = rec.w;
            c.epsilon = rec.epsilon;
            c.algo = rec.algo;
            cells.push_back(c);
            members.emplace_back();
        }
        members[it->second].push_back(&rec);
    }

    for (std::size_t k = 0; k < cells.size(); ++k) {
        CellSummary& c = cells[k];
        std::vector<const RunRecord*> measured;
        for (const RunRecord* rec : members[k]) {
            if (rec->skipped()) {
                ++c.skipped;
            } else {
                measured.push_back(rec);
            }
        }
        c.runs = measured.size();
        if (measured.empty()) continue;

        std::size_t in_cone = 0;
        std::size_t count = 0;
        c.min_ns = std::numeric_limits<std::int64_t>::max();
        c.max_ns = std::numeric_limits<std::int64_t>::min();
        for (const RunRecord* rec : measured) {
            ++count;
            const double inv = 1.0 / static_cast<double>(count);
            const auto ns = rec->elapsed_ns.value_or(0);
            c.mean_ns += (static_cast<double>(ns) - c.mean_ns) * inv;
            c.min_ns = std::min(c.min_ns, ns);
            c.max_ns = std::max(c.max_ns, ns);
            c.mean_weight += (rec->weight.value_or(0.0) - c.mean_weight) * inv;
            c.mean_abs_rel_error += (std::abs(rec->rel_error.value_or(0.0)) - c.mean_abs_rel_error) * inv;
            c.mean_edges_examined +=
                (static_cast<double>(rec->edges_examined.value_or(0)) - c.mean_edges_examined) * inv;
            if (rec->weight && rec->cone_lo && rec->cone_hi && *rec->weight >= *rec->cone_lo &&
                *rec->weight <= *rec->cone_hi) {
                ++in_cone;
            }
        }
        c.in_cone_fraction = static_cast<double>(in_cone) / static_cast<double>(count);
        SeededRng pick(measured.front()->seed);
        c.representative_weight =
            measured[uniform_int(pick, 0, measured.size() - 1)]->weight.value_or(0.0);
    }
    return cells;
}

void write_summary_csv(std::ostream& out, const std::vector<CellSummary>& cells) {
    out << "model,n,m,w,epsilon,algo,runs,skipped,mean_ns,min_ns,max_ns,mean_weight,"
           "representative_weight,mean_abs_rel_error,in_cone_fraction,mean_edges_examined\n";
    for (const CellSummary& c : cells) {
        std::string line = c.model + ',' + std::to_string(c.n) + ',' + std::to_string(c.m) + ',' +
                           std::to_string(c.w) + ',';
        append_opt(line, c.epsilon);
        line += ',';
        line += to_string(c.algo);
        line += ',' + std::to_string(c.runs) + ',' + std::to_string(c.skipped) + ',';
        append_double(line, c.mean_ns);
        line += ',' + std::to_string(c.min_ns) + ',' + std::to_string(c.max_ns) + ',';
        append_double(line, c.mean_weight);
        line += ',';
        append_double(line, c.representative_weight);
        line += ',';
        append_double(line, c.mean_abs_rel_error);
        line += ',';
        append_double(line, c.in_cone_fraction);
        line += ',';
        append_double(line, c.mean_edges_examined);
        out << line << '\n';
    }
}

std::uint64_t graph_seed(std::uint64_t master, Model model, std::size_t n, std::size_t m, Weight w) {
    const std::string label = std::string(to_string(model)) + '/' + std::to_string(n) + '/' +
                              std::to_string(m) + '/' + std::to_string(w);
    return SeededRng(master).derive_substream(label).next();
}

std::uint64_t run_seed(std::uint64_t graph_seed, double epsilon, std::size_t rep) {
    return SeededRng(graph_seed)
        .derive_substream(std::bit_cast<std::uint64_t>(epsilon))
        .derive_substream(std::uint64_t{rep})
        .next();
}

namespace {

struct Cell {
    Model model;
    std::size_t n;
    std::size_t m;
    Weight w;
};

Graph obtain_graph(const GridSpec& spec, const Cell& cell, std::uint64_t seed) {
    const GeneratorConfig cfg{cell.model, cell.n, cell.m, cell.w, spec.weight_dist, seed};
    if (!spec.cache_dir) {
        return generate(cfg);
    }
    const auto path = *spec.cache_dir /
                      (std::string(to_string(cell.model)) + "_n" + std::to_string(cell.n) + "_m" +
                       std::to_string(cell.m) + "_w" + std::to_string(cell.w) + "_" +
                       std::string(to_string(spec.weight_dist)) + "_s" + std::to_string(seed) +
                       ".ssv");
    if (std::filesystem::exists(path)) {
        Graph g = load_ssv(path);
        if (g.vertex_count() == cell.n && is_connected(g)) return g;
    }
    Graph g = generate(cfg);
    std::filesystem::create_directories(*spec.cache_dir);
    save_ssv(g, path);
    return g;
}

template <typename F>
auto timed(F&& f) {
    const auto start = std::chrono::steady_clock::now();
    auto result = f();
    const auto ns = std::chrono::duration_cast<std::chrono::nanoseconds>(
        std::chrono::steady_clock::now() - start);
    return std::pair{result, ns.count()};
}

std::vector<RunRecord> run_cell(const GridSpec& spec, const Cell& cell) {
    const std::uint64_t gseed = graph_seed(spec.master_seed, cell.model, cell.n, cell.m, cell.w);
    const Graph g = obtain_graph(spec, cell, gseed);

    RunRecord base;
    base.model = std::string(to_string(cell.model));
    base.n = g.vertex_count();
    base.m = g.edge_count();
    base.w = cell.w;
    base.seed = gseed;

    std::vector<RunRecord> rows;
    const auto [prim, prim_ns] = timed([&] { return prim_mst(g); });
    {
        RunRecord rec = base;
        rec.algo = Algo::prim;
        rec.weight = static_cast<double>(prim.weight);
        rec.elapsed_ns = prim_ns;
        rec.exact_weight = prim.weight;
        fill_error_columns(rec);
        rows.push_back(rec);
    }
    if (spec.include_kruskal) {
        const auto [kr, kr_ns] = timed([&] { return kruskal_mst(g); });
        RunRecord rec = base;
        rec.algo = Algo::kruskal;
        rec.weight = static_cast<double>(kr.weight);
        rec.elapsed_ns = kr_ns;
        rec.exact_weight = prim.weight;
        fill_error_columns(rec);
        rows.push_back(rec);
    }

    CrtEstimator estimator(g, spec.estimator);
    for (double eps : spec.epsilons) {
        for (std::size_t rep = 0; rep < spec.repetitions; ++rep) {
            RunRecord rec = base;
            rec.algo = Algo::crt;
            rec.epsilon = eps;
            rec.rep = rep;
            rec.seed = run_seed(gseed, eps, rep);
            rec.exact_weight = prim.weight;
            try {
                const EstimateReport report = estimator.run(eps, SeededRng(rec.seed));
                rec.weight = report.v_hat;
                rec.elapsed_ns = report.elapsed.count();
                rec.edges_examined = report.counters.edges_examined;
                if (report.params.r) rec.r = report.params.r;
                if (report.params.C) rec.C = report.params.C;
                fill_error_columns(rec);
                rows.push_back(rec);
            } catch (const InfeasibleParams& e) {
                rec.exact_weight.reset();
                rec.skip_reason = e.what();
                rows.push_back(rec);
                break;
            }
        }
    }
    return rows;
}

}  // namespace

GridResult run_grid(const GridSpec& spec, const std::filesystem::path& out_dir) {
    spec.validate();
    std::vector<Cell> cells;
    for (Model model : spec.models) {
        for (std::size_t n : spec.ns) {
            for (std::size_t d : spec.degrees) {
                for (Weight w : spec.ws) {
                    const std::size_t m = model == Model::scalefree ? n - 1 : d * n / 2;
                    cells.push_back({model, n, m, w});
                }
            }
        }
    }

    std::vector<std::vector<RunRecord>> per_cell(cells.size());
    const unsigned jobs = std::max(1u, std::min<unsigned>(spec.jobs, static_cast<unsigned>(cells.size())));
    if (jobs == 1) {
        for (std::size_t k = 0; k < cells.size(); ++k) per_cell[k] = run_cell(spec, cells[k]);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::exception_ptr> errors(jobs);
        {
            std::vector<std::jthread> workers;
            for (unsigned t = 0; t < jobs; ++t) {
                workers.emplace_back([&, t] {
                    try {
                        for (std::size_t k = next++; k < cells.size(); k = next++) {
                            per_cell[k] = run_cell(spec, cells[k]);
                        }
                    } catch (...) {
                        errors[t] = std::current_exception();
                    }
                });
            }
        }
        for (const auto& e : errors) {
            if (e) std::rethrow_exception(e);
        }
    }

    GridResult result;
    std::map<std::string, std::vector<RunRecord>> by_model;
    std::vector<std::string> model_order;
    for (auto& rows : per_cell) {
        for (auto& rec : rows) {
            if (!by_model.count(rec.model)) model_order.push_back(rec.model);
            by_model[rec.model].push_back(rec);
            result.rows.push_back(std::move(rec));
        }
    }
    result.summary = summarize(result.rows);

    std::filesystem::create_directories(out_dir);
    auto write_file = [&](const std::filesystem::path& path, auto&& writer) {
        std::ofstream out(path, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
        writer(out);
        result.files.push_back(path);
    };
    for (const std::string& model : model_order) {
        write_file(out_dir / (model + ".csv"), [&](std::ostream& o) { write_csv(o, by_model[model]); });
    }
    write_file(out_dir / "merged.csv", [&](std::ostream& o) { write_csv(o, result.rows); });
    write_file(out_dir / "summary.csv",
               [&](std::ostream& o) { write_summary_csv(o, result.summary); });
    return result;
}

}  // namespace crtmst
