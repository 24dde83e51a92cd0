#include "crtmst/crt_estimator.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "crtmst/errors.hpp"

namespace crtmst {

namespace {

// floor() that forgives representation error in quotients that are
// mathematically integral, e.g. 9 / 0.3^2.
double tolerant_floor(double x) {
    return std::floor(x + 1e-12 * std::max(1.0, std::abs(x)));
}

std::string format_double(double x) {
    std::ostringstream os;
    os << x;
    return os.str();
}

double sample_mean_degree(const Graph& g, const EstimatorParams& params, FySequence& roots) {
    const std::size_t n = g.vertex_count();
    const std::size_t samples = std::min<std::size_t>(std::max<std::uint64_t>(params.C, 1), n);
    double mean = 0.0;
    for (std::size_t k = 0; k < samples; ++k) {
        const auto d = static_cast<double>(g.degree(roots.next()));
        mean += (d - mean) / static_cast<double>(k + 1);
    }
    return mean;
}

}  // namespace

EstimatorParams compute_params(std::size_t n, Weight w, double epsilon) {
    if (n == 0 || w == 0) {
        throw std::invalid_argument("compute_params needs n >= 1 and w >= 1");
    }
    if (!(epsilon > 0.0 && epsilon < 0.5)) {
        throw std::invalid_argument("epsilon must lie in (0, 1/2), got " + format_double(epsilon));
    }
    const double nd = static_cast<double>(n);
    const double wd = static_cast<double>(w);
    const double r_inner = tolerant_floor(std::sqrt(nd / wd) * epsilon - 1.0);
    const double c_inner = tolerant_floor(std::sqrt(nd) * epsilon - 1.0);
    const double r = tolerant_floor(r_inner / (epsilon * epsilon));
    const double c = tolerant_floor(c_inner / epsilon);
    if (r < 1.0 || c < 1.0) {
        throw InfeasibleParams("instance too small for requested epsilon (n=" + std::to_string(n) +
                               ", w=" + std::to_string(w) + ", epsilon=" + format_double(epsilon) +
                               ")");
    }

    EstimatorParams p;
    p.epsilon = epsilon;
    p.r = static_cast<std::uint64_t>(r);
    p.C = static_cast<std::uint64_t>(c);
    if (epsilon < 0.2) {
        p.warnings.push_back("epsilon " + format_double(epsilon) +
                             " is below the recommended range [0.2, 0.5)");
    }
    const double bound = r * std::sqrt(wd / nd);
    if (!(bound < epsilon)) {
        p.warnings.push_back("r*sqrt(w/n) = " + format_double(bound) + " is not below epsilon " +
                             format_double(epsilon));
    }
    return p;
}

void set_stopping_rules(EstimatorParams& params, double d_star, const StoppingOverrides& overrides) {
    if (!(overrides.hub_mult > 0.0) || !(overrides.budget_mult > 0.0)) {
        throw std::invalid_argument("stopping multipliers must be positive");
    }
    const double scale = static_cast<double>(params.C) * std::max(d_star, 1.0);
    params.d_star = d_star;
    params.hub_threshold = std::max(1.0, overrides.hub_mult * scale);
    params.edge_budget = std::max<std::uint64_t>(
        1, static_cast<std::uint64_t>(std::ceil(overrides.budget_mult * scale / params.epsilon)));
    if (overrides.flip_cap) {
        params.flip_cap = std::max<std::uint32_t>(1, *overrides.flip_cap);
    } else {
        // bit_width(b - 1) == ceil(log2(b)) for b >= 1
        params.flip_cap = static_cast<std::uint32_t>(std::bit_width(params.edge_budget - 1)) + 1;
    }
}

double approx_avg_degree(const Graph& g, const EstimatorParams& params, SeededRng rng) {
    if (g.vertex_count() == 0) {
        throw std::invalid_argument("approx_avg_degree needs n >= 1");
    }
    FySequence roots(g.vertex_count(), rng);
    return sample_mean_degree(g, params, roots);
}

BfsCounters& BfsCounters::operator+=(const BfsCounters& o) {
    edges_examined += o.edges_examined;
    started += o.started;
    completed += o.completed;
    aborted_hub += o.aborted_hub;
    aborted_budget += o.aborted_budget;
    aborted_tails += o.aborted_tails;
    return *this;
}

double approx_components(const Graph& g, Weight i, const EstimatorParams& params, SeededRng rng,
                         EstimatorWorkspace& ws, BfsCounters& counters) {
    const std::size_t n = g.vertex_count();
    if (g.edges_up_to(i) == 0) {
        return static_cast<double>(n);
    }
    const std::size_t draws = std::min<std::size_t>(params.r, n);
    ws.roots.rewind(rng.derive_substream("roots"));
    SeededRng coins = rng.derive_substream("coins");
    auto flip = [&coins] { return coin(coins); };

    double beta_sum = 0.0;
    for (std::size_t j = 0; j < draws; ++j) {
        const Vertex root = ws.roots.next();
        const BfsResult res = coin_flip_bfs(g, root, i, params, flip, ws.bfs);
        ++counters.started;
        counters.edges_examined += res.entries_scanned;
        switch (res.outcome) {
            case BfsOutcome::completed: ++counters.completed; break;
            case BfsOutcome::hub: ++counters.aborted_hub; break;
            case BfsOutcome::budget: ++counters.aborted_budget; break;
            case BfsOutcome::tails: ++counters.aborted_tails; break;
        }
        beta_sum += res.beta;
    }
    return static_cast<double>(n) / static_cast<double>(draws) * beta_sum;
}

double approx_components(const Graph& g, Weight i, const EstimatorParams& params, SeededRng rng,
                         BfsCounters& counters) {
    EstimatorWorkspace ws(g.vertex_count());
    return approx_components(g, i, params, rng, ws, counters);
}

CrtEstimator::CrtEstimator(const Graph& g, EstimatorOptions options)
    : g_(g), options_(options) {
    if (g.vertex_count() == 0) {
        throw std::invalid_argument("estimator needs a non-empty graph");
    }
    std::size_t tasks = 1;
    if (options_.parallel && g.max_weight() > 2) {
        const unsigned hw = options_.threads ? options_.threads
                                             : std::max(1u, std::thread::hardware_concurrency());
        tasks = std::min<std::size_t>(hw, g.max_weight() - 1);
    }
    workspaces_.reserve(tasks);
    for (std::size_t t = 0; t < tasks; ++t) {
        workspaces_.emplace_back(g.vertex_count());
    }
}

EstimateReport CrtEstimator::run(double epsilon, const SeededRng& master) {
    const Graph& g = g_;
    const std::size_t n = g.vertex_count();
    const Weight w = g.max_weight();
    if (w < 1) {
        throw std::invalid_argument("estimator needs at least one edge (w_max >= 1)");
    }
    if (g.known_connected() == false) {
        throw DisconnectedGraph("estimator input is flagged as disconnected");
    }

    EstimateReport report;
    const auto start = std::chrono::steady_clock::now();
    if (w == 1) {
        // Empty threshold sum: the MST of a connected unit-weight graph.
        report.params.epsilon = epsilon;
        report.v_hat = static_cast<double>(n) - 1.0;
        report.elapsed = std::chrono::steady_clock::now() - start;
        return report;
    }

    report.params = compute_params(n, w, epsilon);
    EstimatorParams& params = report.params;
    FySequence& roots = workspaces_[0].roots;
    roots.rewind(master.derive_substream("avg-degree"));
    const double d_star = sample_mean_degree(g, params, roots);
    set_stopping_rules(params, d_star, options_.stopping);

    const std::size_t thresholds = w - 1;
    report.c_hat.assign(thresholds, 0.0);
    std::vector<BfsCounters> per_threshold(thresholds);
    auto estimate = [&](std::size_t k, EstimatorWorkspace& ws) {
        const auto i = static_cast<Weight>(k + 1);
        report.c_hat[k] =
            approx_components(g, i, params, master.derive_substream(std::uint64_t{i}), ws,
                              per_threshold[k]);
    };

    if (workspaces_.size() == 1) {
        for (std::size_t k = 0; k < thresholds; ++k) estimate(k, workspaces_[0]);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::jthread> workers;
        workers.reserve(workspaces_.size());
        for (auto& ws : workspaces_) {
            workers.emplace_back([&] {
                for (std::size_t k = next++; k < thresholds; k = next++) estimate(k, ws);
            });
        }
    }

    // Fixed summation order keeps v_hat identical across modes.
    double v_hat = static_cast<double>(n) - static_cast<double>(w);
    for (std::size_t k = 0; k < thresholds; ++k) {
        v_hat += report.c_hat[k];
        report.counters += per_threshold[k];
    }
    report.v_hat = v_hat;
    report.elapsed = std::chrono::steady_clock::now() - start;
    return report;
}

EstimateReport approx_mst_weight(const Graph& g, double epsilon, const SeededRng& master,
                                 const EstimatorOptions& options) {
    CrtEstimator estimator(g, options);
    return estimator.run(epsilon, master);
}

}  // namespace crtmst
