#pragma once

#include <chrono>
#include <cmath>
#include <concepts>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "crtmst/graph.hpp"
#include "crtmst/sampling.hpp"

namespace crtmst {

/**
 * Tuning for one estimator run.
 *
 * r and C come from the closed forms
 *     r = floor(floor(sqrt(n/w) * eps - 1) / eps^2)
 *     C = floor(floor(sqrt(n) * eps - 1) / eps)
 * The stopping rules are filled once the approximate average degree d* is
 * known (see set_stopping_rules).
 */
struct EstimatorParams {
    double epsilon = 0.0;
    std::uint64_t r = 0;
    std::uint64_t C = 0;
    double d_star = 0.0;
    double hub_threshold = 0.0;     // a BFS meeting a vertex of larger degree aborts
    std::uint64_t edge_budget = 0;  // adjacency entries a single BFS may scan
    std::uint32_t flip_cap = 0;     // coin flips a single BFS may spend
    std::vector<std::string> warnings;
};

// Multipliers on the default stopping rules
//   hub_threshold = hub_mult * C * max(d*, 1)
//   edge_budget   = ceil(budget_mult * C * max(d*, 1) / eps)
//   flip_cap      = ceil(log2(edge_budget)) + 1
struct StoppingOverrides {
    double hub_mult = 1.0;
    double budget_mult = 1.0;
    std::optional<std::uint32_t> flip_cap;
};

// Throws InfeasibleParams when r < 1 or C < 1, std::invalid_argument when
// epsilon is outside (0, 1/2) or n, w are zero. Out-of-policy epsilon and the
// r * sqrt(w/n) < eps bound violation are reported in `warnings`.
EstimatorParams compute_params(std::size_t n, Weight w, double epsilon);

void set_stopping_rules(EstimatorParams& params, double d_star,
                        const StoppingOverrides& overrides = {});

// Mean degree over min(max(C, 1), n) distinct uniformly drawn vertices.
double approx_avg_degree(const Graph& g, const EstimatorParams& params, SeededRng rng);

struct BfsCounters {
    std::uint64_t edges_examined = 0;
    std::uint64_t started = 0;
    std::uint64_t completed = 0;
    std::uint64_t aborted_hub = 0;
    std::uint64_t aborted_budget = 0;
    std::uint64_t aborted_tails = 0;

    BfsCounters& operator+=(const BfsCounters& o);
    friend bool operator==(const BfsCounters&, const BfsCounters&) = default;
};

enum class BfsOutcome { completed, hub, budget, tails };

struct BfsResult {
    BfsOutcome outcome = BfsOutcome::completed;
    double beta = 0.0;
    std::uint64_t entries_scanned = 0;
    std::uint32_t heads = 0;
};

// Visited marks cleared in O(1) per BFS by bumping a generation stamp.
class BfsWorkspace {
public:
    explicit BfsWorkspace(std::size_t n) : stamp_(n, 0) { queue_.reserve(64); }

    void begin() {
        if (++generation_ == 0) {
            std::fill(stamp_.begin(), stamp_.end(), 0);
            generation_ = 1;
        }
        queue_.clear();
    }
    bool visit(Vertex v) {
        if (stamp_[v] == generation_) return false;
        stamp_[v] = generation_;
        return true;
    }
    std::vector<Vertex>& queue() { return queue_; }
    std::size_t size() const { return stamp_.size(); }

private:
    std::vector<std::uint32_t> stamp_;
    std::uint32_t generation_ = 0;
    std::vector<Vertex> queue_;
};

template <typename F>
concept CoinSource = requires(F f) {
    { f() } -> std::same_as<Coin>;
};

/**
 * Coin-flip/doubling BFS from `root` in the threshold-i subgraph.
 *
 * The BFS may scan 1 adjacency entry, then doubles its allowance after each
 * heads; a tails stops it. It also stops on meeting a vertex whose threshold
 * degree exceeds hub_threshold, on scanning more than edge_budget entries, or
 * when it would need more than flip_cap flips. Any stop before the component
 * is exhausted contributes beta = 0. Exhausting a component with m_u edges
 * after k heads gives beta = d_u * 2^k / (2 m_u), so E[beta] = d_u / (2 m_u)
 * and the betas of a component sum to 1 in expectation.
 *
 * Self-loops are scanned (and counted) but never followed.
 */
template <CoinSource Flip>
BfsResult coin_flip_bfs(const Graph& g, Vertex root, Weight i, const EstimatorParams& params,
                        Flip&& flip, BfsWorkspace& ws) {
    BfsResult res;
    const auto root_degree = g.degree_up_to(root, i);
    if (root_degree == 0) {
        res.beta = 1.0;
        return res;
    }
    if (static_cast<double>(root_degree) > params.hub_threshold) {
        res.outcome = BfsOutcome::hub;
        return res;
    }

    ws.begin();
    auto& queue = ws.queue();
    ws.visit(root);
    queue.push_back(root);
    std::size_t head = 0;
    std::size_t pos = 0;  // next entry of queue[head]'s list
    std::uint64_t allowance = 1;
    std::uint64_t real_entries = 0;  // scanned entries that are not self-loops
    std::uint64_t root_real = 0;

    while (true) {
        while (head < queue.size() && res.entries_scanned < allowance) {
            const Vertex x = queue[head];
            const auto list = g.neighbors_up_to(x, i);
            if (pos == list.size()) {
                ++head;
                pos = 0;
                continue;
            }
            if (res.entries_scanned == params.edge_budget) {
                res.outcome = BfsOutcome::budget;
                return res;
            }
            const Neighbor& nb = list[pos++];
            ++res.entries_scanned;
            if (nb.to == x) continue;
            ++real_entries;
            if (x == root) ++root_real;
            if (ws.visit(nb.to)) {
                if (static_cast<double>(g.degree_up_to(nb.to, i)) > params.hub_threshold) {
                    res.outcome = BfsOutcome::hub;
                    return res;
                }
                queue.push_back(nb.to);
            }
        }
        // Drain vertices whose lists are already fully scanned.
        while (head < queue.size() && pos == g.degree_up_to(queue[head], i)) {
            ++head;
            pos = 0;
        }
        if (head == queue.size()) {
            const double m_u = static_cast<double>(real_entries) / 2.0;
            res.beta = m_u == 0.0 ? 1.0
                                  : static_cast<double>(root_real) * std::ldexp(1.0, static_cast<int>(res.heads)) /
                                        (2.0 * m_u);
            res.outcome = BfsOutcome::completed;
            return res;
        }
        if (res.heads >= params.flip_cap) {
            res.outcome = BfsOutcome::budget;
            return res;
        }
        if (flip() == Coin::tails) {
            res.outcome = BfsOutcome::tails;
            return res;
        }
        ++res.heads;
        allowance *= 2;
    }
}

// Scratch owned by one estimation task: the root sampler and BFS marks.
struct EstimatorWorkspace {
    explicit EstimatorWorkspace(std::size_t n) : roots(n, SeededRng(0)), bfs(n) {}

    FySequence roots;
    BfsWorkspace bfs;
};

/**
 * Estimate of the number of connected components of the threshold-i
 * subgraph: (n / r) * sum of beta over r distinct uniform roots. A threshold
 * with no edges returns n without sampling.
 */
double approx_components(const Graph& g, Weight i, const EstimatorParams& params, SeededRng rng,
                         EstimatorWorkspace& ws, BfsCounters& counters);
double approx_components(const Graph& g, Weight i, const EstimatorParams& params, SeededRng rng,
                         BfsCounters& counters);

struct EstimatorOptions {
    StoppingOverrides stopping;
    bool parallel = false;
    unsigned threads = 0;  // 0: hardware concurrency
};

struct EstimateReport {
    double v_hat = 0.0;
    std::vector<double> c_hat;  // c_hat[k] estimates c_{k+1}, k = 0 .. w_max-2
    EstimatorParams params;
    BfsCounters counters;
    std::chrono::nanoseconds elapsed{0};
};

/**
 * Sublinear MST-weight estimator: v_hat = n - w + sum_{i=1}^{w-1} c_hat_i.
 *
 * Construction prepares the per-task workspaces (O(n) each); run() times
 * only the estimation itself. Threshold i draws from the substream derived
 * from (seed, i) and d* from the "avg-degree" substream, so the parallel
 * and sequential modes produce bit-identical reports.
 */
class CrtEstimator {
public:
    explicit CrtEstimator(const Graph& g, EstimatorOptions options = {});

    EstimateReport run(double epsilon, const SeededRng& master);

private:
    const Graph& g_;
    EstimatorOptions options_;
    std::vector<EstimatorWorkspace> workspaces_;
};

EstimateReport approx_mst_weight(const Graph& g, double epsilon, const SeededRng& master,
                                 const EstimatorOptions& options = {});

}  // namespace crtmst
