#ifndef PAGERANK_LAB_PAGERANK_HPP
#define PAGERANK_LAB_PAGERANK_HPP

#include <chrono>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "graph.hpp"
#include "norms.hpp"

namespace pagerank_lab {

/// Per-vertex rank values; non-negative and summing to 1.
using RankVector = std::vector<double>;

struct PageRankConfig {
    double alpha = 0.85;        // damping factor, in [0, 1]
    double tolerance = 1e-6;    // convergence threshold, > 0
    NormKind norm = NormKind::L1;
    int max_iterations = 500;

    void validate() const {
        if (!(alpha >= 0.0 && alpha <= 1.0))
            throw std::invalid_argument("alpha must be in [0, 1], got " +
                                        std::to_string(alpha));
        if (!(tolerance > 0.0))
            throw std::invalid_argument("tolerance must be positive, got " +
                                        std::to_string(tolerance));
        if (max_iterations < 1)
            throw std::invalid_argument("max_iterations must be >= 1, got " +
                                        std::to_string(max_iterations));
    }
};

struct PageRankResult {
    RankVector ranks;
    int iterations = 0;
    bool converged = false;
    std::chrono::duration<double, std::milli> elapsed{};
};

/// Called after each completed iteration with the iteration number
/// (1-based), the new rank vector and the inter-iteration error.
using IterationObserver =
    std::function<void(int iteration, std::span<const double> ranks, double error)>;

/// Standard power-iteration (pull) PageRank.
///
/// Starting from uniform ranks 1/N, each iteration computes the common
/// teleport contribution
///     c0 = (1 - alpha)/N + alpha * (sum of previous dangling ranks)/N
/// and for every vertex v
///     next[v] = c0 + alpha * sum over in-neighbors u of prev[u]/out_degree[u],
/// then checks error_norm(cfg.norm, next, prev) against cfg.tolerance.
/// Iteration stops as soon as the error drops below the tolerance
/// (strictly) or the iteration cap is hit. The first full pass counts
/// as iteration 1.
///
/// The update is a pure Jacobi-style sweep over double-buffered rank
/// arrays; per-vertex summation runs over ascending source ids, so the
/// result and iteration count are deterministic. `elapsed` covers the
/// iteration loop only, measured on a monotonic clock.
inline PageRankResult pagerank(const CsrGraph& g, const PageRankConfig& cfg,
                               const IterationObserver& on_iteration = {}) {
    cfg.validate();
    const std::uint32_t n = g.vertex_count;
    if (n == 0) throw std::invalid_argument("pagerank: graph has no vertices");

    const double alpha = cfg.alpha;
    RankVector prev(n, 1.0 / n);
    RankVector next(n);

    int iteration = 0;
    double err = std::numeric_limits<double>::infinity();

    const auto start = std::chrono::steady_clock::now();
    do {
        double dangling_sum = 0.0;
        for (const std::uint32_t v : g.dangling) dangling_sum += prev[v];
        const double teleport = (1.0 - alpha) / n + alpha * dangling_sum / n;

        for (std::uint32_t v = 0; v < n; ++v) {
            double acc = 0.0;
            for (const std::uint32_t u : g.in_edges(v)) acc += prev[u] / g.out_degree[u];
            next[v] = teleport + alpha * acc;
        }

        err = error_norm(cfg.norm, next, prev);
        ++iteration;
        prev.swap(next);
        if (on_iteration) on_iteration(iteration, prev, err);
    } while (err >= cfg.tolerance && iteration < cfg.max_iterations);
    const auto stop = std::chrono::steady_clock::now();

    PageRankResult result;
    result.ranks = std::move(prev);
    result.iterations = iteration;
    result.converged = err < cfg.tolerance;
    result.elapsed = stop - start;
    return result;
}

/// Estimated iterations to reach tolerance `tau` at damping `alpha`:
/// log10(tau) / log10(alpha), rounded to the nearest integer (at
/// least 1). Both arguments must lie strictly inside (0, 1).
inline int estimate_iterations(double alpha, double tolerance) {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw std::invalid_argument("estimate_iterations: alpha must be in (0, 1), got " +
                                    std::to_string(alpha));
    if (!(tolerance > 0.0 && tolerance < 1.0))
        throw std::invalid_argument(
            "estimate_iterations: tolerance must be in (0, 1), got " +
            std::to_string(tolerance));
    const long estimate = std::lround(std::log10(tolerance) / std::log10(alpha));
    return static_cast<int>(std::max(1L, estimate));
}

/// The fixed baseline configuration other runs are compared against.
constexpr PageRankConfig reference_config() {
    return {.alpha = 0.85, .tolerance = 1e-6, .norm = NormKind::L1, .max_iterations = 500};
}

inline RankVector reference_ranks(const CsrGraph& g) {
    return pagerank(g, reference_config()).ranks;
}

/// L1 distance of `ranks` from the default-parameter ranks of `g`.
inline double reference_error(const CsrGraph& g, std::span<const double> ranks) {
    const RankVector ref = reference_ranks(g);
    return error_norm(NormKind::L1, ranks, ref);
}

} // namespace pagerank_lab

#endif
