#ifndef PAGERANK_LAB_SWEEP_HPP
#define PAGERANK_LAB_SWEEP_HPP

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "csv.hpp"
#include "graph.hpp"
#include "norms.hpp"
#include "pagerank.hpp"

namespace pagerank_lab {

/// One experiment: the cross product of graphs, damping factors,
/// tolerances and norms, each cell timed over `repeats` runs.
struct SweepPlan {
    std::vector<std::filesystem::path> graphs;
    std::vector<double> alphas{0.85};
    std::vector<double> tolerances{1e-6};
    std::vector<NormKind> norms{NormKind::L1};
    int repeats = 5;
    int max_iterations = 500;

    void validate() const {
        if (graphs.empty()) throw std::invalid_argument("sweep: no graphs");
        if (alphas.empty()) throw std::invalid_argument("sweep: no alphas");
        if (tolerances.empty()) throw std::invalid_argument("sweep: no tolerances");
        if (norms.empty()) throw std::invalid_argument("sweep: no norms");
        if (repeats < 1) throw std::invalid_argument("sweep: repeats must be >= 1");
        if (max_iterations < 1)
            throw std::invalid_argument("sweep: max_iterations must be >= 1");
        for (const double a : alphas)
            if (!(a >= 0.0 && a <= 1.0))
                throw std::invalid_argument("sweep: alpha out of [0, 1]: " +
                                            std::to_string(a));
        for (const double t : tolerances)
            if (!(t > 0.0))
                throw std::invalid_argument("sweep: tolerance must be positive: " +
                                            std::to_string(t));
    }
};

/// One CSV row: a single (graph, alpha, tolerance, norm) test case.
struct SweepRecord {
    std::string graph;
    std::uint32_t vertices = 0;
    std::uint64_t edges = 0;
    double alpha = 0;
    double tolerance = 0;
    NormKind norm = NormKind::L1;
    int iterations = 0;
    bool converged = false;
    double time_ms = 0;    // arithmetic mean over repeats
    double err_vs_ref = 0; // L1 distance from alpha=0.85 reference ranks
};

inline constexpr std::string_view sweep_csv_header =
    "graph,vertices,edges,alpha,tolerance,norm,iterations,converged,time_ms,err_vs_ref";

inline std::string sweep_csv_row(const SweepRecord& r) {
    std::string row = csv_escape(r.graph);
    row += ',';
    row += std::to_string(r.vertices);
    row += ',';
    row += std::to_string(r.edges);
    row += ',';
    row += format_double(r.alpha);
    row += ',';
    row += format_double(r.tolerance);
    row += ',';
    row += norm_name(r.norm);
    row += ',';
    row += std::to_string(r.iterations);
    row += ',';
    row += r.converged ? "true" : "false";
    row += ',';
    row += format_double(r.time_ms);
    row += ',';
    row += format_double(r.err_vs_ref);
    return row;
}

inline void write_sweep_csv(std::ostream& os, std::span<const SweepRecord> records) {
    os << sweep_csv_header << '\n';
    for (const SweepRecord& r : records) os << sweep_csv_row(r) << '\n';
}

/// The damping grid 0.50 .. 1.00 in steps of 0.05, exact to two
/// decimals.
inline std::vector<double> default_damping_grid() {
    return {0.50, 0.55, 0.60, 0.65, 0.70, 0.75, 0.80, 0.85, 0.90, 0.95, 1.00};
}

/// The descending tolerance grid 10^0 .. 10^-10 with the half-decade
/// 5x10^-k values interleaved; 21 values.
inline std::vector<double> default_tolerance_grid() {
    return {1e0,  5e-1, 1e-1, 5e-2, 1e-2, 5e-3, 1e-3, 5e-4, 1e-4, 5e-5, 1e-5,
            5e-6, 1e-6, 5e-7, 1e-7, 5e-8, 1e-8, 5e-9, 1e-9, 5e-10, 1e-10};
}

/// Concurrency cap for the harness: PAGERANK_LAB_THREADS when set to a
/// positive integer, otherwise the machine parallelism.
inline unsigned harness_thread_cap() {
    if (const char* env = std::getenv("PAGERANK_LAB_THREADS")) {
        int v = 0;
        const std::string_view s(env);
        const auto r = std::from_chars(s.data(), s.data() + s.size(), v);
        if (r.ec == std::errc{} && r.ptr == s.data() + s.size() && v >= 1)
            return static_cast<unsigned>(v);
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

namespace detail {

inline int norm_order(NormKind k) { return static_cast<int>(k); }

} // namespace detail

/// Runs the full plan and returns one record per cell, sorted by
/// (graph, norm, alpha, tolerance descending).
///
/// Different graphs run concurrently (capped by harness_thread_cap());
/// all cells of one graph run sequentially so timings are uncontended.
/// Per graph, the reference ranks are computed once up front — an
/// untimed run that also warms the graph data before any timed repeat.
/// Iteration counts must agree across repeats; a mismatch throws.
/// When `log` is non-null every finished record is mirrored to it as a
/// CSV row.
inline std::vector<SweepRecord> run_sweep(const SweepPlan& plan,
                                          std::ostream* log = nullptr) {
    plan.validate();

    const std::size_t graph_count = plan.graphs.size();
    std::vector<std::vector<SweepRecord>> per_graph(graph_count);
    std::vector<std::exception_ptr> failures(graph_count);
    std::mutex log_mutex;

    const auto run_one_graph = [&](std::size_t gi) {
        const auto& path = plan.graphs[gi];
        const CsrGraph g = load_csr_graph(path);
        const std::string label = path.stem().string();

        // Untimed reference run; doubles as the per-graph warm-up.
        const RankVector ref = reference_ranks(g);

        auto& records = per_graph[gi];
        for (const NormKind norm : plan.norms) {
            for (const double alpha : plan.alphas) {
                for (const double tolerance : plan.tolerances) {
                    const PageRankConfig cfg{.alpha = alpha,
                                             .tolerance = tolerance,
                                             .norm = norm,
                                             .max_iterations = plan.max_iterations};
                    PageRankResult result;
                    double total_ms = 0;
                    for (int rep = 0; rep < plan.repeats; ++rep) {
                        PageRankResult r = pagerank(g, cfg);
                        total_ms += r.elapsed.count();
                        if (rep > 0 && r.iterations != result.iterations)
                            throw std::logic_error(
                                "sweep: iteration count changed between repeats on " +
                                label);
                        result = std::move(r);
                    }

                    SweepRecord rec;
                    rec.graph = label;
                    rec.vertices = g.vertex_count;
                    rec.edges = g.edge_count();
                    rec.alpha = alpha;
                    rec.tolerance = tolerance;
                    rec.norm = norm;
                    rec.iterations = result.iterations;
                    rec.converged = result.converged;
                    rec.time_ms = total_ms / plan.repeats;
                    rec.err_vs_ref = error_norm(NormKind::L1, result.ranks, ref);
                    if (log) {
                        const std::lock_guard<std::mutex> guard(log_mutex);
                        *log << sweep_csv_row(rec) << '\n';
                    }
                    records.push_back(std::move(rec));
                }
            }
        }
    };

    const unsigned workers =
        std::min<unsigned>(harness_thread_cap(), static_cast<unsigned>(graph_count));
    if (workers <= 1) {
        for (std::size_t gi = 0; gi < graph_count; ++gi) run_one_graph(gi);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (;;) {
                    const std::size_t gi = next.fetch_add(1);
                    if (gi >= graph_count) return;
                    try {
                        run_one_graph(gi);
                    } catch (...) {
                        failures[gi] = std::current_exception();
                    }
                }
            });
        }
        for (auto& t : pool) t.join();
        for (const auto& failure : failures)
            if (failure) std::rethrow_exception(failure);
    }

    std::vector<SweepRecord> records;
    for (auto& chunk : per_graph)
        for (auto& rec : chunk) records.push_back(std::move(rec));

    std::sort(records.begin(), records.end(),
              [](const SweepRecord& a, const SweepRecord& b) {
                  if (a.graph != b.graph) return a.graph < b.graph;
                  if (a.norm != b.norm)
                      return detail::norm_order(a.norm) < detail::norm_order(b.norm);
                  if (a.alpha != b.alpha) return a.alpha < b.alpha;
                  return a.tolerance > b.tolerance;
              });
    return records;
}

/// Per (graph, norm) summary of the tolerance sweep: where the run
/// stops converging within the iteration cap, and which tolerances
/// were satisfied by the very first iteration.
struct SensitivityFinding {
    std::string graph;
    NormKind norm = NormKind::L1;
    // Largest tolerance of the non-converged tail of the descending
    // grid; absent when the smallest tolerance still converged.
    std::optional<double> first_failing_tolerance;
    std::vector<double> single_iteration_tolerances; // descending
};

using SensitivityReport = std::vector<SensitivityFinding>;

/// Scans tolerance-sweep records for the onset of sensitivity issues.
/// Records must cover one contiguous descending tolerance grid per
/// (graph, norm) cell group; gaps or duplicate cells are an error.
inline SensitivityReport detect_sensitivity(std::span<const SweepRecord> records) {
    if (records.empty()) throw std::invalid_argument("detect_sensitivity: no records");

    struct Cell {
        double tolerance;
        int iterations;
        bool converged;
    };
    std::map<std::pair<std::string, int>, std::vector<Cell>> groups;
    std::vector<double> grid;
    for (const SweepRecord& r : records) {
        groups[{r.graph, detail::norm_order(r.norm)}].push_back(
            {r.tolerance, r.iterations, r.converged});
        grid.push_back(r.tolerance);
    }
    std::sort(grid.begin(), grid.end(), std::greater<>());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

    SensitivityReport report;
    for (auto& [key, cells] : groups) {
        std::sort(cells.begin(), cells.end(),
                  [](const Cell& a, const Cell& b) { return a.tolerance > b.tolerance; });
        if (cells.size() != grid.size())
            throw std::invalid_argument("detect_sensitivity: tolerance grid for " +
                                        key.first + "/" +
                                        std::string(norm_name(NormKind(key.second))) +
                                        " has gaps or duplicate cells");
        for (std::size_t i = 0; i < cells.size(); ++i)
            if (cells[i].tolerance != grid[i])
                throw std::invalid_argument("detect_sensitivity: tolerance grid for " +
                                            key.first + "/" +
                                            std::string(norm_name(NormKind(key.second))) +
                                            " has gaps");

        SensitivityFinding finding;
        finding.graph = key.first;
        finding.norm = NormKind(key.second);
        // Walk up from the smallest tolerance: the failing tail, if
        // any, starts at the last index whose successors all failed.
        std::size_t tail_start = cells.size();
        while (tail_start > 0 && !cells[tail_start - 1].converged) --tail_start;
        if (tail_start < cells.size())
            finding.first_failing_tolerance = cells[tail_start].tolerance;
        for (const Cell& c : cells)
            if (c.iterations == 1) finding.single_iteration_tolerances.push_back(c.tolerance);
        report.push_back(std::move(finding));
    }
    return report;
}

} // namespace pagerank_lab

#endif
