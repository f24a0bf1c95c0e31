// pagerank-lab: PageRank parameter-study toolkit.
//
// Subcommands cover single runs, the three standard sweeps (damping,
// tolerance, norm comparison), composite ratio aggregation, the
// iteration estimate, and SVG chart emission from sweep CSVs.
//
// Exit codes: 0 success, 1 parse/IO error, 2 invalid flags or values,
// 3 run finished without converging.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <pagerank_lab/pagerank_lab.hpp>

namespace {

using namespace pagerank_lab;

NormKind norm_from_token(const std::string& token) {
    const auto norm = parse_norm(token);
    if (!norm) throw std::invalid_argument("unknown norm '" + token + "' (want l1, l2 or linf)");
    return *norm;
}

std::vector<NormKind> norms_from_tokens(const std::vector<std::string>& tokens) {
    std::vector<NormKind> norms;
    for (const auto& t : tokens) norms.push_back(norm_from_token(t));
    return norms;
}

std::vector<double> alpha_grid(double from, double to, double step) {
    if (!(step > 0.0)) throw std::invalid_argument("--alpha-step must be positive");
    if (from > to) throw std::invalid_argument("--alpha-from exceeds --alpha-to");
    std::vector<double> grid;
    const long n = std::lround((to - from) / step);
    for (long i = 0; i <= n; ++i) {
        const double a = from + i * step;
        if (a <= to + step * 1e-9) grid.push_back(std::min(a, to));
    }
    return grid;
}

std::vector<std::filesystem::path> to_paths(const std::vector<std::string>& graphs) {
    return {graphs.begin(), graphs.end()};
}

void write_csv_file(const std::string& path, const std::vector<SweepRecord>& records) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open output file: " + path);
    write_sweep_csv(out, records);
    if (!out) throw std::runtime_error("failed writing output file: " + path);
}

// ---- run ----------------------------------------------------------

struct RunArgs {
    std::string graph;
    double alpha = 0.85;
    double tolerance = 1e-6;
    std::string norm = "l1";
    int max_iter = 500;
    int repeat = 5;
};

int cmd_run(const RunArgs& args) {
    SweepPlan plan;
    plan.graphs = {args.graph};
    plan.alphas = {args.alpha};
    plan.tolerances = {args.tolerance};
    plan.norms = {norm_from_token(args.norm)};
    plan.repeats = args.repeat;
    plan.max_iterations = args.max_iter;

    const auto records = run_sweep(plan);
    std::cout << sweep_csv_row(records.front()) << '\n';
    return records.front().converged ? 0 : 3;
}

// ---- sweeps -------------------------------------------------------

struct SweepArgs {
    std::vector<std::string> graphs;
    std::string csv_path;
    std::optional<double> alpha;
    std::optional<double> alpha_from, alpha_to, alpha_step;
    std::optional<double> tolerance;
    std::vector<double> tol_grid;
    std::vector<std::string> norms;
    int repeat = 5;
    int max_iter = 500;
};

void add_sweep_options(CLI::App* cmd, SweepArgs& args, bool damping_grid_flags) {
    cmd->add_option("--graphs,--graph", args.graphs, "input .mtx graph files")
        ->required()
        ->expected(-1);
    cmd->add_option("--csv", args.csv_path, "output CSV path")->required();
    cmd->add_option("--alpha", args.alpha, "damping factor");
    if (damping_grid_flags) {
        cmd->add_option("--alpha-from", args.alpha_from, "damping grid start");
        cmd->add_option("--alpha-to", args.alpha_to, "damping grid end");
        cmd->add_option("--alpha-step", args.alpha_step, "damping grid step");
    }
    cmd->add_option("--tolerance", args.tolerance, "convergence tolerance");
    cmd->add_option("--tol-grid", args.tol_grid, "comma-separated tolerance grid override")
        ->delimiter(',');
    cmd->add_option("--norms,--norm", args.norms, "convergence norms (l1, l2, linf)")
        ->delimiter(',');
    cmd->add_option("--repeat", args.repeat, "timed repeats per cell");
    cmd->add_option("--max-iter", args.max_iter, "iteration cap");
}

enum class SweepKind { Damping, Tolerance, CompareNorms };

int cmd_sweep(SweepKind kind, const SweepArgs& args) {
    SweepPlan plan;
    plan.graphs = to_paths(args.graphs);
    plan.repeats = args.repeat;
    plan.max_iterations = args.max_iter;

    switch (kind) {
    case SweepKind::Damping:
        if (args.alpha_from || args.alpha_to || args.alpha_step) {
            if (!(args.alpha_from && args.alpha_to && args.alpha_step))
                throw std::invalid_argument(
                    "--alpha-from/--alpha-to/--alpha-step must be given together");
            plan.alphas = alpha_grid(*args.alpha_from, *args.alpha_to, *args.alpha_step);
        } else if (args.alpha) {
            plan.alphas = {*args.alpha};
        } else {
            plan.alphas = default_damping_grid();
        }
        plan.tolerances = args.tol_grid.empty()
                              ? std::vector<double>{args.tolerance.value_or(1e-6)}
                              : args.tol_grid;
        plan.norms = args.norms.empty() ? std::vector<NormKind>{NormKind::L1}
                                        : norms_from_tokens(args.norms);
        break;
    case SweepKind::Tolerance:
        plan.alphas = {args.alpha.value_or(0.85)};
        plan.tolerances = args.tol_grid.empty() ? default_tolerance_grid() : args.tol_grid;
        plan.norms = args.norms.empty()
                         ? std::vector<NormKind>(all_norms.begin(), all_norms.end())
                         : norms_from_tokens(args.norms);
        break;
    case SweepKind::CompareNorms:
        plan.alphas = {args.alpha.value_or(0.85)};
        plan.tolerances = args.tol_grid.empty()
                              ? std::vector<double>{args.tolerance.value_or(1e-6)}
                              : args.tol_grid;
        plan.norms = args.norms.empty()
                         ? std::vector<NormKind>(all_norms.begin(), all_norms.end())
                         : norms_from_tokens(args.norms);
        break;
    }

    std::cout << sweep_csv_header << '\n';
    const auto records = run_sweep(plan, &std::cout);
    write_csv_file(args.csv_path, records);
    return 0;
}

// ---- ratios -------------------------------------------------------

struct RatiosArgs {
    std::string input;
    std::string metric = "iterations";
    std::string baseline = "l1";
    std::string method = "all";
};

MeasurementMatrix matrix_from_csv(const CsvTable& table, const std::string& metric) {
    const std::size_t norm_col = table.column("norm");
    const std::size_t metric_col = table.column(metric);
    const std::size_t graph_col = table.column("graph");
    const std::size_t alpha_col = table.column("alpha");
    const std::size_t tol_col = table.column("tolerance");
    const bool has_converged = table.has_column("converged");
    const std::size_t conv_col = has_converged ? table.column("converged") : 0;

    std::set<std::string> approach_set, case_set;
    std::map<std::pair<std::string, std::string>, double> cells;
    std::size_t non_converged = 0;
    for (const auto& row : table.rows) {
        const std::string approach = row[norm_col];
        const std::string test_case =
            row[graph_col] + " a=" + row[alpha_col] + " t=" + row[tol_col];
        if (!cells.emplace(std::make_pair(approach, test_case), parse_double(row[metric_col]))
                 .second)
            throw std::runtime_error("duplicate cell for " + approach + ", " + test_case);
        approach_set.insert(approach);
        case_set.insert(test_case);
        if (has_converged && row[conv_col] == "false") ++non_converged;
    }

    std::vector<std::string> missing;
    MeasurementMatrix m;
    m.approaches.assign(approach_set.begin(), approach_set.end());
    m.cases.assign(case_set.begin(), case_set.end());
    for (const auto& a : m.approaches)
        for (const auto& c : m.cases) {
            const auto it = cells.find({a, c});
            if (it == cells.end())
                missing.push_back(a + ", " + c);
            else
                m.values.push_back(it->second);
        }
    if (!missing.empty()) {
        std::string what = "incomplete measurement matrix; missing cells:";
        for (const auto& cell : missing) what += "\n  " + cell;
        throw std::runtime_error(what);
    }
    if (non_converged > 0)
        std::cerr << "warning: " << non_converged
                  << " non-converged cell(s) included in ratio computation\n";
    return m;
}

std::string fixed2(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

int cmd_ratios(const RatiosArgs& args) {
    if (args.metric != "iterations" && args.metric != "time_ms")
        throw std::invalid_argument("--metric must be iterations or time_ms");

    std::ifstream in(args.input);
    if (!in) throw std::runtime_error("cannot open input file: " + args.input);
    const CsvTable table = read_csv(in);
    const MeasurementMatrix m = matrix_from_csv(table, args.metric);

    std::vector<RatioMethod> methods;
    if (args.method == "all") {
        methods.assign(all_ratio_methods.begin(), all_ratio_methods.end());
    } else {
        const auto method = parse_ratio_method(args.method);
        if (!method)
            throw std::invalid_argument("unknown method '" + args.method +
                                        "' (want ratio-am, ratio-gm, ratio-hm, am-ratio, "
                                        "gm-ratio, hm-ratio or all)");
        methods.push_back(*method);
    }

    std::string header = "method,baseline";
    for (const auto& a : m.approaches) header += ",mean:" + a;
    for (const auto& a : m.approaches) header += ",ratio:" + a;
    std::cout << header << '\n';

    for (const RatioMethod method : methods) {
        const RatioTable t = compute_ratio_table(m, args.baseline, method);
        std::string row(ratio_method_name(method));
        row += ',';
        row += t.baseline;
        // mean columns: only the mean-then-ratio family reports means;
        // ratio-then-mean rows leave them blank
        for (const double mu : t.means)
            row += is_mean_then_ratio(method) ? "," + fixed2(mu) : std::string(",");
        for (const double r : t.ratios) row += ',' + fixed2(r);
        std::cout << row << '\n';
    }
    return 0;
}

// ---- estimate -----------------------------------------------------

struct EstimateArgs {
    double alpha = 0;
    double tolerance = 0;
};

int cmd_estimate(const EstimateArgs& args) {
    std::cout << estimate_iterations(args.alpha, args.tolerance) << '\n';
    return 0;
}

// ---- chart --------------------------------------------------------

struct ChartArgs {
    std::string input;
    std::string x, y, series;
    std::string out;
    bool log_x = false;
};

int cmd_chart(const ChartArgs& args) {
    std::ifstream in(args.input);
    if (!in) throw std::runtime_error("cannot open input file: " + args.input);
    const CsvTable table = read_csv(in);

    ChartOptions opt;
    opt.x_column = args.x;
    opt.y_column = args.y;
    opt.series_column = args.series;
    opt.log_x = args.log_x;
    opt.title = args.y + " by " + args.x;

    std::ostringstream svg;
    write_line_chart_svg(svg, table, opt);

    std::ofstream out(args.out);
    if (!out) throw std::runtime_error("cannot open output file: " + args.out);
    out << svg.str();
    if (!out) throw std::runtime_error("failed writing output file: " + args.out);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"PageRank parameter-study toolkit: pull-based power iteration under "
                 "configurable damping, tolerance and convergence norm"};
    app.require_subcommand(1);

    RunArgs run_args;
    auto* run = app.add_subcommand("run", "run PageRank once and print one CSV record");
    run->add_option("--graph", run_args.graph, "input .mtx graph file")->required();
    run->add_option("--alpha", run_args.alpha, "damping factor");
    run->add_option("--tolerance", run_args.tolerance, "convergence tolerance");
    run->add_option("--norm", run_args.norm, "convergence norm (l1, l2, linf)");
    run->add_option("--max-iter", run_args.max_iter, "iteration cap");
    run->add_option("--repeat", run_args.repeat, "timed repeats");

    SweepArgs damping_args;
    auto* damping = app.add_subcommand(
        "sweep-damping", "sweep the damping factor 0.50 .. 1.00 in steps of 0.05");
    add_sweep_options(damping, damping_args, true);

    SweepArgs tolerance_args;
    auto* tolerance = app.add_subcommand(
        "sweep-tolerance", "sweep the tolerance 1e0 .. 1e-10 under all three norms");
    add_sweep_options(tolerance, tolerance_args, false);

    SweepArgs compare_args;
    auto* compare = app.add_subcommand(
        "compare-norms", "run all three norms at fixed alpha and tolerance");
    add_sweep_options(compare, compare_args, false);

    RatiosArgs ratios_args;
    auto* ratios =
        app.add_subcommand("ratios", "aggregate a sweep CSV into composite ratios");
    ratios->add_option("--input", ratios_args.input, "sweep CSV to aggregate")->required();
    ratios->add_option("--metric", ratios_args.metric, "iterations or time_ms");
    ratios->add_option("--baseline", ratios_args.baseline, "baseline approach (norm)");
    ratios->add_option("--method", ratios_args.method,
                       "ratio-am, ratio-gm, ratio-hm, am-ratio, gm-ratio, hm-ratio or all");

    EstimateArgs estimate_args;
    auto* estimate =
        app.add_subcommand("estimate", "estimated iterations to converge at (alpha, tau)");
    estimate->add_option("--alpha", estimate_args.alpha, "damping factor in (0, 1)")
        ->required();
    estimate->add_option("--tolerance", estimate_args.tolerance, "tolerance in (0, 1)")
        ->required();

    ChartArgs chart_args;
    auto* chart = app.add_subcommand("chart", "emit an SVG line chart from a sweep CSV");
    chart->add_option("--input", chart_args.input, "CSV to plot")->required();
    chart->add_option("--x", chart_args.x, "x column")->required();
    chart->add_option("--y", chart_args.y, "y column")->required();
    chart->add_option("--series", chart_args.series, "series column (one line per value)");
    chart->add_flag("--log-x", chart_args.log_x, "log10-scale the x axis");
    chart->add_option("--out", chart_args.out, "output SVG path")->required();

    try {
        app.parse(argc, argv);
        if (run->parsed()) return cmd_run(run_args);
        if (damping->parsed()) return cmd_sweep(SweepKind::Damping, damping_args);
        if (tolerance->parsed()) return cmd_sweep(SweepKind::Tolerance, tolerance_args);
        if (compare->parsed()) return cmd_sweep(SweepKind::CompareNorms, compare_args);
        if (ratios->parsed()) return cmd_ratios(ratios_args);
        if (estimate->parsed()) return cmd_estimate(estimate_args);
        if (chart->parsed()) return cmd_chart(chart_args);
        return 2;
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
