// Command-line front end: Monte Carlo sweeps (CSV), twirl verification,
// superiority thresholds, error-budget planning, and cut bounds (JSON).
//
// Exit codes: 0 on success, 2 for validation/configuration errors, 3 when a
// solver reports an unreachable request.

#include <CLI11.hpp>
#include <algorithm>
#include <charconv>
#include <chrono>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <string>
#include <vector>

#include "depolsim/chain.hpp"
#include "depolsim/errors.hpp"
#include "depolsim/formulas.hpp"
#include "depolsim/maxcut.hpp"
#include "depolsim/planner.hpp"
#include "depolsim/schedule.hpp"
#include "depolsim/twirl.hpp"

namespace {

using nlohmann::json;

/// Shortest round-trip decimal form; keeps CSV/JSON output byte-stable.
std::string format_double(double x) {
    char buffer[64];
    const auto result = std::to_chars(buffer, buffer + sizeof buffer, x);
    return std::string(buffer, result.ptr);
}

void write_output(const std::string &text, const std::string &out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path);
    if (!out) {
        throw depolsim::ConfigError(out_path + ": cannot open for writing");
    }
    out << text;
}

struct SweepArgs {
    std::string arch;
    int n = 0;
    double p = 0.0;
    std::vector<int> depths;
    long samples = 2000;
    uint64_t seed = 0;
    int threads = 0;
    std::string out;
    bool with_heuristic = false;
    bool progress = false;
};

int run_sweep(const SweepArgs &args) {
    const depolsim::Arch arch = depolsim::arch_from_name(args.arch);
    if (args.with_heuristic && arch == depolsim::Arch::NonLocal) {
        throw depolsim::ConfigError(
            "--with-heuristic requires a closed-form depth model (1d or 2d only)");
    }
    const depolsim::Schedule schedule(arch, args.n);
    const depolsim::NoiseParams noise(args.p);

    std::vector<int> depths = args.depths;
    if (depths.empty()) {
        throw depolsim::ConfigError("sweep: at least one depth is required");
    }
    std::sort(depths.begin(), depths.end());

    std::string csv = "arch,n,p,depth,samples,q_mean,q_frac,q_stderr";
    if (args.with_heuristic) {
        csv += ",heuristic_q_frac";
    }
    csv += '\n';

    for (int depth : depths) {
        depolsim::RunConfig config;
        config.samples = args.samples;
        config.seed = args.seed;
        config.depth = depth;

        const auto start = std::chrono::steady_clock::now();
        const depolsim::QEstimate estimate =
            depolsim::estimate_depolarized_fraction(schedule, noise, config, args.threads);
        const double wall_seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

        csv += args.arch;
        csv += ',' + std::to_string(args.n);
        csv += ',' + format_double(args.p);
        csv += ',' + std::to_string(depth);
        csv += ',' + std::to_string(args.samples);
        csv += ',' + format_double(estimate.mean_count);
        csv += ',' + format_double(estimate.frac);
        csv += ',' + format_double(estimate.frac_stderr);
        if (args.with_heuristic) {
            const double predicted = arch == depolsim::Arch::OneD
                                         ? depolsim::heuristic_q_frac_1d(args.n, depth, args.p)
                                         : depolsim::empirical_q_frac_2d(args.n, depth, args.p);
            csv += ',' + format_double(predicted);
        }
        csv += '\n';

        if (args.progress) {
            std::cerr << "depth " << depth << ": q_frac = " << format_double(estimate.frac) << " ("
                      << format_double(wall_seconds) << " s)\n";
        }
    }

    write_output(csv, args.out);
    return 0;
}

struct TwirlArgs {
    std::string channel;
    long samples = 10000;
    uint64_t seed = 0;
    std::string out;
};

int run_twirl_verify(const TwirlArgs &args) {
    const depolsim::ChannelKind kind = depolsim::channel_from_name(args.channel);
    const depolsim::KrausSet channel = depolsim::make_channel(kind);
    const double analytic = depolsim::lambda_analytic(channel);
    const depolsim::HaarTwirlEstimate oracle =
        depolsim::lambda_haar_mc(channel, args.samples, args.seed);

    json report;
    report["channel"] = args.channel;
    report["samples"] = args.samples;
    report["lambda_analytic"] = analytic;
    report["lambda_mc"] = oracle.lambda;
    report["mc_stderr"] = oracle.stderr;
    report["max_basis_deviation"] = oracle.max_basis_deviation;
    // 1e-12 floor: the 15-element average is exact per sample, so its stderr
    // can collapse to floating-point noise.
    report["within_3_sigma"] = std::abs(oracle.lambda - analytic) <= 3.0 * oracle.stderr + 1e-12;
    write_output(report.dump(2) + "\n", args.out);
    return 0;
}

struct ThresholdArgs {
    std::string graph_class;
    double classical_ratio = depolsim::DEG3_CLASSICAL_RATIO;
    std::string out;
};

int run_threshold(const ThresholdArgs &args) {
    const depolsim::GraphClass cls = depolsim::graph_class_from_name(args.graph_class);
    json report;
    report["graph_class"] = args.graph_class;
    report["classical_ratio"] = args.classical_ratio;
    report["q_frac_threshold"] = depolsim::classical_superiority_threshold(cls, args.classical_ratio);
    write_output(report.dump(2) + "\n", args.out);
    return 0;
}

struct PlanArgs {
    std::string arch;
    int n = 0;
    double target_q = 0.5;
    std::string method = "heuristic";
    int qaoa_layers = 10;
    long samples = 200;
    uint64_t seed = 0;
    int threads = 0;
    std::string out;
};

int run_plan(const PlanArgs &args) {
    depolsim::PlanOptions options;
    options.method = depolsim::plan_method_from_name(args.method);
    options.qaoa_layers = args.qaoa_layers;
    options.mc_samples = args.samples;
    options.seed = args.seed;
    options.threads = args.threads;

    const depolsim::PlanResult plan = depolsim::required_error_rate(
        depolsim::arch_from_name(args.arch), args.n, args.target_q, options);

    json report;
    report["arch"] = depolsim::arch_name(plan.arch);
    report["n"] = plan.n;
    report["qaoa_layers"] = plan.qaoa_layers;
    report["depth"] = plan.depth;
    report["target_q_frac"] = plan.target_q_frac;
    report["required_p"] = plan.required_p;
    report["forward_q_frac"] = plan.forward_q_frac;
    report["method"] = depolsim::plan_method_name(plan.method);
    report["regime"] = depolsim::regime_name(plan.regime);
    report["iterations"] = plan.iterations;
    write_output(report.dump(2) + "\n", args.out);
    return 0;
}

struct BoundArgs {
    std::string graph_path;
    double q_frac = 0.0;
    double c_max = -1.0;
    double c_avg = -1.0;
    bool c_max_set = false;
    bool c_avg_set = false;
    std::string graph_class = "deg3";
    std::string out;
};

int run_bound(const BoundArgs &args) {
    double c_max = 0.0;
    double c_avg = 0.0;
    json report;

    if (args.c_max_set != args.c_avg_set) {
        throw depolsim::ConfigError("bound: --cmax and --cavg must be given together");
    }
    if (args.c_max_set) {
        c_max = args.c_max;
        c_avg = args.c_avg;
    } else if (!args.graph_path.empty()) {
        const depolsim::Graph graph = depolsim::load_graph(args.graph_path);
        const depolsim::CutSolution best = depolsim::brute_force_maxcut(graph);
        c_max = best.value;
        c_avg = depolsim::cut_average(graph);
        report["graph_vertices"] = graph.n;
        report["graph_edges"] = graph.edges.size();
    } else {
        throw depolsim::ConfigError("bound: provide --graph, or --cmax together with --cavg");
    }

    const depolsim::GraphClass cls = depolsim::graph_class_from_name(args.graph_class);
    report["c_max"] = c_max;
    report["c_avg"] = c_avg;
    report["q_frac"] = args.q_frac;
    report["energy_upper_bound"] = depolsim::energy_upper_bound(c_max, c_avg, args.q_frac);
    report["graph_class"] = args.graph_class;
    report["approx_ratio_upper_bound"] = depolsim::approx_ratio_bound(args.q_frac, cls);
    write_output(report.dump(2) + "\n", args.out);
    return 0;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Depolarization spread in noisy entangle/uncompute circuits"};
    app.require_subcommand(1);

    SweepArgs sweep_args;
    auto *sweep = app.add_subcommand("sweep", "Monte Carlo depolarized fraction vs depth (CSV)");
    sweep->add_option("--arch", sweep_args.arch, "Architecture: 1d, 2d, or nl")->required();
    sweep->add_option("--n", sweep_args.n, "Number of qubits")->required();
    sweep->add_option("--p", sweep_args.p, "Per-layer depolarizing probability")->required();
    sweep->add_option("--depths", sweep_args.depths, "Comma-separated even circuit depths")
        ->required()
        ->delimiter(',');
    sweep->add_option("--samples", sweep_args.samples, "Trajectories per depth");
    sweep->add_option("--seed", sweep_args.seed, "Master seed");
    sweep->add_option("--threads", sweep_args.threads, "Worker threads (0 = all cores)");
    sweep->add_option("--out", sweep_args.out, "Write CSV here instead of stdout");
    sweep->add_flag("--with-heuristic", sweep_args.with_heuristic,
                    "Append the closed-form prediction column (1d/2d only)");
    sweep->add_flag("--progress", sweep_args.progress, "Per-depth progress on stderr");

    TwirlArgs twirl_args;
    auto *twirl = app.add_subcommand(
        "twirl-verify", "Compare the analytic twirl weight against the Haar-sampling oracle (JSON)");
    twirl->add_option("--channel", twirl_args.channel,
                      "identity, depolarize2, trace_qubit1, or trace_qubit2")
        ->required();
    twirl->add_option("--samples", twirl_args.samples, "Haar samples");
    twirl->add_option("--seed", twirl_args.seed, "Master seed");
    twirl->add_option("--out", twirl_args.out, "Write JSON here instead of stdout");

    ThresholdArgs threshold_args;
    auto *threshold = app.add_subcommand(
        "threshold", "Depolarized fraction above which the classical algorithm wins (JSON)");
    threshold->add_option("--class", threshold_args.graph_class, "deg3 or bipartite-deg3")
        ->required();
    threshold->add_option("--classical-ratio", threshold_args.classical_ratio,
                          "Classical approximation ratio to beat");
    threshold->add_option("--out", threshold_args.out, "Write JSON here instead of stdout");

    PlanArgs plan_args;
    auto *plan = app.add_subcommand(
        "plan", "Per-layer error rate needed to keep a routed circuit at a target q fraction (JSON)");
    plan->add_option("--arch", plan_args.arch, "Architecture: 1d or 2d")->required();
    plan->add_option("--n", plan_args.n, "Number of qubits")->required();
    plan->add_option("--target-q", plan_args.target_q, "Target depolarized fraction");
    plan->add_option("--method", plan_args.method, "Forward model: heuristic or mc");
    plan->add_option("--qaoa-layers", plan_args.qaoa_layers, "Algorithm layers before routing");
    plan->add_option("--samples", plan_args.samples, "Trajectories per MC forward evaluation");
    plan->add_option("--seed", plan_args.seed, "Master seed (mc method)");
    plan->add_option("--threads", plan_args.threads, "Worker threads (0 = all cores)");
    plan->add_option("--out", plan_args.out, "Write JSON here instead of stdout");

    BoundArgs bound_args;
    auto *bound = app.add_subcommand(
        "bound", "Energy and approximation-ratio bounds at a given depolarized fraction (JSON)");
    bound->add_option("--graph", bound_args.graph_path, "Edge-list file (u v [weight] per line)");
    bound->add_option("--q-frac", bound_args.q_frac, "Depolarized fraction")->required();
    auto *cmax_opt = bound->add_option("--cmax", bound_args.c_max, "Maximum cut value");
    auto *cavg_opt = bound->add_option("--cavg", bound_args.c_avg, "Random-assignment average cut");
    bound->add_option("--class", bound_args.graph_class, "deg3 or bipartite-deg3");
    bound->add_option("--out", bound_args.out, "Write JSON here instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    bound_args.c_max_set = cmax_opt->count() > 0;
    bound_args.c_avg_set = cavg_opt->count() > 0;

    try {
        if (sweep->parsed()) {
            return run_sweep(sweep_args);
        }
        if (twirl->parsed()) {
            return run_twirl_verify(twirl_args);
        }
        if (threshold->parsed()) {
            return run_threshold(threshold_args);
        }
        if (plan->parsed()) {
            return run_plan(plan_args);
        }
        if (bound->parsed()) {
            return run_bound(bound_args);
        }
        std::cerr << "error: no subcommand\n";
        return 2;
    } catch (const depolsim::ConfigError &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const depolsim::SolverError &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
