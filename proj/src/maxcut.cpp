#include "depolsim/maxcut.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "depolsim/errors.hpp"
#include "depolsim/parallel.hpp"

namespace depolsim {

namespace {

void check_edges(int n, const std::vector<Edge> &edges, const std::string &context) {
    std::set<std::pair<int, int>> seen;
    for (const auto &edge : edges) {
        if (edge.u < 0 || edge.u >= n || edge.v < 0 || edge.v >= n) {
            throw ConfigError(context + "edge (" + std::to_string(edge.u) + ", "
                              + std::to_string(edge.v) + ") outside vertex range [0, "
                              + std::to_string(n) + ")");
        }
        if (edge.u == edge.v) {
            throw ConfigError(context + "self-loop at vertex " + std::to_string(edge.u));
        }
        if (!(edge.weight >= 0.0)) {
            throw ConfigError(context + "negative weight on edge (" + std::to_string(edge.u) + ", "
                              + std::to_string(edge.v) + ")");
        }
        const auto key = std::minmax(edge.u, edge.v);
        if (!seen.insert(key).second) {
            throw ConfigError(context + "duplicate edge (" + std::to_string(edge.u) + ", "
                              + std::to_string(edge.v) + ")");
        }
    }
}

/// Lexicographic order on assignments with +1 ranked before -1.
bool lex_before(const std::vector<int8_t> &a, const std::vector<int8_t> &b) {
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] != b[i]) {
            return a[i] == 1;
        }
    }
    return false;
}

bool parse_int_token(const std::string &token, int &out) {
    const char *begin = token.data();
    const char *end = begin + token.size();
    const auto result = std::from_chars(begin, end, out);
    return result.ec == std::errc() && result.ptr == end;
}

bool parse_double_token(const std::string &token, double &out) {
    const char *begin = token.data();
    const char *end = begin + token.size();
    const auto result = std::from_chars(begin, end, out);
    return result.ec == std::errc() && result.ptr == end;
}

void check_assignment(const Graph &graph, const std::vector<int8_t> &assignment) {
    if (assignment.size() != static_cast<size_t>(graph.n)) {
        throw ConfigError("cut assignment covers " + std::to_string(assignment.size())
                          + " vertices, graph has " + std::to_string(graph.n));
    }
    for (int8_t side : assignment) {
        if (side != 1 && side != -1) {
            throw ConfigError("cut assignment entries must be +1 or -1");
        }
    }
}

}  // namespace

double Graph::total_weight() const {
    double total = 0.0;
    for (const auto &edge : edges) {
        total += edge.weight;
    }
    return total;
}

Graph make_graph(int n, std::vector<Edge> edges) {
    if (n < 1) {
        throw ConfigError("graph: need at least one vertex");
    }
    check_edges(n, edges, "graph: ");
    return Graph{n, std::move(edges)};
}

Graph load_graph(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError(path + ": cannot open");
    }

    std::vector<Edge> edges;
    int max_vertex = -1;
    std::string line;
    long line_number = 0;
    while (std::getline(in, line)) {
        ++line_number;
        const auto where = [&] { return path + ":" + std::to_string(line_number) + ": "; };
        std::istringstream fields(line);
        std::vector<std::string> tokens;
        std::string token;
        while (fields >> token) {
            tokens.push_back(token);
        }
        if (tokens.empty() || tokens[0][0] == '#') {
            continue;  // blank or comment
        }
        if (tokens.size() < 2 || tokens.size() > 3) {
            throw ConfigError(where() + "expected 'u v [weight]', got " + std::to_string(tokens.size())
                              + " fields");
        }

        Edge edge;
        if (!parse_int_token(tokens[0], edge.u) || !parse_int_token(tokens[1], edge.v)) {
            throw ConfigError(where() + "vertices must be integers, got '" + tokens[0] + " "
                              + tokens[1] + "'");
        }
        if (tokens.size() == 3 && !parse_double_token(tokens[2], edge.weight)) {
            throw ConfigError(where() + "malformed weight '" + tokens[2] + "'");
        }
        if (edge.u < 0 || edge.v < 0) {
            throw ConfigError(where() + "vertices must be non-negative");
        }
        if (edge.u == edge.v) {
            throw ConfigError(where() + "self-loop at vertex " + std::to_string(edge.u));
        }
        if (!(edge.weight >= 0.0)) {
            throw ConfigError(where() + "negative weight");
        }
        max_vertex = std::max({max_vertex, edge.u, edge.v});
        edges.push_back(edge);
    }
    if (edges.empty()) {
        throw ConfigError(path + ": no edges");
    }

    Graph graph;
    graph.n = max_vertex + 1;
    graph.edges = std::move(edges);
    check_edges(graph.n, graph.edges, path + ": ");
    return graph;
}

double cut_value(const Graph &graph, const std::vector<int8_t> &assignment) {
    check_assignment(graph, assignment);
    double total = 0.0;
    for (const auto &edge : graph.edges) {
        if (assignment[edge.u] != assignment[edge.v]) {
            total += edge.weight;
        }
    }
    return total;
}

CutSolution brute_force_maxcut(const Graph &graph) {
    if (graph.n > 24) {
        throw ConfigError("brute-force max cut: limited to 24 vertices, got "
                          + std::to_string(graph.n));
    }
    std::vector<int8_t> assignment(static_cast<size_t>(graph.n), 1);
    std::vector<int8_t> best = assignment;
    double best_value = cut_value(graph, best);

    const uint64_t patterns = graph.n > 1 ? (1ULL << (graph.n - 1)) : 1;
    for (uint64_t mask = 1; mask < patterns; ++mask) {
        for (int v = 1; v < graph.n; ++v) {
            assignment[v] = (mask >> (v - 1)) & 1 ? -1 : 1;
        }
        const double value = cut_value(graph, assignment);
        if (value > best_value || (value == best_value && lex_before(assignment, best))) {
            best_value = value;
            best = assignment;
        }
    }
    return CutSolution{std::move(best), best_value};
}

double cut_average(const Graph &graph) {
    return graph.total_weight() / 2.0;
}

double energy_upper_bound(double c_max, double c_avg, double q_frac) {
    if (!(q_frac >= 0.0) || !(q_frac <= 1.0)) {
        throw ConfigError("energy bound: q_frac must lie in [0, 1]");
    }
    if (c_avg > c_max) {
        throw ConfigError("energy bound: c_avg exceeds c_max");
    }
    const double clean = 1.0 - q_frac;
    return 0.5 * clean * (2.0 - q_frac) * c_max + (1.0 - clean * clean) * c_avg;
}

std::string graph_class_name(GraphClass cls) {
    return cls == GraphClass::Deg3 ? "deg3" : "bipartite-deg3";
}

GraphClass graph_class_from_name(const std::string &name) {
    if (name == "deg3") {
        return GraphClass::Deg3;
    }
    if (name == "bipartite-deg3") {
        return GraphClass::BipartiteDeg3;
    }
    throw ConfigError("unknown graph class '" + name + "' (expected deg3 or bipartite-deg3)");
}

double approx_ratio_bound(double q_frac, GraphClass cls) {
    if (!(q_frac >= 0.0) || !(q_frac <= 1.0)) {
        throw ConfigError("approx ratio bound: q_frac must lie in [0, 1]");
    }
    if (cls == GraphClass::Deg3) {
        return 1.0 - (q_frac / 2.0) * (q_frac / 2.0);
    }
    return 1.0 - q_frac / 2.0;
}

double classical_superiority_threshold(GraphClass cls, double classical_ratio) {
    if (!(classical_ratio > 0.0) || !(classical_ratio < 1.0)) {
        throw ConfigError("superiority threshold: classical ratio must lie in (0, 1), got "
                          + std::to_string(classical_ratio));
    }
    if (cls == GraphClass::Deg3) {
        return 2.0 * std::sqrt(1.0 - classical_ratio);
    }
    return 2.0 * (1.0 - classical_ratio);
}

double expected_cut_given_errors(const Graph &graph, const CutSolution &solution,
                                 const ErrorState &errors) {
    check_assignment(graph, solution.assignment);
    if (errors.size() != static_cast<size_t>(graph.n)) {
        throw ConfigError("error pattern covers " + std::to_string(errors.size())
                          + " qubits, graph has " + std::to_string(graph.n));
    }
    double total = 0.0;
    for (const auto &edge : graph.edges) {
        if (errors[edge.u] || errors[edge.v]) {
            total += edge.weight / 2.0;
        } else if (solution.assignment[edge.u] != solution.assignment[edge.v]) {
            total += edge.weight;
        }
    }
    return total;
}

AzumaBound azuma_bound(double alpha, long edge_count, int delta, int depth, int k) {
    if (!(alpha > 0.0)) {
        throw ConfigError("azuma bound: alpha must be positive");
    }
    if (edge_count < 1) {
        throw ConfigError("azuma bound: edge count must be >= 1");
    }
    if (delta < 1) {
        throw ConfigError("azuma bound: max degree must be >= 1");
    }
    if (depth < 1) {
        throw ConfigError("azuma bound: depth must be >= 1");
    }
    if (k != 1 && k != 2) {
        throw ConfigError("azuma bound: k must be 1 (1D increments) or 2 (2D increments)");
    }
    const double d_power = std::pow(static_cast<double>(depth), 2.0 * k);
    const double exponent = alpha * alpha * static_cast<double>(edge_count)
                            / (2.0 * static_cast<double>(delta) * delta * d_power);
    AzumaBound bound;
    bound.raw = 2.0 * std::exp(-exponent);
    bound.capped = std::min(bound.raw, 1.0);
    return bound;
}

CutStatistics empirical_cut_statistics(const Graph &graph, const CutSolution &solution,
                                       const Schedule &schedule, const NoiseParams &noise,
                                       const RunConfig &config, int threads) {
    check_assignment(graph, solution.assignment);
    if (graph.n != schedule.qubit_count()) {
        throw ConfigError("cut statistics: graph has " + std::to_string(graph.n)
                          + " vertices, schedule simulates " + std::to_string(schedule.qubit_count()));
    }

    std::vector<double> cuts(static_cast<size_t>(config.samples), 0.0);
    const int workers = threads == 0 ? hardware_threads() : threads;
    std::vector<uint64_t> sum_q(static_cast<size_t>(std::max(workers, 1)), 0);
    std::vector<uint64_t> sum_q2(sum_q.size(), 0);

    parallel_chunks(config.samples, threads, [&](long begin, long end, int worker) {
        uint64_t local_q = 0;
        uint64_t local_q2 = 0;
        for (long i = begin; i < end; ++i) {
            const ErrorState state = run_trajectory(schedule, noise, config, i);
            cuts[static_cast<size_t>(i)] = expected_cut_given_errors(graph, solution, state);
            const uint64_t q = static_cast<uint64_t>(count_errors(state));
            local_q += q;
            local_q2 += q * q;
        }
        sum_q[static_cast<size_t>(worker)] = local_q;
        sum_q2[static_cast<size_t>(worker)] = local_q2;
    });

    // Index-ordered reduction keeps the floating-point sums identical for
    // every thread count.
    double cut_sum = 0.0;
    double cut_sum_sq = 0.0;
    for (double cut : cuts) {
        cut_sum += cut;
        cut_sum_sq += cut * cut;
    }
    uint64_t total_q = 0;
    uint64_t total_q2 = 0;
    for (size_t w = 0; w < sum_q.size(); ++w) {
        total_q += sum_q[w];
        total_q2 += sum_q2[w];
    }

    const double samples = static_cast<double>(config.samples);
    CutStatistics stats;
    stats.mean_cut = cut_sum / samples;
    const double cut_var = std::max(cut_sum_sq / samples - stats.mean_cut * stats.mean_cut, 0.0);
    stats.cut_stderr = std::sqrt(cut_var / samples);

    const double n = static_cast<double>(graph.n);
    stats.q.mean_count = static_cast<double>(total_q) / samples;
    stats.q.frac = stats.q.mean_count / n;
    const double q_var =
        std::max(static_cast<double>(total_q2) / samples - stats.q.mean_count * stats.q.mean_count, 0.0);
    stats.q.frac_stderr = std::sqrt(q_var / samples) / n;
    stats.q.samples = config.samples;
    return stats;
}

}  // namespace depolsim
