#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "depolsim/chain.hpp"
#include "depolsim/schedule.hpp"

namespace depolsim {

struct Edge {
    int u = 0;
    int v = 0;
    double weight = 1.0;
};

/// Undirected weighted graph. Invariants enforced on construction/load:
/// non-negative weights, no self-loops, no duplicate edges.
struct Graph {
    int n = 0;
    std::vector<Edge> edges;

    double total_weight() const;
};

Graph make_graph(int n, std::vector<Edge> edges);

/// Reads a whitespace-separated edge list: one `u v [weight]` triple per line,
/// 0-based vertices, weight defaulting to 1. Blank lines and lines starting
/// with '#' are skipped. Malformed input raises ConfigError with a
/// `path:line:` prefix.
Graph load_graph(const std::string &path);

/// Cut assignment: one entry per vertex, each +1 or -1. `value` equals the
/// total weight of edges whose endpoints get opposite signs.
struct CutSolution {
    std::vector<int8_t> assignment;
    double value = 0.0;
};

double cut_value(const Graph &graph, const std::vector<int8_t> &assignment);

/// Exhaustive maximum cut for n <= 24 vertices. Vertex 0 is fixed to +1 (cuts
/// come in sign-flipped pairs); among maximizers the lexicographically
/// smallest assignment (+1 < -1) is returned. Intended as an oracle for small
/// instances, not a solver.
CutSolution brute_force_maxcut(const Graph &graph);

/// Mean cut weight over uniformly random assignments: every edge is cut with
/// probability 1/2, so this is half the total edge weight.
double cut_average(const Graph &graph);

/// Expected cut value when each vertex is independently depolarized with
/// probability q, given an ideal solution with value c_max on a graph whose
/// random-assignment average is c_avg:
///   E[C] <= (1/2)(1-q)(2-q) c_max + (1 - (1-q)^2) c_avg.
double energy_upper_bound(double c_max, double c_avg, double q_frac);

enum class GraphClass { Deg3, BipartiteDeg3 };

std::string graph_class_name(GraphClass cls);
GraphClass graph_class_from_name(const std::string &name);  // throws ConfigError

/// Upper bound on the attainable approximation ratio at depolarized fraction
/// q: 1 - (q/2)^2 for unweighted cubic graphs, 1 - q/2 for bipartite cubic
/// graphs (where the optimum cuts every edge).
double approx_ratio_bound(double q_frac, GraphClass cls);

/// Best classical polynomial-time approximation ratio the noisy device must
/// beat; 0.9326 is the default for cubic graphs.
inline constexpr double DEG3_CLASSICAL_RATIO = 0.9326;
inline constexpr double GOEMANS_WILLIAMSON_RATIO = 0.878;

/// Largest depolarized fraction at which approx_ratio_bound still exceeds
/// `classical_ratio` -- the inverse of approx_ratio_bound:
/// 2 sqrt(1 - r) for Deg3, 2 (1 - r) for BipartiteDeg3.
double classical_superiority_threshold(GraphClass cls, double classical_ratio = DEG3_CLASSICAL_RATIO);

/// Cut value retained by a specific error pattern: an edge keeps its weight if
/// both endpoints are clean and it was cut, keeps 0 if both are clean and it
/// was not, and contributes weight/2 whenever either endpoint is depolarized.
double expected_cut_given_errors(const Graph &graph, const CutSolution &solution,
                                 const ErrorState &errors);

struct AzumaBound {
    double raw = 0.0;      ///< 2 exp(-alpha^2 |E| / (2 Delta^2 D^(2k)))
    double capped = 0.0;   ///< min(raw, 1)
};

/// Concentration bound on the relative cut fluctuation alpha across circuit
/// randomness, for max degree `delta` and depth `depth`; k = 1 for the 1D
/// martingale increments, k = 2 for the 2D ones.
AzumaBound azuma_bound(double alpha, long edge_count, int delta, int depth, int k);

/// Monte Carlo cut statistics: runs the error chain over `config`, scores each
/// trajectory with expected_cut_given_errors against `solution`, and averages.
/// Per-trajectory values are reduced in index order, so results are
/// independent of thread count.
struct CutStatistics {
    double mean_cut = 0.0;
    double cut_stderr = 0.0;
    QEstimate q;  ///< depolarized-fraction estimate from the same trajectories
};

CutStatistics empirical_cut_statistics(const Graph &graph, const CutSolution &solution,
                                       const Schedule &schedule, const NoiseParams &noise,
                                       const RunConfig &config, int threads = 0);

}  // namespace depolsim
