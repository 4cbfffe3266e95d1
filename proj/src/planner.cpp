#include "depolsim/planner.hpp"

#include <cmath>
#include <functional>
#include <sstream>
#include <string>

#include "depolsim/chain.hpp"
#include "depolsim/errors.hpp"

namespace depolsim {

namespace {

constexpr double P_BRACKET_LO = 1e-12;
constexpr double P_BRACKET_HI = 0.5;
constexpr double HEURISTIC_TOLERANCE = 1e-3;
constexpr int MAX_BISECTION_STEPS = 200;
constexpr int MAX_USEFUL_DEPTH_CAP = 1000000;

int ceil_even(double x) {
    return 2 * static_cast<int>(std::ceil(x / 2.0));
}

double formula_q_frac(Arch arch, int n, double depth, double p) {
    return arch == Arch::OneD ? heuristic_q_frac_1d(n, depth, p) : empirical_q_frac_2d(n, depth, p);
}

void check_formula_arch(Arch arch, const char *what) {
    if (arch == Arch::NonLocal) {
        throw ConfigError(std::string(what) + ": no closed-form depth model for the non-local "
                          "architecture (only 1d and 2d are supported)");
    }
}

}  // namespace

int routed_depth(Arch arch, int n, int qaoa_layers) {
    check_formula_arch(arch, "routed depth");
    if (n < 2) {
        throw ConfigError("routed depth: n must be >= 2");
    }
    if (qaoa_layers < 1) {
        throw ConfigError("routed depth: qaoa_layers must be >= 1");
    }
    if (arch == Arch::OneD) {
        return ceil_even(3.0 * static_cast<double>(qaoa_layers) * n);
    }
    return ceil_even(qaoa_layers * std::sqrt(7.0 * n));
}

std::string plan_method_name(PlanMethod method) {
    return method == PlanMethod::Heuristic ? "heuristic" : "mc";
}

PlanMethod plan_method_from_name(const std::string &name) {
    if (name == "heuristic") {
        return PlanMethod::Heuristic;
    }
    if (name == "mc") {
        return PlanMethod::McBisection;
    }
    throw ConfigError("unknown plan method '" + name + "' (expected heuristic or mc)");
}

PlanResult required_error_rate(Arch arch, int n, double target_q_frac, const PlanOptions &options) {
    check_formula_arch(arch, "required error rate");
    if (!(target_q_frac > 0.0) || !(target_q_frac < 1.0)) {
        throw ConfigError("required error rate: target q fraction must lie in (0, 1), got "
                          + std::to_string(target_q_frac));
    }
    if (options.mc_samples < 2) {
        throw ConfigError("required error rate: mc_samples must be >= 2");
    }

    PlanResult result;
    result.arch = arch;
    result.n = n;
    result.qaoa_layers = options.qaoa_layers;
    result.depth = routed_depth(arch, n, options.qaoa_layers);
    result.target_q_frac = target_q_frac;
    result.method = options.method;
    result.regime = scaling_regime(arch, n, result.depth);

    // Forward model: q(p) at the routed depth. The MC variant reuses the same
    // master seed for every evaluation; the shared thresholds couple the
    // trajectories so q(p) is monotone in p sample-by-sample.
    double last_stderr = 0.0;
    const std::function<double(double)> forward = [&](double p) -> double {
        if (options.method == PlanMethod::Heuristic) {
            last_stderr = 0.0;
            return formula_q_frac(arch, n, result.depth, p);
        }
        const Schedule schedule(arch, n);
        const NoiseParams noise(p);
        RunConfig config;
        config.samples = options.mc_samples;
        config.seed = options.seed;
        config.depth = result.depth;
        const QEstimate estimate =
            estimate_depolarized_fraction(schedule, noise, config, options.threads);
        last_stderr = estimate.frac_stderr;
        return estimate.frac;
    };

    double lo = P_BRACKET_LO;
    double hi = P_BRACKET_HI;
    const double q_lo = forward(lo);
    const double q_hi = forward(hi);
    if (target_q_frac < q_lo || target_q_frac > q_hi) {
        std::ostringstream message;
        message << "required error rate: target q fraction " << target_q_frac
                << " is outside the reachable range [" << q_lo << ", " << q_hi
                << "] for p in [" << P_BRACKET_LO << ", " << P_BRACKET_HI << "] at depth "
                << result.depth;
        throw SolverError(message.str());
    }

    double mid = lo;
    double q_mid = q_lo;
    for (int iteration = 0; iteration < MAX_BISECTION_STEPS; ++iteration) {
        mid = 0.5 * (lo + hi);
        q_mid = forward(mid);
        ++result.iterations;
        const double tolerance =
            options.method == PlanMethod::Heuristic ? HEURISTIC_TOLERANCE : std::max(last_stderr, 1e-12);
        if (std::abs(q_mid - target_q_frac) <= tolerance) {
            result.required_p = mid;
            result.forward_q_frac = q_mid;
            return result;
        }
        if (q_mid < target_q_frac) {
            lo = mid;
        } else {
            hi = mid;
        }
    }

    std::ostringstream message;
    message << "required error rate: bisection did not converge after " << MAX_BISECTION_STEPS
            << " steps (last p = " << mid << ", q = " << q_mid << ", target = " << target_q_frac
            << ")";
    throw SolverError(message.str());
}

int max_useful_depth(Arch arch, int n, double p, GraphClass cls, double classical_ratio) {
    check_formula_arch(arch, "max useful depth");
    if (!(p > 0.0) || !(p < 1.0)) {
        throw ConfigError("max useful depth: p must lie in (0, 1), got " + std::to_string(p));
    }
    const double threshold = classical_superiority_threshold(cls, classical_ratio);

    const auto exceeds = [&](int depth) { return formula_q_frac(arch, n, depth, p) > threshold; };

    if (exceeds(2)) {
        return 2;
    }
    int hi = 2;
    while (!exceeds(hi)) {
        hi *= 2;
        if (hi > MAX_USEFUL_DEPTH_CAP) {
            std::ostringstream message;
            message << "max useful depth: predicted q fraction stays below the superiority "
                       "threshold "
                    << threshold << " up to depth " << MAX_USEFUL_DEPTH_CAP << " (n = " << n
                    << ", p = " << p << "); the crossover depth is beyond the supported range";
            throw SolverError(message.str());
        }
    }
    // Invariant: q(lo) <= threshold < q(hi) over even depths.
    int lo = hi / 2;
    while (hi - lo > 2) {
        const int mid = ((lo + hi) / 4) * 2;
        if (exceeds(mid)) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    return hi;
}

}  // namespace depolsim
