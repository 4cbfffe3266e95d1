#pragma once

#include <cstdint>

#include "depolsim/formulas.hpp"
#include "depolsim/maxcut.hpp"
#include "depolsim/schedule.hpp"

namespace depolsim {

/// Circuit depth after routing `qaoa_layers` algorithm layers onto hardware:
/// 3n gate layers per algorithm layer on the 1D ring, ceil(sqrt(7n)) on the
/// 2D torus (rounded up to even so the depth stays a whole number of
/// entangle/uncompute step pairs).
int routed_depth(Arch arch, int n, int qaoa_layers = 10);

enum class PlanMethod { Heuristic, McBisection };

std::string plan_method_name(PlanMethod method);
PlanMethod plan_method_from_name(const std::string &name);  // throws ConfigError

struct PlanOptions {
    PlanMethod method = PlanMethod::Heuristic;
    int qaoa_layers = 10;
    long mc_samples = 200;  ///< per forward evaluation when method == McBisection
    uint64_t seed = 0;
    int threads = 0;
};

struct PlanResult {
    Arch arch = Arch::OneD;
    int n = 0;
    int qaoa_layers = 0;
    int depth = 0;               ///< routed circuit depth the plan assumes
    double target_q_frac = 0.0;
    double required_p = 0.0;     ///< per-layer error rate that meets the target
    double forward_q_frac = 0.0; ///< forward model re-evaluated at required_p
    PlanMethod method = PlanMethod::Heuristic;
    Regime regime = Regime::Shallow;  ///< formula branch at (n, depth)
    int iterations = 0;
};

/// Largest per-layer error rate at which the routed circuit still reaches
/// `target_q_frac`, found by bisecting the forward model over
/// p in [1e-12, 0.5]. Heuristic bisection stops within 1e-3 of the target;
/// Monte Carlo bisection stops within one standard error. Targets outside the
/// reachable range raise SolverError. Monte Carlo forward evaluations share
/// one master seed, which couples the trajectories across p and makes the
/// estimated q exactly monotone, so the bisection is well posed.
PlanResult required_error_rate(Arch arch, int n, double target_q_frac,
                               const PlanOptions &options = {});

/// Smallest even depth at which the predicted depolarized fraction crosses
/// classical_superiority_threshold(cls, classical_ratio) -- beyond it the
/// device cannot beat the classical algorithm. Grows the search window by
/// doubling, then bisects over even depths; gives up past depth 10^6 with a
/// SolverError.
int max_useful_depth(Arch arch, int n, double p, GraphClass cls,
                     double classical_ratio = DEG3_CLASSICAL_RATIO);

}  // namespace depolsim
