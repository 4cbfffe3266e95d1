#pragma once

#include <cstdint>
#include <vector>

#include "depolsim/rng.hpp"
#include "depolsim/schedule.hpp"

namespace depolsim {

/// One byte per qubit: 0 = clean, 1 = depolarized.
using ErrorState = std::vector<uint8_t>;

/// Per-layer single-qubit depolarizing strength p. A Markov step of the
/// effective chain covers the matched entangling layer and its mirrored
/// uncompute partner, so the per-step flip probability of a clean qubit is
/// step_flip = 1 - (1-p)^2 = 2p - p^2.
struct NoiseParams {
    double p;
    double step_flip;

    explicit NoiseParams(double p_layer);
};

struct RunConfig {
    long samples = 1;
    uint64_t seed = 0;
    int depth = 0;  ///< circuit depth D; must be even. The chain runs D/2 steps.
};

/// Monte Carlo estimate of the depolarized fraction.
///
/// Per-trajectory error counts are accumulated as exact integer sums, so the
/// estimate is independent of summation order (and therefore of thread count):
///   frac_stderr = sqrt((E[q^2] - E[q]^2) / samples) / n.
struct QEstimate {
    double mean_count = 0.0;  ///< mean number of depolarized qubits E[q]
    double frac = 0.0;        ///< mean_count / n
    double frac_stderr = 0.0;
    long samples = 0;
};

/// Joint clean-subset probabilities P(Q_A = 0), P(Q_B = 0), P(Q_{A u B} = 0)
/// with binomial standard errors.
struct JointCleanEstimate {
    double p_a = 0.0;
    double p_b = 0.0;
    double p_joint = 0.0;
    double se_a = 0.0;
    double se_b = 0.0;
    double se_joint = 0.0;
    long samples = 0;
};

int count_errors(const ErrorState &state);

/// Initial layer: each qubit is depolarized independently with probability p.
ErrorState sample_initial_state(int n, double p, Rng &rng);

/// One matched-pair update per pair: concordant pairs are left unchanged,
/// a discordant pair becomes (1,1) with probability 4/5 and (0,0) with
/// probability 1/5. Exactly one uniform is drawn per pair regardless of the
/// pair's state, so two runs sharing an RNG stream stay coupled.
void apply_gate_layer(ErrorState &state, const PairList &pairs, Rng &rng);

/// Fresh-noise update: each clean qubit flips with probability step_flip;
/// depolarized qubits are absorbing. One uniform per qubit, always.
void apply_noise_layer(ErrorState &state, const NoiseParams &noise, Rng &rng);

/// Runs trajectory `index`: initial Bernoulli(p) state, then depth/2 steps of
/// gate layer followed by noise layer, on the stream stream_seed(seed, index).
ErrorState run_trajectory(const Schedule &schedule, const NoiseParams &noise,
                          const RunConfig &config, long index);

/// As run_trajectory but from an explicit initial state and caller-owned RNG
/// (no initial Bernoulli layer). Used by coupling tests and spread profiles.
ErrorState run_trajectory_from(ErrorState state, const Schedule &schedule,
                               const NoiseParams &noise, int markov_steps, Rng &rng);

QEstimate estimate_depolarized_fraction(const Schedule &schedule, const NoiseParams &noise,
                                        const RunConfig &config, int threads = 0);

/// Estimates clean-subset probabilities for disjoint qubit sets `a` and `b`
/// from the same trajectories. An empty set is clean with certainty.
JointCleanEstimate estimate_joint_clean(const Schedule &schedule, const NoiseParams &noise,
                                        const RunConfig &config, const std::vector<int> &a,
                                        const std::vector<int> &b, int threads = 0);

/// Mean depolarized count after each Markov step for a single seeded error at
/// `start_qubit`, with no fresh noise (p = 0). Entry t is E[q(t)], t = 0..steps.
std::vector<double> mean_spread_profile(const Schedule &schedule, int markov_steps, long samples,
                                        uint64_t seed, int start_qubit, int threads = 0);

}  // namespace depolsim
