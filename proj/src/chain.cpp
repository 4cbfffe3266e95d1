#include "depolsim/chain.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "depolsim/errors.hpp"
#include "depolsim/parallel.hpp"

namespace depolsim {

namespace {

/// Probability that a discordant pair collapses to (1,1) rather than (0,0)
/// under the Haar-averaged matched-pair update.
constexpr double SPREAD_PROB = 4.0 / 5.0;

void check_run_config(const RunConfig &config) {
    if (config.samples < 1) {
        throw ConfigError("run config: samples must be >= 1, got " + std::to_string(config.samples));
    }
    if (config.depth < 0) {
        throw ConfigError("run config: depth must be >= 0, got " + std::to_string(config.depth));
    }
    if (config.depth % 2 != 0) {
        throw ConfigError("run config: depth must be even (entangle/uncompute layers are mirrored), got "
                          + std::to_string(config.depth));
    }
}

void check_subset(const std::vector<int> &subset, int n, const char *label) {
    std::vector<uint8_t> seen(static_cast<size_t>(n), 0);
    for (int q : subset) {
        if (q < 0 || q >= n) {
            throw ConfigError(std::string("joint clean estimate: subset ") + label + " contains qubit "
                              + std::to_string(q) + ", outside [0, " + std::to_string(n) + ")");
        }
        if (seen[static_cast<size_t>(q)]) {
            throw ConfigError(std::string("joint clean estimate: subset ") + label
                              + " repeats qubit " + std::to_string(q));
        }
        seen[static_cast<size_t>(q)] = 1;
    }
}

bool all_clean(const ErrorState &state, const std::vector<int> &subset) {
    for (int q : subset) {
        if (state[static_cast<size_t>(q)]) {
            return false;
        }
    }
    return true;
}

double binomial_se(double p_hat, long samples) {
    return std::sqrt(std::max(p_hat * (1.0 - p_hat), 0.0) / static_cast<double>(samples));
}

}  // namespace

NoiseParams::NoiseParams(double p_layer) : p(p_layer) {
    if (!(p_layer >= 0.0) || !(p_layer <= 1.0)) {
        throw ConfigError("noise params: p must lie in [0, 1], got " + std::to_string(p_layer));
    }
    step_flip = 2.0 * p_layer - p_layer * p_layer;
}

int count_errors(const ErrorState &state) {
    int total = 0;
    for (uint8_t bit : state) {
        total += bit;
    }
    return total;
}

ErrorState sample_initial_state(int n, double p, Rng &rng) {
    ErrorState state(static_cast<size_t>(n));
    for (auto &bit : state) {
        bit = rng.chance(p) ? 1 : 0;
    }
    return state;
}

void apply_gate_layer(ErrorState &state, const PairList &pairs, Rng &rng) {
    for (const auto &[a, b] : pairs) {
        const bool spread = rng.uniform() < SPREAD_PROB;
        if (state[a] != state[b]) {
            const uint8_t value = spread ? 1 : 0;
            state[a] = value;
            state[b] = value;
        }
    }
}

void apply_noise_layer(ErrorState &state, const NoiseParams &noise, Rng &rng) {
    for (auto &bit : state) {
        if (rng.chance(noise.step_flip)) {
            bit = 1;
        }
    }
}

ErrorState run_trajectory_from(ErrorState state, const Schedule &schedule, const NoiseParams &noise,
                               int markov_steps, Rng &rng) {
    if (state.size() != static_cast<size_t>(schedule.qubit_count())) {
        throw ConfigError("run_trajectory_from: state has " + std::to_string(state.size())
                          + " qubits, schedule expects " + std::to_string(schedule.qubit_count()));
    }
    PairList pairs;
    for (int step = 0; step < markov_steps; ++step) {
        schedule.pairs_for_step(step, rng, pairs);
        apply_gate_layer(state, pairs, rng);
        apply_noise_layer(state, noise, rng);
    }
    return state;
}

ErrorState run_trajectory(const Schedule &schedule, const NoiseParams &noise, const RunConfig &config,
                          long index) {
    check_run_config(config);
    Rng rng(stream_seed(config.seed, static_cast<uint64_t>(index)));
    ErrorState state = sample_initial_state(schedule.qubit_count(), noise.p, rng);
    return run_trajectory_from(std::move(state), schedule, noise, config.depth / 2, rng);
}

QEstimate estimate_depolarized_fraction(const Schedule &schedule, const NoiseParams &noise,
                                        const RunConfig &config, int threads) {
    check_run_config(config);
    const int workers = threads == 0 ? hardware_threads() : threads;
    std::vector<uint64_t> sum_q(static_cast<size_t>(std::max(workers, 1)), 0);
    std::vector<uint64_t> sum_q2(sum_q.size(), 0);

    parallel_chunks(config.samples, threads, [&](long begin, long end, int worker) {
        uint64_t local_q = 0;
        uint64_t local_q2 = 0;
        for (long i = begin; i < end; ++i) {
            const ErrorState state = run_trajectory(schedule, noise, config, i);
            const uint64_t q = static_cast<uint64_t>(count_errors(state));
            local_q += q;
            local_q2 += q * q;
        }
        sum_q[static_cast<size_t>(worker)] = local_q;
        sum_q2[static_cast<size_t>(worker)] = local_q2;
    });

    uint64_t total_q = 0;
    uint64_t total_q2 = 0;
    for (size_t w = 0; w < sum_q.size(); ++w) {
        total_q += sum_q[w];
        total_q2 += sum_q2[w];
    }

    const double n = static_cast<double>(schedule.qubit_count());
    const double samples = static_cast<double>(config.samples);
    const double mean = static_cast<double>(total_q) / samples;
    const double mean_sq = static_cast<double>(total_q2) / samples;
    const double variance = std::max(mean_sq - mean * mean, 0.0);

    QEstimate estimate;
    estimate.mean_count = mean;
    estimate.frac = mean / n;
    estimate.frac_stderr = std::sqrt(variance / samples) / n;
    estimate.samples = config.samples;
    return estimate;
}

JointCleanEstimate estimate_joint_clean(const Schedule &schedule, const NoiseParams &noise,
                                        const RunConfig &config, const std::vector<int> &a,
                                        const std::vector<int> &b, int threads) {
    check_run_config(config);
    const int n = schedule.qubit_count();
    check_subset(a, n, "A");
    check_subset(b, n, "B");
    for (int q : a) {
        if (std::find(b.begin(), b.end(), q) != b.end()) {
            throw ConfigError("joint clean estimate: subsets overlap at qubit " + std::to_string(q));
        }
    }

    const int workers = threads == 0 ? hardware_threads() : threads;
    std::vector<uint64_t> count_a(static_cast<size_t>(std::max(workers, 1)), 0);
    std::vector<uint64_t> count_b(count_a.size(), 0);
    std::vector<uint64_t> count_joint(count_a.size(), 0);

    parallel_chunks(config.samples, threads, [&](long begin, long end, int worker) {
        uint64_t local_a = 0;
        uint64_t local_b = 0;
        uint64_t local_joint = 0;
        for (long i = begin; i < end; ++i) {
            const ErrorState state = run_trajectory(schedule, noise, config, i);
            const bool clean_a = all_clean(state, a);
            const bool clean_b = all_clean(state, b);
            local_a += clean_a;
            local_b += clean_b;
            local_joint += clean_a && clean_b;
        }
        count_a[static_cast<size_t>(worker)] = local_a;
        count_b[static_cast<size_t>(worker)] = local_b;
        count_joint[static_cast<size_t>(worker)] = local_joint;
    });

    uint64_t total_a = 0;
    uint64_t total_b = 0;
    uint64_t total_joint = 0;
    for (size_t w = 0; w < count_a.size(); ++w) {
        total_a += count_a[w];
        total_b += count_b[w];
        total_joint += count_joint[w];
    }

    JointCleanEstimate estimate;
    estimate.samples = config.samples;
    const double samples = static_cast<double>(config.samples);
    estimate.p_a = static_cast<double>(total_a) / samples;
    estimate.p_b = static_cast<double>(total_b) / samples;
    estimate.p_joint = static_cast<double>(total_joint) / samples;
    estimate.se_a = binomial_se(estimate.p_a, config.samples);
    estimate.se_b = binomial_se(estimate.p_b, config.samples);
    estimate.se_joint = binomial_se(estimate.p_joint, config.samples);
    return estimate;
}

std::vector<double> mean_spread_profile(const Schedule &schedule, int markov_steps, long samples,
                                        uint64_t seed, int start_qubit, int threads) {
    if (markov_steps < 0) {
        throw ConfigError("spread profile: markov_steps must be >= 0");
    }
    if (samples < 1) {
        throw ConfigError("spread profile: samples must be >= 1");
    }
    const int n = schedule.qubit_count();
    if (start_qubit < 0 || start_qubit >= n) {
        throw ConfigError("spread profile: start qubit " + std::to_string(start_qubit)
                          + " outside [0, " + std::to_string(n) + ")");
    }

    const NoiseParams no_noise(0.0);
    const size_t points = static_cast<size_t>(markov_steps) + 1;
    const int workers = threads == 0 ? hardware_threads() : threads;
    std::vector<std::vector<uint64_t>> sums(static_cast<size_t>(std::max(workers, 1)),
                                            std::vector<uint64_t>(points, 0));

    parallel_chunks(samples, threads, [&](long begin, long end, int worker) {
        auto &local = sums[static_cast<size_t>(worker)];
        PairList pairs;
        for (long i = begin; i < end; ++i) {
            Rng rng(stream_seed(seed, static_cast<uint64_t>(i)));
            ErrorState state(static_cast<size_t>(n), 0);
            state[static_cast<size_t>(start_qubit)] = 1;
            local[0] += 1;
            for (int step = 0; step < markov_steps; ++step) {
                schedule.pairs_for_step(step, rng, pairs);
                apply_gate_layer(state, pairs, rng);
                apply_noise_layer(state, no_noise, rng);
                local[static_cast<size_t>(step) + 1] += static_cast<uint64_t>(count_errors(state));
            }
        }
    });

    std::vector<double> profile(points, 0.0);
    for (size_t t = 0; t < points; ++t) {
        uint64_t total = 0;
        for (const auto &local : sums) {
            total += local[t];
        }
        profile[t] = static_cast<double>(total) / static_cast<double>(samples);
    }
    return profile;
}

}  // namespace depolsim
