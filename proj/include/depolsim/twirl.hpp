#pragma once

#include <Eigen/Dense>
#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "depolsim/rng.hpp"

namespace depolsim {

/// Kraus representation of a two-qubit channel: rho -> sum_k A_k rho A_k^dag.
struct KrausSet {
    std::vector<Eigen::Matrix4cd> ops;
};

/// Max-norm residual of the trace-preservation sum  sum_k A_k^dag A_k - I.
double completeness_residual(const KrausSet &channel);

/// Throws ConfigError when the residual exceeds `tol`.
void validate_trace_preserving(const KrausSet &channel, double tol = 1e-10);

/// Depolarizing weight of the channel after averaging its unitary conjugation
/// over Haar-random two-qubit unitaries. The averaged channel is
/// lambda * rho + (1 - lambda) * I/4, with
///   lambda = (sum_k |tr A_k|^2 - 1) / 15.
double lambda_analytic(const KrausSet &channel);

struct HaarTwirlEstimate {
    double lambda = 0.0;   ///< mean of the per-unitary fitted weight
    double stderr = 0.0;   ///< standard error of that mean
    /// Largest deviation of a single traceless basis element's fitted weight
    /// from the overall mean, for the averaged channel. A genuine twirl limit
    /// is isotropic, so this shrinks as samples grow.
    double max_basis_deviation = 0.0;
    long samples = 0;
};

/// Brute-force oracle for lambda_analytic: samples Haar unitaries, applies the
/// averaged conjugated channel to the Pauli product basis, and fits the
/// depolarizing weight. Sequential and deterministic: sample s runs on the
/// stream stream_seed(seed, s).
HaarTwirlEstimate lambda_haar_mc(const KrausSet &channel, long samples, uint64_t seed);

enum class ChannelKind { Identity, Depolarize2, TraceQubit1, TraceQubit2 };

std::string channel_name(ChannelKind kind);
ChannelKind channel_from_name(const std::string &name);  // throws ConfigError

/// Built-in channels: identity {I}; two-qubit depolarizing {P_i/4} over all 16
/// Pauli products; trace-out of qubit 1 {(sigma_i (x) I)/2} (replaces the first
/// factor with I/2); trace-out of qubit 2 {(I (x) sigma_i)/2}.
KrausSet make_channel(ChannelKind kind);

/// Pauli products sigma_i (x) sigma_j in row-major (i, j) order; entry 0 is I4.
const std::array<Eigen::Matrix4cd, 16> &pauli_product_basis();

/// Haar-random U(4) element: QR of a complex Ginibre matrix with the R-diagonal
/// phase correction (Mezzadri 2007).
Eigen::Matrix4cd haar_unitary4(Rng &rng);

}  // namespace depolsim
