#include "depolsim/twirl.hpp"

#include <cmath>
#include <complex>

#include "depolsim/errors.hpp"

namespace depolsim {

namespace {

using Eigen::Matrix2cd;
using Eigen::Matrix4cd;
using std::complex;

constexpr complex<double> I_UNIT(0.0, 1.0);

std::array<Matrix2cd, 4> single_qubit_paulis() {
    std::array<Matrix2cd, 4> sigma;
    sigma[0] = Matrix2cd::Identity();
    sigma[1] << 0, 1, 1, 0;
    sigma[2] << 0, -I_UNIT, I_UNIT, 0;
    sigma[3] << 1, 0, 0, -1;
    return sigma;
}

Matrix4cd kron2(const Matrix2cd &a, const Matrix2cd &b) {
    Matrix4cd out;
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            out.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
        }
    }
    return out;
}

/// Applies the channel to X: sum_k A_k X A_k^dag.
Matrix4cd apply_channel(const KrausSet &channel, const Matrix4cd &x) {
    Matrix4cd out = Matrix4cd::Zero();
    for (const auto &kraus : channel.ops) {
        out += kraus * x * kraus.adjoint();
    }
    return out;
}

}  // namespace

const std::array<Matrix4cd, 16> &pauli_product_basis() {
    static const std::array<Matrix4cd, 16> basis = [] {
        const auto sigma = single_qubit_paulis();
        std::array<Matrix4cd, 16> products;
        for (int i = 0; i < 4; ++i) {
            for (int j = 0; j < 4; ++j) {
                products[4 * i + j] = kron2(sigma[i], sigma[j]);
            }
        }
        return products;
    }();
    return basis;
}

double completeness_residual(const KrausSet &channel) {
    if (channel.ops.empty()) {
        throw ConfigError("kraus set: no operators");
    }
    Matrix4cd sum = Matrix4cd::Zero();
    for (const auto &kraus : channel.ops) {
        sum += kraus.adjoint() * kraus;
    }
    return (sum - Matrix4cd::Identity()).cwiseAbs().maxCoeff();
}

void validate_trace_preserving(const KrausSet &channel, double tol) {
    const double residual = completeness_residual(channel);
    if (!(residual <= tol)) {
        throw ConfigError("kraus set is not trace preserving: completeness residual "
                          + std::to_string(residual) + " exceeds " + std::to_string(tol));
    }
}

double lambda_analytic(const KrausSet &channel) {
    validate_trace_preserving(channel);
    double trace_weight = 0.0;
    for (const auto &kraus : channel.ops) {
        trace_weight += std::norm(kraus.trace());
    }
    return (trace_weight - 1.0) / 15.0;
}

Matrix4cd haar_unitary4(Rng &rng) {
    Matrix4cd ginibre;
    const double scale = 1.0 / std::sqrt(2.0);
    for (int r = 0; r < 4; ++r) {
        for (int c = 0; c < 4; ++c) {
            ginibre(r, c) = complex<double>(rng.normal(), rng.normal()) * scale;
        }
    }
    Eigen::HouseholderQR<Matrix4cd> qr(ginibre);
    const Matrix4cd q = qr.householderQ();
    const Matrix4cd r = qr.matrixQR().triangularView<Eigen::Upper>();
    // Fix the gauge: without rescaling by the phases of diag(R), QR output is
    // not Haar distributed.
    Eigen::Vector4cd phases;
    for (int i = 0; i < 4; ++i) {
        const double mag = std::abs(r(i, i));
        phases(i) = mag == 0.0 ? complex<double>(1.0, 0.0) : r(i, i) / mag;
    }
    return q * phases.asDiagonal();
}

HaarTwirlEstimate lambda_haar_mc(const KrausSet &channel, long samples, uint64_t seed) {
    validate_trace_preserving(channel);
    if (samples < 1) {
        throw ConfigError("haar twirl estimate: samples must be >= 1");
    }

    const auto &basis = pauli_product_basis();
    double sum = 0.0;
    double sum_sq = 0.0;
    std::array<double, 15> basis_sums{};

    for (long s = 0; s < samples; ++s) {
        Rng rng(stream_seed(seed, static_cast<uint64_t>(s)));
        const Matrix4cd u = haar_unitary4(rng);
        double sample_lambda = 0.0;
        for (int a = 1; a < 16; ++a) {
            // tr(P U^dag M(U P U^dag) U) = tr(X M(X)) with X = U P U^dag.
            const Matrix4cd x = u * basis[a] * u.adjoint();
            const double fitted = ((x * apply_channel(channel, x)).trace().real()) / 4.0;
            sample_lambda += fitted;
            basis_sums[a - 1] += fitted;
        }
        sample_lambda /= 15.0;
        sum += sample_lambda;
        sum_sq += sample_lambda * sample_lambda;
    }

    HaarTwirlEstimate estimate;
    estimate.samples = samples;
    const double count = static_cast<double>(samples);
    estimate.lambda = sum / count;
    if (samples > 1) {
        const double variance =
            std::max(sum_sq - count * estimate.lambda * estimate.lambda, 0.0) / (count - 1.0);
        estimate.stderr = std::sqrt(variance / count);
    }
    for (double basis_sum : basis_sums) {
        estimate.max_basis_deviation =
            std::max(estimate.max_basis_deviation, std::abs(basis_sum / count - estimate.lambda));
    }
    return estimate;
}

std::string channel_name(ChannelKind kind) {
    switch (kind) {
        case ChannelKind::Identity:
            return "identity";
        case ChannelKind::Depolarize2:
            return "depolarize2";
        case ChannelKind::TraceQubit1:
            return "trace_qubit1";
        case ChannelKind::TraceQubit2:
            return "trace_qubit2";
    }
    throw ConfigError("channel_name: unknown channel kind");
}

ChannelKind channel_from_name(const std::string &name) {
    if (name == "identity") {
        return ChannelKind::Identity;
    }
    if (name == "depolarize2") {
        return ChannelKind::Depolarize2;
    }
    if (name == "trace_qubit1") {
        return ChannelKind::TraceQubit1;
    }
    if (name == "trace_qubit2") {
        return ChannelKind::TraceQubit2;
    }
    throw ConfigError("unknown channel '" + name
                      + "' (expected identity, depolarize2, trace_qubit1, or trace_qubit2)");
}

KrausSet make_channel(ChannelKind kind) {
    const auto sigma = single_qubit_paulis();
    KrausSet channel;
    switch (kind) {
        case ChannelKind::Identity:
            channel.ops.push_back(Matrix4cd::Identity());
            break;
        case ChannelKind::Depolarize2:
            for (const auto &pauli : pauli_product_basis()) {
                channel.ops.push_back(pauli / 4.0);
            }
            break;
        case ChannelKind::TraceQubit1:
            for (const auto &s : sigma) {
                channel.ops.push_back(kron2(s, Matrix2cd::Identity()) / 2.0);
            }
            break;
        case ChannelKind::TraceQubit2:
            for (const auto &s : sigma) {
                channel.ops.push_back(kron2(Matrix2cd::Identity(), s) / 2.0);
            }
            break;
    }
    return channel;
}

}  // namespace depolsim
