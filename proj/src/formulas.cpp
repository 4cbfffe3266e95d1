#include "depolsim/formulas.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <string>

#include "depolsim/errors.hpp"

namespace depolsim {

namespace {

void check_formula_args(int n, double depth, double p, int min_n) {
    if (n < min_n) {
        throw ConfigError("formula: n must be >= " + std::to_string(min_n) + ", got "
                          + std::to_string(n));
    }
    if (!(depth >= 0.0)) {
        throw ConfigError("formula: depth must be >= 0");
    }
    if (!(p >= 0.0) || !(p <= 1.0)) {
        throw ConfigError("formula: p must lie in [0, 1], got " + std::to_string(p));
    }
}

/// (1 - base)^exponent with the base clamped at 0: the printed small-p forms
/// go negative for large p, where the model is saturated anyway. pow(0, 0) = 1
/// keeps q = 0 at depth 0.
double one_minus_pow(double base, double exponent) {
    return 1.0 - std::pow(std::max(base, 0.0), exponent);
}

}  // namespace

double heuristic_q_frac_1d(int n, double depth, double p) {
    check_formula_args(n, depth, p, 2);
    const double exponent = depth <= (5.0 / 3.0) * n
                                ? (9.0 / 80.0) * depth * depth
                                : (3.0 / 8.0) * n * depth - (5.0 / 16.0) * static_cast<double>(n) * n;
    return one_minus_pow(1.0 - 2.0 * p, exponent);
}

double empirical_q_frac_2d(int n, double depth, double p) {
    check_formula_args(n, depth, p, 4);
    const double root_n = std::sqrt(static_cast<double>(n));
    const double exponent = depth <= 3.226 * root_n
                                ? 0.026 * depth * depth * depth + 0.054 * depth * depth
                                : 0.5 * n * depth - 0.74 * n * root_n + 0.56 * n;
    return one_minus_pow(1.0 - 1.5 * p, exponent);
}

double cone_area(int n, double markov_steps) {
    if (n < 2) {
        throw ConfigError("cone_area: n must be >= 2");
    }
    if (!(markov_steps >= 0.0)) {
        throw ConfigError("cone_area: markov_steps must be >= 0");
    }
    const double t = markov_steps;
    return t <= (5.0 / 6.0) * n ? (9.0 / 20.0) * t * t
                                : (3.0 / 4.0) * n * t - (5.0 / 16.0) * static_cast<double>(n) * n;
}

double ones_chain_absorption(int n) {
    if (n < 4) {
        throw ConfigError("ones chain: n must be >= 4");
    }
    // Absorption probabilities h(x) = P(hit 0 before n | start x) solve
    // h = P h with h(0) = 1, h(n) = 0; assemble the interior linear system
    // (I - P_interior) h = b and solve it densely. Sizes here are tiny.
    const int interior = n - 1;
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(interior, interior);
    Eigen::VectorXd b = Eigen::VectorXd::Zero(interior);

    const auto row = [&](int x) { return x - 1; };
    for (int x = 1; x <= n - 1; ++x) {
        a(row(x), row(x)) = 1.0;
        if (x == 1) {
            b(row(x)) += 1.0 / 5.0;  // 1 -> 0 absorbs
            a(row(x), row(2)) -= 4.0 / 5.0;
        } else if (x == n - 1) {
            a(row(x), row(n - 2)) -= 1.0 / 5.0;
            // n-1 -> n absorbs at the wrong end, contributes 0
        } else {
            a(row(x), row(x)) -= 8.0 / 25.0;
            if (x + 2 <= n - 1) {
                a(row(x), row(x + 2)) -= 16.0 / 25.0;
            }
            if (x - 2 >= 1) {
                a(row(x), row(x - 2)) -= 1.0 / 25.0;
            } else {
                b(row(x)) += 1.0 / 25.0;  // 2 -> 0 absorbs
            }
        }
    }
    const Eigen::VectorXd h = a.partialPivLu().solve(b);
    return h(row(1));
}

double ones_chain_mean_increment() {
    return 2.0 * (16.0 / 25.0) - 2.0 * (1.0 / 25.0);
}

double rigorous_lower_bound_1d(int n, int depth, double p, double confidence) {
    check_formula_args(n, static_cast<double>(depth), p, 2);
    if (!(confidence > 0.0) || !(confidence < 0.75)) {
        throw ConfigError("rigorous bound: confidence constant must lie in (0, 3/4), got "
                          + std::to_string(confidence));
    }
    if (depth >= n) {
        throw ConfigError("rigorous bound: only valid below the wrap-around depth (D < n), got D = "
                          + std::to_string(depth) + ", n = " + std::to_string(n));
    }
    if (depth % 2 != 0) {
        throw ConfigError("rigorous bound: depth must be even, got " + std::to_string(depth));
    }
    const double t = depth / 2.0;
    const double slack = (4.0 / 3.0) * std::sqrt(2.0 * std::log(1.0 / (1.0 - std::sqrt(0.25 + confidence))));
    const double area = std::max(0.0, (3.0 / 5.0) * t * t - slack * std::pow(t, 1.5));
    const double step_flip = 2.0 * p - p * p;
    return confidence * (1.0 - std::pow(1.0 - step_flip, area));
}

std::string regime_name(Regime regime) {
    return regime == Regime::Shallow ? "shallow" : "deep";
}

Regime scaling_regime(Arch arch, int n, double depth) {
    if (n < 2) {
        throw ConfigError("scaling_regime: n must be >= 2");
    }
    if (!(depth >= 0.0)) {
        throw ConfigError("scaling_regime: depth must be >= 0");
    }
    double cutoff = 0.0;
    switch (arch) {
        case Arch::OneD:
            cutoff = (5.0 / 3.0) * n;
            break;
        case Arch::TwoD:
            cutoff = 3.226 * std::sqrt(static_cast<double>(n));
            break;
        case Arch::NonLocal:
            cutoff = 2.0 * std::log2(static_cast<double>(n));
            break;
    }
    return depth <= cutoff ? Regime::Shallow : Regime::Deep;
}

}  // namespace depolsim
