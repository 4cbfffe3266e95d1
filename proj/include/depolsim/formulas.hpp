#pragma once

#include "depolsim/schedule.hpp"

namespace depolsim {

/// Heuristic closed-form depolarized fraction for the 1D ring, from the
/// deterministic light-cone growth model:
///   q/n = 1 - (1-2p)^((9/80) D^2)                     for D <= (5/3) n
///   q/n = 1 - (1-2p)^((3/8) n D - (5/16) n^2)         for D >  (5/3) n
/// The two branches agree exactly at the crossover.
double heuristic_q_frac_1d(int n, double depth, double p);

/// Fitted depolarized fraction for the 2D torus:
///   q/n = 1 - (1-1.5p)^(0.026 D^3 + 0.054 D^2)            for D <= 3.226 sqrt(n)
///   q/n = 1 - (1-1.5p)^(0.5 n D - 0.74 n^(3/2) + 0.56 n)  for D >  3.226 sqrt(n)
double empirical_q_frac_2d(int n, double depth, double p);

/// Space-time volume swept by the light cone of one error over `markov_steps`
/// steps on a ring of n qubits: (9/20) t^2 until the cone wraps at t = (5/6) n,
/// then (3/4) n t - (5/16) n^2. Continuous at the crossover.
double cone_area(int n, double markov_steps);

/// Exact absorption probability at 0 for the length-of-the-error-string chain
/// on {0, ..., n}, started from length 1. Interior moves: +2 w.p. 16/25,
/// -2 w.p. 1/25, stay w.p. 8/25; near the boundary 1 -> 0 w.p. 1/5,
/// 1 -> 2 w.p. 4/5 (and mirrored at n-1); 0 and n absorb.
double ones_chain_absorption(int n);

/// Mean drift of the string length per step away from the boundaries:
/// 2*(16/25) - 2*(1/25) = 6/5.
double ones_chain_mean_increment();

/// Rigorous lower bound on the depolarized fraction for the 1D ring at
/// circuit depth D < n, martingale-concentration flavoured:
///   |A| = max(0, (3/5) t^2 - (4/3) sqrt(2 ln(1/(1 - sqrt(1/4 + c)))) t^(3/2)),
///   bound = c (1 - (1 - step_flip)^|A|),   t = D/2.
/// `confidence` is the constant c, required to lie in (0, 3/4).
double rigorous_lower_bound_1d(int n, int depth, double p, double confidence);

enum class Regime { Shallow, Deep };

std::string regime_name(Regime regime);  // "shallow", "deep"

/// Depth classification per architecture: 1D is shallow iff D <= (5/3) n,
/// 2D iff D <= 3.226 sqrt(n), non-local iff D <= 2 log2(n). The non-local
/// constant is a labelling convention for the O(log n) crossover, not a fit.
Regime scaling_regime(Arch arch, int n, double depth);

}  // namespace depolsim
