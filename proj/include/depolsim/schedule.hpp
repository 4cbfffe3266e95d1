#pragma once

#include <string>
#include <utility>
#include <vector>

#include "depolsim/rng.hpp"

namespace depolsim {

/// Qubit connectivity of the circuit whose error spread is being modelled.
enum class Arch {
    OneD,      ///< ring of n qubits, nearest-neighbour gates
    TwoD,      ///< side x side periodic square lattice (n = side^2)
    NonLocal,  ///< all-to-all; a fresh uniformly random perfect matching per step
};

std::string arch_name(Arch arch);                 // "1d", "2d", "nl"
Arch arch_from_name(const std::string &name);     // throws ConfigError

using PairList = std::vector<std::pair<int, int>>;

/// Produces the disjoint pairing of qubits acted on at each Markov step.
///
/// OneD alternates the two ring matchings: even steps pair (2i, 2i+1), odd
/// steps pair (2i+1, 2i+2 mod n). TwoD cycles through four bond families on
/// the row-major torus: horizontal-even, vertical-even, horizontal-odd,
/// vertical-odd (step mod 4). NonLocal ignores the step index and draws a
/// uniformly random perfect matching from `rng` on every call.
class Schedule {
  public:
    Schedule(Arch arch, int n);  // validates n for the architecture

    Arch arch() const { return arch_; }
    int qubit_count() const { return n_; }
    int side() const { return side_; }  // 0 unless arch == TwoD

    /// Fills `pairs` with the matching for `step`; every qubit appears exactly
    /// once. `rng` is consumed only by the NonLocal architecture.
    void pairs_for_step(int step, Rng &rng, PairList &pairs) const;

  private:
    Arch arch_;
    int n_;
    int side_ = 0;
};

}  // namespace depolsim
