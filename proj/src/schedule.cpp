#include "depolsim/schedule.hpp"

#include <cmath>
#include <numeric>

#include "depolsim/errors.hpp"

namespace depolsim {

std::string arch_name(Arch arch) {
    switch (arch) {
        case Arch::OneD:
            return "1d";
        case Arch::TwoD:
            return "2d";
        case Arch::NonLocal:
            return "nl";
    }
    throw ConfigError("arch_name: unknown architecture");
}

Arch arch_from_name(const std::string &name) {
    if (name == "1d") {
        return Arch::OneD;
    }
    if (name == "2d") {
        return Arch::TwoD;
    }
    if (name == "nl") {
        return Arch::NonLocal;
    }
    throw ConfigError("unknown architecture '" + name + "' (expected 1d, 2d, or nl)");
}

Schedule::Schedule(Arch arch, int n) : arch_(arch), n_(n) {
    if (n < 2) {
        throw ConfigError("schedule: need at least 2 qubits, got " + std::to_string(n));
    }
    if (arch == Arch::TwoD) {
        const int side = static_cast<int>(std::lround(std::sqrt(static_cast<double>(n))));
        if (side * side != n) {
            throw ConfigError("2d schedule: n = " + std::to_string(n) + " is not a perfect square");
        }
        if (side % 2 != 0) {
            throw ConfigError("2d schedule: lattice side " + std::to_string(side)
                              + " must be even for the bond matchings to close periodically");
        }
        side_ = side;
    } else if (n % 2 != 0) {
        throw ConfigError(arch_name(arch) + " schedule: n = " + std::to_string(n) + " must be even");
    }
}

void Schedule::pairs_for_step(int step, Rng &rng, PairList &pairs) const {
    if (step < 0) {
        throw ConfigError("pairs_for_step: negative step index");
    }
    pairs.clear();
    pairs.reserve(n_ / 2);

    switch (arch_) {
        case Arch::OneD: {
            if (step % 2 == 0) {
                for (int i = 0; i < n_; i += 2) {
                    pairs.emplace_back(i, i + 1);
                }
            } else {
                for (int i = 1; i < n_; i += 2) {
                    pairs.emplace_back(i, (i + 1) % n_);
                }
            }
            return;
        }
        case Arch::TwoD: {
            const int s = side_;
            const auto at = [s](int row, int col) { return row * s + col; };
            switch (step % 4) {
                case 0:  // horizontal, even columns
                    for (int r = 0; r < s; ++r) {
                        for (int c = 0; c < s; c += 2) {
                            pairs.emplace_back(at(r, c), at(r, c + 1));
                        }
                    }
                    return;
                case 1:  // vertical, even rows
                    for (int c = 0; c < s; ++c) {
                        for (int r = 0; r < s; r += 2) {
                            pairs.emplace_back(at(r, c), at(r + 1, c));
                        }
                    }
                    return;
                case 2:  // horizontal, odd columns (wraps)
                    for (int r = 0; r < s; ++r) {
                        for (int c = 1; c < s; c += 2) {
                            pairs.emplace_back(at(r, c), at(r, (c + 1) % s));
                        }
                    }
                    return;
                default:  // vertical, odd rows (wraps)
                    for (int c = 0; c < s; ++c) {
                        for (int r = 1; r < s; r += 2) {
                            pairs.emplace_back(at(r, c), at((r + 1) % s, c));
                        }
                    }
                    return;
            }
        }
        case Arch::NonLocal: {
            // Fisher-Yates shuffle then pair consecutive entries: every perfect
            // matching arises from (n/2)! 2^(n/2) permutations, so the matching
            // is exactly uniform.
            thread_local std::vector<int> perm;
            perm.resize(n_);
            std::iota(perm.begin(), perm.end(), 0);
            for (int i = n_ - 1; i > 0; --i) {
                const int j = static_cast<int>(rng.below(static_cast<uint64_t>(i) + 1));
                std::swap(perm[i], perm[j]);
            }
            for (int i = 0; i < n_; i += 2) {
                pairs.emplace_back(perm[i], perm[i + 1]);
            }
            return;
        }
    }
}

}  // namespace depolsim
