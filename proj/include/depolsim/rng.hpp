#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

namespace depolsim {

/// SplitMix64 finalizer (Steele, Lea, Flood 2014). Bijective 64-bit mix.
inline constexpr uint64_t mix64(uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

inline constexpr uint64_t GOLDEN_GAMMA = 0x9E3779B97F4A7C15ULL;

/// Seed of the RNG stream that owns trajectory (or sample) `index` under
/// `master_seed`. Every Monte Carlo routine in this library derives one
/// independent stream per index through this function, so results depend only
/// on (master_seed, index) and never on thread count or execution order.
inline constexpr uint64_t stream_seed(uint64_t master_seed, uint64_t index) {
    return mix64(master_seed + (index + 1) * GOLDEN_GAMMA);
}

/// xoshiro256++ (Blackman, Vigna 2019) with SplitMix64 state expansion.
///
/// Deliberately not std::mt19937 + std::*_distribution: the standard
/// distributions are not bit-reproducible across library implementations,
/// and the determinism contract here is byte-exact output.
class Rng {
  public:
    explicit Rng(uint64_t seed) {
        for (auto &word : state_) {
            seed += GOLDEN_GAMMA;
            word = mix64(seed);
        }
    }

    uint64_t next() {
        const uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
        const uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    /// Uniform double in [0, 1), 53-bit mantissa.
    double uniform() {
        return static_cast<double>(next() >> 11) * 0x1.0p-53;
    }

    /// True with probability p (one uniform consumed, always).
    bool chance(double p) {
        return uniform() < p;
    }

    /// Uniform integer in [0, n), unbiased via rejection.
    uint64_t below(uint64_t n) {
        const uint64_t threshold = -n % n;  // 2^64 mod n
        for (;;) {
            const uint64_t r = next();
            if (r >= threshold) {
                return r % n;
            }
        }
    }

    /// Standard normal via Box-Muller (pairs are cached).
    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1;
        do {
            u1 = uniform();
        } while (u1 == 0.0);
        const double radius = std::sqrt(-2.0 * std::log(u1));
        const double angle = 2.0 * std::numbers::pi * uniform();
        spare_ = radius * std::sin(angle);
        have_spare_ = true;
        return radius * std::cos(angle);
    }

  private:
    static constexpr uint64_t rotl(uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }

    uint64_t state_[4];
    double spare_ = 0.0;
    bool have_spare_ = false;
};

}  // namespace depolsim
