#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>

namespace qds {

/// Deterministic random source shared by every stochastic operation of a run.
///
/// Generator: xoshiro256++ 1.0 (Blackman & Vigna), state seeded through
/// splitmix64. Real-valued draws are derived from the raw 64-bit stream with
/// fixed arithmetic, so a seed fully determines the draw sequence on any
/// platform with IEEE-754 doubles. Normal deviates use the rational
/// inverse-normal-CDF approximation of Wichura's PPND16 routine, one uniform
/// per deviate.
class RandomSource {
public:
    explicit RandomSource(std::uint64_t seed) {
        // splitmix64 expansion of the seed into the 256-bit state
        std::uint64_t x = seed;
        for (auto& word : _state) {
            x += 0x9E3779B97F4A7C15ULL;
            std::uint64_t z = x;
            z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
            z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
            word = z ^ (z >> 31);
        }
        if ((_state[0] | _state[1] | _state[2] | _state[3]) == 0)
            _state[0] = 1; // xoshiro state must not be all-zero
    }

    std::uint64_t next_u64() {
        const std::uint64_t result = rotl(_state[0] + _state[3], 23) + _state[0];
        const std::uint64_t t = _state[1] << 17;
        _state[2] ^= _state[0];
        _state[3] ^= _state[1];
        _state[1] ^= _state[2];
        _state[0] ^= _state[3];
        _state[2] ^= t;
        _state[3] = rotl(_state[3], 45);
        return result;
    }

    /// Uniform double in [0, 1), 53 significant bits.
    double uniform01() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    /// Uniform double in the open interval (0, 1); safe input for the
    /// inverse normal CDF.
    double uniform_open01() {
        return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
    }

    /// Uniform integer in [0, n). Bitmask rejection sampling: unbiased and
    /// platform-independent.
    std::uint64_t uniform_below(std::uint64_t n) {
        if (n == 0)
            throw std::invalid_argument("uniform_below: n must be positive");
        std::uint64_t mask = n - 1;
        mask |= mask >> 1;
        mask |= mask >> 2;
        mask |= mask >> 4;
        mask |= mask >> 8;
        mask |= mask >> 16;
        mask |= mask >> 32;
        std::uint64_t v;
        do {
            v = next_u64() & mask;
        } while (v >= n);
        return v;
    }

    /// Standard normal deviate via inverse-CDF transform.
    double normal() { return inverse_normal_cdf(uniform_open01()); }

    double normal(double mean, double stddev) { return mean + stddev * normal(); }

    /// Inverse of the standard normal CDF (PPND16 rational approximation,
    /// relative accuracy about 1e-15 over (0,1)).
    static double inverse_normal_cdf(double p);

private:
    static std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }

    std::array<std::uint64_t, 4> _state{};
};

} // namespace qds
