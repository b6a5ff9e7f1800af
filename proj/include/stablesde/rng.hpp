#pragma once

#include <cmath>
#include <cstdint>

namespace stablesde {

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9E3779B97F4A7C15ull;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

inline std::uint64_t rotl64(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
}

}  // namespace detail

/// Deterministic random stream keyed by (master seed, stream index).
///
/// xoshiro256++ seeded through SplitMix64. The same (seed, index) always
/// replays the same sequence bit-for-bit; distinct indices under one seed
/// give decorrelated streams, so Monte Carlo paths can be keyed by path
/// index and run on any number of workers. Integer state only: results
/// do not depend on platform or optimization level.
class RngStream {
  public:
    RngStream(std::uint64_t master_seed, std::uint64_t stream_index) {
        std::uint64_t idx = stream_index;
        std::uint64_t x = master_seed ^ detail::splitmix64(idx);
        for (auto& s : state_) s = detail::splitmix64(x);
    }

    std::uint64_t next_u64() {
        const std::uint64_t result = detail::rotl64(state_[0] + state_[3], 23) + state_[0];
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = detail::rotl64(state_[3], 45);
        return result;
    }

    /// Uniform on the open interval (0,1). The 53-bit draw is offset by
    /// half an ulp, so 0 and 1 are unreachable by construction rather than
    /// by rejection; every variate costs exactly one 64-bit word.
    double uniform_open01() {
        return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
    }

    /// Uniform on the open interval (-pi/2, pi/2); endpoints excluded, so
    /// cos of the result is strictly positive.
    double uniform_angle() {
        constexpr double pi = 3.14159265358979323846;
        return pi * (uniform_open01() - 0.5);
    }

    /// Standard exponential (mean 1), strictly positive.
    double exponential() {
        return -std::log(uniform_open01());
    }

  private:
    std::uint64_t state_[4];
};

}  // namespace stablesde
