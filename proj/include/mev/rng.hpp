#pragma once

#include <array>
#include <cstdint>

#include "mev/special.hpp"

namespace mev {

/// xoshiro256++ (Blackman & Vigna). Chosen over std engines for a fixed,
/// documented output sequence so seeded runs reproduce bit-for-bit anywhere.
class Xoshiro256pp {
public:
    explicit Xoshiro256pp(std::uint64_t seed) {
        // splitmix64 state expansion
        std::uint64_t x = seed;
        for (auto& word : state_) {
            x += 0x9e3779b97f4a7c15ULL;
            std::uint64_t z = x;
            z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
            z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
            word = z ^ (z >> 31);
        }
    }

    std::uint64_t next() {
        const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    /// Uniform on the open interval (0,1): 53-bit mantissa offset by 1/2 ulp.
    double uniform01() { return (static_cast<double>(next() >> 11) + 0.5) * 0x1.0p-53; }

    /// Standard normal by inversion, for reproducibility across platforms.
    double normal() { return std_normal_quantile(uniform01()); }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
    std::array<std::uint64_t, 4> state_{};
};

}  // namespace mev
