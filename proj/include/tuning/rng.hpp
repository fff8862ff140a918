#pragma once

#include <cstdint>
#include <random>

namespace tuning {

/// 64-bit Mersenne Twister, period 2^19937 - 1. Any 64-bit seed (including 0)
/// is valid.
using Rng = std::mt19937_64;

/// Seed for an independent stream, mixed from (seed, stream) with SplitMix64.
constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
    auto mix = [](std::uint64_t z) {
        z += 0x9e3779b97f4a7c15ULL;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    };
    return mix(mix(seed) ^ (stream * 0xd1b54a32d192ed03ULL + 0x632be59bd9b4e019ULL));
}

/// Uniform on [0, 1) with 53 random bits.
inline double uniform01(Rng& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

} // namespace tuning
