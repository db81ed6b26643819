#pragma once

#include <cstdint>

// Counter-based randomness: every shot draw is a pure function of
// (seed, shot index), so results do not depend on how shots are scheduled
// across worker threads.
namespace qfrac::rng {

inline constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ull;

// splitmix64 finalizer (bijective, full avalanche).
inline std::uint64_t mix(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xbf58476d1ce4e5b9ull;
    z ^= z >> 27;
    z *= 0x94d049bb133111ebull;
    z ^= z >> 31;
    return z;
}

// Raw 64-bit value for shot `index` of the stream owned by `seed`.
inline std::uint64_t shot_value(std::uint64_t seed, std::uint64_t index) {
    return mix(seed + (index + 1) * kGolden);
}

// Independent child seed, e.g. the two halves of a comparison run.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t tag) {
    return mix((seed ^ mix(tag + kGolden)) + kGolden);
}

// Uniform double in [0,1) from the top 53 bits of z.
inline double unit_double(std::uint64_t z) {
    return static_cast<double>(z >> 11) * 0x1.0p-53;
}

// Uniform integer in [0, 2^width) from the top `width` bits of z. Exact:
// 2^width divides 2^64. Chosen so that for the same z,
// unit_bits(z, k) < m  <=>  unit_double(z) < m / 2^k for any m, k <= 53.
inline std::uint64_t unit_bits(std::uint64_t z, int width) {
    return z >> (64 - width);
}

}  // namespace qfrac::rng
