#pragma once

#include <cstdint>
#include <random>

namespace rainbow {

// All randomness in the library flows through these helpers so that a fixed
// seed reproduces bit-for-bit, independent of the standard library's
// distribution implementations.

inline std::uint64_t rand_u64(std::mt19937_64 &rng) { return rng(); }

// uniform integer in [0, bound), bound >= 1
inline std::uint64_t rand_below(std::mt19937_64 &rng, std::uint64_t bound) {
    // rejection sampling on the top of the range to avoid modulo bias
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t x;
    do {
        x = rng();
    } while (x >= limit);
    return x % bound;
}

// uniform double in [0, 1)
inline double rand_unit(std::mt19937_64 &rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

template <typename T>
void shuffle_vec(std::vector<T> &v, std::mt19937_64 &rng) {
    for (std::size_t i = v.size(); i > 1; --i) {
        std::size_t j = static_cast<std::size_t>(rand_below(rng, i));
        std::swap(v[i - 1], v[j]);
    }
}

// stream derived from (seed, index); used when independent sub-streams are needed
inline std::mt19937_64 sub_rng(std::uint64_t seed, std::uint64_t index) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
    return std::mt19937_64(seq);
}

} // namespace rainbow
