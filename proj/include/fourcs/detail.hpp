#pragma once

#include <cstdint>
#include <random>
#include <utility>

namespace fourcs::detail {

/// Key for an unordered vertex pair, usable in hash maps and sorted indexes.
inline std::uint64_t pair_key(std::uint32_t a, std::uint32_t b) {
    if (a > b) std::swap(a, b);
    return (std::uint64_t(a) << 32) | b;
}

inline std::pair<std::uint32_t, std::uint32_t> key_pair(std::uint64_t k) {
    return {std::uint32_t(k >> 32), std::uint32_t(k)};
}

/// Index of pair (i, j), i < j < n, in the row-major upper triangle of an n x n grid.
inline std::uint64_t tri_index(std::uint64_t n, std::uint64_t i, std::uint64_t j) {
    if (i > j) std::swap(i, j);
    return i * (2 * n - i - 1) / 2 + (j - i - 1);
}

/// Uniform integer in [0, n) from an mt19937_64 stream, rejection-based so the
/// result depends only on the generator sequence, not on the standard library.
inline std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t n) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t x;
    do {
        x = rng();
    } while (x >= limit);
    return x % n;
}

/// Uniform double in (0, 1]; never returns 0 so log() is always finite.
inline double uniform_unit(std::mt19937_64& rng) {
    return (double(rng() >> 11) + 1.0) * 0x1.0p-53;
}

/// Binomial coefficient C(n, k) for k <= 4; exact for all n where the result
/// fits in 64 bits.
inline std::uint64_t choose4(std::uint64_t n, int k) {
    if (k < 0 || std::uint64_t(k) > n) return 0;
    unsigned __int128 r = 1;
    for (int i = 0; i < k; ++i) r *= n - i;
    for (int i = 2; i <= k; ++i) r /= i;
    return std::uint64_t(r);
}

} // namespace fourcs::detail
