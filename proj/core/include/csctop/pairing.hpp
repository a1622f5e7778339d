#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <utility>

namespace csctop {

// Bijective pairing of natural-number codes, used to pack pairs of indices
// into a single basis/point code and to unpack them again.
//
// pair_code(a, b) = (a+b)(a+b+1)/2 + b, the diagonal enumeration of N x N.

inline std::uint64_t pair_code(std::uint64_t a, std::uint64_t b) {
    const std::uint64_t s = a + b;
    if (s < a || s > 0xFFFFFFFFULL) {
        throw std::overflow_error("pair_code: arguments too large");
    }
    return s * (s + 1) / 2 + b;
}

inline std::pair<std::uint64_t, std::uint64_t> unpair_code(std::uint64_t z) {
    // Find s with s(s+1)/2 <= z < (s+1)(s+2)/2 by integer search from a
    // floating-point estimate, then read off the coordinates.
    std::uint64_t s = static_cast<std::uint64_t>(
        (std::sqrt(8.0L * static_cast<long double>(z) + 1.0L) - 1.0L) / 2.0L);
    while (s * (s + 1) / 2 > z) --s;
    while ((s + 1) * (s + 2) / 2 <= z) ++s;
    const std::uint64_t b = z - s * (s + 1) / 2;
    return {s - b, b};
}

// Bijection between signed and unsigned codes: 0,-1,1,-2,2,... -> 0,1,2,3,4,...
inline std::uint64_t zigzag_code(std::int64_t n) {
    return n >= 0 ? 2 * static_cast<std::uint64_t>(n)
                  : 2 * static_cast<std::uint64_t>(-(n + 1)) + 1;
}

inline std::int64_t unzigzag_code(std::uint64_t z) {
    return (z % 2 == 0) ? static_cast<std::int64_t>(z / 2)
                        : -static_cast<std::int64_t>(z / 2) - 1;
}

} // namespace csctop
