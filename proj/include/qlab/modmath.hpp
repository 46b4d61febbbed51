#pragma once

#include <cstdint>
#include <optional>

#include "qlab/errors.hpp"

namespace qlab {

// Scalar arithmetic mod m, m <= 2^32 so sums fit in 64 bits and products in 128.

inline std::uint64_t mod_add(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    std::uint64_t s = a + b;
    return s >= m ? s - m : s;
}

inline std::uint64_t mod_sub(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return a >= b ? a - b : a + m - b;
}

inline std::uint64_t mod_neg(std::uint64_t a, std::uint64_t m) { return a ? m - a : 0; }

inline std::uint64_t mod_mul(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

/// Inverse of a mod m when gcd(a, m) = 1, via the extended Euclidean algorithm.
inline std::optional<std::uint64_t> try_mod_inverse(std::uint64_t a, std::uint64_t m) {
    a %= m;
    std::int64_t r0 = static_cast<std::int64_t>(m), r1 = static_cast<std::int64_t>(a);
    std::int64_t t0 = 0, t1 = 1;
    while (r1 != 0) {
        std::int64_t q = r0 / r1;
        std::int64_t r2 = r0 - q * r1;
        std::int64_t t2 = t0 - q * t1;
        r0 = r1; r1 = r2;
        t0 = t1; t1 = t2;
    }
    if (r0 != 1) return std::nullopt;
    if (t0 < 0) t0 += static_cast<std::int64_t>(m);
    return static_cast<std::uint64_t>(t0);
}

inline std::uint64_t mod_inverse(std::uint64_t a, std::uint64_t m) {
    auto inv = try_mod_inverse(a, m);
    if (!inv) {
        throw NonUnitLeadingError(std::to_string(a) + " is not invertible mod " +
                                  std::to_string(m));
    }
    return *inv;
}

}  // namespace qlab
