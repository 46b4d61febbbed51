#pragma once

#include <cstdint>
#include <string>

#include "qlab/errors.hpp"

namespace qlab {

/// Coefficient ring tag: exact rationals, or integers mod M with 2 <= M <= 2^32.
struct Ring {
    enum class Kind : std::uint8_t { ExactRational, ModM };

    Kind kind = Kind::ExactRational;
    std::uint64_t modulus = 0;  // meaningful iff kind == ModM

    static Ring exact() { return Ring{Kind::ExactRational, 0}; }

    static Ring mod(std::uint64_t m) {
        if (m < 2 || m > (std::uint64_t{1} << 32)) {
            throw Error("modulus must satisfy 2 <= M <= 2^32, got " + std::to_string(m));
        }
        return Ring{Kind::ModM, m};
    }

    bool is_exact() const { return kind == Kind::ExactRational; }

    friend bool operator==(const Ring& a, const Ring& b) {
        return a.kind == b.kind && (a.is_exact() || a.modulus == b.modulus);
    }
    friend bool operator!=(const Ring& a, const Ring& b) { return !(a == b); }

    std::string to_string() const {
        return is_exact() ? "exact" : "mod " + std::to_string(modulus);
    }
};

}  // namespace qlab
