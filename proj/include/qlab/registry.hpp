#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qlab/expr.hpp"
#include "qlab/report.hpp"

namespace qlab {

enum class VerifyMode { Equality, CongruenceMod };

/// One corpus entry. Both sides are multiplied by the clearing expression
/// before comparison; Equality compares coefficients exactly, CongruenceMod(M)
/// applies the scaled-congruence rule (denominators folded into the modulus).
struct IdentityRecord {
    std::string id;
    ExprPtr lhs, rhs, clearing;
    VerifyMode mode = VerifyMode::Equality;
    std::uint64_t modulus = 0;  // CongruenceMod only
    std::size_t default_precision = 512;
    std::string anchor;
    bool expected_to_hold = true;  // false marks registered suspected typos

    std::string lhs_text, rhs_text, clearing_text;
};

/// The corpus of identities, loaded from the built-in table or from a file.
///
/// Record format, one per line ('#' starts a comment):
///   id | lhs | rhs | clearing | ring | modulus [| key=value ...]
/// ring is 'exact' (equality) or 'mod' (congruence; modulus required).
/// Recognized attributes: n=<default precision>, expect=holds|fails,
/// anchor=<free text, must come last>.
class IdentityRegistry {
public:
    static IdentityRegistry builtin();
    static IdentityRegistry from_file(const std::string& path);
    static IdentityRegistry from_text(std::string_view text);

    const std::vector<IdentityRecord>& records() const { return records_; }
    const IdentityRecord* find(std::string_view id) const;

    /// Verify one record at the given order (record default when nullopt).
    VerificationReport verify(const IdentityRecord& rec,
                              std::optional<std::size_t> n = std::nullopt) const;
    VerificationReport verify(std::string_view id,
                              std::optional<std::size_t> n = std::nullopt) const;

    /// Verify every record whose id starts with `filter` (all when empty).
    /// Reports come back in corpus order regardless of the thread count.
    std::vector<VerificationReport> verify_all(std::optional<std::size_t> n = std::nullopt,
                                               unsigned threads = 1,
                                               std::string_view filter = {}) const;

private:
    std::vector<IdentityRecord> records_;
};

}  // namespace qlab
