#pragma once

#include <cstddef>
#include <string>

#include <json.hpp>

namespace qlab {

enum class VerifyStatus { Holds, FailsAt, Error };

std::string to_string(VerifyStatus s);

/// Outcome of checking one identity record or congruence claim.
struct VerificationReport {
    std::string id;
    std::size_t precision = 0;     // truncation order / progression bound checked
    VerifyStatus status = VerifyStatus::Holds;
    std::size_t fail_index = 0;    // valid when status == FailsAt
    std::string lhs_coeff, rhs_coeff;
    std::string error;             // valid when status == Error
    std::string anchor;
    bool expected_to_hold = true;  // corpus 'expect' field; claims default true
    double millis = 0.0;

    bool holds() const { return status == VerifyStatus::Holds; }
    /// A report is as expected when a record expected to hold does, and a
    /// record expected to fail (a registered suspected typo) indeed fails.
    bool as_expected() const { return holds() == expected_to_hold; }

    nlohmann::json to_json() const;
};

}  // namespace qlab
