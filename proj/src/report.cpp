#include "qlab/report.hpp"

namespace qlab {

std::string to_string(VerifyStatus s) {
    switch (s) {
        case VerifyStatus::Holds: return "holds";
        case VerifyStatus::FailsAt: return "fails_at";
        case VerifyStatus::Error: return "error";
    }
    return "unknown";
}

nlohmann::json VerificationReport::to_json() const {
    nlohmann::json j{
        {"id", id},
        {"precision", precision},
        {"status", to_string(status)},
        {"anchor", anchor},
        {"expected", expected_to_hold ? "holds" : "fails"},
        {"as_expected", as_expected()},
        {"millis", millis},
    };
    if (status == VerifyStatus::FailsAt) {
        j["fail_index"] = fail_index;
        j["lhs_coeff"] = lhs_coeff;
        j["rhs_coeff"] = rhs_coeff;
    }
    if (status == VerifyStatus::Error) j["error"] = error;
    return j;
}

}  // namespace qlab
