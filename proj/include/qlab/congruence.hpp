#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <mutex>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "qlab/report.hpp"
#include "qlab/series.hpp"

namespace qlab {

/// Arithmetic progression A*n + B of coefficient indices.
struct Progression {
    std::uint64_t step = 1;     // A >= 1
    std::uint64_t residue = 0;  // 0 <= B < A
    std::uint64_t index(std::uint64_t n) const { return step * n + residue; }
};

/// target(A*n + B) == 0 (mod M) for all n.
struct ZeroClaim {
    std::string target;
    Progression prog;
    std::uint64_t modulus = 2;
};

/// target(lhs) == sum of coeff * target(rhs_i) (mod M) for all n.
struct RelationClaim {
    struct Term {
        long long coeff = 1;
        Progression prog;
    };
    std::string target;
    Progression lhs;
    std::vector<Term> rhs;
    std::uint64_t modulus = 2;
};

using Claim = std::variant<ZeroClaim, RelationClaim>;

/// Parse the claim mini-language, e.g.
///   DSOME[25n+6] == 0 mod 4
///   DSOME[15625n+651] == 5*DSOME[25n+1] + DSOME[625n+26] - 5*DSOME[n] mod 8
Claim parse_claim(std::string_view text);
std::string claim_to_string(const Claim& c);

/// A progression found by the scanner with every checked coefficient == 0.
struct ScanHit {
    Progression prog;
    std::uint64_t modulus = 2;
    std::uint64_t verified_up_to = 0;  // largest n checked
    bool confirmed = false;            // re-verified at doubled n_max

    nlohmann::json to_json() const;
};

/// Congruence checks and scans over coefficient streams of named target
/// series (built-in: DSOME, SOME). Target series are computed in the ModM
/// ring, cached per (target, modulus), and shared read-only.
class CongruenceLab {
public:
    using TargetFn = std::function<Series(std::size_t n, std::uint64_t M)>;

    CongruenceLab();

    /// Override or add a target series generator.
    void register_target(const std::string& name, TargetFn fn);

    /// Coefficients 0..n_max of the target reduced mod M.
    Series series_for_target(const std::string& target, std::uint64_t n_max, std::uint64_t M);

    VerificationReport check_zero(const ZeroClaim& claim, std::uint64_t n_max);
    VerificationReport check_relation(const RelationClaim& claim, std::uint64_t n_max);
    VerificationReport check(const Claim& claim, std::uint64_t n_max);

    /// Every (A, B, M) with A in [step_lo, step_hi], M in moduli, whose
    /// progression coefficients vanish mod M for all n <= n_max. Requires
    /// n_max+1 >= min_support (>= 20). Hits implied by another hit
    /// ((A',B',M') with A'|A, B = B' mod A', M | M') are suppressed; the
    /// survivors are re-verified at 2*n_max and flagged accordingly.
    std::vector<ScanHit> scan(const std::string& target, std::uint64_t step_lo,
                              std::uint64_t step_hi, const std::set<std::uint64_t>& moduli,
                              std::uint64_t n_max, std::uint64_t min_support = 20);

    /// For lambda running over the residue class solving 24*lambda == 1
    /// (mod 5^alpha), check SOME(lambda) == 0 (mod 5^alpha) up to lambda_max.
    VerificationReport check_ag_conjecture(unsigned alpha, std::uint64_t lambda_max);

private:
    std::map<std::string, TargetFn> targets_;
    std::mutex cache_mutex_;
    std::map<std::pair<std::string, std::uint64_t>, Series> cache_;
};

}  // namespace qlab
