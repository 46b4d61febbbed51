#include "qlab/congruence.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>

#include "qlab/config.hpp"
#include "qlab/modmath.hpp"
#include "qlab/qproducts.hpp"

namespace qlab {

// ---- claim mini-language -----------------------------------------------------

namespace {

class ClaimParser {
public:
    explicit ClaimParser(std::string_view text) : text_(text) {}

    Claim parse() {
        const std::string target = ident();
        const Progression lhs = bracketed_progression();
        skip_ws();
        if (!text_.substr(pos_).starts_with("==")) fail("'=='");
        pos_ += 2;
        skip_ws();

        std::vector<RelationClaim::Term> terms;
        bool zero_rhs = false;
        if (peek() == '0' && !std::isdigit(static_cast<unsigned char>(peek_at(1)))) {
            ++pos_;
            zero_rhs = true;
        } else {
            long long sign = 1;
            for (;;) {
                terms.push_back(term(sign, target));
                skip_ws();
                if (consume('+')) {
                    sign = 1;
                } else if (consume('-')) {
                    sign = -1;
                } else {
                    break;
                }
                skip_ws();
            }
        }
        skip_ws();
        if (!(consume('m') && consume('o') && consume('d'))) fail("'mod'");
        skip_ws();
        const std::uint64_t modulus = integer();
        skip_ws();
        if (pos_ != text_.size()) fail("end of claim");
        if (modulus < 2) fail("modulus >= 2");

        if (zero_rhs) return ZeroClaim{target, lhs, modulus};
        return RelationClaim{target, lhs, std::move(terms), modulus};
    }

private:
    std::string_view text_;
    std::size_t pos_ = 0;

    [[noreturn]] void fail(const std::string& expected) { throw ParseError(pos_, expected); }
    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }
    char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
    char peek_at(std::size_t k) const { return pos_ + k < text_.size() ? text_[pos_ + k] : '\0'; }
    bool consume(char c) {
        if (peek() == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    std::uint64_t integer() {
        if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("integer");
        std::uint64_t v = 0;
        while (std::isdigit(static_cast<unsigned char>(peek()))) {
            v = v * 10 + static_cast<std::uint64_t>(text_[pos_] - '0');
            if (v > (1ULL << 62)) fail("smaller integer");
            ++pos_;
        }
        return v;
    }

    std::string ident() {
        skip_ws();
        std::string name;
        while (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_') {
            name += text_[pos_++];
        }
        if (name.empty()) fail("target name");
        return name;
    }

    Progression bracketed_progression() {
        skip_ws();
        if (!consume('[')) fail("'['");
        skip_ws();
        std::uint64_t step = 1;
        if (std::isdigit(static_cast<unsigned char>(peek()))) step = integer();
        skip_ws();
        if (!consume('n')) fail("'n'");
        skip_ws();
        std::uint64_t residue = 0;
        if (consume('+')) {
            skip_ws();
            residue = integer();
        }
        skip_ws();
        if (!consume(']')) fail("']'");
        if (step == 0) fail("step >= 1");
        if (residue >= step) fail("residue < step");
        return Progression{step, residue};
    }

    RelationClaim::Term term(long long sign, const std::string& lhs_target) {
        skip_ws();
        long long coeff = 1;
        if (std::isdigit(static_cast<unsigned char>(peek()))) {
            coeff = static_cast<long long>(integer());
            skip_ws();
            if (consume('*')) skip_ws();
        }
        const std::string name = ident();
        if (name != lhs_target) fail("the same target as the left-hand side");
        return RelationClaim::Term{sign * coeff, bracketed_progression()};
    }
};

std::string progression_to_string(const Progression& p) {
    std::string s = p.step == 1 ? "n" : std::to_string(p.step) + "n";
    if (p.residue) s += "+" + std::to_string(p.residue);
    return s;
}

}  // namespace

Claim parse_claim(std::string_view text) { return ClaimParser(text).parse(); }

std::string claim_to_string(const Claim& c) {
    if (const auto* z = std::get_if<ZeroClaim>(&c)) {
        return z->target + "[" + progression_to_string(z->prog) + "] == 0 mod " +
               std::to_string(z->modulus);
    }
    const auto& r = std::get<RelationClaim>(c);
    std::string s = r.target + "[" + progression_to_string(r.lhs) + "] ==";
    bool first = true;
    for (const auto& t : r.rhs) {
        const long long a = std::abs(t.coeff);
        s += first ? (t.coeff < 0 ? " -" : " ") : (t.coeff < 0 ? " - " : " + ");
        if (a != 1) s += std::to_string(a) + "*";
        s += r.target + "[" + progression_to_string(t.prog) + "]";
        first = false;
    }
    return s + " mod " + std::to_string(r.modulus);
}

// ---- the lab -------------------------------------------------------------------

nlohmann::json ScanHit::to_json() const {
    return nlohmann::json{{"step", prog.step},
                          {"residue", prog.residue},
                          {"modulus", modulus},
                          {"verified_up_to", verified_up_to},
                          {"confirmed", confirmed}};
}

CongruenceLab::CongruenceLab() {
    targets_["DSOME"] = [](std::size_t n, std::uint64_t M) {
        return dsome_gf_lambert(n, Ring::mod(M));
    };
    targets_["SOME"] = [](std::size_t n, std::uint64_t M) {
        return some_gf(n, Ring::mod(M));
    };
}

void CongruenceLab::register_target(const std::string& name, TargetFn fn) {
    targets_[name] = std::move(fn);
}

Series CongruenceLab::series_for_target(const std::string& target, std::uint64_t n_max,
                                        std::uint64_t M) {
    const std::size_t need = static_cast<std::size_t>(n_max) + 1;
    if (need > config::precision_cap()) {
        throw ResourceLimitError("index bound " + std::to_string(n_max) +
                                 " exceeds the precision cap");
    }
    const auto key = std::make_pair(target, M);
    {
        std::lock_guard<std::mutex> lock(cache_mutex_);
        auto it = cache_.find(key);
        if (it != cache_.end() && it->second.precision() >= need)
            return truncate(it->second, need);
    }
    auto t = targets_.find(target);
    if (t == targets_.end()) throw Error("unknown congruence target: " + target);
    Series s = t->second(need, M);
    {
        std::lock_guard<std::mutex> lock(cache_mutex_);
        auto it = cache_.find(key);
        if (it == cache_.end() || it->second.precision() < s.precision())
            cache_.insert_or_assign(key, s);
    }
    return s;
}

namespace {

VerificationReport make_report(std::string id, std::uint64_t n_max) {
    VerificationReport rep;
    rep.id = std::move(id);
    rep.precision = static_cast<std::size_t>(n_max);
    return rep;
}

}  // namespace

VerificationReport CongruenceLab::check_zero(const ZeroClaim& claim, std::uint64_t n_max) {
    VerificationReport rep = make_report(claim_to_string(Claim{claim}), n_max);
    const auto t0 = std::chrono::steady_clock::now();
    try {
        const Series s = series_for_target(claim.target, claim.prog.index(n_max), claim.modulus);
        for (std::uint64_t n = 0; n <= n_max; ++n) {
            const std::uint64_t v = s.mod_at(claim.prog.index(n));
            if (v != 0) {
                rep.status = VerifyStatus::FailsAt;
                rep.fail_index = static_cast<std::size_t>(n);
                rep.lhs_coeff = std::to_string(v);
                rep.rhs_coeff = "0";
                break;
            }
        }
    } catch (const std::exception& e) {
        rep.status = VerifyStatus::Error;
        rep.error = e.what();
    }
    rep.millis = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
                     .count();
    return rep;
}

VerificationReport CongruenceLab::check_relation(const RelationClaim& claim, std::uint64_t n_max) {
    VerificationReport rep = make_report(claim_to_string(Claim{claim}), n_max);
    const auto t0 = std::chrono::steady_clock::now();
    try {
        std::uint64_t max_index = claim.lhs.index(n_max);
        for (const auto& t : claim.rhs) max_index = std::max(max_index, t.prog.index(n_max));
        const std::uint64_t M = claim.modulus;
        const Series s = series_for_target(claim.target, max_index, M);

        for (std::uint64_t n = 0; n <= n_max; ++n) {
            std::uint64_t rhs = 0;
            for (const auto& t : claim.rhs) {
                long long c = t.coeff % static_cast<long long>(M);
                if (c < 0) c += static_cast<long long>(M);
                rhs = mod_add(rhs,
                              mod_mul(static_cast<std::uint64_t>(c), s.mod_at(t.prog.index(n)), M),
                              M);
            }
            const std::uint64_t lhs = s.mod_at(claim.lhs.index(n));
            if (lhs != rhs) {
                rep.status = VerifyStatus::FailsAt;
                rep.fail_index = static_cast<std::size_t>(n);
                rep.lhs_coeff = std::to_string(lhs);
                rep.rhs_coeff = std::to_string(rhs);
                break;
            }
        }
    } catch (const std::exception& e) {
        rep.status = VerifyStatus::Error;
        rep.error = e.what();
    }
    rep.millis = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
                     .count();
    return rep;
}

VerificationReport CongruenceLab::check(const Claim& claim, std::uint64_t n_max) {
    if (const auto* z = std::get_if<ZeroClaim>(&claim)) return check_zero(*z, n_max);
    return check_relation(std::get<RelationClaim>(claim), n_max);
}

std::vector<ScanHit> CongruenceLab::scan(const std::string& target, std::uint64_t step_lo,
                                         std::uint64_t step_hi,
                                         const std::set<std::uint64_t>& moduli,
                                         std::uint64_t n_max, std::uint64_t min_support) {
    if (step_lo < 1 || step_hi < step_lo) throw Error("invalid step range");
    if (min_support < 20) throw Error("min_support must be >= 20");
    if (moduli.empty()) throw Error("scan needs at least one modulus");

    std::vector<ScanHit> candidates;
    if (n_max + 1 < min_support) return candidates;  // nothing can reach min_support

    for (const std::uint64_t M : moduli) {
        const Series s = series_for_target(target, step_hi * n_max + (step_hi - 1), M);
        for (std::uint64_t A = step_lo; A <= step_hi; ++A) {
            for (std::uint64_t B = 0; B < A; ++B) {
                bool all_zero = true;
                for (std::uint64_t n = 0; n <= n_max; ++n) {
                    if (s.mod_at(A * n + B) != 0) {
                        all_zero = false;
                        break;
                    }
                }
                if (all_zero) candidates.push_back(ScanHit{{A, B}, M, n_max, false});
            }
        }
    }

    // Subsumption: drop (A,B,M) when another candidate (A',B',M') already
    // implies it (A'|A, B = B' mod A', M | M'). The relation is transitive,
    // so filtering against all candidates is order-independent.
    std::vector<ScanHit> kept;
    for (const auto& x : candidates) {
        bool subsumed = false;
        for (const auto& y : candidates) {
            if (x.prog.step == y.prog.step && x.prog.residue == y.prog.residue &&
                x.modulus == y.modulus) {
                continue;
            }
            if (x.prog.step % y.prog.step == 0 &&
                x.prog.residue % y.prog.step == y.prog.residue && y.modulus % x.modulus == 0) {
                subsumed = true;
                break;
            }
        }
        if (!subsumed) kept.push_back(x);
    }

    // Re-verify each survivor on twice the range; demote to unconfirmed when
    // that fails or exceeds the resource caps.
    for (auto& hit : kept) {
        try {
            const VerificationReport rep = check_zero(
                ZeroClaim{target, hit.prog, hit.modulus}, 2 * n_max);
            hit.confirmed = rep.holds();
            if (hit.confirmed) hit.verified_up_to = 2 * n_max;
        } catch (const ResourceLimitError&) {
            hit.confirmed = false;
        }
    }
    return kept;
}

VerificationReport CongruenceLab::check_ag_conjecture(unsigned alpha, std::uint64_t lambda_max) {
    if (alpha < 1 || alpha > 3) throw Error("alpha must be 1, 2, or 3");
    std::uint64_t mod = 1;
    for (unsigned i = 0; i < alpha; ++i) mod *= 5;
    const std::uint64_t lambda0 = mod_inverse(24 % mod, mod);

    VerificationReport rep = make_report(
        "SOME(lambda) == 0 mod " + std::to_string(mod) + " for 24*lambda == 1 (mod " +
            std::to_string(mod) + "), lambda <= " + std::to_string(lambda_max),
        lambda_max);
    const auto t0 = std::chrono::steady_clock::now();
    try {
        const Series s = series_for_target("SOME", lambda_max, mod);
        for (std::uint64_t lambda = lambda0; lambda <= lambda_max; lambda += mod) {
            const std::uint64_t v = s.mod_at(lambda);
            if (v != 0) {
                rep.status = VerifyStatus::FailsAt;
                rep.fail_index = static_cast<std::size_t>(lambda);
                rep.lhs_coeff = std::to_string(v);
                rep.rhs_coeff = "0";
                break;
            }
        }
    } catch (const std::exception& e) {
        rep.status = VerifyStatus::Error;
        rep.error = e.what();
    }
    rep.millis = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
                     .count();
    return rep;
}

}  // namespace qlab
