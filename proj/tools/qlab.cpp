// qlab: compute SOME/DSOME values, expand q-series expressions, verify the
// identity corpus, and check or scan coefficient congruences.

#include <CLI11.hpp>
#include <json.hpp>

#include <atomic>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <thread>

#include "qlab/config.hpp"
#include "qlab/congruence.hpp"
#include "qlab/named_series.hpp"
#include "qlab/partitions.hpp"
#include "qlab/qproducts.hpp"
#include "qlab/registry.hpp"

namespace {

constexpr const char* kToolVersion = "qlab 0.1.0";

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitParse = 2;
constexpr int kExitResource = 3;
constexpr int kExitFailure = 4;

struct OutputOptions {
    std::string format = "text";  // text | json | csv
    std::string out_path;         // empty -> stdout
};

void write_output(const OutputOptions& opts, const std::string& payload) {
    if (opts.out_path.empty()) {
        std::cout << payload;
        return;
    }
    std::ofstream f(opts.out_path);
    if (!f) throw qlab::Error("cannot open output file: " + opts.out_path);
    f << payload;
}

nlohmann::json envelope(const nlohmann::json& config, nlohmann::json results) {
    return nlohmann::json{
        {"tool_version", kToolVersion}, {"config", config}, {"results", std::move(results)}};
}

// ---- values -------------------------------------------------------------------

struct ValueRow {
    std::uint64_t n;
    std::string value;
    bool consistent = true;
};

std::string render_table(const OutputOptions& opts, const nlohmann::json& config,
                         const std::vector<ValueRow>& rows, bool cross_checked) {
    if (opts.format == "csv") {
        std::ostringstream ss;
        ss << "n,value\n";
        for (const auto& r : rows) ss << r.n << "," << r.value << "\n";
        return ss.str();
    }
    if (opts.format == "json") {
        nlohmann::json results = nlohmann::json::array();
        for (const auto& r : rows) results.push_back({{"n", r.n}, {"value", r.value}});
        nlohmann::json j = envelope(config, std::move(results));
        if (cross_checked) j["consistent"] = true;
        return j.dump(2) + "\n";
    }
    std::ostringstream ss;
    for (const auto& r : rows) ss << r.n << "\t" << r.value << "\n";
    if (cross_checked) ss << "# consistent across modes\n";
    return ss.str();
}

int run_values(const std::string& target, std::uint64_t n_from, std::uint64_t n_to,
               const std::string& mode, const OutputOptions& opts) {
    if (target != "DSOME" && target != "SOME")
        throw qlab::ParseError(0, "target DSOME or SOME");
    if (n_to < n_from) throw qlab::ParseError(0, "n_to >= n_from");
    const bool is_dsome = target == "DSOME";
    if (mode == "closed" && !is_dsome)
        throw qlab::ParseError(0, "closed form exists only for DSOME");

    const bool want_brute = mode == "brute" || mode == "all";
    const bool want_lambert = mode == "lambert" || mode == "all";
    const bool want_closed = (mode == "closed" || mode == "all") && is_dsome;
    if (!want_brute && !want_lambert && !want_closed)
        throw qlab::ParseError(0, "mode brute, lambert, closed, or all");

    const std::uint64_t brute_bound = is_dsome ? 100 : 60;
    if (want_brute && n_to > brute_bound) {
        throw qlab::ResourceLimitError("brute-force " + target + " is limited to n <= " +
                                       std::to_string(brute_bound));
    }

    std::optional<qlab::Series> lambert, closed;
    const std::size_t need = static_cast<std::size_t>(n_to) + 1;
    if (want_lambert)
        lambert = is_dsome ? qlab::dsome_gf_lambert(need) : qlab::some_gf(need);
    if (want_closed) closed = qlab::dsome_gf_closed(need);

    std::vector<ValueRow> rows;
    for (std::uint64_t n = n_from; n <= n_to; ++n) {
        std::string value;
        if (want_brute) {
            const long long v = is_dsome ? qlab::dsome_bruteforce(static_cast<unsigned>(n))
                                         : qlab::some_bruteforce(static_cast<unsigned>(n));
            value = std::to_string(v);
        }
        if (lambert) {
            const std::string v = lambert->coeff_string(static_cast<std::size_t>(n));
            if (!value.empty() && v != value)
                throw qlab::CrossCheckMismatchError(target + "(" + std::to_string(n) +
                                                    "): brute " + value + " vs lambert " + v);
            value = v;
        }
        if (closed) {
            const std::string v = closed->coeff_string(static_cast<std::size_t>(n));
            if (!value.empty() && v != value)
                throw qlab::CrossCheckMismatchError(target + "(" + std::to_string(n) +
                                                    "): " + value + " vs closed " + v);
            value = v;
        }
        rows.push_back({n, value});
    }

    const nlohmann::json config{{"target", target}, {"from", n_from}, {"to", n_to},
                                {"mode", mode}};
    write_output(opts, render_table(opts, config, rows, mode == "all"));
    return kExitOk;
}

// ---- expand -------------------------------------------------------------------

int run_expand(const std::string& text, std::size_t order, std::uint64_t modulus,
               const OutputOptions& opts) {
    const qlab::ExprPtr e = qlab::parse_expr(text);
    const qlab::Ring ring = modulus ? qlab::Ring::mod(modulus) : qlab::Ring::exact();
    const qlab::Series s = qlab::eval(e, order, ring, qlab::default_eval_env());

    std::vector<ValueRow> rows;
    for (std::size_t i = 0; i < s.precision(); ++i)
        rows.push_back({i, s.coeff_string(i)});
    nlohmann::json config{{"expression", text}, {"precision", order}, {"ring", ring.to_string()}};
    write_output(opts, render_table(opts, config, rows, false));
    return kExitOk;
}

// ---- verify -------------------------------------------------------------------

qlab::IdentityRegistry load_registry(const std::string& corpus_flag) {
    if (!corpus_flag.empty()) return qlab::IdentityRegistry::from_file(corpus_flag);
    if (const char* env = std::getenv("QLAB_CORPUS"); env && *env)
        return qlab::IdentityRegistry::from_file(env);
    return qlab::IdentityRegistry::builtin();
}

std::string report_line(const qlab::VerificationReport& rep) {
    std::ostringstream ss;
    const char* tag = rep.holds() ? "HOLDS " : rep.status == qlab::VerifyStatus::FailsAt
                                                   ? "FAILS "
                                                   : "ERROR ";
    ss << tag << rep.id << " (N=" << rep.precision << ")";
    if (rep.status == qlab::VerifyStatus::FailsAt)
        ss << " at index " << rep.fail_index << ": " << rep.lhs_coeff << " vs " << rep.rhs_coeff;
    if (rep.status == qlab::VerifyStatus::Error) ss << ": " << rep.error;
    if (!rep.expected_to_hold) ss << (rep.as_expected() ? " [expected failure]" : " [UNEXPECTED]");
    ss << " [" << static_cast<long long>(rep.millis) << " ms]";
    return ss.str();
}

std::string render_reports(const OutputOptions& opts, const nlohmann::json& config,
                           const std::vector<qlab::VerificationReport>& reports) {
    if (opts.format == "json") {
        nlohmann::json results = nlohmann::json::array();
        for (const auto& r : reports) results.push_back(r.to_json());
        return envelope(config, std::move(results)).dump(2) + "\n";
    }
    if (opts.format == "csv") {
        std::ostringstream ss;
        ss << "id,precision,status,fail_index,lhs,rhs,as_expected\n";
        for (const auto& r : reports) {
            ss << r.id << "," << r.precision << "," << qlab::to_string(r.status) << ",";
            if (r.status == qlab::VerifyStatus::FailsAt)
                ss << r.fail_index << "," << r.lhs_coeff << "," << r.rhs_coeff;
            else
                ss << ",,";
            ss << "," << (r.as_expected() ? "yes" : "no") << "\n";
        }
        return ss.str();
    }
    std::ostringstream ss;
    for (const auto& r : reports) ss << report_line(r) << "\n";
    return ss.str();
}

int run_verify(const std::string& corpus_flag, const std::vector<std::string>& ids,
               const std::string& filter, std::optional<std::size_t> order, unsigned threads,
               const OutputOptions& opts) {
    const qlab::IdentityRegistry reg = load_registry(corpus_flag);

    std::vector<qlab::VerificationReport> reports;
    if (!ids.empty()) {
        for (const auto& id : ids) reports.push_back(reg.verify(id, order));
    } else {
        reports = reg.verify_all(order, threads, filter);
    }

    nlohmann::json config{{"corpus", corpus_flag.empty() ? "builtin" : corpus_flag},
                          {"threads", threads}};
    if (order) config["precision"] = *order;
    write_output(opts, render_reports(opts, config, reports));

    for (const auto& r : reports)
        if (!r.as_expected()) return kExitFailure;
    return kExitOk;
}

// ---- check --------------------------------------------------------------------

int run_check(std::vector<std::string> claim_texts, const std::string& file,
              std::uint64_t n_max, unsigned threads, const OutputOptions& opts) {
    if (!file.empty()) {
        std::ifstream in(file);
        if (!in) throw qlab::Error("cannot open claim file: " + file);
        std::string line;
        while (std::getline(in, line)) {
            if (const auto hash = line.find('#'); hash != std::string::npos)
                line = line.substr(0, hash);
            if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
            claim_texts.push_back(line);
        }
    }
    if (claim_texts.empty()) throw qlab::ParseError(0, "at least one claim");

    std::vector<qlab::Claim> claims;
    for (const auto& t : claim_texts) claims.push_back(qlab::parse_claim(t));

    qlab::CongruenceLab lab;
    std::vector<qlab::VerificationReport> reports(claims.size());
    const unsigned workers = std::max(1u, std::min<unsigned>(threads, claims.size()));
    if (workers == 1) {
        for (std::size_t i = 0; i < claims.size(); ++i) reports[i] = lab.check(claims[i], n_max);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (;;) {
                    const std::size_t i = next.fetch_add(1);
                    if (i >= claims.size()) return;
                    reports[i] = lab.check(claims[i], n_max);
                }
            });
        }
        for (auto& t : pool) t.join();
    }

    nlohmann::json config{{"nmax", n_max}, {"threads", threads}};
    write_output(opts, render_reports(opts, config, reports));

    for (const auto& r : reports) {
        if (r.status == qlab::VerifyStatus::Error) {
            if (r.error.find("cap") != std::string::npos ||
                r.error.find("exceeds") != std::string::npos)
                return kExitResource;
            return kExitError;
        }
        if (!r.holds()) return kExitFailure;
    }
    return kExitOk;
}

// ---- scan ---------------------------------------------------------------------

int run_scan(const std::string& target, std::uint64_t step, std::uint64_t step_lo,
             std::uint64_t step_hi, const std::vector<std::uint64_t>& mods, std::uint64_t n_max,
             std::uint64_t min_support, const OutputOptions& opts) {
    if (step) step_lo = step_hi = step;
    if (!step_lo || !step_hi) throw qlab::ParseError(0, "--step or --step-lo/--step-hi");
    if (mods.empty()) throw qlab::ParseError(0, "at least one --mod");

    qlab::CongruenceLab lab;
    const auto hits = lab.scan(target, step_lo, step_hi,
                               std::set<std::uint64_t>(mods.begin(), mods.end()), n_max,
                               min_support);

    nlohmann::json config{{"target", target},       {"step_lo", step_lo},
                          {"step_hi", step_hi},     {"nmax", n_max},
                          {"min_support", min_support}};
    if (opts.format == "json") {
        nlohmann::json results = nlohmann::json::array();
        for (const auto& h : hits) results.push_back(h.to_json());
        write_output(opts, envelope(config, std::move(results)).dump(2) + "\n");
    } else if (opts.format == "csv") {
        std::ostringstream ss;
        ss << "step,residue,modulus,verified_up_to,confirmed\n";
        for (const auto& h : hits)
            ss << h.prog.step << "," << h.prog.residue << "," << h.modulus << ","
               << h.verified_up_to << "," << (h.confirmed ? "yes" : "no") << "\n";
        write_output(opts, ss.str());
    } else {
        std::ostringstream ss;
        for (const auto& h : hits) {
            ss << target << "[" << h.prog.step << "n";
            if (h.prog.residue) ss << "+" << h.prog.residue;
            ss << "] == 0 mod "
               << h.modulus << "  (n <= " << h.verified_up_to
               << (h.confirmed ? ", reconfirmed)" : ", unconfirmed)") << "\n";
        }
        if (hits.empty()) ss << "# no hits\n";
        write_output(opts, ss.str());
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"truncated q-series laboratory for SOME/DSOME partition statistics"};
    app.require_subcommand(1);
    app.fallthrough();

    OutputOptions out;
    std::size_t cap = qlab::config::kDefaultPrecisionCap;
    app.add_option("--format", out.format, "output format: text, json, csv")
        ->check(CLI::IsMember({"text", "json", "csv"}))
        ->capture_default_str();
    app.add_option("--out", out.out_path, "write output to a file instead of stdout");
    app.add_option("--cap", cap, "global precision cap")->capture_default_str();

    // values
    auto* values = app.add_subcommand("values", "print SOME/DSOME values");
    std::string target, mode = "all";
    std::uint64_t n_from = 0, n_to = 0;
    values->add_option("target", target, "DSOME or SOME")->required();
    values->add_option("from", n_from, "first index")->required();
    values->add_option("to", n_to, "last index")->required();
    values->add_option("--mode", mode, "brute, lambert, closed, or all")
        ->capture_default_str();

    // expand
    auto* expand = app.add_subcommand("expand", "expand an expression to coefficients");
    std::string expr_text;
    std::size_t order = 32;
    std::uint64_t modulus = 0;
    expand->add_option("expression", expr_text, "expression in the identity mini-language")
        ->required();
    expand->add_option("-N,--precision", order, "number of coefficients")
        ->capture_default_str();
    expand->add_option("--mod", modulus, "evaluate in Z/M instead of exact rationals");

    // verify
    auto* verify = app.add_subcommand("verify", "verify identity corpus records");
    std::string corpus_flag, filter;
    std::vector<std::string> ids;
    std::optional<std::size_t> verify_order;
    unsigned threads = 1;
    bool all = false;
    std::size_t order_opt = 0;
    verify->add_flag("--all", all, "verify the whole corpus (default)");
    verify->add_option("--id", ids, "verify specific record ids");
    verify->add_option("filter", filter, "verify records whose id starts with this prefix");
    auto* nopt = verify->add_option("-N,--precision", order_opt,
                                    "override every record's truncation order");
    verify->add_option("--corpus", corpus_flag, "corpus file (default: QLAB_CORPUS or builtin)");
    verify->add_option("--threads", threads, "worker threads")->capture_default_str();

    // check
    auto* check = app.add_subcommand("check", "check congruence claims");
    std::vector<std::string> claim_texts;
    std::string claim_file;
    std::uint64_t n_max = 100;
    unsigned check_threads = 1;
    check->add_option("claims", claim_texts, "claims like 'DSOME[4n] == 0 mod 4'");
    check->add_option("--file", claim_file, "file with one claim per line");
    check->add_option("--nmax", n_max, "progression indices to check")->capture_default_str();
    check->add_option("--threads", check_threads, "worker threads")->capture_default_str();

    // scan
    auto* scan = app.add_subcommand("scan", "scan for vanishing progressions");
    std::string scan_target;
    std::uint64_t step = 0, step_lo = 0, step_hi = 0, scan_nmax = 100, min_support = 20;
    std::vector<std::uint64_t> scan_mods;
    scan->add_option("target", scan_target, "DSOME or SOME")->required();
    scan->add_option("--step", step, "single progression step");
    scan->add_option("--step-lo", step_lo, "smallest step");
    scan->add_option("--step-hi", step_hi, "largest step");
    scan->add_option("--mod", scan_mods, "moduli to test (repeat or comma-separate)")
        ->delimiter(',');
    scan->add_option("--nmax", scan_nmax, "progression indices to check")
        ->capture_default_str();
    scan->add_option("--min-support", min_support, "minimum checked indices per hit")
        ->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : kExitParse;
    }

    try {
        qlab::config::set_precision_cap(cap);
        if (*nopt) verify_order = order_opt;
        if (values->parsed()) return run_values(target, n_from, n_to, mode, out);
        if (expand->parsed()) return run_expand(expr_text, order, modulus, out);
        if (verify->parsed()) return run_verify(corpus_flag, ids, filter, verify_order,
                                                threads, out);
        if (check->parsed())
            return run_check(claim_texts, claim_file, n_max, check_threads, out);
        if (scan->parsed())
            return run_scan(scan_target, step, step_lo, step_hi, scan_mods, scan_nmax,
                            min_support, out);
        return kExitError;
    } catch (const qlab::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParse;
    } catch (const qlab::ResourceLimitError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitResource;
    } catch (const qlab::CrossCheckMismatchError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFailure;
    } catch (const qlab::UnknownIdentityError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParse;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    }
}
