#include "qlab/registry.hpp"

#include <atomic>
#include <chrono>
#include <fstream>
#include <sstream>
#include <thread>

#include "qlab/named_series.hpp"

namespace qlab {

namespace detail {
const char* builtin_corpus_text();  // generated from corpus/identities.qid
}

namespace {

std::string strip(std::string_view s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return std::string(s.substr(b, e - b));
}

std::uint64_t parse_number(const std::string& value, const std::string& record_id,
                           const char* what) {
    try {
        std::size_t used = 0;
        const std::uint64_t v = std::stoull(value, &used);
        if (used != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw Error("record '" + record_id + "': bad " + std::string(what) + " '" + value + "'");
    }
}

std::vector<std::string> split_fields(std::string_view line) {
    std::vector<std::string> out;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= line.size(); ++i) {
        if (i == line.size() || line[i] == '|') {
            out.push_back(strip(line.substr(start, i - start)));
            start = i + 1;
        }
    }
    return out;
}

void parse_attributes(const std::string& field, IdentityRecord& rec) {
    std::size_t pos = 0;
    while (pos < field.size()) {
        while (pos < field.size() && std::isspace(static_cast<unsigned char>(field[pos]))) ++pos;
        if (pos >= field.size()) break;
        const std::size_t eq = field.find('=', pos);
        if (eq == std::string::npos) throw Error("malformed attribute in record '" + rec.id + "'");
        const std::string key = field.substr(pos, eq - pos);
        if (key == "anchor") {  // free text, consumes the rest of the field
            rec.anchor = strip(field.substr(eq + 1));
            return;
        }
        std::size_t end = field.find(' ', eq + 1);
        if (end == std::string::npos) end = field.size();
        const std::string value = field.substr(eq + 1, end - eq - 1);
        if (key == "n") {
            rec.default_precision = static_cast<std::size_t>(parse_number(value, rec.id, "order"));
        } else if (key == "expect") {
            if (value != "holds" && value != "fails")
                throw Error("record '" + rec.id + "': expect must be holds or fails");
            rec.expected_to_hold = value == "holds";
        } else {
            throw Error("record '" + rec.id + "': unknown attribute '" + key + "'");
        }
        pos = end;
    }
}

IdentityRecord parse_record(std::string_view line) {
    const auto fields = split_fields(line);
    if (fields.size() < 5) {
        throw Error("identity record needs at least 5 '|'-separated fields: " +
                    std::string(line));
    }
    IdentityRecord rec;
    rec.id = fields[0];
    rec.lhs_text = fields[1];
    rec.rhs_text = fields[2];
    rec.clearing_text = fields[3];
    rec.lhs = parse_expr(rec.lhs_text);
    rec.rhs = parse_expr(rec.rhs_text);
    rec.clearing = parse_expr(rec.clearing_text);

    const std::string& ring = fields[4];
    if (ring == "exact") {
        rec.mode = VerifyMode::Equality;
    } else if (ring == "mod") {
        if (fields.size() < 6 || fields[5].empty())
            throw Error("record '" + rec.id + "': mod ring needs a modulus field");
        rec.mode = VerifyMode::CongruenceMod;
        rec.modulus = parse_number(fields[5], rec.id, "modulus");
        if (rec.modulus < 2) throw Error("record '" + rec.id + "': modulus must be >= 2");
    } else {
        throw Error("record '" + rec.id + "': ring must be 'exact' or 'mod'");
    }
    if (fields.size() >= 7) parse_attributes(fields[6], rec);
    return rec;
}

}  // namespace

IdentityRegistry IdentityRegistry::from_text(std::string_view text) {
    IdentityRegistry reg;
    std::size_t line_no = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t nl = text.find('\n', start);
        if (nl == std::string_view::npos) nl = text.size();
        std::string_view line = text.substr(start, nl - start);
        start = nl + 1;
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string_view::npos)
            line = line.substr(0, hash);
        if (strip(line).empty()) continue;
        try {
            reg.records_.push_back(parse_record(line));
        } catch (const ParseError& e) {
            throw Error("corpus line " + std::to_string(line_no) + ": " + e.what());
        }
        for (std::size_t i = 0; i + 1 < reg.records_.size(); ++i) {
            if (reg.records_[i].id == reg.records_.back().id)
                throw Error("duplicate identity id: " + reg.records_.back().id);
        }
    }
    return reg;
}

IdentityRegistry IdentityRegistry::builtin() { return from_text(detail::builtin_corpus_text()); }

IdentityRegistry IdentityRegistry::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open corpus file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return from_text(ss.str());
}

const IdentityRecord* IdentityRegistry::find(std::string_view id) const {
    for (const auto& r : records_)
        if (r.id == id) return &r;
    return nullptr;
}

VerificationReport IdentityRegistry::verify(std::string_view id,
                                            std::optional<std::size_t> n) const {
    const IdentityRecord* rec = find(id);
    if (!rec) throw UnknownIdentityError(std::string(id));
    return verify(*rec, n);
}

VerificationReport IdentityRegistry::verify(const IdentityRecord& rec,
                                            std::optional<std::size_t> n) const {
    const std::size_t order = n.value_or(rec.default_precision);
    VerificationReport rep;
    rep.id = rec.id;
    rep.precision = order;
    rep.anchor = rec.anchor;
    rep.expected_to_hold = rec.expected_to_hold;

    const auto t0 = std::chrono::steady_clock::now();
    try {
        const Ring ring = Ring::exact();
        const EvalEnv env = default_eval_env();

        const Series clearing = eval(rec.clearing, order, ring, env);
        const auto lead = clearing.zero_prefix_order();
        if (!lead) throw Error("record '" + rec.id + "': clearing series is zero");

        const Series lhs = mul(eval(rec.lhs, order, ring, env), clearing);
        const Series rhs = mul(eval(rec.rhs, order, ring, env), clearing);

        if (rec.mode == VerifyMode::Equality) {
            const CompareResult cmp = equal_to_precision(lhs, rhs, order);
            if (!cmp.equal) {
                rep.status = VerifyStatus::FailsAt;
                rep.fail_index = cmp.index;
                rep.lhs_coeff = cmp.lhs;
                rep.rhs_coeff = cmp.rhs;
            }
        } else {
            const auto fail = scaled_congruence_first_failure(sub(lhs, rhs), rec.modulus);
            if (fail) {
                rep.status = VerifyStatus::FailsAt;
                rep.fail_index = *fail;
                rep.lhs_coeff = lhs.coeff_string(*fail);
                rep.rhs_coeff = rhs.coeff_string(*fail);
            }
        }
    } catch (const std::exception& e) {
        rep.status = VerifyStatus::Error;
        rep.error = e.what();
    }
    const auto t1 = std::chrono::steady_clock::now();
    rep.millis = std::chrono::duration<double, std::milli>(t1 - t0).count();
    return rep;
}

std::vector<VerificationReport> IdentityRegistry::verify_all(std::optional<std::size_t> n,
                                                             unsigned threads,
                                                             std::string_view filter) const {
    std::vector<const IdentityRecord*> selected;
    for (const auto& r : records_)
        if (filter.empty() || std::string_view(r.id).starts_with(filter)) selected.push_back(&r);

    std::vector<VerificationReport> reports(selected.size());
    if (selected.empty()) return reports;

    const unsigned workers =
        std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(selected.size())));
    if (workers == 1) {
        for (std::size_t i = 0; i < selected.size(); ++i) reports[i] = verify(*selected[i], n);
        return reports;
    }

    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= selected.size()) return;
                reports[i] = verify(*selected[i], n);
            }
        });
    }
    for (auto& t : pool) t.join();
    return reports;
}

}  // namespace qlab
