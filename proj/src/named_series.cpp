#include "qlab/named_series.hpp"

#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <string>

#include "qlab/qproducts.hpp"
#include "qlab/rr.hpp"

namespace qlab {

namespace {

Series dissected_closed(std::size_t n, std::size_t m, std::size_t r) {
    // base precision m*n + r gives exactly n dissected coefficients
    return dissect(dsome_gf_closed(m * n + r), m, r);
}

using Builder = std::function<Series(std::size_t)>;  // exact ring

const std::map<std::string, Builder>& builders() {
    static const std::map<std::string, Builder> table = {
        {"ls", [](std::size_t n) { return lambert_inner_some(n); }},
        {"ld", [](std::size_t n) { return lambert_inner_dsome(n); }},
        {"some_gf", [](std::size_t n) { return some_gf(n); }},
        {"dsome_lambert", [](std::size_t n) { return dsome_gf_lambert(n); }},
        {"dsome_closed", [](std::size_t n) { return dsome_gf_closed(n); }},
        {"dsome_5n1", [](std::size_t n) { return dissected_closed(n, 5, 1); }},
        {"dsome_125n26", [](std::size_t n) { return dissected_closed(n, 125, 26); }},
        {"rr_g_sum", [](std::size_t n) { return rr_G(n, RRSide::Sum); }},
        {"rr_g_prod", [](std::size_t n) { return rr_G(n, RRSide::Product); }},
        {"rr_h_sum", [](std::size_t n) { return rr_H(n, RRSide::Sum); }},
        {"rr_h_prod", [](std::size_t n) { return rr_H(n, RRSide::Product); }},
    };
    return table;
}

std::mutex g_cache_mutex;
std::map<std::string, Series> g_cache;  // longest exact series computed per name
std::map<std::string, std::mutex> g_inflight;  // serializes builds per name

Series exact_named(const std::string& name, std::size_t n) {
    auto lookup = [&]() -> std::optional<Series> {
        std::lock_guard<std::mutex> lock(g_cache_mutex);
        auto it = g_cache.find(name);
        if (it != g_cache.end() && it->second.precision() >= n)
            return truncate(it->second, n);
        return std::nullopt;
    };
    if (auto hit = lookup()) return *hit;

    auto bit = builders().find(name);
    if (bit == builders().end()) throw Error("unknown named series '@" + name + "'");

    // one builder per name at a time, so concurrent verifiers don't redo a
    // multi-second expansion; re-check the cache once the lock is ours
    std::mutex* build_mutex;
    {
        std::lock_guard<std::mutex> lock(g_cache_mutex);
        build_mutex = &g_inflight[name];
    }
    std::lock_guard<std::mutex> build_lock(*build_mutex);
    if (auto hit = lookup()) return *hit;

    Series s = bit->second(n);
    {
        std::lock_guard<std::mutex> lock(g_cache_mutex);
        auto it = g_cache.find(name);
        if (it == g_cache.end() || it->second.precision() < s.precision())
            g_cache.insert_or_assign(name, s);
    }
    return s;
}

}  // namespace

Series named_series(std::string_view name, std::size_t n, const Ring& ring) {
    Series s = exact_named(std::string(name), n);
    return ring.is_exact() ? s : reduce_mod(s, ring.modulus);
}

const std::vector<std::string>& named_series_ids() {
    static const std::vector<std::string> ids = [] {
        std::vector<std::string> v;
        for (const auto& [k, _] : builders()) v.push_back(k);
        return v;
    }();
    return ids;
}

EvalEnv default_eval_env() {
    return EvalEnv{[](std::string_view name, std::size_t n, const Ring& ring) {
        return named_series(name, n, ring);
    }};
}

}  // namespace qlab
