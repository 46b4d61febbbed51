// Python bindings for the q-series laboratory: expression expansion,
// SOME/DSOME values, identity verification, congruence checks and scans.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <set>

#include "qlab/congruence.hpp"
#include "qlab/named_series.hpp"
#include "qlab/partitions.hpp"
#include "qlab/qproducts.hpp"
#include "qlab/registry.hpp"
#include "qlab/rr.hpp"

namespace py = pybind11;

namespace {

py::object py_int(const std::string& decimal) {
    return py::module_::import("builtins").attr("int")(decimal);
}

py::object coeff_to_py(const qlab::Series& s, std::size_t i) {
    if (!s.ring().is_exact()) return py::int_(s.mod_at(i));
    const qlab::Rational& c = s.rat_at(i);
    if (qlab::is_integral(c)) return py_int(qlab::rat_num(c).str());
    static py::object fraction = py::module_::import("fractions").attr("Fraction");
    return fraction(py_int(qlab::rat_num(c).str()), py_int(qlab::rat_den(c).str()));
}

py::object json_to_py(const nlohmann::json& j) {
    switch (j.type()) {
        case nlohmann::json::value_t::object: {
            py::dict d;
            for (const auto& [k, v] : j.items()) d[py::str(k)] = json_to_py(v);
            return d;
        }
        case nlohmann::json::value_t::array: {
            py::list l;
            for (const auto& v : j) l.append(json_to_py(v));
            return l;
        }
        case nlohmann::json::value_t::string: return py::str(j.get<std::string>());
        case nlohmann::json::value_t::boolean: return py::bool_(j.get<bool>());
        case nlohmann::json::value_t::number_integer: return py::int_(j.get<long long>());
        case nlohmann::json::value_t::number_unsigned:
            return py::int_(j.get<unsigned long long>());
        case nlohmann::json::value_t::number_float: return py::float_(j.get<double>());
        default: return py::none();
    }
}

py::list expand(const std::string& text, std::size_t n, std::optional<std::uint64_t> mod) {
    const qlab::ExprPtr e = qlab::parse_expr(text);
    const qlab::Ring ring = mod ? qlab::Ring::mod(*mod) : qlab::Ring::exact();
    qlab::Series s = [&] {
        py::gil_scoped_release release;
        return qlab::eval(e, n, ring, qlab::default_eval_env());
    }();
    py::list out;
    for (std::size_t i = 0; i < s.precision(); ++i) out.append(coeff_to_py(s, i));
    return out;
}

py::list values(const std::string& target, std::uint64_t lo, std::uint64_t hi,
                const std::string& mode) {
    if (target != "DSOME" && target != "SOME") throw qlab::Error("target must be DSOME or SOME");
    if (hi < lo) throw qlab::Error("hi must be >= lo");
    const bool is_dsome = target == "DSOME";

    std::vector<std::string> decs;
    {
        py::gil_scoped_release release;
        const std::size_t need = static_cast<std::size_t>(hi) + 1;
        std::optional<qlab::Series> series;
        if (mode == "lambert" || mode == "all")
            series = is_dsome ? qlab::dsome_gf_lambert(need) : qlab::some_gf(need);
        else if (mode == "closed" && is_dsome)
            series = qlab::dsome_gf_closed(need);
        else if (mode != "brute")
            throw qlab::Error("mode must be brute, lambert, closed, or all");

        for (std::uint64_t n = lo; n <= hi; ++n) {
            std::string v;
            if (mode == "brute" || mode == "all") {
                const long long b = is_dsome ? qlab::dsome_bruteforce(static_cast<unsigned>(n))
                                             : qlab::some_bruteforce(static_cast<unsigned>(n));
                v = std::to_string(b);
            }
            if (series) {
                const std::string sv = series->coeff_string(static_cast<std::size_t>(n));
                if (!v.empty() && sv != v)
                    throw qlab::CrossCheckMismatchError(target + "(" + std::to_string(n) +
                                                        "): " + v + " vs " + sv);
                v = sv;
            }
            decs.push_back(std::move(v));
        }
    }
    py::list out;
    for (const auto& d : decs) out.append(py_int(d));
    return out;
}

py::list verify(std::optional<std::string> id, std::optional<std::size_t> n,
                std::optional<std::string> corpus, unsigned threads,
                const std::string& filter) {
    std::vector<qlab::VerificationReport> reports;
    {
        py::gil_scoped_release release;
        const qlab::IdentityRegistry reg = corpus ? qlab::IdentityRegistry::from_file(*corpus)
                                                  : qlab::IdentityRegistry::builtin();
        if (id)
            reports.push_back(reg.verify(*id, n));
        else
            reports = reg.verify_all(n, threads, filter);
    }
    py::list out;
    for (const auto& r : reports) out.append(json_to_py(r.to_json()));
    return out;
}

py::object check(const std::string& claim_text, std::uint64_t nmax) {
    const qlab::Claim claim = qlab::parse_claim(claim_text);
    qlab::VerificationReport rep;
    {
        py::gil_scoped_release release;
        qlab::CongruenceLab lab;
        rep = lab.check(claim, nmax);
    }
    return json_to_py(rep.to_json());
}

py::list scan(const std::string& target, std::uint64_t step, std::vector<std::uint64_t> mods,
              std::uint64_t nmax, std::uint64_t min_support,
              std::optional<std::uint64_t> step_hi) {
    std::vector<qlab::ScanHit> hits;
    {
        py::gil_scoped_release release;
        qlab::CongruenceLab lab;
        hits = lab.scan(target, step, step_hi.value_or(step),
                        std::set<std::uint64_t>(mods.begin(), mods.end()), nmax, min_support);
    }
    py::list out;
    for (const auto& h : hits) out.append(json_to_py(h.to_json()));
    return out;
}

py::object ag_conjecture(unsigned alpha, std::uint64_t lambda_max) {
    qlab::VerificationReport rep;
    {
        py::gil_scoped_release release;
        qlab::CongruenceLab lab;
        rep = lab.check_ag_conjecture(alpha, lambda_max);
    }
    return json_to_py(rep.to_json());
}

py::list rr_convergent(std::size_t depth, std::size_t n) {
    qlab::Series s = [&] {
        py::gil_scoped_release release;
        return qlab::rr_cf_convergent(depth, n);
    }();
    py::list out;
    for (std::size_t i = 0; i < s.precision(); ++i) out.append(coeff_to_py(s, i));
    return out;
}

long long dsome(unsigned n) {
    py::gil_scoped_release release;
    return qlab::dsome_bruteforce(n);
}

long long some(unsigned n) {
    py::gil_scoped_release release;
    return qlab::some_bruteforce(n);
}

}  // namespace

PYBIND11_MODULE(qlab, m) {
    m.doc() = "truncated q-series laboratory: SOME/DSOME partition statistics, "
              "eta-quotient identities, and Ramanujan-type congruences";
    m.attr("__version__") = "0.1.0";

    py::register_exception<qlab::ParseError>(m, "QlabParseError", PyExc_ValueError);
    py::register_exception<qlab::ResourceLimitError>(m, "QlabResourceError", PyExc_RuntimeError);

    m.def("expand", &expand, py::arg("expression"), py::arg("n") = 32,
          py::arg("mod") = py::none(),
          "Expand an expression to its first n coefficients. Exact coefficients "
          "come back as int or Fraction; with mod=M as residues in [0, M).");
    m.def("values", &values, py::arg("target"), py::arg("lo"), py::arg("hi"),
          py::arg("mode") = "all",
          "SOME/DSOME values on [lo, hi]; mode 'all' cross-checks every route.");
    m.def("dsome", &dsome, py::arg("n"), "DSOME(n) by explicit enumeration.");
    m.def("some", &some, py::arg("n"), "SOME(n) by explicit enumeration.");
    m.def("verify", &verify, py::arg("id") = py::none(), py::arg("n") = py::none(),
          py::arg("corpus") = py::none(), py::arg("threads") = 1, py::arg("filter") = "",
          "Verify identity corpus records; returns a list of report dicts.");
    m.def("check", &check, py::arg("claim"), py::arg("nmax") = 100,
          "Check a congruence claim such as 'DSOME[4n] == 0 mod 4'.");
    m.def("scan", &scan, py::arg("target"), py::arg("step"), py::arg("mods"),
          py::arg("nmax") = 100, py::arg("min_support") = 20, py::arg("step_hi") = py::none(),
          "Scan step range for progressions whose coefficients vanish mod each modulus.");
    m.def("ag_conjecture", &ag_conjecture, py::arg("alpha"), py::arg("lambda_max"),
          "Check SOME(lambda) == 0 mod 5^alpha over the class 24*lambda == 1 (mod 5^alpha).");
    m.def("rr_convergent", &rr_convergent, py::arg("depth"), py::arg("n") = 32,
          "Depth-d truncation of the Rogers-Ramanujan continued fraction "
          "(leading q^(1/5) stripped); converges coefficientwise to H/G.");
    m.def("named_series_ids", [] { return qlab::named_series_ids(); },
          "Names usable as '@name' atoms in expressions.");
}
