// Python bindings.  Every structured result goes through the same JSON
// serialization as the command-line tool, so the two interfaces can never
// drift apart; the strings are parsed back into plain dicts and lists here.

#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "necklace/bundle_search.hpp"
#include "necklace/cli_report.hpp"
#include "necklace/errors.hpp"

namespace py = pybind11;
using namespace necklace;

namespace {

py::object loads(const std::string& text) {
    return py::module_::import("json").attr("loads")(text);
}

py::object run_or_raise(const report::CommandConfig& cfg) {
    std::ostringstream out, err;
    int code = report::run(cfg, out, err);
    if (code != 0) {
        std::string msg = err.str();
        while (!msg.empty() && (msg.back() == '\n' || msg.back() == '\r')) msg.pop_back();
        if (msg.empty()) msg = cfg.subcommand + " exited with status " + std::to_string(code);
        if (code == 3) throw UncertifiedError(msg);
        throw DomainError(msg);
    }
    return loads(out.str());
}

py::dict decimal_pair(const scalar_field::CertifiedScalar& v, long bits) {
    auto [mid, err] = v.decimal_with_error(bits);
    py::dict d;
    d["decimal"] = mid;
    d["+/-"] = err;
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, mod) {
    mod.doc() = "Certified search engine for right-angled necklace disc bundles";

    py::register_exception<DomainError>(mod, "DomainError", PyExc_ValueError);
    py::register_exception<UncertifiedError>(mod, "UncertifiedError", PyExc_RuntimeError);

    mod.def(
        "check",
        [](long k, long m, long n, bool with_oracle, long precision_bits) {
            report::CommandConfig cfg;
            cfg.subcommand = "check";
            cfg.k = k;
            cfg.m = m;
            cfg.n = n;
            cfg.with_oracle = with_oracle;
            cfg.precision_bits = precision_bits;
            return run_or_raise(cfg);
        },
        py::arg("k"), py::arg("m"), py::arg("n"), py::arg("with_oracle") = false,
        py::arg("precision_bits") = 128,
        "Certify one parameter triple and return its certificate as a dict.");

    mod.def(
        "search",
        [](long n_max, std::optional<std::string> ratio, int workers, bool with_oracle,
           long precision_bits) {
            report::CommandConfig cfg;
            cfg.subcommand = "search";
            cfg.n_max = n_max;
            cfg.ratio_filter = std::move(ratio);
            cfg.workers = workers;
            cfg.with_oracle = with_oracle;
            cfg.precision_bits = precision_bits;
            return run_or_raise(cfg);
        },
        py::arg("n_max"), py::arg("ratio") = std::nullopt, py::arg("workers") = 1,
        py::arg("with_oracle") = false, py::arg("precision_bits") = 128,
        "Certify every triple with n <= n_max and return the list of certificates.");

    mod.def(
        "trace",
        [](long k, long m, long n, long samples) {
            report::CommandConfig cfg;
            cfg.subcommand = "trace";
            cfg.k = k;
            cfg.m = m;
            cfg.n = n;
            cfg.samples = samples;
            return run_or_raise(cfg);
        },
        py::arg("k"), py::arg("m"), py::arg("n"), py::arg("samples") = 0,
        "Run the floating-point string trace at the solved parameters.");

    mod.def(
        "verify",
        [](long k, long m, long n) {
            std::ostringstream log;
            auto outcome = report::verify_triple(k, m, n, log);
            py::dict d;
            d["ok"] = outcome.ok;
            d["checks_run"] = outcome.checks_run;
            d["checks_failed"] = outcome.checks_failed;
            d["log"] = log.str();
            return d;
        },
        py::arg("k"), py::arg("m"), py::arg("n"),
        "Run the exact cross-check battery for one triple.");

    mod.def(
        "solve",
        [](long k, long m, long n, long precision_bits) {
            auto [x1, x2] = bundle::solve_system(k, m, n);
            py::dict d;
            d["x1"] = decimal_pair(x1, precision_bits);
            d["x2"] = decimal_pair(x2, precision_bits);
            return d;
        },
        py::arg("k"), py::arg("m"), py::arg("n"), py::arg("precision_bits") = 128,
        "Solve the two-condition linear system and return decimal enclosures.");
}
