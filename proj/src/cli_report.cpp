#include "necklace/cli_report.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <json.hpp>

#include "necklace/errors.hpp"
#include "necklace/fibration.hpp"
#include "necklace/string_oracle.hpp"

namespace necklace::report {

using json = nlohmann::ordered_json;
using scalar_field::CertifiedScalar;
using scalar_field::cos_frac;

namespace {

json scalar_json(const CertifiedScalar& s, long bits) {
    auto [decimal, err] = s.decimal_with_error(bits);
    return json{{"decimal", decimal}, {"+/-", err}};
}

json certificate_to_json(const BundleCertificate& c, long bits) {
    json ineqs = json::array();
    for (const auto& rc : c.inequality_report)
        ineqs.push_back(json{{"i", rc.id},
                             {"lower_bound", rc.margin_lower},
                             {"verdict", rc.cert.verdict_str()}});
    json j;
    j["k"] = c.k;
    j["m"] = c.m;
    j["n"] = c.n;
    j["feasible"] = c.feasible;
    j["certified"] = !c.uncertified;
    j["x1"] = scalar_json(c.x1, bits);
    j["x2"] = scalar_json(c.x2, bits);
    j["inequalities"] = std::move(ineqs);
    j["ppt_ok"] = c.ppt_ok;
    j["eP"] = c.eP ? json(*c.eP) : json(nullptr);
    j["chi_orbifold"] = c.chi_orbifold.get_str();
    j["eM"] = c.eP ? json(c.eM_manifold) : json(nullptr);
    j["chi_manifold"] = c.chi_manifold;
    j["genus"] = c.genus;
    j["ratio"] = c.ratio.get_str();
    j["oracle_euler"] = c.oracle_euler ? json(*c.oracle_euler) : json(nullptr);
    if (!c.feasible && !c.first_failure.empty()) j["first_failure"] = c.first_failure;
    return j;
}

} // namespace

std::string certificate_json(const BundleCertificate& cert, long bits) {
    return certificate_to_json(cert, bits).dump(2);
}

std::string csv_header() {
    return "k,m,n,feasible,certified,x1,x2,inequalities,ppt_ok,eP,chi_orbifold,eM,"
           "chi_manifold,genus,ratio,oracle_euler";
}

std::string certificate_csv_row(const BundleCertificate& c, long bits) {
    std::ostringstream os;
    os << c.k << ',' << c.m << ',' << c.n << ',' << (c.feasible ? "true" : "false") << ','
       << (c.uncertified ? "false" : "true") << ',' << c.x1.decimal_with_error(bits).first << ','
       << c.x2.decimal_with_error(bits).first << ',';
    for (std::size_t i = 0; i < c.inequality_report.size(); ++i) {
        if (i) os << ' ';
        os << c.inequality_report[i].id << '=' << c.inequality_report[i].cert.verdict_str();
    }
    os << ',' << (c.ppt_ok ? "true" : "false") << ',';
    if (c.eP) os << *c.eP;
    os << ',' << c.chi_orbifold.get_str() << ',';
    if (c.eP) os << c.eM_manifold;
    os << ',' << c.chi_manifold << ',' << c.genus << ',' << c.ratio.get_str() << ',';
    if (c.oracle_euler) os << *c.oracle_euler;
    return os.str();
}

std::string serialize_certificates(const std::vector<BundleCertificate>& certs, Format format,
                                   long bits) {
    if (format == Format::Csv) {
        std::ostringstream os;
        os << csv_header() << '\n';
        for (const auto& c : certs) os << certificate_csv_row(c, bits) << '\n';
        return os.str();
    }
    json arr = json::array();
    for (const auto& c : certs) arr.push_back(certificate_to_json(c, bits));
    return arr.dump(2);
}

VerifyOutcome verify_triple(long k, long m, long n, std::ostream& log) {
    using namespace necklace::geom;
    using namespace necklace::minkowski;
    VerifyOutcome out;
    auto check = [&](const std::string& name, bool ok) {
        ++out.checks_run;
        if (!ok) {
            ++out.checks_failed;
            out.ok = false;
        }
        log << (ok ? "ok   " : "FAIL ") << name << '\n';
        return ok;
    };

    require_parameter_domain(k, m, n);
    auto [x1, x2] = bundle::solve_system(k, m, n);
    check("linear system solved with certified nonzero determinant", true);

    auto region = region_membership(k, m, n, x1, x2);
    if (!check("solution lies in the open region (all inequalities certified)",
               region.inside && !region.uncertified)) {
        log << "     first failure: " << region.first_failure << '\n';
        return out;
    }

    auto cfg = build_config(k, m, n, x1, x2);
    check("normals built by rotation, r^n fixes p_0 exactly", true);

    Isometry5 rn = Isometry5::identity();
    for (long i = 0; i < n; ++i) rn = compose(cfg.r, rn);
    check("r^n = 1 entrywise", (rn - Isometry5::identity()).is_ring_zero());

    bool units = true, grams = true, rights = true;
    for (long i = 0; i < n; ++i) {
        units = units && (form(cfg.p_at(i), cfg.p_at(i)) + CertifiedScalar::from_long(1))
                             .is_ring_zero();
        grams = grams && (form(cfg.p_at(0), cfg.p_at(i)) - cfg.g_at(i)).is_ring_zero();
        rights = rights && form(cfg.p_at(i), cfg.p_at(i + 1)).is_ring_zero();
    }
    check("<p_i, p_i> = -1 for all i", units);
    check("matrix Gram coefficients match the closed form", grams);
    check("g_1 = 0 at the solution", cfg.g_at(1).is_ring_zero());
    check("<p_i, p_{i+1}> = 0 for all i", rights);

    bool squares = true;
    for (long i = 0; i < n && squares; ++i) {
        Isometry5 t = compose(reflection_matrix(cfg.p_at(i + 1)), reflection_matrix(cfg.p_at(i)));
        squares = (compose(t, t) - Isometry5::identity()).is_ring_zero();
    }
    check("(tau_{i+1} tau_i)^2 = 1 for all i, materialized", squares);

    auto ppt = ppt_check(cfg);
    check("reflection-group condition (right-angle battery)", ppt.ok && !ppt.uncertified);
    check("codimension-2 cycles: length 4, one full turn",
          ppt.codim2_cycle_length == 4 && ppt.codim2_total_angle_full_turns == 1);

    auto fib = fibration::fibration_data(cfg);
    check("r sigma built two ways with exact agreement", true);
    {
        Vec5 lhs = apply(fib.r_sigma, cfg.p_at(0)) + cfg.p_at(1);
        check("r sigma p_0 = -p_1", lhs.is_ring_zero());
        Vec5 rhs = cfg.p_at(0) + cfg.p_at(1).scaled(cfg.g_at(1) * CertifiedScalar::from_long(2));
        Vec5 lhs2 = apply(fib.r_sigma, cfg.p_at(1)) - rhs;
        check("r sigma p_1 = p_0 + 2 g_1 p_1", lhs2.is_ring_zero());
    }
    check("f_0 is projectively fixed by r sigma",
          projectively_equal_exact(apply(fib.r_sigma, fib.f0), fib.f0));
    check("f_0 is an interior point", classify_point(fib.f0) == PointClass::Interior);
    {
        CertifiedScalar tr;
        for (int i = 0; i < 5; ++i) tr += fib.r_sigma.at(i, i);
        CertifiedScalar expected = cfg.g_at(1) * CertifiedScalar::from_long(2) +
                                   CertifiedScalar::from_long(1) +
                                   fib.cos_a * CertifiedScalar::from_long(2);
        check("trace(r sigma) = 2 g_1 + 1 + 2 cos a", (tr - expected).is_ring_zero());
    }
    check("closed-form rotation cosine matches the trace-derived one", true);
    check("rotation cosine equals the k-th grid cosine",
          (fib.cos_a - cos_frac(k, n)).is_ring_zero());

    const long e = fibration::euler_number(k, m, n, x1, x2);
    check("certified crossing count equals m - k", e == m - k);
    const long oracle = string_oracle::euler_via_angle_tracking(k, m, n, x1.to_double(),
                                                                x2.to_double(), 0);
    check("double-precision angle tracker agrees", oracle == e);

    auto signature = string_oracle::corner_signature(cfg, 0);
    check("corner plane has signature (-, -, +)",
          signature[0] < 0 && signature[1] < 0 && signature[2] > 0);
    auto q0 = string_oracle::ideal_point_on_corner(cfg);
    auto trace = string_oracle::trace_string(cfg, q0);
    check("string through the corner ideal point closes (residual < 1e-9)",
          trace.closure_residual < 1e-9);

    log << (out.ok ? "verified" : "VERIFICATION FAILED") << ": (" << k << ", " << m << ", " << n
        << "), " << out.checks_run << " checks, " << out.checks_failed << " failed\n";
    return out;
}

namespace {

int write_artifact(const CommandConfig& config, const std::string& payload, std::ostream& out,
                   std::ostream& err) {
    if (config.output_path) {
        std::ofstream f(*config.output_path);
        if (!f) {
            err << "cannot open output path: " << *config.output_path << '\n';
            return 2;
        }
        f << payload;
        return 0;
    }
    out << payload;
    return 0;
}

mpq_class parse_ratio(const std::string& text) {
    mpq_class q;
    if (q.set_str(text, 10) != 0) throw DomainError("ratio filter must be an exact fraction p/q");
    q.canonicalize();
    return q;
}

int run_inner(const CommandConfig& config, std::ostream& out, std::ostream& err) {
    const long bits = config.precision_bits;
    if (config.subcommand == "check") {
        if (!config.k || !config.m || !config.n) throw DomainError("check requires --k --m --n");
        auto cert = bundle::certify_bundle(*config.k, *config.m, *config.n, config.with_oracle);
        std::string payload = config.output_format == Format::Json
                                  ? certificate_json(cert, bits) + "\n"
                                  : csv_header() + "\n" + certificate_csv_row(cert, bits) + "\n";
        int rc = write_artifact(config, payload, out, err);
        if (rc != 0) return rc;
        return cert.uncertified ? 3 : 0;
    }
    if (config.subcommand == "search") {
        if (!config.n_max) throw DomainError("search requires --n-max");
        std::optional<mpq_class> filter;
        if (config.ratio_filter) filter = parse_ratio(*config.ratio_filter);
        auto certs = bundle::enumerate_bundles(*config.n_max, filter, config.workers,
                                               config.with_oracle);
        int rc = write_artifact(config, serialize_certificates(certs, config.output_format, bits),
                                out, err);
        if (rc != 0) return rc;
        for (const auto& c : certs)
            if (c.uncertified) return 3;
        return 0;
    }
    if (config.subcommand == "trace") {
        if (!config.k || !config.m || !config.n) throw DomainError("trace requires --k --m --n");
        auto cert = bundle::certify_bundle(*config.k, *config.m, *config.n, false);
        if (cert.uncertified) return 3;
        if (!cert.feasible)
            throw DomainError("no string to trace: triple is infeasible at " +
                              cert.first_failure);
        auto cfg = geom::build_config(*config.k, *config.m, *config.n, cert.x1, cert.x2);
        auto q0 = string_oracle::ideal_point_on_corner(cfg);
        auto trace = string_oracle::trace_string(cfg, q0);
        if (config.output_format == Format::Csv) {
            auto samples = string_oracle::sample_path(*config.k, *config.m, *config.n,
                                                      cert.x1.to_double(), cert.x2.to_double(),
                                                      config.samples);
            std::ostringstream os;
            os << "t,cos_a,a_unwrapped\n";
            os.precision(17);
            for (const auto& s : samples)
                os << s.t << ',' << s.cos_a << ',' << s.a_unwrapped << '\n';
            return write_artifact(config, os.str(), out, err);
        }
        json j;
        j["k"] = *config.k;
        j["m"] = *config.m;
        j["n"] = *config.n;
        j["steps"] = trace.steps;
        j["closure_residual"] = trace.closure_residual;
        j["closed"] = trace.closure_residual < 1e-9;
        return write_artifact(config, j.dump(2) + "\n", out, err);
    }
    if (config.subcommand == "verify") {
        if (!config.k || !config.m || !config.n) throw DomainError("verify requires --k --m --n");
        auto outcome = verify_triple(*config.k, *config.m, *config.n, out);
        return outcome.ok ? 0 : 1;
    }
    throw DomainError("unknown subcommand: " + config.subcommand);
}

} // namespace

int run(const CommandConfig& config, std::ostream& out, std::ostream& err) {
    if (config.precision_bits > 0) {
        const std::string bits = std::to_string(config.precision_bits);
        setenv("NECKLACE_PRECISION_BITS", bits.c_str(), 1);
    }
    try {
        return run_inner(config, out, err);
    } catch (const UncertifiedError& e) {
        err << "uncertified: " << e.what() << '\n';
        return 3;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }
}

} // namespace necklace::report
