#include "necklace/bundle_search.hpp"

#include <algorithm>
#include <atomic>
#include <thread>

#include "necklace/errors.hpp"
#include "necklace/fibration.hpp"
#include "necklace/string_oracle.hpp"

namespace necklace::bundle {

using scalar_field::Sign;
using scalar_field::certify_sign;
using scalar_field::cos_frac;

std::pair<CertifiedScalar, CertifiedScalar> solve_system(long k, long m, long n) {
    geom::require_parameter_domain(k, m, n);
    const CertifiedScalar one = CertifiedScalar::from_long(1);
    const CertifiedScalar c1 = cos_frac(1, n);
    const CertifiedScalar ck = cos_frac(k, n);
    const CertifiedScalar cm = cos_frac(m, n);
    // Row 1: (1 - c_1) x1 + (1 - c_m) x2 = 1, the right-angle condition.
    // Row 2: (1 - c_1^2)(c_k - c_m) x1 - (1 - c_m^2)(c_1 - c_k) x2 = 0, the
    // condition that the fibre rotation cosine lands on the k-th grid cosine.
    const CertifiedScalar a11 = one - c1;
    const CertifiedScalar a12 = one - cm;
    const CertifiedScalar a21 = (one - c1 * c1) * (ck - cm);
    const CertifiedScalar a22 = (one - cm * cm) * (ck - c1);
    const CertifiedScalar det = a11 * a22 - a12 * a21;
    // 1 < k < m < n/2 orders the cosines c_1 > c_k > c_m, so every factor of
    // a21 and -a22 is strictly positive and det < 0; certify it anyway.
    const SignCertificate det_sign = certify_sign(det);
    if (det_sign.verdict != Sign::StrictlyNegative)
        throw UncertifiedError("linear system: determinant sign did not certify negative");
    CertifiedScalar x1 = a22 / det;
    CertifiedScalar x2 = (CertifiedScalar() - a21) / det;
    if (!(a11 * x1 + a12 * x2 - one).is_ring_zero() || !(a21 * x1 + a22 * x2).is_ring_zero())
        throw UncertifiedError("linear system: back-substitution residual did not cancel");
    return {std::move(x1), std::move(x2)};
}

namespace {

void fill_topology(BundleCertificate& cert) {
    const long n = cert.n;
    cert.chi_orbifold = mpq_class(-(n - 4), 4);
    cert.chi_orbifold.canonicalize();
    cert.chi_manifold = -(n - 4);
    cert.genus = (n - 2) / 2;
    cert.ratio = mpq_class(4 * (cert.m - cert.k), n - 4);
    cert.ratio.canonicalize();
}

} // namespace

BundleCertificate certify_bundle(long k, long m, long n, bool with_oracle) {
    geom::require_parameter_domain(k, m, n);
    BundleCertificate cert;
    cert.k = k;
    cert.m = m;
    cert.n = n;
    fill_topology(cert);

    auto solved = solve_system(k, m, n);
    cert.x1 = solved.first;
    cert.x2 = solved.second;

    auto region = geom::region_membership(k, m, n, cert.x1, cert.x2);
    cert.inequality_report = region.checks;
    if (!region.inside) {
        cert.uncertified = region.uncertified;
        cert.first_failure = region.first_failure;
        return cert;
    }

    auto cfg = geom::build_config(k, m, n, cert.x1, cert.x2);
    auto ppt = geom::ppt_check(cfg);
    cert.ppt_ok = ppt.ok;
    if (!ppt.ok) {
        cert.uncertified = ppt.uncertified;
        cert.first_failure = "right-angle condition";
        return cert;
    }

    // The second solved equation makes cos a - c_k cancel exactly; anything
    // else means the pipeline itself is broken, not the triple infeasible.
    auto fibred = fibration::is_fibred(cfg);
    if (!fibred.j || *fibred.j != k)
        throw UncertifiedError("solved configuration: rotation cosine missed the k-th grid cosine");

    const long e = fibration::euler_number(k, m, n, cert.x1, cert.x2);
    if (e != m - k)
        throw UncertifiedError("solved configuration: crossing count disagrees with m - k");
    cert.eP = e;
    cert.eM_manifold = 4 * e;

    if (with_oracle)
        cert.oracle_euler = string_oracle::euler_via_angle_tracking(
            k, m, n, cert.x1.to_double(), cert.x2.to_double(), 0);

    cert.feasible = true;
    return cert;
}

std::vector<BundleCertificate> enumerate_bundles(long n_max,
                                                 std::optional<mpq_class> ratio_filter,
                                                 int workers, bool with_oracle) {
    if (workers < 1) throw DomainError("worker count must be at least 1");
    std::vector<std::array<long, 3>> triples;  // (n, m, k) order
    for (long n = 8; n <= n_max; n += 2)
        for (long m = 3; 2 * m < n; ++m)
            for (long k = 2; k < m; ++k) triples.push_back({n, m, k});
    std::sort(triples.begin(), triples.end());

    std::vector<BundleCertificate> results(triples.size());
    std::vector<std::string> errors(triples.size());
    std::atomic<size_t> next{0};
    auto run = [&] {
        for (;;) {
            const size_t i = next.fetch_add(1);
            if (i >= triples.size()) return;
            try {
                results[i] = certify_bundle(triples[i][2], triples[i][1], triples[i][0],
                                            with_oracle);
            } catch (const std::exception& e) {
                errors[i] = e.what();
            }
        }
    };
    if (workers == 1) {
        run();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (int w = 0; w < workers; ++w) pool.emplace_back(run);
        for (auto& t : pool) t.join();
    }
    for (size_t i = 0; i < errors.size(); ++i)
        if (!errors[i].empty()) throw UncertifiedError(errors[i]);

    if (ratio_filter) {
        mpq_class want = *ratio_filter;
        want.canonicalize();
        std::vector<BundleCertificate> kept;
        for (auto& c : results)
            if (c.feasible && c.ratio == want) kept.push_back(std::move(c));
        return kept;
    }
    return results;
}

} // namespace necklace::bundle
