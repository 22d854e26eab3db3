#include <doctest.h>

#include <array>
#include <cstdlib>
#include <map>

#include "necklace/bundle_search.hpp"
#include "necklace/cli_report.hpp"
#include "necklace/errors.hpp"
#include "necklace/scalar.hpp"

#include "support.hpp"

using namespace necklace;
using bundle::BundleCertificate;
using bundle::certify_bundle;
using bundle::enumerate_bundles;
using bundle::solve_system;
using scalar_field::CertifiedScalar;
using scalar_field::certify_sign;
using scalar_field::cos_frac;
using test_support::within_decimal;

namespace {

CertifiedScalar one() { return CertifiedScalar::from_long(1); }

// Residuals of the two defining equations at (x1, x2).
void check_system_residuals(long k, long m, long n, const CertifiedScalar& x1,
                            const CertifiedScalar& x2) {
    CertifiedScalar c1 = cos_frac(1, n), cm = cos_frac(m, n), ck = cos_frac(k, n);
    CertifiedScalar eq1 = (one() - c1) * x1 + (one() - cm) * x2 - one();
    CHECK(eq1.is_ring_zero());
    CertifiedScalar eq2 =
        (one() - c1 * c1) * (ck - cm) * x1 - (one() - cm * cm) * (c1 - ck) * x2;
    CHECK(eq2.is_ring_zero());
}

}  // namespace

TEST_SUITE("bundle_search") {

TEST_CASE("solved parameters for the record triples") {
    auto [a1, a2] = solve_system(2, 5, 24);
    CHECK(within_decimal(a1, "2.7970661837334224658555118286698761302342150793436", 45));
    CHECK(within_decimal(a2, "1.2206091845676637860619850280032599186265686479723", 45));
    check_system_residuals(2, 5, 24, a1, a2);

    auto [b1, b2] = solve_system(3, 6, 24);
    CHECK(within_decimal(b1, "4.6064507456824115117362980179806418929069407029387", 45));
    CHECK(within_decimal(b2, "0.84303899710076658646098605672524949905900677771799", 45));
    check_system_residuals(3, 6, 24, b1, b2);

    auto [c1, c2] = solve_system(5, 11, 44);
    CHECK(within_decimal(c1, "13.232549587219079203977346293104922325239717967123", 40));
    CHECK(within_decimal(c2, "0.86531172496305102056767581101505172338976615980792", 40));
    check_system_residuals(5, 11, 44, c1, c2);
}

TEST_CASE("degenerate solution lands on the boundary") {
    auto [x1, x2] = solve_system(2, 3, 8);
    CHECK(x1.exact_value().equals_rational(mpq_class(1, 2)));
    CHECK(x2.exact_value().equals_rational(mpq_class(1, 2)));
    check_system_residuals(2, 3, 8, x1, x2);
}

TEST_CASE("full certificate for the first record triple") {
    BundleCertificate cert = certify_bundle(2, 5, 24, true);
    CHECK(cert.feasible);
    CHECK(!cert.uncertified);
    CHECK(cert.first_failure.empty());
    CHECK(cert.ppt_ok);
    REQUIRE(cert.eP.has_value());
    CHECK(*cert.eP == 3);
    REQUIRE(cert.oracle_euler.has_value());
    CHECK(*cert.oracle_euler == 3);
    CHECK(cert.eM_manifold == 12);
    CHECK(cert.chi_manifold == -20);
    CHECK(cert.genus == 11);
    CHECK(cert.chi_orbifold == mpq_class(-5));
    CHECK(cert.ratio == mpq_class(3, 5));
    CHECK(cert.inequality_report.size() == 15);
    for (const auto& row : cert.inequality_report) {
        CHECK(row.cert.decided());
        CHECK(row.cert.bits_used <= 512);
    }
}

TEST_CASE("infeasible and small feasible triples") {
    BundleCertificate bad = certify_bundle(2, 3, 8, true);
    CHECK(!bad.feasible);
    CHECK(!bad.uncertified);
    CHECK(bad.first_failure == "x1+x2>1");
    CHECK(!bad.eP.has_value());
    CHECK(!bad.oracle_euler.has_value());
    CHECK(bad.chi_orbifold == mpq_class(-1));
    CHECK(bad.genus == 3);
    CHECK(bad.ratio == mpq_class(1));

    BundleCertificate small = certify_bundle(2, 3, 12);
    CHECK(small.feasible);
    REQUIRE(small.eP.has_value());
    CHECK(*small.eP == 1);
    CHECK(small.eM_manifold == 4);
    CHECK(small.genus == 5);
    CHECK(small.chi_manifold == -8);
    CHECK(small.ratio == mpq_class(1, 2));
}

TEST_CASE("parameter domain") {
    CHECK_THROWS_AS(certify_bundle(1, 2, 8), DomainError);
    CHECK_THROWS_AS(certify_bundle(3, 5, 10), DomainError);
    CHECK_THROWS_AS(solve_system(2, 5, 23), DomainError);
}

TEST_CASE("enumeration up to n = 24") {
    auto certs = enumerate_bundles(24, std::nullopt, 2, false);
    CHECK(certs.size() == 165);

    // (n, m, k) lexicographic order, no duplicates.
    for (std::size_t i = 1; i < certs.size(); ++i) {
        auto key = [](const BundleCertificate& c) {
            return std::array<long, 3>{c.n, c.m, c.k};
        };
        CHECK(key(certs[i - 1]) < key(certs[i]));
    }

    std::map<long, long> feasible_by_n;
    long feasible = 0;
    for (const auto& c : certs) {
        if (!c.feasible) continue;
        ++feasible;
        ++feasible_by_n[c.n];
        CHECK(c.ppt_ok);
        REQUIRE(c.eP.has_value());
        CHECK(*c.eP == c.m - c.k);
        // Invariant wiring: ratio from the manifold data, genus from chi.
        CHECK(c.eM_manifold == 4 * *c.eP);
        CHECK(c.chi_manifold == -(c.n - 4));
        CHECK(c.chi_manifold == 2 - 2 * c.genus);
        mpq_class recomputed(mpz_class(std::abs(c.eM_manifold)),
                             mpz_class(std::abs(c.chi_manifold)));
        recomputed.canonicalize();
        CHECK(c.ratio == recomputed);
        CHECK(c.ratio <= 1);  // every feasible ratio found so far sits in the unit bound
    }
    CHECK(feasible == 43);
    std::map<long, long> expected{{12, 1}, {14, 2}, {16, 3}, {18, 6},
                                  {20, 8}, {22, 10}, {24, 13}};
    CHECK(feasible_by_n == expected);
}

TEST_CASE("ratio filter") {
    auto certs = enumerate_bundles(24, mpq_class(3, 5), 1, false);
    REQUIRE(certs.size() == 2);
    CHECK(certs[0].k == 2);
    CHECK(certs[0].m == 5);
    CHECK(certs[0].n == 24);
    CHECK(certs[1].k == 3);
    CHECK(certs[1].m == 6);
    CHECK(certs[1].n == 24);
}

TEST_CASE("worker count never changes the output") {
    auto one_worker = enumerate_bundles(14, std::nullopt, 1, false);
    auto three_workers = enumerate_bundles(14, std::nullopt, 3, false);
    REQUIRE(one_worker.size() == three_workers.size());
    std::string a = report::serialize_certificates(one_worker, report::Format::Json, 128);
    std::string b = report::serialize_certificates(three_workers, report::Format::Json, 128);
    CHECK(a == b);
}

}  // TEST_SUITE
