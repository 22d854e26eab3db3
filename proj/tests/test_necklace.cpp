#include <doctest.h>

#include <string>
#include <vector>

#include "necklace/bundle_search.hpp"
#include "necklace/errors.hpp"
#include "necklace/necklace.hpp"

#include "support.hpp"

using namespace necklace;
using geom::NecklaceConfig;
using geom::RegionVerdict;
using geom::build_config;
using geom::gram_coefficient;
using geom::ppt_check;
using geom::region_membership;
using geom::require_parameter_domain;
using geom::segment_S;
using minkowski::PairClass;
using minkowski::classify_pair;
using minkowski::form;
using scalar_field::CertifiedScalar;
using scalar_field::QuadRat;
using scalar_field::Sign;
using scalar_field::TrigFrac;
using scalar_field::TrigPoly;
using scalar_field::certify_sign;
using test_support::Rng;
using test_support::within_decimal;

namespace {

CertifiedScalar one() { return CertifiedScalar::from_long(1); }
CertifiedScalar num(long v) { return CertifiedScalar::from_long(v); }
CertifiedScalar rat(long n, long d) {
    mpq_class q{mpz_class(n), mpz_class(d)};
    q.canonicalize();
    return CertifiedScalar::from_rational(q);
}

CertifiedScalar quad(long a, long b, long c, long d) {
    QuadRat q{mpq_class(a), mpq_class(b), mpq_class(c), mpq_class(d)};
    return CertifiedScalar::from_trig(TrigFrac(TrigPoly::constant(q)));
}

}  // namespace

TEST_SUITE("necklace") {

TEST_CASE("parameter domain") {
    CHECK_THROWS_AS(require_parameter_domain(5, 2, 24), DomainError);  // k < m violated
    CHECK_THROWS_AS(require_parameter_domain(1, 5, 24), DomainError);  // k > 1 required
    CHECK_THROWS_AS(require_parameter_domain(2, 12, 24), DomainError);  // m < n/2 required
    CHECK_THROWS_AS(require_parameter_domain(2, 5, 23), DomainError);  // n even required
    CHECK_NOTHROW(require_parameter_domain(2, 5, 24));
    CHECK_THROWS_AS(build_config(5, 2, 24, num(20), num(0)), DomainError);
    CHECK_THROWS_AS(build_config(2, 5, 24, num(1), num(0)), DomainError);  // x1+x2 = 1
    CHECK_THROWS_AS(build_config(2, 5, 24, num(-3), num(5)), DomainError);
}

TEST_CASE("plane configuration invariants") {
    NecklaceConfig cfg = build_config(2, 5, 24, num(20), num(0));
    CHECK((cfg.g_at(0) + one()).is_ring_zero());
    for (long i = 0; i < 24; ++i) {
        CHECK((form(cfg.p_at(i), cfg.p_at(i)) + one()).is_ring_zero());
        CHECK((cfg.g_at(i) - cfg.g_at(24 - i)).is_ring_zero());
        CHECK((gram_coefficient(cfg, i) - form(cfg.p_at(0), cfg.p_at(i))).is_ring_zero());
    }
    CHECK((cfg.p_at(-1) - cfg.p_at(23)).is_ring_zero());
    CHECK((gram_coefficient(cfg, -2) - cfg.g_at(22)).is_ring_zero());
    // g_1 = 19 - 5 sqrt2 - 5 sqrt6, g_2 = 19 - 10 sqrt3 at (20, 0).
    CHECK((cfg.g_at(1) - quad(19, -5, 0, -5)).is_ring_zero());
    CHECK((cfg.g_at(2) - quad(19, 0, -10, 0)).is_ring_zero());
    CHECK(within_decimal(cfg.g_at(2), "1.6794919243112270647255365849413", 25));
}

TEST_CASE("region membership verdicts") {
    RegionVerdict in = region_membership(2, 5, 24, num(20), num(0));
    CHECK(in.inside);
    CHECK(!in.uncertified);
    CHECK(in.first_failure.empty());
    CHECK(in.checks.size() == 15);  // 3 admissibility rows + n/2 indexed rows
    for (const auto& row : in.checks) CHECK(row.cert.decided());
    CHECK(in.checks[1].id == "x2>=0");
    CHECK(in.checks[1].cert.is_zero());  // the boundary line belongs to the region

    RegionVerdict out = region_membership(2, 5, 24, num(1), num(0));
    CHECK(!out.inside);
    CHECK(out.first_failure == "x1+x2>1");

    RegionVerdict far = region_membership(2, 5, 24, num(100), num(0));
    CHECK(!far.inside);
    CHECK(far.first_failure == "i=1");
}

TEST_CASE("segment endpoints") {
    auto [lo24, hi24] = segment_S(2, 5, 24);
    CHECK(within_decimal(lo24, "14.928203230275509174109785366", 20));
    CHECK(within_decimal(hi24, "58.6954805409810374254201624224", 20));

    auto [lo8, hi8] = segment_S(2, 3, 8);
    CHECK((lo8 - num(2)).is_ring_zero());           // 2/(1 - cos 90)
    CHECK((hi8 - quad(4, 2, 0, 0)).is_ring_zero()); // 2/(1 - cos 45) = 4 + 2 sqrt2
}

TEST_CASE("segment stays inside the region") {
    auto [lo, hi] = segment_S(2, 5, 24);
    for (long j = 1; j <= 100; ++j) {
        CertifiedScalar t = rat(j, 101);
        CertifiedScalar x1 = lo + (hi - lo) * t;
        CHECK(region_membership(2, 5, 24, x1, CertifiedScalar()).inside);
    }
}

TEST_CASE("region convexity, randomized") {
    Rng rng(220817);
    const long triples[3][3] = {{2, 3, 8}, {2, 5, 12}, {2, 5, 24}};
    int done = 0;
    while (done < 100) {
        const long* t = triples[rng.pick(0, 2)];
        auto [lo, hi] = segment_S(t[0], t[1], t[2]);
        double hid = hi.lower_double();
        auto sample = [&]() -> std::pair<CertifiedScalar, CertifiedScalar> {
            mpq_class x1 = rng.rational(1, long(hid) + 4, 8);
            mpq_class x2 = rng.rational(0, 3, 8);
            return {CertifiedScalar::from_rational(x1), CertifiedScalar::from_rational(x2)};
        };
        auto [a1, a2] = sample();
        auto [b1, b2] = sample();
        if (!region_membership(t[0], t[1], t[2], a1, a2).inside) continue;
        if (!region_membership(t[0], t[1], t[2], b1, b2).inside) continue;
        CertifiedScalar half = rat(1, 2);
        RegionVerdict mid =
            region_membership(t[0], t[1], t[2], (a1 + b1) * half, (a2 + b2) * half);
        CHECK(mid.inside);
        ++done;
    }
}

TEST_CASE("pair classification matches the region rows") {
    // Inside: consecutive normals meet, all others are disjoint.
    Rng rng(5150);
    for (int c = 0; c < 10; ++c) {
        mpq_class x1 = rng.rational(3, 6, 4);   // segment of n = 8 is (2, 6.83)
        mpq_class x2 = rng.rational(0, 1, 4);
        CertifiedScalar sx1 = CertifiedScalar::from_rational(x1);
        CertifiedScalar sx2 = CertifiedScalar::from_rational(x2);
        if (!region_membership(2, 3, 8, sx1, sx2).inside) continue;
        NecklaceConfig cfg = build_config(2, 3, 8, sx1, sx2);
        CHECK(classify_pair(cfg.p_at(0), cfg.p_at(1)).kind == PairClass::Kind::Intersecting);
        for (long j = 2; j <= 4; ++j)
            CHECK(classify_pair(cfg.p_at(0), cfg.p_at(j)).kind ==
                  PairClass::Kind::Ultraparallel);
    }

    // Crossing the i=2 wall flips exactly that pair: at n = 12 the wall is
    // x1 = 4 on the x2 = 0 line.
    RegionVerdict bad = region_membership(2, 5, 12, rat(39, 10), num(0));
    CHECK(!bad.inside);
    CHECK(bad.first_failure == "i=2");
    NecklaceConfig tight = build_config(2, 5, 12, rat(39, 10), num(0));
    CHECK(classify_pair(tight.p_at(0), tight.p_at(2)).kind ==
          PairClass::Kind::Intersecting);
    CHECK(classify_pair(tight.p_at(0), tight.p_at(1)).kind ==
          PairClass::Kind::Intersecting);

    NecklaceConfig okc = build_config(2, 5, 12, rat(41, 10), num(0));
    CHECK(region_membership(2, 5, 12, rat(41, 10), num(0)).inside);
    CHECK(classify_pair(okc.p_at(0), okc.p_at(2)).kind == PairClass::Kind::Ultraparallel);
}

TEST_CASE("right-angle battery at the solved point") {
    auto [x1, x2] = bundle::solve_system(2, 5, 24);
    NecklaceConfig cfg = build_config(2, 5, 24, x1, x2);
    auto verdict = ppt_check(cfg);
    CHECK(verdict.ok);
    CHECK(!verdict.uncertified);
    CHECK(verdict.g1_sign.is_zero());
    CHECK(verdict.pairs_checked == 24);
    CHECK(verdict.codim2_cycle_length == 4);
    CHECK(verdict.codim2_total_angle_full_turns == 1);

    NecklaceConfig plane = build_config(2, 5, 24, num(20), num(0));
    auto off = ppt_check(plane);
    CHECK(!off.ok);
    CHECK(off.g1_sign.is_negative());  // g_1 ~ -0.3185 at (20, 0)

    NecklaceConfig outside = build_config(2, 5, 24, num(100), num(0));
    CHECK_THROWS_AS(ppt_check(outside), DomainError);
}

}  // TEST_SUITE
