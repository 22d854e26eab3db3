#include <doctest.h>

#include "necklace/bundle_search.hpp"
#include "necklace/errors.hpp"
#include "necklace/fibration.hpp"
#include "necklace/minkowski.hpp"
#include "necklace/necklace.hpp"

#include "support.hpp"

using namespace necklace;
using minkowski::Isometry5;
using minkowski::PairClass;
using minkowski::PointClass;
using minkowski::Vec5;
using minkowski::apply;
using minkowski::classify_pair;
using minkowski::classify_point;
using minkowski::compose;
using minkowski::form;
using minkowski::projectively_equal_exact;
using minkowski::reflect;
using minkowski::reflection_matrix;
using scalar_field::CertifiedScalar;
using scalar_field::certify_sign;
using test_support::Rng;

namespace {

CertifiedScalar one() { return CertifiedScalar::from_long(1); }

Vec5 vec(long a, long b, long c, long d, long e) {
    Vec5 v;
    v[0] = CertifiedScalar::from_long(a);
    v[1] = CertifiedScalar::from_long(b);
    v[2] = CertifiedScalar::from_long(c);
    v[3] = CertifiedScalar::from_long(d);
    v[4] = CertifiedScalar::from_long(e);
    return v;
}

// (sqrt x1, 0, sqrt x2, 0, sqrt(x1+x2-1)): unit timelike by construction.
Vec5 unit_normal(const mpq_class& x1, const mpq_class& x2) {
    CertifiedScalar a = CertifiedScalar::from_rational(x1);
    CertifiedScalar b = CertifiedScalar::from_rational(x2);
    Vec5 v;
    v[0] = a.sqrt();
    v[2] = b.sqrt();
    v[4] = (a + b - one()).sqrt();
    return v;
}

Vec5 random_vec(Rng& rng) {
    Vec5 v;
    for (int i = 0; i < 5; ++i)
        v[i] = CertifiedScalar::from_rational(rng.rational(-5, 5, 6));
    return v;
}

}  // namespace

TEST_SUITE("minkowski") {

TEST_CASE("form signature on the basis") {
    for (int i = 0; i < 5; ++i) {
        CertifiedScalar d = form(Vec5::basis(i), Vec5::basis(i));
        long expect = i == 4 ? 1 : -1;
        CHECK((d - CertifiedScalar::from_long(expect)).is_ring_zero());
        for (int j = i + 1; j < 5; ++j)
            CHECK(form(Vec5::basis(i), Vec5::basis(j)).is_ring_zero());
    }
}

TEST_CASE("point classification") {
    CHECK(classify_point(Vec5::basis(4)) == PointClass::Interior);
    CHECK(classify_point(vec(1, 0, 0, 0, 1)) == PointClass::Ideal);
    CHECK(classify_point(Vec5::basis(0)) == PointClass::Exterior);
    CHECK(classify_point(unit_normal(20, 0)) == PointClass::Exterior);
}

TEST_CASE("reflection fixes the mirror and negates the normal") {
    Vec5 p = unit_normal(2, 3);
    CHECK((form(p, p) + one()).is_ring_zero());
    CHECK((reflect(p, p) + p).is_ring_zero());
    Vec5 v = Vec5::basis(1);  // orthogonal to p
    CHECK(form(v, p).is_ring_zero());
    CHECK((reflect(p, v) - v).is_ring_zero());
    CHECK_THROWS_AS(reflect(Vec5::basis(0).scaled(CertifiedScalar::from_long(2)), v),
                    DomainError);
}

TEST_CASE("reflection involution and form invariance, randomized") {
    Rng rng(31415);
    for (int c = 0; c < 100; ++c) {
        mpq_class x1 = rng.rational(1, 20, 8);
        mpq_class x2 = rng.rational(0, 10, 8);
        if (x1 + x2 <= 1) x1 += 2;
        Vec5 p = unit_normal(x1, x2);
        Vec5 v = random_vec(rng);
        CHECK((reflect(p, reflect(p, v)) - v).is_ring_zero());
        Vec5 u = random_vec(rng);
        CHECK((form(reflect(p, u), reflect(p, v)) - form(u, v)).is_ring_zero());
    }
}

TEST_CASE("pair classification thresholds") {
    Vec5 p = vec(1, 0, 0, 0, 0);
    Vec5 q = vec(0, 1, 0, 0, 0);
    PairClass pc = classify_pair(p, q);
    CHECK(pc.kind == PairClass::Kind::Intersecting);
    CHECK(pc.cos_angle.is_ring_zero());  // right angle

    // <p, q'> = -3/2: disjoint with a common perpendicular.
    Vec5 qfar;
    qfar[0] = CertifiedScalar::from_rational(mpq_class(3, 2));
    qfar[4] = (CertifiedScalar::from_rational(mpq_class(9, 4)) - one()).sqrt();
    CHECK((form(qfar, qfar) + one()).is_ring_zero());
    CHECK(classify_pair(p, qfar).kind == PairClass::Kind::Ultraparallel);
    CHECK(classify_pair(qfar, p).kind == PairClass::Kind::Ultraparallel);

    // q'' = p + e with e null orthogonal to p: asymptotically parallel.
    Vec5 qtan = vec(1, 1, 0, 0, 1);
    CHECK((form(qtan, qtan) + one()).is_ring_zero());
    CHECK(classify_pair(p, qtan).kind == PairClass::Kind::Asymptotic);
}

TEST_CASE("adjacent and distant necklace normals at the solved point") {
    auto [x1, x2] = bundle::solve_system(2, 5, 24);
    geom::NecklaceConfig cfg = geom::build_config(2, 5, 24, x1, x2);
    PairClass adj = classify_pair(cfg.p_at(0), cfg.p_at(1));
    CHECK(adj.kind == PairClass::Kind::Intersecting);
    CHECK(adj.cos_angle.is_ring_zero());  // the right-angle condition g_1 = 0
    CHECK(classify_pair(cfg.p_at(0), cfg.p_at(2)).kind == PairClass::Kind::Ultraparallel);
    CHECK(test_support::within_decimal(cfg.g_at(2), "1.65242355904975563234177224604", 25));
}

TEST_CASE("isometry plumbing") {
    Vec5 p = unit_normal(2, 3);
    Isometry5 tau = reflection_matrix(p);
    CHECK((compose(tau, tau) - Isometry5::identity()).is_ring_zero());
    Vec5 v = vec(1, -2, 3, 0, 5);
    CHECK((apply(Isometry5::identity(), v) - v).is_ring_zero());
    CHECK((apply(tau, v) - reflect(p, v)).is_ring_zero());

    CHECK(projectively_equal_exact(v, v.scaled(CertifiedScalar::from_long(3))));
    CHECK(!projectively_equal_exact(v, v + Vec5::basis(3)));
}

TEST_CASE("form invariance of the necklace maps on basis pairs") {
    geom::NecklaceConfig cfg =
        geom::build_config(2, 5, 24, CertifiedScalar::from_long(20), CertifiedScalar());
    Isometry5 maps[4] = {cfg.r, reflection_matrix(cfg.p_at(0)), fibration::sigma(cfg),
                         fibration::r_sigma(cfg)};
    for (const Isometry5& mat : maps)
        for (int i = 0; i < 5; ++i)
            for (int j = 0; j < 5; ++j) {
                Vec5 u = Vec5::basis(i), v = Vec5::basis(j);
                CHECK((form(apply(mat, u), apply(mat, v)) - form(u, v)).is_ring_zero());
            }
}

TEST_CASE("the rotation closes after a full necklace turn") {
    geom::NecklaceConfig cfg =
        geom::build_config(2, 5, 24, CertifiedScalar::from_long(20), CertifiedScalar());
    Isometry5 acc = Isometry5::identity();
    for (long i = 0; i < 24; ++i) acc = compose(cfg.r, acc);
    CHECK((acc - Isometry5::identity()).is_ring_zero());
}

}  // TEST_SUITE
