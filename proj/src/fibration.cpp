#include "necklace/fibration.hpp"

#include <algorithm>
#include <vector>

#include "necklace/errors.hpp"

namespace necklace::fibration {

using minkowski::apply;
using minkowski::compose;
using minkowski::form;
using scalar_field::certify_compare;
using scalar_field::certify_sign;
using scalar_field::cos_frac;
using scalar_field::Sign;
using scalar_field::SignCertificate;

namespace {

CertifiedScalar one() { return CertifiedScalar::from_long(1); }
CertifiedScalar two() { return CertifiedScalar::from_long(2); }

// M += coeff * u (Jv)^T, the rank-one update sending x to coeff * <v,x> u.
void add_rank_one(Isometry5& m, const Vec5& u, const Vec5& v, const CertifiedScalar& coeff) {
    for (int i = 0; i < 5; ++i) {
        for (int j = 0; j < 5; ++j) {
            CertifiedScalar t = coeff * u[i] * v[j];
            m.at(i, j) = (j == 4) ? m.at(i, j) + t : m.at(i, j) - t;
        }
    }
}

CertifiedScalar certified_slice_divisor(const NecklaceConfig& cfg) {
    CertifiedScalar den = cfg.g_at(2) + one();
    SignCertificate sc = certify_sign(den);
    if (!sc.decided()) throw UncertifiedError("sign of g_2 + 1 undecided");
    if (!sc.is_positive()) throw DomainError("g_2 + 1 must be positive (is the point inside the region?)");
    return den;
}

} // namespace

Isometry5 sigma(const NecklaceConfig& cfg) {
    CertifiedScalar den = certified_slice_divisor(cfg);
    Vec5 w = cfg.p_at(1) - cfg.p_at(-1);
    Isometry5 s = Isometry5::identity();
    add_rank_one(s, cfg.p_at(0), cfg.p_at(0), two());
    add_rank_one(s, w, w, one() / den);
    return s;
}

Isometry5 r_sigma(const NecklaceConfig& cfg) {
    CertifiedScalar den = certified_slice_divisor(cfg);
    Vec5 w = cfg.p_at(1) - cfg.p_at(-1);
    Isometry5 rs = cfg.r;
    add_rank_one(rs, cfg.p_at(1), cfg.p_at(0), two());
    add_rank_one(rs, cfg.p_at(2) - cfg.p_at(0), w, one() / den);
    if (!(rs - compose(cfg.r, sigma(cfg))).is_ring_zero())
        throw UncertifiedError("two constructions of r*sigma did not cancel");
    return rs;
}

Vec5 fixed_point_f0(const NecklaceConfig& cfg) {
    const Vec5& p0 = cfg.p_at(0);
    const Vec5& p1 = cfg.p_at(1);
    Vec5 b = Vec5::basis(4);
    Vec5 f0 = b.scaled(one() - cfg.g_at(1)) + (p0 + p1).scaled(form(b, p0));
    if (!form(f0, p0).is_ring_zero() || !form(f0, p1).is_ring_zero())
        throw UncertifiedError("orthogonality of f_0 to the invariant plane did not cancel");
    return f0;
}

CertifiedScalar rotation_cos(const NecklaceConfig& cfg) {
    CertifiedScalar c1 = cos_frac(1, cfg.n);
    CertifiedScalar cm = cos_frac(cfg.m, cfg.n);
    CertifiedScalar w1 = one() - c1 * c1;
    CertifiedScalar wm = one() - cm * cm;
    CertifiedScalar num = w1 * cm * cfg.x1 + c1 * wm * cfg.x2;
    CertifiedScalar den = w1 * cfg.x1 + wm * cfg.x2;
    SignCertificate sc = certify_sign(den);
    if (!sc.decided()) throw UncertifiedError("rotation-cos denominator sign undecided");
    if (!sc.is_positive()) throw DomainError("rotation-cos denominator must be positive");
    CertifiedScalar cos_a = num / den;

    // Independent route: on the invariant plane r*sigma contributes 2 g_1 + 1
    // to the trace, the corner plane contributes 2 cos a.
    CertifiedScalar tr;
    Isometry5 rs = r_sigma(cfg);
    for (int i = 0; i < 5; ++i) tr += rs.at(i, i);
    CertifiedScalar resid = tr - two() * cfg.g_at(1) - one() - two() * cos_a;
    if (!resid.is_ring_zero())
        throw UncertifiedError("trace decomposition of r*sigma did not cancel");
    return cos_a;
}

FibredStatus is_fibred(const NecklaceConfig& cfg) {
    CertifiedScalar cos_a = rotation_cos(cfg);
    FibredStatus st;
    for (long j = 1; j <= cfg.n / 2; ++j) {
        if ((cos_a - cos_frac(j, cfg.n)).is_ring_zero()) {
            st.j = j;
            return st;
        }
    }
    for (long j = 1; j <= cfg.n / 2; ++j) {
        if (!certify_compare(cos_a, cos_frac(j, cfg.n)).decided()) st.inexact = true;
    }
    return st;
}

namespace {

struct MoebiusPath {
    // cos a(t) = (a1 t + a2) / (a3 t + a4) along the straight deformation.
    CertifiedScalar a1, a2, a3, a4;

    CertifiedScalar num_at(const mpq_class& t) const {
        return a1 * CertifiedScalar::from_rational(t) + a2;
    }
    CertifiedScalar den_at(const mpq_class& t) const {
        return a3 * CertifiedScalar::from_rational(t) + a4;
    }
    // Sign of cos a(t) - c against a grid cosine c, valid while the
    // denominator is positive.
    SignCertificate side(const mpq_class& t, const CertifiedScalar& c) const {
        return certify_sign(num_at(t) - c * den_at(t));
    }
};

} // namespace

long euler_number(long k, long m, long n, const CertifiedScalar& end_x1,
                  const CertifiedScalar& end_x2) {
    auto [s_lo, s_hi] = geom::segment_S(k, m, n);
    CertifiedScalar start_x1 = (s_lo + s_hi) / two();

    CertifiedScalar c1 = cos_frac(1, n);
    CertifiedScalar cm = cos_frac(m, n);
    CertifiedScalar w1 = one() - c1 * c1;
    CertifiedScalar wm = one() - cm * cm;

    MoebiusPath path;
    path.a2 = w1 * cm * start_x1;
    path.a4 = w1 * start_x1;
    path.a1 = w1 * cm * (end_x1 - start_x1) + c1 * wm * end_x2;
    path.a3 = w1 * (end_x1 - start_x1) + wm * end_x2;

    // The denominator is linear in t and certified positive at both ends,
    // hence positive along the whole path.
    for (const mpq_class& t : {mpq_class(0), mpq_class(1)}) {
        SignCertificate sc = certify_sign(path.den_at(t));
        if (!sc.decided()) throw UncertifiedError("path denominator sign undecided");
        if (!sc.is_positive()) throw DomainError("path denominator must stay positive");
    }

    // Start value is c_m exactly; anything else means a broken path setup.
    if (!(path.num_at(0) - cm * path.den_at(0)).is_ring_zero())
        throw UncertifiedError("start of the deformation path is not the plane value");

    CertifiedScalar det = path.a1 * path.a4 - path.a2 * path.a3;
    SignCertificate det_sign = certify_sign(det);
    if (det_sign.is_zero()) return 0;  // constant path: the plane case
    if (!det_sign.decided()) throw UncertifiedError("path monotonicity undecided");
    bool increasing = det_sign.is_positive();

    CertifiedScalar cos_end = (path.a1 + path.a2) / (path.a3 + path.a4);
    std::optional<long> j_end;
    for (long j = 1; j <= n / 2; ++j) {
        if ((cos_end - cos_frac(j, n)).is_ring_zero()) {
            j_end = j;
            break;
        }
    }
    if (!j_end) throw DomainError("end of the deformation path is not a fibred configuration");

    // Determine which grid cosines lie strictly between the endpoint values;
    // each one is crossed exactly once by monotonicity.
    std::vector<long> interior;
    for (long j = 1; j <= n / 2; ++j) {
        CertifiedScalar cj = cos_frac(j, n);
        SignCertificate above_start =
            increasing ? certify_compare(cj, cm) : certify_compare(cm, cj);
        SignCertificate below_end =
            increasing ? certify_compare(cos_end, cj) : certify_compare(cj, cos_end);
        if (!above_start.decided() || !below_end.decided())
            throw UncertifiedError("grid comparison undecided along the path");
        if (above_start.is_positive() && below_end.is_positive()) interior.push_back(j);
    }

    // Isolate each interior crossing in its own dyadic bracket.
    struct Bracket {
        mpq_class lo, hi;
    };
    std::vector<Bracket> brackets;
    for (long j : interior) {
        CertifiedScalar cj = cos_frac(j, n);
        mpq_class lo(0), hi(1);
        for (int step = 0; step < 40; ++step) {
            mpq_class mid = (lo + hi) / 2;
            SignCertificate sc = path.side(mid, cj);
            if (!sc.decided()) throw UncertifiedError("crossing bracket sign undecided");
            if (sc.is_zero()) {
                lo = hi = mid;  // crossing hit exactly
                break;
            }
            bool below = increasing ? sc.is_negative() : sc.is_positive();
            if (below) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        brackets.push_back({lo, hi});
    }
    std::sort(brackets.begin(), brackets.end(),
              [](const Bracket& a, const Bracket& b) { return a.lo < b.lo; });
    for (std::size_t i = 1; i < brackets.size(); ++i) {
        if (!(brackets[i - 1].hi <= brackets[i].lo))
            throw UncertifiedError("crossing brackets failed to separate");
    }

    // Interior crossings plus the endpoint crossing at t = 1, which counts by
    // the endpoint convention; t = 0 never counts.
    return static_cast<long>(brackets.size()) + 1;
}

FibrationData fibration_data(const NecklaceConfig& cfg) {
    FibrationData d;
    d.sigma = sigma(cfg);
    d.r_sigma = r_sigma(cfg);
    d.f0 = fixed_point_f0(cfg);
    d.cos_a = rotation_cos(cfg);

    CertifiedScalar g1 = cfg.g_at(1);
    d.u_matrix = {{{CertifiedScalar(), one()}, {-one(), two() * g1}}};

    const Vec5& p0 = cfg.p_at(0);
    const Vec5& p1 = cfg.p_at(1);
    if (!(apply(d.r_sigma, p0) + p1).is_ring_zero())
        throw UncertifiedError("r*sigma action on p_0 did not cancel");
    if (!(apply(d.r_sigma, p1) - p0 - p1.scaled(two() * g1)).is_ring_zero())
        throw UncertifiedError("r*sigma action on p_1 did not cancel");
    if (!(compose(d.sigma, d.sigma) - Isometry5::identity()).is_ring_zero())
        throw UncertifiedError("sigma involution residual did not cancel");
    if (!minkowski::projectively_equal_exact(apply(d.r_sigma, d.f0), d.f0))
        throw UncertifiedError("fixed point of r*sigma did not cancel projectively");
    if (minkowski::classify_point(d.f0) != minkowski::PointClass::Interior)
        throw UncertifiedError("f_0 is not certified interior");
    return d;
}

} // namespace necklace::fibration
