#include "necklace/necklace.hpp"

#include "necklace/errors.hpp"

namespace necklace::geom {

using minkowski::apply;
using minkowski::form;
using scalar_field::certify_sign;
using scalar_field::cos_frac;
using scalar_field::Sign;
using scalar_field::sin_frac;

void require_parameter_domain(long k, long m, long n) {
    if (n < 2 || n % 2 != 0) throw DomainError("n must be even and >= 2");
    if (!(1 < k && k < m && 2 * m < n)) throw DomainError("parameters must satisfy 1 < k < m < n/2");
}

namespace {

long mod_n(long i, long n) {
    long r = i % n;
    return r < 0 ? r + n : r;
}

CertifiedScalar one() { return CertifiedScalar::from_long(1); }
CertifiedScalar two() { return CertifiedScalar::from_long(2); }

// (1 - c_i) x1 + (1 - c_{mi}) x2 - 1, the closed Gram form.
CertifiedScalar gram_closed(long m, long n, long i, const CertifiedScalar& x1,
                            const CertifiedScalar& x2) {
    i = mod_n(i, n);
    CertifiedScalar a = (one() - cos_frac(i, n)) * x1;
    CertifiedScalar b = (one() - cos_frac(mod_n(m * i, n), n)) * x2;
    return a + b - one();
}

Isometry5 block_rotation(long m, long n) {
    Isometry5 r = Isometry5::zero();
    CertifiedScalar c1 = cos_frac(1, n), s1 = sin_frac(1, n);
    CertifiedScalar cm = cos_frac(m, n), sm = sin_frac(m, n);
    r.at(0, 0) = c1;
    r.at(0, 1) = -s1;
    r.at(1, 0) = s1;
    r.at(1, 1) = c1;
    r.at(2, 2) = cm;
    r.at(2, 3) = -sm;
    r.at(3, 2) = sm;
    r.at(3, 3) = cm;
    r.at(4, 4) = one();
    return r;
}

} // namespace

const Vec5& NecklaceConfig::p_at(long i) const {
    return p.at(static_cast<std::size_t>(mod_n(i, n)));
}

const CertifiedScalar& NecklaceConfig::g_at(long i) const {
    return g.at(static_cast<std::size_t>(mod_n(i, n)));
}

NecklaceConfig build_config(long k, long m, long n, const CertifiedScalar& x1,
                            const CertifiedScalar& x2) {
    require_parameter_domain(k, m, n);

    SignCertificate sx1 = certify_sign(x1);
    if (sx1.verdict == Sign::StrictlyNegative || sx1.is_zero())
        throw DomainError("x1 must be strictly positive");
    if (!sx1.decided()) throw UncertifiedError("sign of x1 undecided");
    SignCertificate sx2 = certify_sign(x2);
    if (sx2.verdict == Sign::StrictlyNegative) throw DomainError("x2 must be nonnegative");
    if (!sx2.decided()) throw UncertifiedError("sign of x2 undecided");
    CertifiedScalar depth = x1 + x2 - one();
    SignCertificate sd = certify_sign(depth);
    if (sd.verdict != Sign::StrictlyPositive) {
        if (!sd.decided()) throw UncertifiedError("sign of x1 + x2 - 1 undecided");
        throw DomainError("x1 + x2 must exceed 1");
    }

    NecklaceConfig cfg;
    cfg.k = k;
    cfg.m = m;
    cfg.n = n;
    cfg.x1 = x1;
    cfg.x2 = x2;
    cfg.r = block_rotation(m, n);

    Vec5 p0;
    p0[0] = x1.sqrt();
    p0[2] = x2.sqrt();
    p0[4] = depth.sqrt();
    cfg.p.reserve(static_cast<std::size_t>(n));
    cfg.p.push_back(p0);
    for (long i = 1; i < n; ++i) cfg.p.push_back(apply(cfg.r, cfg.p.back()));
    if (!(apply(cfg.r, cfg.p.back()) - p0).is_ring_zero())
        throw UncertifiedError("rotation period residual did not cancel");

    cfg.g.reserve(static_cast<std::size_t>(n));
    for (long i = 0; i < n; ++i) {
        CertifiedScalar gi = gram_closed(m, n, i, x1, x2);
        if (!(form(p0, cfg.p[static_cast<std::size_t>(i)]) - gi).is_ring_zero())
            throw UncertifiedError("Gram closed form residual did not cancel");
        cfg.g.push_back(std::move(gi));
    }
    return cfg;
}

CertifiedScalar gram_coefficient(const NecklaceConfig& cfg, long i) {
    return gram_closed(cfg.m, cfg.n, i, cfg.x1, cfg.x2);
}

RegionVerdict region_membership(long k, long m, long n, const CertifiedScalar& x1,
                                const CertifiedScalar& x2) {
    require_parameter_domain(k, m, n);
    RegionVerdict v;
    v.inside = true;

    // Each check is normalized to a margin that passes when strictly positive
    // (the x2 margin may also be exactly zero), so one certificate shape and
    // one auditable lower bound serve every row.
    auto record = [&v](std::string id, const CertifiedScalar& margin, bool zero_ok) {
        SignCertificate sc = certify_sign(margin);
        const bool pass = sc.is_positive() || (zero_ok && sc.is_zero());
        if (!pass && v.inside) {
            v.inside = false;
            v.first_failure = id;
            if (!sc.decided()) v.uncertified = true;
        }
        RegionCheck rc;
        rc.id = std::move(id);
        rc.cert = sc;
        rc.margin_lower = margin.lower_double();
        v.checks.push_back(std::move(rc));
    };

    record("x1>0", x1, false);
    record("x2>=0", x2, true);
    record("x1+x2>1", x1 + x2 - one(), false);

    // Row i compares (1-c_i)x1 + (1-c_{mi})x2 with 2: below for i = 1, above
    // for 2 <= i <= n/2, so the margins are 2 - row and row - 2.
    for (long i = 1; i <= n / 2; ++i) {
        CertifiedScalar gi = gram_closed(m, n, i, x1, x2);
        record("i=" + std::to_string(i), i == 1 ? one() - gi : gi - one(), false);
    }
    return v;
}

std::pair<CertifiedScalar, CertifiedScalar> segment_S(long k, long m, long n) {
    require_parameter_domain(k, m, n);
    CertifiedScalar lo = two() / (one() - cos_frac(2, n));
    CertifiedScalar hi = two() / (one() - cos_frac(1, n));
    return {lo, hi};
}

PptVerdict ppt_check(const NecklaceConfig& cfg) {
    RegionVerdict rv = region_membership(cfg.k, cfg.m, cfg.n, cfg.x1, cfg.x2);
    if (!rv.inside) throw DomainError("reflection-group check requires parameters inside the region");

    PptVerdict v;
    v.g1_sign = certify_sign(cfg.g_at(1));
    if (!v.g1_sign.is_zero()) {
        v.ok = false;
        v.uncertified = !v.g1_sign.decided();
        return v;
    }

    // With g_1 cancelling exactly, every adjacent pair must be orthogonal and
    // every product of adjacent reflections an involution.  The residual of
    // (tau_{i+1} tau_i)^2 - 1 expands over the pair (p_i, p_{i+1}) with the
    // coefficient matrix [[8s^2, 4s], [16s^3 - 4s, 8s^2]] in s = <p_i, p_{i+1}>,
    // given unit normals; certifying s = 0 and those coefficients = 0 in the
    // ring certifies the matrix identity entrywise.
    CertifiedScalar four = CertifiedScalar::from_long(4);
    CertifiedScalar sixteen = CertifiedScalar::from_long(16);
    CertifiedScalar eight = CertifiedScalar::from_long(8);
    for (long i = 0; i < cfg.n; ++i) {
        const Vec5& a = cfg.p_at(i);
        const Vec5& b = cfg.p_at(i + 1);
        if (!(form(a, a) + one()).is_ring_zero() || !(form(b, b) + one()).is_ring_zero())
            throw UncertifiedError("normal normalization residual did not cancel");
        CertifiedScalar s = form(a, b);
        if (!s.is_ring_zero())
            throw UncertifiedError("adjacent orthogonality residual did not cancel");
        CertifiedScalar s2 = s * s;
        if (!(eight * s2).is_ring_zero() || !(four * s).is_ring_zero() ||
            !(sixteen * s2 * s - four * s).is_ring_zero())
            throw UncertifiedError("involution residual did not cancel");
        ++v.pairs_checked;
    }
    v.ok = true;
    return v;
}

} // namespace necklace::geom
