#pragma once

#include <string>
#include <utility>
#include <vector>

#include "necklace/minkowski.hpp"

namespace necklace::geom {

using minkowski::Isometry5;
using minkowski::Vec5;
using scalar_field::CertifiedScalar;
using scalar_field::SignCertificate;

// The parameterized necklace: integers 1 < k < m < n/2 with n even, the
// block rotation r by the angles 2*pi/n and 2*pi*m/n, the hyperplane normals
// p_i = r^i p_0 with p_0 = (sqrt x1, 0, sqrt x2, 0, sqrt(x1+x2-1)), and the
// Gram coefficients g_i = <p_0, p_i>.  Immutable after build_config.
struct NecklaceConfig {
    long k = 0, m = 0, n = 0;
    CertifiedScalar x1, x2;
    Isometry5 r;
    std::vector<Vec5> p;               // p_0 .. p_{n-1}
    std::vector<CertifiedScalar> g;    // g_0 .. g_{n-1}, closed form

    const Vec5& p_at(long i) const;             // index mod n
    const CertifiedScalar& g_at(long i) const;  // index mod n
};

// One region inequality, normalized so that a strictly positive margin means
// pass (the x2 row also passes at exactly zero).  margin_lower is a certified
// lower bound on the margin, exported so certificates can be audited without
// rerunning the evaluation.
struct RegionCheck {
    std::string id;
    SignCertificate cert;
    double margin_lower = 0;
};

// Outcome of the convex-region test: the three admissibility inequalities
// followed by the n/2 indexed rows ((1-c_1)x1 + (1-c_m)x2 < 2 for i = 1,
// the reversed comparison for 2 <= i <= n/2).  inside is the conjunction of
// passing certificates; uncertified marks any row that hit the precision cap,
// which never counts as inside.
struct RegionVerdict {
    bool inside = false;
    bool uncertified = false;
    std::string first_failure;  // inequality id, empty when inside
    std::vector<RegionCheck> checks;
};

// Result of the reflection-group condition check: ok means the right-angle
// condition g_1 = 0 holds by exact cancellation, and then every adjacent
// normal pair satisfies <p_i, p_{i+1}> = 0 and (tau_{i+1} tau_i)^2 = 1 with
// exactly cancelling residuals (tau_i the reflection in p_i).  The
// codimension-2 cycle data (length 4, one full turn of total angle) is a
// consequence of those identities, recorded for reporting.
struct PptVerdict {
    bool ok = false;
    bool uncertified = false;
    SignCertificate g1_sign;
    long pairs_checked = 0;
    long codim2_cycle_length = 4;
    long codim2_total_angle_full_turns = 1;
};

// DomainError unless n is even and 1 < k < m < n/2.
void require_parameter_domain(long k, long m, long n);

// Validates 1 < k < m < n/2 with n even (DomainError otherwise) and the
// admissibility of (x1, x2): x1 > 0, x2 >= 0, x1 + x2 > 1, all certified
// (DomainError when a constraint certifiably fails, UncertifiedError when one
// cannot be decided).  The returned config has p built by repeated action of
// r, cross-checked against the closed-form Gram coefficients by exact
// cancellation, and satisfies r^n = 1 on p_0.
NecklaceConfig build_config(long k, long m, long n, const CertifiedScalar& x1,
                            const CertifiedScalar& x2);

// (1 - c_i) x1 + (1 - c_{mi}) x2 - 1 with indices mod n.
CertifiedScalar gram_coefficient(const NecklaceConfig& cfg, long i);

// Membership of (x1, x2) in the region cut out by the necklace inequalities.
// Parameter-domain violations on (k, m, n) raise DomainError; bad (x1, x2)
// report as outside rather than erroring.
RegionVerdict region_membership(long k, long m, long n, const CertifiedScalar& x1,
                                const CertifiedScalar& x2);

// The open x1-interval (2/(1-c_2), 2/(1-c_1)) on the x2 = 0 boundary line;
// every x1 strictly inside it passes region_membership with x2 = 0.
std::pair<CertifiedScalar, CertifiedScalar> segment_S(long k, long m, long n);

// Reflection-group condition check; requires the config's parameters inside
// the region (DomainError otherwise).  See PptVerdict.
PptVerdict ppt_check(const NecklaceConfig& cfg);

} // namespace necklace::geom
