#pragma once

#include <array>
#include <optional>

#include "necklace/necklace.hpp"

namespace necklace::fibration {

using geom::NecklaceConfig;
using minkowski::Isometry5;
using minkowski::Vec5;
using scalar_field::CertifiedScalar;

// The middle-slice reflection sigma, the twisted rotation r*sigma, its 2x2
// matrix [[0,1],[-1,2g_1]] on the invariant plane spanned by p_0, p_1, the
// interior fixed point f_0, and the rotation cosine on the complementary
// corner plane.
struct FibrationData {
    Isometry5 sigma;
    Isometry5 r_sigma;
    std::array<std::array<CertifiedScalar, 2>, 2> u_matrix;
    Vec5 f0;
    CertifiedScalar cos_a;
};

// Reflection v -> v + 2<v,p_0>p_0 + (<v,w>/(g_2+1)) w with w = p_1 - p_{n-1}.
// The divisor g_2 + 1 is certified strictly positive (it exceeds 2 inside the
// region); the caller is responsible for the region membership itself.
Isometry5 sigma(const NecklaceConfig& cfg);

// r o sigma, built directly as r v + 2<v,p_0>p_1 + (<v,w>/(g_2+1))(p_2 - p_0)
// and cross-checked against compose(r, sigma(cfg)) by exact cancellation of
// all 25 entries.
Isometry5 r_sigma(const NecklaceConfig& cfg);

// f_0 = (1 - g_1) b + <b,p_0> (p_0 + p_1); orthogonality to p_0 and p_1 is
// certified by exact cancellation at construction.
Vec5 fixed_point_f0(const NecklaceConfig& cfg);

// Rotation cosine of r*sigma about f_0 on the corner plane:
// ((1-c_1^2) c_m x1 + c_1 (1-c_m^2) x2) / ((1-c_1^2) x1 + (1-c_m^2) x2),
// cross-checked against (trace(r_sigma) - 2 g_1 - 1)/2 by exact cancellation.
CertifiedScalar rotation_cos(const NecklaceConfig& cfg);

// Fibredness: the rotation cosine coincides with some grid cosine c_j.
// j is reported only on exact cancellation of cos a - c_j; a comparison that
// hits the precision cap sets inexact (equality of generic reals cannot be
// decided numerically) and reports no j.
struct FibredStatus {
    std::optional<long> j;
    bool inexact = false;
};
FibredStatus is_fibred(const NecklaceConfig& cfg);

// Euler number of the fibred polyhedron at the end parameters, as the count
// of grid-cosine crossings of cos a(t) along the straight path from the plane
// configuration (segment-S midpoint, x2 = 0) to (x1, x2), t in (0, 1]: the
// final moment counts, the initial plane moment does not.  cos a(t) is a
// Moebius function of t; its determinant sign is certified once (exact zero
// means the constant plane case with count 0), each interior crossing is
// isolated in its own bisection bracket, and the end value must coincide with
// a grid cosine exactly (DomainError otherwise).  UncertifiedError when
// monotonicity or a bracket cannot be certified.
long euler_number(long k, long m, long n, const CertifiedScalar& end_x1,
                  const CertifiedScalar& end_x2);

// Assembles FibrationData and certifies the bundled identities: the direct
// rank-one construction against compose, u_matrix action (r sigma p_0 = -p_1 and
// r sigma p_1 = p_0 + 2 g_1 p_1), projective invariance of f_0, interiority
// of f_0, and the trace decomposition.  Throws UncertifiedError on any
// residual that fails to cancel.
FibrationData fibration_data(const NecklaceConfig& cfg);

} // namespace necklace::fibration
