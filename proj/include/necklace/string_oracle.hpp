#pragma once

#include <array>
#include <vector>

#include "necklace/necklace.hpp"

namespace necklace::string_oracle {

using geom::NecklaceConfig;

// This module is the plain double-precision counterpart of the certified
// pipeline: same geometry, independent arithmetic.  Agreement within the
// stated tolerances is evidence; disagreement is a build failure.

using Vec5d = std::array<double, 5>;
using Mat5d = std::array<Vec5d, 5>;

double form_d(const Vec5d& u, const Vec5d& v);
Vec5d apply_d(const Mat5d& m, const Vec5d& v);
Mat5d compose_d(const Mat5d& a, const Mat5d& b);

// Scale-free distance between projective points: largest absolute 2x2 minor
// after normalizing both vectors by their sup norms.
double projective_distance(const Vec5d& u, const Vec5d& v);

// String through the middle-slice reflections: starting from an ideal point
// q_0 on the corner plane C_0, apply sigma_n, ..., sigma_1 (sigma_i the
// conjugate of the middle-slice reflection by the i-th rotation power).
struct StringTrace {
    std::vector<Vec5d> points;  // q_0, q_{n-1}, ..., q'_0: n + 1 entries
    double closure_residual = 0;
    long steps = 0;
};

// Basis of the corner plane C_i, the form-orthogonal complement of
// span(p_i, p_{i+1}): three independent vectors, each orthogonal to both
// normals up to float tolerance.  The restricted form has signature (-,-,+).
std::array<Vec5d, 3> corner_subspace(const NecklaceConfig& cfg, long i);

// Eigenvalues of the restricted form Gram matrix on corner_subspace(cfg, i),
// ascending; inside the region the pattern is (-, -, +).
std::array<double, 3> corner_signature(const NecklaceConfig& cfg, long i);

// A null direction on C_0: combination of the positive and one negative
// eigendirection of the restricted Gram, so <q,q> ~ 0 and q _|_ p_0, p_1.
Vec5d ideal_point_on_corner(const NecklaceConfig& cfg);

StringTrace trace_string(const NecklaceConfig& cfg, const Vec5d& q0);

// One sample of the deformation path: parameter, rotation cosine, unwrapped
// rotation angle.
struct PathSample {
    double t = 0;
    double cos_a = 0;
    double a_unwrapped = 0;
};

// Samples of t -> (cos a(t), a(t)) along the straight path from the plane
// configuration (segment-S midpoint, 0) to (end_x1, end_x2).
std::vector<PathSample> sample_path(long k, long m, long n, double end_x1, double end_x2,
                                    long samples);

// Euler number by continuous angle tracking: count passages of the unwrapped
// rotation angle through the grid {2*pi*j/n} for t in (0,1], refining the
// sample count until no step crosses two grid values.  samples is clamped up
// to at least 16n.
long euler_via_angle_tracking(long k, long m, long n, double end_x1, double end_x2,
                              long samples);

} // namespace necklace::string_oracle
