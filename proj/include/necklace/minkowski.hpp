#pragma once

#include <array>

#include "necklace/scalar.hpp"

namespace necklace::minkowski {

using scalar_field::CertifiedScalar;
using scalar_field::SignCertificate;

// Vector in the 5-dimensional form space with signature -,-,-,-,+ on the
// basis b1, b2, b3, b4, b.  No normalization is intrinsic; hyperplane normals
// (<v,v> = -1), ideal points (= 0) and interior points (> 0) are the caller's
// reading of the classification below.
struct Vec5 {
    std::array<CertifiedScalar, 5> c;

    Vec5() = default;
    static Vec5 basis(int i);  // 0..3 -> b1..b4, 4 -> b

    const CertifiedScalar& operator[](int i) const { return c.at(static_cast<std::size_t>(i)); }
    CertifiedScalar& operator[](int i) { return c.at(static_cast<std::size_t>(i)); }

    Vec5 operator+(const Vec5& o) const;
    Vec5 operator-(const Vec5& o) const;
    Vec5 operator-() const;
    Vec5 scaled(const CertifiedScalar& s) const;
    bool is_ring_zero() const;
};

// 5x5 matrix acting on Vec5.  Entries are certified scalars; form
// preservation is a checkable property, not an enforced invariant.
struct Isometry5 {
    std::array<std::array<CertifiedScalar, 5>, 5> e;

    static Isometry5 identity();
    static Isometry5 zero();

    const CertifiedScalar& at(int i, int j) const {
        return e.at(static_cast<std::size_t>(i)).at(static_cast<std::size_t>(j));
    }
    CertifiedScalar& at(int i, int j) {
        return e.at(static_cast<std::size_t>(i)).at(static_cast<std::size_t>(j));
    }

    Isometry5 operator-(const Isometry5& o) const;
    Isometry5 transpose() const;
    // Adjoint with respect to the form: J * transpose * J, so that
    // form(M u, v) = form(u, adjoint(M) v).
    Isometry5 form_adjoint() const;
    bool is_ring_zero() const;
};

enum class PointClass { Interior, Ideal, Exterior };

// Relative position of two hyperplanes with unit timelike normals p, q:
// they intersect iff |<p,q>| < 1 (cos_angle then holds |<p,q>|, the cosine
// of the dihedral angle), are asymptotically parallel iff |<p,q>| = 1, and
// are disjoint with a common perpendicular iff |<p,q>| > 1.
struct PairClass {
    enum class Kind { Intersecting, Asymptotic, Ultraparallel };
    Kind kind;
    CertifiedScalar cos_angle;  // meaningful only when kind == Intersecting
};

// The bilinear form -u1v1 - u2v2 - u3v3 - u4v4 + u5v5.
CertifiedScalar form(const Vec5& u, const Vec5& v);

// Certified sign of <v,v>: positive -> Interior, exact zero -> Ideal,
// negative -> Exterior.  An undecided sign raises UncertifiedError; Ideal is
// only reported when the form value cancels exactly.
PointClass classify_point(const Vec5& v,
                          long max_bits = scalar_field::Settings::hard_cap());

// v + 2<v,p>p, the reflection in the hyperplane with unit normal p.
// Requires <p,p> = -1 by exact cancellation; otherwise DomainError.
Vec5 reflect(const Vec5& p, const Vec5& v);

// Classification per PairClass.  Both normals must satisfy <p,p> = -1
// exactly; Asymptotic is only issued on exact cancellation of <p,q>^2 - 1,
// and an undecided comparison raises UncertifiedError.
PairClass classify_pair(const Vec5& p, const Vec5& q,
                        long max_bits = scalar_field::Settings::hard_cap());

Isometry5 compose(const Isometry5& a, const Isometry5& b);
Vec5 apply(const Isometry5& a, const Vec5& v);

// The matrix of reflect(p, .), i.e. I + 2 p (Jp)^T.  Same normalization
// requirement as reflect.
Isometry5 reflection_matrix(const Vec5& p);

// All ten 2x2 minors of the pair (u, v); projective equality of nonzero
// vectors is their simultaneous vanishing.  Exact variant: every minor
// cancels in the ring.
bool projectively_equal_exact(const Vec5& u, const Vec5& v);

} // namespace necklace::minkowski
