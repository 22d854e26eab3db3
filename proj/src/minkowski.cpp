#include "necklace/minkowski.hpp"

#include "necklace/errors.hpp"

namespace necklace::minkowski {

using scalar_field::Sign;
using scalar_field::certify_sign;

Vec5 Vec5::basis(int i) {
    if (i < 0 || i > 4) throw DomainError("basis index out of range");
    Vec5 v;
    v.c[static_cast<std::size_t>(i)] = CertifiedScalar::from_long(1);
    return v;
}

Vec5 Vec5::operator+(const Vec5& o) const {
    Vec5 r;
    for (int i = 0; i < 5; ++i) r[i] = (*this)[i] + o[i];
    return r;
}

Vec5 Vec5::operator-(const Vec5& o) const {
    Vec5 r;
    for (int i = 0; i < 5; ++i) r[i] = (*this)[i] - o[i];
    return r;
}

Vec5 Vec5::operator-() const {
    Vec5 r;
    for (int i = 0; i < 5; ++i) r[i] = -(*this)[i];
    return r;
}

Vec5 Vec5::scaled(const CertifiedScalar& s) const {
    Vec5 r;
    for (int i = 0; i < 5; ++i) r[i] = (*this)[i] * s;
    return r;
}

bool Vec5::is_ring_zero() const {
    for (int i = 0; i < 5; ++i) {
        if (!(*this)[i].is_ring_zero()) return false;
    }
    return true;
}

Isometry5 Isometry5::identity() {
    Isometry5 m = zero();
    for (int i = 0; i < 5; ++i) m.at(i, i) = CertifiedScalar::from_long(1);
    return m;
}

Isometry5 Isometry5::zero() { return Isometry5{}; }

Isometry5 Isometry5::operator-(const Isometry5& o) const {
    Isometry5 r;
    for (int i = 0; i < 5; ++i) {
        for (int j = 0; j < 5; ++j) r.at(i, j) = at(i, j) - o.at(i, j);
    }
    return r;
}

Isometry5 Isometry5::transpose() const {
    Isometry5 r;
    for (int i = 0; i < 5; ++i) {
        for (int j = 0; j < 5; ++j) r.at(i, j) = at(j, i);
    }
    return r;
}

Isometry5 Isometry5::form_adjoint() const {
    // J M^T J with J = diag(-1,-1,-1,-1,1): transpose with the sign pattern
    // flipped exactly on the mixed space/time entries.
    Isometry5 r = transpose();
    for (int i = 0; i < 5; ++i) {
        for (int j = 0; j < 5; ++j) {
            if ((i == 4) != (j == 4)) r.at(i, j) = -r.at(i, j);
        }
    }
    return r;
}

bool Isometry5::is_ring_zero() const {
    for (int i = 0; i < 5; ++i) {
        for (int j = 0; j < 5; ++j) {
            if (!at(i, j).is_ring_zero()) return false;
        }
    }
    return true;
}

CertifiedScalar form(const Vec5& u, const Vec5& v) {
    CertifiedScalar s = u[4] * v[4];
    for (int i = 0; i < 4; ++i) s -= u[i] * v[i];
    return s;
}

PointClass classify_point(const Vec5& v, long max_bits) {
    SignCertificate sc = certify_sign(form(v, v), max_bits);
    switch (sc.verdict) {
        case Sign::StrictlyPositive: return PointClass::Interior;
        case Sign::Zero: return PointClass::Ideal;
        case Sign::StrictlyNegative: return PointClass::Exterior;
        default: throw UncertifiedError("point classification undecided at precision cap");
    }
}

namespace {
void require_unit_normal(const Vec5& p, const char* who) {
    CertifiedScalar r = form(p, p) + CertifiedScalar::from_long(1);
    if (!r.is_ring_zero()) {
        throw DomainError(std::string(who) + ": normal is not certified to satisfy <p,p> = -1");
    }
}
} // namespace

Vec5 reflect(const Vec5& p, const Vec5& v) {
    require_unit_normal(p, "reflect");
    CertifiedScalar two_s = CertifiedScalar::from_long(2) * form(v, p);
    return v + p.scaled(two_s);
}

PairClass classify_pair(const Vec5& p, const Vec5& q, long max_bits) {
    require_unit_normal(p, "classify_pair");
    require_unit_normal(q, "classify_pair");
    CertifiedScalar s = form(p, q);
    CertifiedScalar disc = s * s - CertifiedScalar::from_long(1);
    SignCertificate sc = certify_sign(disc, max_bits);
    switch (sc.verdict) {
        case Sign::StrictlyPositive: return {PairClass::Kind::Ultraparallel, {}};
        case Sign::Zero: return {PairClass::Kind::Asymptotic, {}};
        case Sign::StrictlyNegative: break;
        default: throw UncertifiedError("hyperplane pair classification undecided");
    }
    // Intersecting: dihedral-angle cosine is |s|, resolved without an
    // absolute-value node by certifying the sign of s itself.
    SignCertificate ss = certify_sign(s, max_bits);
    switch (ss.verdict) {
        case Sign::Zero: return {PairClass::Kind::Intersecting, CertifiedScalar()};
        case Sign::StrictlyPositive: return {PairClass::Kind::Intersecting, s};
        case Sign::StrictlyNegative: return {PairClass::Kind::Intersecting, -s};
        default: throw UncertifiedError("dihedral angle sign undecided");
    }
}

Isometry5 compose(const Isometry5& a, const Isometry5& b) {
    Isometry5 r;
    for (int i = 0; i < 5; ++i) {
        for (int j = 0; j < 5; ++j) {
            CertifiedScalar s;
            for (int k = 0; k < 5; ++k) s += a.at(i, k) * b.at(k, j);
            r.at(i, j) = s;
        }
    }
    return r;
}

Vec5 apply(const Isometry5& a, const Vec5& v) {
    Vec5 r;
    for (int i = 0; i < 5; ++i) {
        CertifiedScalar s;
        for (int k = 0; k < 5; ++k) s += a.at(i, k) * v[k];
        r[i] = s;
    }
    return r;
}

Isometry5 reflection_matrix(const Vec5& p) {
    require_unit_normal(p, "reflection_matrix");
    Isometry5 m = Isometry5::identity();
    CertifiedScalar two = CertifiedScalar::from_long(2);
    for (int i = 0; i < 5; ++i) {
        for (int j = 0; j < 5; ++j) {
            CertifiedScalar t = two * p[i] * p[j];
            m.at(i, j) = (j == 4) ? m.at(i, j) + t : m.at(i, j) - t;
        }
    }
    return m;
}

bool projectively_equal_exact(const Vec5& u, const Vec5& v) {
    for (int i = 0; i < 5; ++i) {
        for (int j = i + 1; j < 5; ++j) {
            if (!(u[i] * v[j] - u[j] * v[i]).is_ring_zero()) return false;
        }
    }
    return true;
}

} // namespace necklace::minkowski
