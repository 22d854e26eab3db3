#pragma once

#include <gmpxx.h>

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "necklace/interval.hpp"
#include "necklace/trig_ring.hpp"

namespace necklace::scalar_field {

enum class Sign { StrictlyNegative, Zero, StrictlyPositive, Undecided };

// Outcome of a sign or comparison query.  Zero is issued only for values whose
// canonical form cancels exactly, never from a numerically tiny interval.
// For certify_compare(a, b, ...) the verdict is the sign of a - b, so
// StrictlyPositive reads "a > b" and StrictlyNegative reads "a < b".
struct SignCertificate {
    Sign verdict = Sign::Undecided;
    long bits_used = 0;

    bool decided() const { return verdict != Sign::Undecided; }
    bool is_zero() const { return verdict == Sign::Zero; }
    bool is_positive() const { return verdict == Sign::StrictlyPositive; }
    bool is_negative() const { return verdict == Sign::StrictlyNegative; }
    std::string verdict_str() const;
};

// Process-wide precision policy.  The default working precision is read once
// from NECKLACE_PRECISION_BITS (fallback 128); certification climbs the
// ladder 64, 128, 256, 512 up to the hard cap.
struct Settings {
    static long default_bits();
    static long hard_cap() { return 1024; }
    static const std::vector<long>& ladder();
};

namespace detail {

// Registry of square-root atoms.  An atom is sqrt(radicand) for an exact
// TrigFrac radicand already certified strictly positive at creation time.
// Keyed by the radicand's canonical serialization so the same radicand
// always yields the same atom id.
class AtomRegistry {
public:
    static AtomRegistry& instance();
    int intern(const TrigFrac& radicand);
    const TrigFrac& radicand(int id) const;
    Interval eval(int id, mpfr_prec_t prec);

private:
    AtomRegistry() = default;
    mutable std::mutex mu_;
    std::vector<TrigFrac> radicands_;
    std::map<std::string, int> by_key_;
    std::map<std::pair<int, mpfr_prec_t>, Interval> cache_;
};

// A scalar in canonical form: a sum of square-free monomials in the sqrt
// atoms with exact TrigFrac coefficients.  Products fold atom^2 back into the
// radicand, so the representation stays multilinear and zero values
// constructed by the identities in scope cancel to the empty sum.  Nodes are
// immutable after construction; the interval cache is the only mutable state
// and is mutex-guarded.
class ScalarNode {
public:
    using Monomials = std::map<std::vector<int>, TrigFrac>;

    ScalarNode() = default;
    explicit ScalarNode(Monomials t) : terms_(std::move(t)) { prune(); }

    static std::shared_ptr<const ScalarNode> make(Monomials t) {
        return std::make_shared<const ScalarNode>(std::move(t));
    }

    const Monomials& terms() const { return terms_; }
    bool is_zero_form() const { return terms_.empty(); }
    bool atom_free() const;
    const TrigFrac& constant_term() const;  // requires atom_free

    Interval eval(mpfr_prec_t prec) const;  // cached, monotone under refinement
    double to_double() const;

private:
    Monomials terms_;
    mutable std::mutex cache_mu_;
    mutable std::map<mpfr_prec_t, Interval> cache_;
    void prune();
};

} // namespace detail

// Adaptive-precision certified real number.  The value is an exact canonical
// expression (see ScalarNode) that can be re-evaluated at any precision; the
// interval endpoints exposed here are outward-rounded enclosures of the exact
// real, and refinement never widens them.
class CertifiedScalar {
public:
    CertifiedScalar();  // exact zero
    static CertifiedScalar from_long(long v);
    static CertifiedScalar from_rational(const mpq_class& q);
    static CertifiedScalar from_trig(const TrigFrac& t);

    bool is_ring_zero() const { return node_->is_zero_form(); }
    bool is_exact() const { return node_->atom_free(); }
    // Exact value as a trig fraction; throws DomainError if sqrt atoms remain.
    const TrigFrac& exact_value() const;

    CertifiedScalar operator-() const;
    CertifiedScalar operator+(const CertifiedScalar& o) const;
    CertifiedScalar operator-(const CertifiedScalar& o) const;
    CertifiedScalar operator*(const CertifiedScalar& o) const;
    // Division is exact (conjugate elimination of the divisor's atoms).
    // Throws DomainError when the divisor's canonical form is zero.
    CertifiedScalar operator/(const CertifiedScalar& o) const;
    CertifiedScalar& operator+=(const CertifiedScalar& o) { return *this = *this + o; }
    CertifiedScalar& operator-=(const CertifiedScalar& o) { return *this = *this - o; }
    CertifiedScalar& operator*=(const CertifiedScalar& o) { return *this = *this * o; }

    // Square root.  The radicand must be atom-free; its sign is certified
    // first (negative -> DomainError, undecidable -> UncertifiedError).
    CertifiedScalar sqrt(long max_bits = Settings::hard_cap()) const;

    // Enclosure of the exact value at the given working precision (default:
    // Settings::default_bits()).  Repeated calls intersect with earlier
    // results, so the enclosure never widens as precision grows.
    Interval interval(long bits = 0) const;
    double lower_double(long bits = 0) const { return interval(bits).lo_double(); }
    double upper_double(long bits = 0) const { return interval(bits).hi_double(); }
    double to_double() const { return node_->to_double(); }
    long precision_bits() const { return Settings::default_bits(); }

    // Decimal midpoint plus error radius, for report export.
    std::pair<std::string, std::string> decimal_with_error(long bits = 0) const;

    const detail::ScalarNode& node() const { return *node_; }

private:
    explicit CertifiedScalar(std::shared_ptr<const detail::ScalarNode> n) : node_(std::move(n)) {}
    std::shared_ptr<const detail::ScalarNode> node_;

    friend SignCertificate certify_sign(const CertifiedScalar&, long);
};

// cos(2*pi*i/n) and sin(2*pi*i/n) as certified scalars.  n must be even and
// >= 2; i is reduced mod n.  The analytically exact angles (denominators
// 1,2,3,4,6 and the surd cases 8,12) come out as exact closed forms.
CertifiedScalar cos_frac(long i, long n);
CertifiedScalar sin_frac(long i, long n);

// Certified sign of a.  Tries the precision ladder up to max_bits; an exact
// cancellation short-circuits to Zero with bits_used 0.
SignCertificate certify_sign(const CertifiedScalar& a, long max_bits = Settings::hard_cap());

// Certified comparison: the sign of a - b.
SignCertificate certify_compare(const CertifiedScalar& a, const CertifiedScalar& b,
                                long max_bits = Settings::hard_cap());

} // namespace necklace::scalar_field
