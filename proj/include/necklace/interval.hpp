#pragma once

#include <gmpxx.h>
#include <mpfr.h>

#include <stdexcept>
#include <string>
#include <utility>

namespace necklace::scalar_field {

// Raised when an interval operation cannot produce a finite enclosure at the
// current working precision (division through zero, empty intersection of
// stale caches, ...).  The certification ladder catches it and retries wider.
class IndeterminateEval : public std::runtime_error {
public:
    explicit IndeterminateEval(const std::string& what) : std::runtime_error(what) {}
};

// Thin RAII wrapper over mpfr_t.
class BigFloat {
public:
    explicit BigFloat(mpfr_prec_t prec) { mpfr_init2(v_, prec); mpfr_set_zero(v_, 1); }
    BigFloat(const BigFloat& o) { mpfr_init2(v_, mpfr_get_prec(o.v_)); mpfr_set(v_, o.v_, MPFR_RNDN); }
    BigFloat(BigFloat&& o) noexcept { mpfr_init2(v_, 2); mpfr_swap(v_, o.v_); }
    BigFloat& operator=(const BigFloat& o) {
        if (this != &o) { mpfr_set_prec(v_, mpfr_get_prec(o.v_)); mpfr_set(v_, o.v_, MPFR_RNDN); }
        return *this;
    }
    BigFloat& operator=(BigFloat&& o) noexcept { mpfr_swap(v_, o.v_); return *this; }
    ~BigFloat() { mpfr_clear(v_); }

    mpfr_ptr get() { return v_; }
    mpfr_srcptr get() const { return v_; }

private:
    mpfr_t v_;
};

// Closed interval [lo, hi] with outward rounding at a fixed working precision.
// Every operation guarantees that the exact real result of the corresponding
// operation on any members of the operand intervals lies in the result.
class Interval {
public:
    explicit Interval(mpfr_prec_t prec) : lo_(prec), hi_(prec), prec_(prec) {}

    static Interval from_long(long x, mpfr_prec_t prec);
    static Interval from_rational(const mpq_class& q, mpfr_prec_t prec);
    // Point interval whose endpoints are both the given dyadic-exact double.
    static Interval from_double(double x, mpfr_prec_t prec);

    mpfr_prec_t precision() const { return prec_; }
    mpfr_srcptr lo() const { return lo_.get(); }
    mpfr_srcptr hi() const { return hi_.get(); }
    mpfr_ptr lo() { return lo_.get(); }
    mpfr_ptr hi() { return hi_.get(); }

    double lo_double() const { return mpfr_get_d(lo_.get(), MPFR_RNDD); }
    double hi_double() const { return mpfr_get_d(hi_.get(), MPFR_RNDU); }
    double mid_double() const;
    double width_double() const;

    bool strictly_positive() const { return mpfr_sgn(lo_.get()) > 0; }
    bool strictly_negative() const { return mpfr_sgn(hi_.get()) < 0; }
    bool contains_zero() const { return !strictly_positive() && !strictly_negative(); }
    bool contains(const mpq_class& q) const;
    bool contains_double(double x) const;
    bool is_point() const { return mpfr_equal_p(lo_.get(), hi_.get()); }

    Interval neg() const;
    Interval add(const Interval& o) const;
    Interval sub(const Interval& o) const;
    Interval mul(const Interval& o) const;
    Interval div(const Interval& o) const;   // throws IndeterminateEval if o contains 0
    Interval sqrt() const;                   // radicand assumed >= 0 as a real; clamps
    Interval abs() const;

    // Intersection; throws IndeterminateEval when empty (signals an upstream bug,
    // since all intervals enclose the same exact real).
    Interval intersect(const Interval& o) const;

    // Decimal rendering of the midpoint plus an error radius covering the
    // interval and the rendering itself, e.g. ("2.79706618373342247", "2e-18").
    std::pair<std::string, std::string> decimal_with_error() const;

private:
    BigFloat lo_, hi_;
    mpfr_prec_t prec_;
};

// Enclosure of cos(2*pi*j/n) / sin(2*pi*j/n); results are cached per
// (n, j, prec) behind a mutex and safe for concurrent use.
Interval cos_two_pi(long j, long n, mpfr_prec_t prec);
Interval sin_two_pi(long j, long n, mpfr_prec_t prec);

} // namespace necklace::scalar_field
