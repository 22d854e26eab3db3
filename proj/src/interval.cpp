#include "necklace/interval.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numeric>
#include <tuple>

namespace necklace::scalar_field {

Interval Interval::from_long(long x, mpfr_prec_t prec) {
    Interval r(prec);
    mpfr_set_si(r.lo(), x, MPFR_RNDD);
    mpfr_set_si(r.hi(), x, MPFR_RNDU);
    return r;
}

Interval Interval::from_rational(const mpq_class& q, mpfr_prec_t prec) {
    Interval r(prec);
    mpfr_set_q(r.lo(), q.get_mpq_t(), MPFR_RNDD);
    mpfr_set_q(r.hi(), q.get_mpq_t(), MPFR_RNDU);
    return r;
}

Interval Interval::from_double(double x, mpfr_prec_t prec) {
    Interval r(prec);
    mpfr_set_d(r.lo(), x, MPFR_RNDD);
    mpfr_set_d(r.hi(), x, MPFR_RNDU);
    return r;
}

double Interval::mid_double() const {
    return 0.5 * (lo_double() + hi_double());
}

double Interval::width_double() const {
    BigFloat w(prec_);
    mpfr_sub(w.get(), hi(), lo(), MPFR_RNDU);
    return mpfr_get_d(w.get(), MPFR_RNDU);
}

bool Interval::contains(const mpq_class& q) const {
    return mpfr_cmp_q(lo(), q.get_mpq_t()) <= 0 && mpfr_cmp_q(hi(), q.get_mpq_t()) >= 0;
}

bool Interval::contains_double(double x) const {
    return mpfr_cmp_d(lo(), x) <= 0 && mpfr_cmp_d(hi(), x) >= 0;
}

Interval Interval::neg() const {
    Interval r(prec_);
    mpfr_neg(r.lo(), hi(), MPFR_RNDD);
    mpfr_neg(r.hi(), lo(), MPFR_RNDU);
    return r;
}

Interval Interval::add(const Interval& o) const {
    Interval r(prec_);
    mpfr_add(r.lo(), lo(), o.lo(), MPFR_RNDD);
    mpfr_add(r.hi(), hi(), o.hi(), MPFR_RNDU);
    return r;
}

Interval Interval::sub(const Interval& o) const {
    Interval r(prec_);
    mpfr_sub(r.lo(), lo(), o.hi(), MPFR_RNDD);
    mpfr_sub(r.hi(), hi(), o.lo(), MPFR_RNDU);
    return r;
}

Interval Interval::mul(const Interval& o) const {
    Interval r(prec_);
    BigFloat t(prec_);
    // lower bound: min of the four endpoint products rounded down
    mpfr_mul(r.lo(), lo(), o.lo(), MPFR_RNDD);
    mpfr_mul(t.get(), lo(), o.hi(), MPFR_RNDD);
    mpfr_min(r.lo(), r.lo(), t.get(), MPFR_RNDD);
    mpfr_mul(t.get(), hi(), o.lo(), MPFR_RNDD);
    mpfr_min(r.lo(), r.lo(), t.get(), MPFR_RNDD);
    mpfr_mul(t.get(), hi(), o.hi(), MPFR_RNDD);
    mpfr_min(r.lo(), r.lo(), t.get(), MPFR_RNDD);
    // upper bound: max of the four endpoint products rounded up
    mpfr_mul(r.hi(), lo(), o.lo(), MPFR_RNDU);
    mpfr_mul(t.get(), lo(), o.hi(), MPFR_RNDU);
    mpfr_max(r.hi(), r.hi(), t.get(), MPFR_RNDU);
    mpfr_mul(t.get(), hi(), o.lo(), MPFR_RNDU);
    mpfr_max(r.hi(), r.hi(), t.get(), MPFR_RNDU);
    mpfr_mul(t.get(), hi(), o.hi(), MPFR_RNDU);
    mpfr_max(r.hi(), r.hi(), t.get(), MPFR_RNDU);
    return r;
}

Interval Interval::div(const Interval& o) const {
    if (o.contains_zero()) throw IndeterminateEval("division by an interval containing zero");
    Interval r(prec_);
    BigFloat t(prec_);
    mpfr_div(r.lo(), lo(), o.lo(), MPFR_RNDD);
    mpfr_div(t.get(), lo(), o.hi(), MPFR_RNDD);
    mpfr_min(r.lo(), r.lo(), t.get(), MPFR_RNDD);
    mpfr_div(t.get(), hi(), o.lo(), MPFR_RNDD);
    mpfr_min(r.lo(), r.lo(), t.get(), MPFR_RNDD);
    mpfr_div(t.get(), hi(), o.hi(), MPFR_RNDD);
    mpfr_min(r.lo(), r.lo(), t.get(), MPFR_RNDD);

    mpfr_div(r.hi(), lo(), o.lo(), MPFR_RNDU);
    mpfr_div(t.get(), lo(), o.hi(), MPFR_RNDU);
    mpfr_max(r.hi(), r.hi(), t.get(), MPFR_RNDU);
    mpfr_div(t.get(), hi(), o.lo(), MPFR_RNDU);
    mpfr_max(r.hi(), r.hi(), t.get(), MPFR_RNDU);
    mpfr_div(t.get(), hi(), o.hi(), MPFR_RNDU);
    mpfr_max(r.hi(), r.hi(), t.get(), MPFR_RNDU);
    return r;
}

Interval Interval::sqrt() const {
    if (mpfr_sgn(hi()) < 0) throw IndeterminateEval("sqrt of a negative interval");
    Interval r(prec_);
    if (mpfr_sgn(lo()) <= 0) {
        mpfr_set_zero(r.lo(), 1);
    } else {
        mpfr_sqrt(r.lo(), lo(), MPFR_RNDD);
    }
    mpfr_sqrt(r.hi(), hi(), MPFR_RNDU);
    return r;
}

Interval Interval::abs() const {
    Interval r(prec_);
    if (mpfr_sgn(lo()) >= 0) return *this;
    if (mpfr_sgn(hi()) <= 0) return neg();
    BigFloat t(prec_);
    mpfr_neg(t.get(), lo(), MPFR_RNDU);
    mpfr_max(r.hi(), hi(), t.get(), MPFR_RNDU);
    mpfr_set_zero(r.lo(), 1);
    return r;
}

Interval Interval::intersect(const Interval& o) const {
    Interval r(prec_);
    mpfr_max(r.lo(), lo(), o.lo(), MPFR_RNDD);
    mpfr_min(r.hi(), hi(), o.hi(), MPFR_RNDU);
    if (mpfr_cmp(r.lo(), r.hi()) > 0) throw IndeterminateEval("empty interval intersection");
    return r;
}

std::pair<std::string, std::string> Interval::decimal_with_error() const {
    BigFloat mid(prec_), rad(prec_);
    mpfr_add(mid.get(), lo(), hi(), MPFR_RNDN);
    mpfr_div_2ui(mid.get(), mid.get(), 1, MPFR_RNDN);
    mpfr_sub(rad.get(), hi(), lo(), MPFR_RNDU);
    mpfr_div_2ui(rad.get(), rad.get(), 1, MPFR_RNDU);

    // Digits justified by the interval width; at least one, at most ~prec*log10(2).
    long digits = 2 + static_cast<long>(prec_ * 0.30103);
    double w = width_double();
    if (w > 0) {
        double m = std::max(std::fabs(lo_double()), std::fabs(hi_double()));
        if (m > 0) {
            long sig = static_cast<long>(std::floor(std::log10(m / w)));
            digits = std::clamp(sig, 1L, digits);
        }
    }

    mpfr_exp_t e;
    char* s = mpfr_get_str(nullptr, &e, 10, static_cast<size_t>(digits) + 1, mid.get(), MPFR_RNDN);
    std::string ds(s);
    mpfr_free_str(s);
    bool negative = !ds.empty() && ds[0] == '-';
    std::string mant = negative ? ds.substr(1) : ds;
    std::string out = negative ? "-" : "";
    out += mant.substr(0, 1) + "." + mant.substr(1) + "e" + std::to_string(e - 1);

    // Radius covering both the half-width and the last rendered digit.
    char* rs;
    if (mpfr_zero_p(rad.get())) {
        rs = nullptr;
    } else {
        rs = mpfr_get_str(nullptr, &e, 10, 2, rad.get(), MPFR_RNDU);
    }
    std::string err;
    if (rs) {
        err = std::string(1, rs[0]) + "." + std::string(1, rs[1]) + "e" + std::to_string(e - 1);
        mpfr_free_str(rs);
    } else {
        err = "0";
    }
    return {out, err};
}

namespace {

struct TrigKey {
    long n, j;
    mpfr_prec_t prec;
    bool is_sin;
    bool operator<(const TrigKey& o) const {
        return std::tie(n, j, prec, is_sin) < std::tie(o.n, o.j, o.prec, o.is_sin);
    }
};

std::mutex g_trig_mu;
std::map<TrigKey, Interval>& trig_cache() {
    static std::map<TrigKey, Interval> c;
    return c;
}

Interval point_long(long v, mpfr_prec_t prec) { return Interval::from_long(v, prec); }

Interval point_half(int sign, mpfr_prec_t prec) {
    return Interval::from_rational(mpq_class(sign, 2), prec);
}

// Tight enclosure of sign * sqrt(k)/2 for k in {2, 3}.
Interval half_surd(long k, int sign, mpfr_prec_t prec) {
    Interval r(prec);
    mpfr_sqrt_ui(r.lo(), static_cast<unsigned long>(k), MPFR_RNDD);
    mpfr_sqrt_ui(r.hi(), static_cast<unsigned long>(k), MPFR_RNDU);
    mpfr_div_2ui(r.lo(), r.lo(), 1, MPFR_RNDD);
    mpfr_div_2ui(r.hi(), r.hi(), 1, MPFR_RNDU);
    return sign < 0 ? r.neg() : r;
}

// Exact or surd-tight values at the classically constructible angles.  The
// reduced denominator q of j/n decides the case; q in {1,2,3,4,6} and the
// dyadic sine cases give point intervals, q in {8,12} one-ulp enclosures.
bool trig_closed_form(long jr, long q, mpfr_prec_t prec, bool is_sin, Interval& out) {
    if (!is_sin) {
        switch (q) {
            case 1: out = point_long(1, prec); return true;
            case 2: out = point_long(-1, prec); return true;
            case 3: out = point_half(-1, prec); return true;
            case 4: out = point_long(0, prec); return true;
            case 6: out = point_half(1, prec); return true;
            case 8: out = half_surd(2, (jr == 1 || jr == 7) ? 1 : -1, prec); return true;
            case 12: out = half_surd(3, (jr == 1 || jr == 11) ? 1 : -1, prec); return true;
            default: return false;
        }
    }
    switch (q) {
        case 1:
        case 2: out = point_long(0, prec); return true;
        case 3: out = half_surd(3, jr == 1 ? 1 : -1, prec); return true;
        case 4: out = point_long(jr == 1 ? 1 : -1, prec); return true;
        case 6: out = half_surd(3, jr == 1 ? 1 : -1, prec); return true;
        case 8: out = half_surd(2, (jr == 1 || jr == 3) ? 1 : -1, prec); return true;
        case 12: out = point_half((jr == 1 || jr == 5) ? 1 : -1, prec); return true;
        default: return false;
    }
}

// Enclose f(2*pi*j/n) where |f'| <= 1.  The angle itself is enclosed through
// a directed-rounded pi, then the function is evaluated at both endpoints and
// padded by the angle width.
Interval trig_eval(long j, long n, mpfr_prec_t prec, bool is_sin) {
    long jj = j % n;
    if (jj < 0) jj += n;
    long g = std::gcd(jj, n);
    Interval cf(prec);
    if (trig_closed_form(jj / g, n / g, prec, is_sin, cf)) return cf;
    mpfr_prec_t wp = prec + 16;
    BigFloat pi_lo(wp), pi_hi(wp), a_lo(wp), a_hi(wp), f1(wp), f2(wp), w(wp);
    mpfr_const_pi(pi_lo.get(), MPFR_RNDD);
    mpfr_const_pi(pi_hi.get(), MPFR_RNDU);
    mpq_class t(2 * j, n);
    t.canonicalize();
    // a = t*pi with t >= 0 in canonical position
    bool tneg = t < 0;
    if (tneg) t = -t;
    mpfr_mul_q(a_lo.get(), pi_lo.get(), t.get_mpq_t(), MPFR_RNDD);
    mpfr_mul_q(a_hi.get(), pi_hi.get(), t.get_mpq_t(), MPFR_RNDU);
    mpfr_sub(w.get(), a_hi.get(), a_lo.get(), MPFR_RNDU);

    auto f = is_sin ? mpfr_sin : mpfr_cos;
    Interval r(prec);
    f(f1.get(), a_lo.get(), MPFR_RNDD);
    f(f2.get(), a_hi.get(), MPFR_RNDD);
    mpfr_min(f1.get(), f1.get(), f2.get(), MPFR_RNDD);
    mpfr_sub(f1.get(), f1.get(), w.get(), MPFR_RNDD);
    mpfr_set(r.lo(), f1.get(), MPFR_RNDD);

    f(f1.get(), a_lo.get(), MPFR_RNDU);
    f(f2.get(), a_hi.get(), MPFR_RNDU);
    mpfr_max(f1.get(), f1.get(), f2.get(), MPFR_RNDU);
    mpfr_add(f1.get(), f1.get(), w.get(), MPFR_RNDU);
    mpfr_set(r.hi(), f1.get(), MPFR_RNDU);

    if (tneg && is_sin) return r.neg();
    return r;
}

Interval trig_cached(long j, long n, mpfr_prec_t prec, bool is_sin) {
    TrigKey key{n, j, prec, is_sin};
    {
        std::lock_guard<std::mutex> lk(g_trig_mu);
        auto it = trig_cache().find(key);
        if (it != trig_cache().end()) return it->second;
    }
    Interval r = trig_eval(j, n, prec, is_sin);
    std::lock_guard<std::mutex> lk(g_trig_mu);
    trig_cache().emplace(key, r);
    return r;
}

} // namespace

Interval cos_two_pi(long j, long n, mpfr_prec_t prec) { return trig_cached(j, n, prec, false); }
Interval sin_two_pi(long j, long n, mpfr_prec_t prec) { return trig_cached(j, n, prec, true); }

} // namespace necklace::scalar_field
