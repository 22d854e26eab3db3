#include "necklace/trig_ring.hpp"

#include <cmath>
#include <mutex>
#include <numeric>
#include <sstream>

#include "necklace/errors.hpp"

namespace necklace::scalar_field {

QuadRat QuadRat::operator*(const QuadRat& o) const {
    if (is_rational() && o.is_rational()) return QuadRat(a * o.a);
    // (a + b r2 + c r3 + d r6)(a' + b' r2 + c' r3 + d' r6), r2*r3 = r6,
    // r2*r6 = 2 r3, r3*r6 = 3 r2, r6*r6 = 6.
    QuadRat r;
    r.a = a * o.a + 2 * b * o.b + 3 * c * o.c + 6 * d * o.d;
    r.b = a * o.b + b * o.a + 3 * (c * o.d + d * o.c);
    r.c = a * o.c + c * o.a + 2 * (b * o.d + d * o.b);
    r.d = a * o.d + d * o.a + b * o.c + c * o.b;
    return r;
}

QuadRat QuadRat::inverse() const {
    if (is_zero()) throw DomainError("inverse of zero");
    if (is_rational()) return QuadRat(mpq_class(1) / a);
    // Rationalize in two steps: conjugate over sqrt3 (negate c, d), then the
    // product lies in Q(sqrt2) and a second conjugation finishes the job.
    QuadRat c3{a, b, -c, -d};
    QuadRat p = *this * c3;          // in Q(sqrt2): p.c == p.d == 0
    QuadRat c2{p.a, -p.b, 0, 0};
    QuadRat q = p * c2;              // rational
    mpq_class inv = mpq_class(1) / q.a;
    QuadRat r = c3 * c2;
    return {r.a * inv, r.b * inv, r.c * inv, r.d * inv};
}

namespace {
std::mutex g_surd_mu;
Interval surd_interval(long k, mpfr_prec_t prec) {
    static std::map<std::pair<long, mpfr_prec_t>, Interval> cache;
    std::lock_guard<std::mutex> lk(g_surd_mu);
    auto key = std::make_pair(k, prec);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    Interval r = Interval::from_long(k, prec).sqrt();
    cache.emplace(key, r);
    return r;
}
} // namespace

Interval QuadRat::eval(mpfr_prec_t prec) const {
    Interval r = Interval::from_rational(a, prec);
    if (b != 0) r = r.add(surd_interval(2, prec).mul(Interval::from_rational(b, prec)));
    if (c != 0) r = r.add(surd_interval(3, prec).mul(Interval::from_rational(c, prec)));
    if (d != 0) r = r.add(surd_interval(6, prec).mul(Interval::from_rational(d, prec)));
    return r;
}

double QuadRat::to_double() const {
    return a.get_d() + b.get_d() * 1.4142135623730951 + c.get_d() * 1.7320508075688772 +
           d.get_d() * 2.449489742783178;
}

std::string QuadRat::str() const {
    std::ostringstream os;
    os << a.get_str() << "," << b.get_str() << "," << c.get_str() << "," << d.get_str();
    return os.str();
}

namespace {

// Coefficients of the N-th cyclotomic polynomial, constant term first,
// computed by exact division of x^d - 1 by the lower-order factors.  All
// divisors of N are filled in one ascending pass so nothing recurses under
// the lock.
const std::vector<mpz_class>& cyclotomic_poly(long N) {
    static std::map<long, std::vector<mpz_class>> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lk(mu);
    if (auto it = cache.find(N); it != cache.end()) return it->second;
    for (long d = 1; d <= N; ++d) {
        if (N % d != 0 || cache.count(d)) continue;
        std::vector<mpz_class> num(d + 1);
        num[0] = -1;
        num[d] = 1;
        for (long e = 1; e < d; ++e) {
            if (d % e != 0) continue;
            const auto& phi = cache.at(e);
            const long dn = (long)num.size() - 1, dd = (long)phi.size() - 1;
            std::vector<mpz_class> quot(dn - dd + 1);
            for (long t = dn; t >= dd; --t) {
                if (num[t] == 0) continue;
                mpz_class c = num[t];
                quot[t - dd] = c;
                for (long u = 0; u <= dd; ++u) num[t - dd + u] -= c * phi[u];
            }
            num = std::move(quot);
        }
        cache.emplace(d, std::move(num));
    }
    return cache.at(N);
}

} // namespace

// Index canonicalization uses only relations that hold in the group algebra
// of the cyclic rotation (periodicity, the reflection symmetry, cos 0 = 1,
// sin 0 = 0, and sin at the half-turn index = 0).  Special numeric values at
// other constructible indices are deliberately NOT substituted: doing so
// would destroy route independence of the normal form, which is what makes
// exact cancellation of generic identities possible.  The value-level
// relations are recovered by is_zero below, which decides a nonempty normal
// form in the cyclotomic field itself.
void TrigPoly::add_cos(long j, const QuadRat& c) {
    if (c.is_zero()) return;
    if (n_ <= 0) throw DomainError("trig term on unset angle grid");
    j %= n_;
    if (j < 0) j += n_;
    if (2 * j > n_) j = n_ - j;
    if (j == 0) {
        cst_ = cst_ + c;
        return;
    }
    auto it = cos_.find(j);
    if (it == cos_.end()) {
        cos_.emplace(j, c);
    } else {
        it->second = it->second + c;
        if (it->second.is_zero()) cos_.erase(it);
    }
}

void TrigPoly::add_sin(long j, const QuadRat& c) {
    if (c.is_zero()) return;
    if (n_ <= 0) throw DomainError("trig term on unset angle grid");
    j %= n_;
    if (j < 0) j += n_;
    QuadRat cc = c;
    if (2 * j > n_) {
        j = n_ - j;
        cc = -cc;
    }
    if (j == 0 || 2 * j == n_) return;
    auto it = sin_.find(j);
    if (it == sin_.end()) {
        sin_.emplace(j, cc);
    } else {
        it->second = it->second + cc;
        if (it->second.is_zero()) sin_.erase(it);
    }
}

TrigPoly TrigPoly::cos_sym(long j, long n) {
    if (n < 2 || n % 2 != 0) throw DomainError("angle grid order must be even and >= 2");
    TrigPoly p;
    p.n_ = n;
    p.add_cos(j, QuadRat(1));
    return p;
}

TrigPoly TrigPoly::sin_sym(long j, long n) {
    if (n < 2 || n % 2 != 0) throw DomainError("angle grid order must be even and >= 2");
    TrigPoly p;
    p.n_ = n;
    p.add_sin(j, QuadRat(1));
    return p;
}

TrigPoly TrigPoly::lifted(long L) const {
    if (n_ == 0 || n_ == L) {
        TrigPoly p = *this;
        p.n_ = L;
        return p;
    }
    if (L % n_ != 0) throw DomainError("incompatible angle grids");
    long f = L / n_;
    TrigPoly p;
    p.n_ = L;
    p.cst_ = cst_;
    for (const auto& [j, c] : cos_) p.cos_.emplace(j * f, c);
    for (const auto& [j, c] : sin_) p.sin_.emplace(j * f, c);
    return p;
}

void TrigPoly::align(TrigPoly& x, TrigPoly& y) {
    if (x.n_ == y.n_) return;
    if (x.n_ == 0) { x.n_ = y.n_; return; }
    if (y.n_ == 0) { y.n_ = x.n_; return; }
    long L = std::lcm(x.n_, y.n_);
    if (L > 1000000) throw DomainError("angle grid lcm too large");
    x = x.lifted(L);
    y = y.lifted(L);
}

TrigPoly TrigPoly::operator-() const {
    TrigPoly p;
    p.n_ = n_;
    p.cst_ = -cst_;
    for (const auto& [j, c] : cos_) p.cos_.emplace(j, -c);
    for (const auto& [j, c] : sin_) p.sin_.emplace(j, -c);
    return p;
}

TrigPoly TrigPoly::operator+(const TrigPoly& o) const {
    TrigPoly x = *this, y = o;
    align(x, y);
    x.cst_ = x.cst_ + y.cst_;
    for (const auto& [j, c] : y.cos_) {
        auto it = x.cos_.find(j);
        if (it == x.cos_.end()) {
            x.cos_.emplace(j, c);
        } else {
            it->second = it->second + c;
            if (it->second.is_zero()) x.cos_.erase(it);
        }
    }
    for (const auto& [j, c] : y.sin_) {
        auto it = x.sin_.find(j);
        if (it == x.sin_.end()) {
            x.sin_.emplace(j, c);
        } else {
            it->second = it->second + c;
            if (it->second.is_zero()) x.sin_.erase(it);
        }
    }
    return x;
}

TrigPoly TrigPoly::operator-(const TrigPoly& o) const { return *this + (-o); }

TrigPoly TrigPoly::operator*(const TrigPoly& o) const {
    TrigPoly x = *this, y = o;
    align(x, y);
    TrigPoly r;
    r.n_ = x.n_;
    r.cst_ = x.cst_ * y.cst_;
    mpq_class h(1, 2);
    if (!y.cst_.is_zero()) {
        for (const auto& [j, c] : x.cos_) r.add_cos(j, c * y.cst_);
        for (const auto& [j, c] : x.sin_) r.add_sin(j, c * y.cst_);
    }
    if (!x.cst_.is_zero()) {
        for (const auto& [j, c] : y.cos_) r.add_cos(j, c * x.cst_);
        for (const auto& [j, c] : y.sin_) r.add_sin(j, c * x.cst_);
    }
    for (const auto& [j1, c1] : x.cos_) {
        for (const auto& [j2, c2] : y.cos_) {
            QuadRat c = c1 * c2 * QuadRat(h);
            r.add_cos(j1 + j2, c);
            r.add_cos(j1 - j2, c);
        }
        for (const auto& [j2, c2] : y.sin_) {
            QuadRat c = c1 * c2 * QuadRat(h);
            r.add_sin(j1 + j2, c);
            r.add_sin(j2 - j1, c);
        }
    }
    for (const auto& [j1, c1] : x.sin_) {
        for (const auto& [j2, c2] : y.cos_) {
            QuadRat c = c1 * c2 * QuadRat(h);
            r.add_sin(j1 + j2, c);
            r.add_sin(j1 - j2, c);
        }
        for (const auto& [j2, c2] : y.sin_) {
            QuadRat c = c1 * c2 * QuadRat(h);
            r.add_cos(j1 - j2, c);
            r.add_cos(j1 + j2, -c);
        }
    }
    return r;
}

TrigPoly TrigPoly::scaled(const QuadRat& c) const {
    if (c.is_zero()) return TrigPoly();
    TrigPoly p;
    p.n_ = n_;
    p.cst_ = cst_ * c;
    for (const auto& [j, q] : cos_) p.cos_.emplace(j, q * c);
    for (const auto& [j, q] : sin_) p.sin_.emplace(j, q * c);
    return p;
}

bool TrigPoly::operator==(const TrigPoly& o) const { return (*this - o).is_zero(); }

// Exact value-zero test.  An empty normal form is zero outright.  A nonempty
// one is first screened by a 64-bit interval evaluation (an enclosure that
// excludes zero settles it), then decided by rewriting every term as a sum of
// roots of unity in Q(zeta_M), M = lcm(n, 24), and reducing modulo the M-th
// cyclotomic polynomial: cos and sin of 2*pi*j/n are (zeta^a + zeta^-a)/2 and
// (zeta^a - zeta^-a) zeta^(3M/4)/2 with a = jM/n, and the surd parts of the
// coefficients are zeta_8 + zeta_8^-1 and zeta_12 + zeta_12^-1.  The residue
// vanishes exactly when the value is zero, so the test is complete.
bool TrigPoly::is_zero() const {
    if (is_form_zero()) return true;
    if (n_ == 0) return false;  // nonzero QuadRat: 1, r2, r3, r6 independent over Q
    if (!eval(64).contains_zero()) return false;
    const long M = std::lcm(n_, 24L);
    const long step = M / n_;
    std::vector<mpq_class> v(M);
    auto add_at = [&](long e, const mpq_class& q) {
        long r = e % M;
        if (r < 0) r += M;
        v[r] += q;
    };
    auto add_quad = [&](long e, const QuadRat& q, const mpq_class& s) {
        if (q.a != 0) add_at(e, q.a * s);
        if (q.b != 0) {
            add_at(e + M / 8, q.b * s);
            add_at(e - M / 8, q.b * s);
        }
        if (q.c != 0) {
            add_at(e + M / 12, q.c * s);
            add_at(e - M / 12, q.c * s);
        }
        if (q.d != 0) {
            add_at(e + 5 * M / 24, q.d * s);
            add_at(e - 5 * M / 24, q.d * s);
            add_at(e + M / 24, q.d * s);
            add_at(e - M / 24, q.d * s);
        }
    };
    const mpq_class one_q(1), half(1, 2), neg_half(-1, 2);
    add_quad(0, cst_, one_q);
    for (const auto& [j, q] : cos_) {
        add_quad(step * j, q, half);
        add_quad(-step * j, q, half);
    }
    for (const auto& [j, q] : sin_) {
        add_quad(step * j + 3 * (M / 4), q, half);
        add_quad(-step * j + 3 * (M / 4), q, neg_half);
    }
    const auto& phi = cyclotomic_poly(M);
    const long deg = (long)phi.size() - 1;
    for (long e = M - 1; e >= deg; --e) {
        if (v[e] == 0) continue;
        const mpq_class c = v[e];
        v[e] = 0;
        for (long t = 0; t < deg; ++t) v[e - deg + t] -= c * phi[t];
    }
    for (long t = 0; t < deg; ++t)
        if (v[t] != 0) return false;
    return true;
}

Interval TrigPoly::eval(mpfr_prec_t prec) const {
    Interval r = cst_.eval(prec);
    for (const auto& [j, c] : cos_) r = r.add(cos_two_pi(j, n_, prec).mul(c.eval(prec)));
    for (const auto& [j, c] : sin_) r = r.add(sin_two_pi(j, n_, prec).mul(c.eval(prec)));
    return r;
}

double TrigPoly::to_double() const {
    double r = cst_.to_double();
    const double tau = 6.283185307179586;
    for (const auto& [j, c] : cos_) r += c.to_double() * std::cos(tau * j / n_);
    for (const auto& [j, c] : sin_) r += c.to_double() * std::sin(tau * j / n_);
    return r;
}

std::string TrigPoly::key() const {
    std::ostringstream os;
    os << n_ << "|" << cst_.str();
    for (const auto& [j, c] : cos_) os << "|C" << j << ":" << c.str();
    for (const auto& [j, c] : sin_) os << "|S" << j << ":" << c.str();
    return os.str();
}

TrigFrac::TrigFrac(TrigPoly num, TrigPoly den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw DomainError("zero denominator");
    normalize();
}

void TrigFrac::normalize() {
    if (num_.is_zero()) {
        den_ = TrigPoly(QuadRat(1));
        return;
    }
    if (den_.is_constant()) {
        if (!(den_.constant_part() == QuadRat(1))) {
            num_ = num_.scaled(den_.constant_part().inverse());
            den_ = TrigPoly(QuadRat(1));
        }
        return;
    }
    if (num_ == den_) {
        num_ = TrigPoly(QuadRat(1));
        den_ = TrigPoly(QuadRat(1));
    }
}

bool TrigFrac::equals(const TrigFrac& o) const {
    return (num_ * o.den_ - o.num_ * den_).is_zero();
}

bool TrigFrac::equals_rational(const mpq_class& q) const {
    return (num_ - den_.scaled(QuadRat(q))).is_zero();
}

TrigFrac TrigFrac::operator-() const {
    TrigFrac r;
    r.num_ = -num_;
    r.den_ = den_;
    return r;
}

TrigFrac TrigFrac::operator+(const TrigFrac& o) const {
    TrigFrac r;
    if (den_ == o.den_) {
        r.num_ = num_ + o.num_;
        r.den_ = den_;
    } else {
        r.num_ = num_ * o.den_ + o.num_ * den_;
        r.den_ = den_ * o.den_;
    }
    r.normalize();
    return r;
}

TrigFrac TrigFrac::operator-(const TrigFrac& o) const { return *this + (-o); }

TrigFrac TrigFrac::operator*(const TrigFrac& o) const {
    TrigFrac r;
    if (num_.is_zero() || o.num_.is_zero()) return TrigFrac();
    r.num_ = num_ * o.num_;
    r.den_ = den_ * o.den_;
    r.normalize();
    return r;
}

TrigFrac TrigFrac::operator/(const TrigFrac& o) const {
    if (o.num_.is_zero()) throw DomainError("division by exact zero");
    TrigFrac r;
    r.num_ = num_ * o.den_;
    r.den_ = den_ * o.num_;
    r.normalize();
    return r;
}

Interval TrigFrac::eval(mpfr_prec_t prec) const {
    Interval n = num_.eval(prec);
    if (den_.is_constant() && den_.constant_part() == QuadRat(1)) return n;
    return n.div(den_.eval(prec));
}

double TrigFrac::to_double() const { return num_.to_double() / den_.to_double(); }

std::string TrigFrac::key() const { return num_.key() + "/" + den_.key(); }

} // namespace necklace::scalar_field
