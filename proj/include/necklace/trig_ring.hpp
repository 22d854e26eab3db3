#pragma once

#include <gmpxx.h>

#include <map>
#include <string>

#include "necklace/interval.hpp"

namespace necklace::scalar_field {

// Element of Q(sqrt2, sqrt3): a + b*sqrt2 + c*sqrt3 + d*sqrt6.
// Coefficient field of the trig polynomials; rich enough to write down the
// classically constructible cosine/sine values exactly on the test side.
struct QuadRat {
    mpq_class a, b, c, d;

    QuadRat() = default;
    QuadRat(long x) : a(x) {}
    QuadRat(const mpq_class& x) : a(x) {}
    QuadRat(mpq_class a_, mpq_class b_, mpq_class c_, mpq_class d_)
        : a(std::move(a_)), b(std::move(b_)), c(std::move(c_)), d(std::move(d_)) {}

    bool is_zero() const { return a == 0 && b == 0 && c == 0 && d == 0; }
    bool is_rational() const { return b == 0 && c == 0 && d == 0; }

    QuadRat operator-() const { return {-a, -b, -c, -d}; }
    QuadRat operator+(const QuadRat& o) const { return {a + o.a, b + o.b, c + o.c, d + o.d}; }
    QuadRat operator-(const QuadRat& o) const { return {a - o.a, b - o.b, c - o.c, d - o.d}; }
    QuadRat operator*(const QuadRat& o) const;
    QuadRat inverse() const;  // throws DomainError on zero
    bool operator==(const QuadRat& o) const { return a == o.a && b == o.b && c == o.c && d == o.d; }

    Interval eval(mpfr_prec_t prec) const;
    double to_double() const;
    std::string str() const;  // canonical "a+b*r2+c*r3+d*r6" form
};

// Exact trigonometric polynomial on the angle grid 2*pi/n: a QuadRat constant
// plus a QuadRat-linear combination of cos(2*pi*j/n) and sin(2*pi*j/n).
// Indices are kept canonical (reduced mod n, reflected into [0, n/2], cos 0
// and the vanishing sines folded into the constant) and products are expanded
// by the product-to-sum rules.  The normal form treats the grid symbols as
// elements of the rotation group algebra, so it stays independent of the
// route a value was computed along; numeric coincidences at special indices
// (cos of the quarter turn, the surd cosines) intentionally stay symbolic.
// Zero testing is therefore two-tier: an empty normal form is zero, and a
// nonempty one is decided exactly by reduction in the cyclotomic field that
// all grid symbols and surd coefficients live in.
class TrigPoly {
public:
    TrigPoly() : n_(0) {}
    explicit TrigPoly(QuadRat c) : n_(0), cst_(std::move(c)) {}

    static TrigPoly constant(QuadRat c) { return TrigPoly(std::move(c)); }
    static TrigPoly cos_sym(long j, long n);
    static TrigPoly sin_sym(long j, long n);

    long grid() const { return n_; }
    const QuadRat& constant_part() const { return cst_; }
    bool is_form_zero() const { return cst_.is_zero() && cos_.empty() && sin_.empty(); }
    bool is_zero() const;  // exact value test, complete on the grid field
    bool is_constant() const { return cos_.empty() && sin_.empty(); }
    std::size_t term_count() const { return cos_.size() + sin_.size() + (cst_.is_zero() ? 0 : 1); }

    TrigPoly operator-() const;
    TrigPoly operator+(const TrigPoly& o) const;
    TrigPoly operator-(const TrigPoly& o) const;
    TrigPoly operator*(const TrigPoly& o) const;
    TrigPoly scaled(const QuadRat& c) const;
    bool operator==(const TrigPoly& o) const;

    Interval eval(mpfr_prec_t prec) const;
    double to_double() const;
    std::string key() const;  // canonical serialization

private:
    long n_;  // 0 while the polynomial is a bare constant
    QuadRat cst_;
    std::map<long, QuadRat> cos_;  // canonical j -> coefficient
    std::map<long, QuadRat> sin_;

    void add_cos(long j, const QuadRat& c);
    void add_sin(long j, const QuadRat& c);
    TrigPoly lifted(long L) const;
    static void align(TrigPoly& x, TrigPoly& y);
    friend class TrigFrac;
};

// Formal quotient of two trigonometric polynomials.  The denominator is never
// the zero polynomial; whether its value is nonzero is certified downstream by
// interval evaluation.  Zero testing and rational comparison reduce to normal
// form zero of cross-multiplied numerators.
class TrigFrac {
public:
    TrigFrac() : num_(), den_(QuadRat(1)) {}
    TrigFrac(TrigPoly num, TrigPoly den);
    explicit TrigFrac(TrigPoly num) : num_(std::move(num)), den_(QuadRat(1)) {}
    static TrigFrac rational(const mpq_class& q) { return TrigFrac(TrigPoly(QuadRat(q))); }

    const TrigPoly& num() const { return num_; }
    const TrigPoly& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool equals(const TrigFrac& o) const;      // cross-multiplied normal form zero
    bool equals_rational(const mpq_class& q) const;

    TrigFrac operator-() const;
    TrigFrac operator+(const TrigFrac& o) const;
    TrigFrac operator-(const TrigFrac& o) const;
    TrigFrac operator*(const TrigFrac& o) const;
    TrigFrac operator/(const TrigFrac& o) const;  // throws DomainError if o is the zero form

    Interval eval(mpfr_prec_t prec) const;
    double to_double() const;
    std::string key() const;

private:
    TrigPoly num_, den_;
    void normalize();
};

} // namespace necklace::scalar_field
