#pragma once

#include <gmpxx.h>

#include <random>
#include <string>

#include "necklace/scalar.hpp"

namespace test_support {

using necklace::scalar_field::CertifiedScalar;
using necklace::scalar_field::certify_sign;

// Exact rational from a plain decimal literal ("-12.0625" -> -193/16).
inline mpq_class decimal_rational(const std::string& text) {
    std::string digits;
    bool negative = false;
    unsigned long frac_digits = 0;
    bool seen_point = false;
    for (char ch : text) {
        if (ch == '-') { negative = true; continue; }
        if (ch == '+' || ch == '\'') continue;
        if (ch == '.') { seen_point = true; continue; }
        digits.push_back(ch);
        if (seen_point) ++frac_digits;
    }
    mpz_class num(digits, 10);
    mpz_class den;
    mpz_ui_pow_ui(den.get_mpz_t(), 10, frac_digits);
    mpq_class q(num, den);
    q.canonicalize();
    return negative ? mpq_class(-q) : q;
}

// Certifies |v - literal| < 10^-digits on both sides.
inline bool within_decimal(const CertifiedScalar& v, const std::string& literal, long digits) {
    mpz_class den;
    mpz_ui_pow_ui(den.get_mpz_t(), 10, static_cast<unsigned long>(digits));
    mpq_class tol(mpz_class(1), den);
    CertifiedScalar d = v - CertifiedScalar::from_rational(decimal_rational(literal));
    CertifiedScalar t = CertifiedScalar::from_rational(tol);
    return certify_sign(d - t).is_negative() && certify_sign(d + t).is_positive();
}

// Deterministic randomness for the property suites.
class Rng {
public:
    explicit Rng(unsigned seed) : gen_(seed) {}

    long pick(long lo, long hi) {
        return std::uniform_int_distribution<long>(lo, hi)(gen_);
    }

    double real(double lo, double hi) {
        return std::uniform_real_distribution<double>(lo, hi)(gen_);
    }

    // Rational in [lo, hi] with denominator up to max_den.
    mpq_class rational(long lo, long hi, long max_den) {
        long den = pick(1, max_den);
        long num = pick(lo * den, hi * den);
        mpq_class q{mpz_class(num), mpz_class(den)};
        q.canonicalize();
        return q;
    }

private:
    std::mt19937 gen_;
};

}  // namespace test_support
