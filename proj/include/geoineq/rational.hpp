#ifndef GEOINEQ_RATIONAL_HPP
#define GEOINEQ_RATIONAL_HPP

#include <gmpxx.h>
#include <string>

namespace geoineq {

// Arbitrary-precision rational, always kept canonical (den > 0, gcd = 1).
using Rational = mpq_class;
using Integer = mpz_class;

inline Rational make_rational(long num, long den = 1) {
    Rational r(num, den);
    r.canonicalize();
    return r;
}

inline Rational make_rational(const Integer& num, const Integer& den) {
    Rational r(num, den);
    r.canonicalize();
    return r;
}

inline int sign_of(const Rational& r) { return sgn(r); }

inline Rational rat_abs(const Rational& r) { return r < 0 ? Rational(-r) : r; }

inline Rational rat_pow(const Rational& base, unsigned exp) {
    Rational acc(1);
    Rational b = base;
    unsigned e = exp;
    while (e) {
        if (e & 1u) acc *= b;
        b *= b;
        e >>= 1u;
    }
    return acc;
}

inline std::string rat_str(const Rational& r) { return r.get_str(); }

inline double rat_double(const Rational& r) { return r.get_d(); }

} // namespace geoineq

#endif
