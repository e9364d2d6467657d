#ifndef GEOINEQ_UPOLY_HPP
#define GEOINEQ_UPOLY_HPP

#include <string>
#include <vector>

#include "geoineq/polynomial.hpp"
#include "geoineq/rational.hpp"

namespace geoineq {

// Dense univariate polynomial over Q; coeffs[i] is the coefficient of x^i.
// Kept normalized: no trailing zero coefficients (zero poly = empty vector).
class UPoly {
public:
    UPoly() = default;
    explicit UPoly(std::vector<Rational> coeffs);
    static UPoly constant(const Rational& c);
    static UPoly from_roots(const std::vector<Rational>& roots); // prod (x - r)

    bool is_zero() const { return c_.empty(); }
    int degree() const { return (int)c_.size() - 1; } // -1 for zero
    const std::vector<Rational>& coeffs() const { return c_; }
    const Rational& operator[](size_t i) const { return c_[i]; }
    Rational lc() const { return c_.back(); }

    UPoly operator+(const UPoly& o) const;
    UPoly operator-(const UPoly& o) const;
    UPoly operator*(const UPoly& o) const;
    UPoly operator*(const Rational& k) const;
    UPoly operator-() const;
    bool operator==(const UPoly& o) const { return c_ == o.c_; }

    Rational eval(const Rational& x) const;
    double eval_double(double x) const;
    int sign_at(const Rational& x) const { return sign_of(eval(x)); }

    UPoly derivative() const;
    // Integer primitive with positive leading coefficient.
    UPoly primitive() const;
    UPoly monic() const;

    // Composition helpers for root isolation.
    UPoly taylor_shift(const Rational& a) const; // p(x + a)
    UPoly scale_arg(const Rational& a) const;    // p(a * x)
    UPoly reversed() const;                      // x^n p(1/x)

    // Conversion to/from the multivariate representation.
    static UPoly from_polynomial(const Polynomial& p, int var);
    Polynomial to_polynomial(int nvars, int var) const;

    std::string to_string(const std::string& var = "x") const;

private:
    std::vector<Rational> c_;
    void trim();
};

// q, r with a = q*b + r, deg r < deg b (rational coefficient division).
std::pair<UPoly, UPoly> upoly_divmod(const UPoly& a, const UPoly& b);

UPoly upoly_gcd(const UPoly& a, const UPoly& b); // primitive, positive lc
UPoly squarefree_part(const UPoly& p);           // p / gcd(p, p'); error on zero

// Factorization over Q of the squarefree part of p: pairwise coprime primitive
// factors whose product is the squarefree part up to a rational. Factors are
// found by high-precision root clustering and certified by exact trial
// division, so the split is always valid; when certification fails the
// remaining part is returned unfactored.
std::vector<UPoly> upoly_factor_squarefree(const UPoly& p);

// Cauchy root bound: all real roots lie in (-B, B).
Rational cauchy_bound(const UPoly& p);

// Upper bound on the number of roots of squarefree p in the open interval
// (a, b), exact when the value is 0 or 1 (Descartes / Vincent).
int descartes_bound(const UPoly& p, const Rational& a, const Rational& b);

struct IsolatedRoot {
    bool exact = false;  // rational root
    Rational value;      // exact case
    Rational lo, hi;     // open isolating interval, p(lo) != 0 != p(hi)
};

// All distinct real roots of p in increasing order (p made squarefree
// internally). Throws std::invalid_argument("zero-polynomial") for p == 0.
std::vector<IsolatedRoot> isolate_real_roots_upoly(const UPoly& p);

} // namespace geoineq

#endif
