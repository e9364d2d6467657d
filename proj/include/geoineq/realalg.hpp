#ifndef GEOINEQ_REALALG_HPP
#define GEOINEQ_REALALG_HPP

#include <string>
#include <vector>

#include "geoineq/rational.hpp"
#include "geoineq/upoly.hpp"

namespace geoineq {

// A real algebraic number: either an exact rational, or a squarefree
// primitive defining polynomial plus an open isolating interval (lo, hi)
// containing exactly one of its real roots, with def(lo) != 0 != def(hi).
// Refinement only ever shrinks the interval; the designated root is stable.
class RealAlg {
public:
    RealAlg() : rational_(true), value_(0) {}

    static RealAlg from_rational(const Rational& r);
    static RealAlg from_interval(const UPoly& squarefree_def, const Rational& lo, const Rational& hi);
    // All real roots of p, increasing.
    static std::vector<RealAlg> roots_of(const UPoly& p);

    bool is_rational() const { return rational_; }
    const Rational& value() const { return value_; } // rational case only
    const UPoly& defining() const { return def_; }
    Rational lower() const { return rational_ ? value_ : lo_; }
    Rational upper() const { return rational_ ? value_ : hi_; }
    // A rational strictly below / above this number.
    Rational rational_below() const { return rational_ ? value_ - 1 : lo_; }
    Rational rational_above() const { return rational_ ? value_ + 1 : hi_; }

    void refine() const; // one bisection step (no-op for rationals)
    void refine_width_below(const Rational& eps) const;
    double approx() const;

    int cmp(const RealAlg& o) const;
    int cmp(const Rational& r) const;
    // Exact sign of q at this number.
    int sign_of(const UPoly& q) const;

    bool operator<(const RealAlg& o) const { return cmp(o) < 0; }
    bool operator==(const RealAlg& o) const { return cmp(o) == 0; }
    bool operator!=(const RealAlg& o) const { return cmp(o) != 0; }
    bool operator<=(const RealAlg& o) const { return cmp(o) <= 0; }

    std::string str() const; // debug form: poly @ (lo,hi) or rational

private:
    // representation may collapse to exact-rational during refinement;
    // the represented number itself never changes
    mutable bool rational_;
    mutable Rational value_;
    mutable UPoly def_;
    mutable Rational lo_, hi_;
};

// A rational strictly between a and b (requires a < b).
Rational rational_between(const RealAlg& a, const RealAlg& b);

// Human-readable exact rendering: rationals as-is, degree-2 numbers in
// radical form like (1+sqrt(5))/2, higher degrees as root(poly, k) ~ approx.
std::string ran_pretty(const RealAlg& a);

} // namespace geoineq

#endif
