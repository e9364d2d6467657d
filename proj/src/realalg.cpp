#include "geoineq/realalg.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "geoineq/deadline.hpp"

namespace geoineq {

RealAlg RealAlg::from_rational(const Rational& r) {
    RealAlg a;
    a.rational_ = true;
    a.value_ = r;
    return a;
}

RealAlg RealAlg::from_interval(const UPoly& def, const Rational& lo, const Rational& hi) {
    assert(lo < hi);
    assert(def.sign_at(lo) != 0 && def.sign_at(hi) != 0);
    if (def.degree() == 1) {
        // linear: the root is rational
        return from_rational(-def[0] / def[1]);
    }
    UPoly d = def;
    if (d.degree() >= 2) {
        // keep only the factor carrying the designated root: every later
        // operation on the number is cheaper with a minimal defining poly
        for (const UPoly& g : upoly_factor_squarefree(d))
            if (g.sign_at(lo) * g.sign_at(hi) < 0) {
                d = g;
                break;
            }
        if (d.degree() == 1) return from_rational(-d[0] / d[1]);
    }
    RealAlg a;
    a.rational_ = false;
    a.def_ = d.primitive();
    a.lo_ = lo;
    a.hi_ = hi;
    return a;
}

std::vector<RealAlg> RealAlg::roots_of(const UPoly& p) {
    std::vector<RealAlg> out;
    for (const UPoly& g : upoly_factor_squarefree(p))
        for (const IsolatedRoot& r : isolate_real_roots_upoly(g)) {
            if (r.exact)
                out.push_back(from_rational(r.value));
            else
                out.push_back(from_interval(g, r.lo, r.hi));
        }
    std::sort(out.begin(), out.end(), [](const RealAlg& a, const RealAlg& b) { return a.cmp(b) < 0; });
    return out;
}

void RealAlg::refine() const {
    if (rational_) return;
    poll_deadline();
    Rational mid = (lo_ + hi_) / 2;
    int sm = def_.sign_at(mid);
    if (sm == 0) {
        rational_ = true;
        value_ = mid;
        return;
    }
    // keep the half with the sign change
    if (def_.sign_at(lo_) * sm < 0)
        hi_ = mid;
    else
        lo_ = mid;
}

void RealAlg::refine_width_below(const Rational& eps) const {
    while (!rational_ && hi_ - lo_ >= eps) refine();
}

double RealAlg::approx() const {
    if (rational_) return rat_double(value_);
    refine_width_below(make_rational(1, 1L << 30));
    if (rational_) return rat_double(value_);
    return rat_double((lo_ + hi_) / 2);
}

int RealAlg::cmp(const Rational& r) const {
    if (rational_) return value_ < r ? -1 : (value_ == r ? 0 : 1);
    if (def_.sign_at(r) == 0 && lo_ < r && r < hi_) return 0; // r is the designated root
    while (lo_ < r && r < hi_) refine();
    if (rational_) return cmp(r);
    return hi_ <= r ? -1 : 1;
}

int RealAlg::sign_of(const UPoly& q) const {
    if (q.is_zero()) return 0;
    if (rational_) return q.sign_at(value_);
    UPoly qs = squarefree_part(q);
    if (qs.degree() >= 1) {
        UPoly g = upoly_gcd(def_, qs);
        // g has at most one root in the isolating interval (it divides def),
        // so a sign change certifies q(alpha) = 0
        if (g.degree() >= 1 && g.sign_at(lo_) * g.sign_at(hi_) < 0) return 0;
    }
    while (true) {
        if (rational_) return q.sign_at(value_);
        if (qs.degree() < 1 || descartes_bound(qs, lo_, hi_) == 0) {
            int s = q.sign_at((lo_ + hi_) / 2);
            if (s != 0) return s;
        }
        refine();
    }
}

int RealAlg::cmp(const RealAlg& o) const {
    if (o.rational_) return cmp(o.value_);
    if (rational_) return -o.cmp(value_);
    UPoly g = upoly_gcd(def_, o.def_);
    bool maybe_equal = false;
    if (g.degree() >= 1) {
        bool ga = g.sign_at(lo_) * g.sign_at(hi_) < 0;
        bool gb = g.sign_at(o.lo_) * g.sign_at(o.hi_) < 0;
        maybe_equal = ga && gb;
    }
    while (true) {
        if (rational_ || o.rational_) return rational_ ? -o.cmp(value_) : cmp(o.value_);
        if (hi_ <= o.lo_) return -1;
        if (o.hi_ <= lo_) return 1;
        if (maybe_equal) {
            Rational hl = std::min(lo_, o.lo_), hh = std::max(hi_, o.hi_);
            if (descartes_bound(g, hl, hh) <= 1) return 0; // one common-root candidate in the hull
        }
        refine();
        o.refine();
    }
}

std::string RealAlg::str() const {
    if (rational_) return rat_str(value_);
    std::ostringstream os;
    os << "root(" << def_.to_string() << ") in (" << rat_str(lo_) << "," << rat_str(hi_) << ")";
    return os.str();
}

// simplest rational in the open interval (lo, hi), by continued fractions:
// smallest denominator, then smallest numerator
static Rational simplest_in_open(const Rational& lo, const Rational& hi) {
    assert(lo < hi);
    mpz_class fl;
    mpz_fdiv_q(fl.get_mpz_t(), lo.get_num().get_mpz_t(), lo.get_den().get_mpz_t());
    Rational f(fl);
    Rational n = f + 1;
    if (lo < n && n < hi) return n;
    if (f == lo) { // lo integral: (lo, hi) inside (f, f+1)
        // f + 1/m with the smallest m such that f + 1/m < hi
        Rational inv = 1 / (hi - f);
        mpz_class m;
        mpz_fdiv_q(m.get_mpz_t(), inv.get_num().get_mpz_t(), inv.get_den().get_mpz_t());
        Rational r = f + 1 / Rational(m + 1);
        return r < hi && r > lo ? r : (lo + hi) / 2;
    }
    // recurse on the reciprocal fractional parts
    return f + 1 / simplest_in_open(1 / (hi - f), 1 / (lo - f));
}

Rational rational_between(const RealAlg& a, const RealAlg& b) {
    assert(a.cmp(b) < 0);
    while (true) {
        Rational ahi = a.upper(), blo = b.lower();
        if ((a.is_rational() && b.is_rational()) || ahi < blo)
            return simplest_in_open(ahi, blo);
        if (ahi == blo && !a.is_rational() && !b.is_rational()) return ahi;
        a.refine();
        b.refine();
    }
}

std::string ran_pretty(const RealAlg& a) {
    if (a.is_rational()) return rat_str(a.value());
    const UPoly& d = a.defining();
    if (d.degree() == 2) {
        // root of c2 x^2 + c1 x + c0: (-c1 +/- sqrt(disc)) / (2 c2)
        Rational c2 = d[2], c1 = d[1], c0 = d[0];
        Rational disc = c1 * c1 - 4 * c2 * c0;
        if (disc >= 0 && mpz_perfect_square_p(disc.get_num().get_mpz_t()) &&
            mpz_perfect_square_p(disc.get_den().get_mpz_t())) {
            // rational root after all: render it plainly
            mpz_class sn, sd;
            mpz_sqrt(sn.get_mpz_t(), disc.get_num().get_mpz_t());
            mpz_sqrt(sd.get_mpz_t(), disc.get_den().get_mpz_t());
            Rational s(sn, sd);
            Rational plus_root = (-c1 + s) / (2 * c2), minus_root = (-c1 - s) / (2 * c2);
            return rat_str(a.cmp(plus_root) == 0 ? plus_root : minus_root);
        }
        // decide the branch from the isolating interval midpoint
        double mid = a.approx();
        double plus = (rat_double(-c1) + std::sqrt(rat_double(disc))) / (2 * rat_double(c2));
        bool use_plus = std::abs(plus - mid) < std::abs((rat_double(-c1) - std::sqrt(rat_double(disc))) / (2 * rat_double(c2)) - mid);
        Rational den = 2 * c2;
        std::ostringstream os;
        bool neg_den = den < 0;
        if (neg_den) {
            den = -den;
            c1 = -c1;
            use_plus = !use_plus;
        }
        os << "(";
        if (c1 != 0) os << rat_str(-c1) << (use_plus ? "+" : "-");
        else if (!use_plus) os << "-";
        os << "sqrt(" << rat_str(disc) << "))";
        std::string s = os.str();
        if (den != 1) s += "/" + rat_str(den);
        return s;
    }
    // root(poly, k) with k the 1-based index among real roots
    auto roots = RealAlg::roots_of(d);
    int k = 1;
    for (const auto& r : roots) {
        if (r == a) break;
        ++k;
    }
    std::ostringstream os;
    os.precision(12);
    os << "root(" << d.to_string("m") << ", " << k << ") ~ " << a.approx();
    return os.str();
}

} // namespace geoineq
