#include "geoineq/upoly.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>
#include <stdexcept>

#include "geoineq/deadline.hpp"

namespace geoineq {

UPoly::UPoly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

void UPoly::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

UPoly UPoly::constant(const Rational& c) {
    UPoly p;
    if (c != 0) p.c_ = {c};
    return p;
}

UPoly UPoly::from_roots(const std::vector<Rational>& roots) {
    UPoly p = UPoly::constant(Rational(1));
    for (const Rational& r : roots) p = p * UPoly({-r, Rational(1)});
    return p;
}

UPoly UPoly::operator+(const UPoly& o) const {
    std::vector<Rational> out(std::max(c_.size(), o.c_.size()), Rational(0));
    for (size_t i = 0; i < c_.size(); ++i) out[i] += c_[i];
    for (size_t i = 0; i < o.c_.size(); ++i) out[i] += o.c_[i];
    return UPoly(std::move(out));
}

UPoly UPoly::operator-(const UPoly& o) const { return *this + (-o); }

UPoly UPoly::operator-() const {
    std::vector<Rational> out(c_);
    for (auto& x : out) x = -x;
    return UPoly(std::move(out));
}

UPoly UPoly::operator*(const UPoly& o) const {
    if (is_zero() || o.is_zero()) return UPoly();
    std::vector<Rational> out(c_.size() + o.c_.size() - 1, Rational(0));
    for (size_t i = 0; i < c_.size(); ++i)
        for (size_t j = 0; j < o.c_.size(); ++j) out[i + j] += c_[i] * o.c_[j];
    return UPoly(std::move(out));
}

UPoly UPoly::operator*(const Rational& k) const {
    if (k == 0) return UPoly();
    std::vector<Rational> out(c_);
    for (auto& x : out) x *= k;
    return UPoly(std::move(out));
}

Rational UPoly::eval(const Rational& x) const {
    Rational acc(0);
    for (size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
    return acc;
}

double UPoly::eval_double(double x) const {
    double acc = 0;
    for (size_t i = c_.size(); i-- > 0;) acc = acc * x + rat_double(c_[i]);
    return acc;
}

UPoly UPoly::derivative() const {
    if (c_.size() <= 1) return UPoly();
    std::vector<Rational> out(c_.size() - 1);
    for (size_t i = 1; i < c_.size(); ++i) out[i - 1] = c_[i] * (long)i;
    return UPoly(std::move(out));
}

UPoly UPoly::primitive() const {
    if (is_zero()) return *this;
    Integer num_gcd(0), den_lcm(1);
    for (const Rational& c : c_) {
        mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), c.get_num().get_mpz_t());
        mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den().get_mpz_t());
    }
    Rational scale = make_rational(den_lcm, num_gcd);
    if (scale < 0) scale = -scale;
    UPoly r = *this * scale;
    if (r.lc() < 0) r = -r;
    return r;
}

UPoly UPoly::monic() const {
    if (is_zero()) return *this;
    return *this * Rational(Rational(1) / lc());
}

UPoly UPoly::taylor_shift(const Rational& a) const {
    // Horner: p(x + a)
    UPoly acc;
    UPoly shift({a, Rational(1)});
    for (size_t i = c_.size(); i-- > 0;) acc = acc * shift + UPoly::constant(c_[i]);
    return acc;
}

UPoly UPoly::scale_arg(const Rational& a) const {
    std::vector<Rational> out(c_);
    Rational f(1);
    for (size_t i = 0; i < out.size(); ++i) {
        out[i] *= f;
        f *= a;
    }
    return UPoly(std::move(out));
}

UPoly UPoly::reversed() const {
    std::vector<Rational> out(c_.rbegin(), c_.rend());
    return UPoly(std::move(out));
}

UPoly UPoly::from_polynomial(const Polynomial& p, int var) {
    std::vector<Rational> out((size_t)std::max(p.degree(var) + 1, 0), Rational(0));
    for (const auto& [e, c] : p.terms()) {
        for (int v = 0; v < p.nvars(); ++v) {
            if (v != var && e[v] != 0)
                throw std::invalid_argument("from_polynomial: polynomial is not univariate in the given variable");
        }
        out[(size_t)e[var]] = c;
    }
    return UPoly(std::move(out));
}

Polynomial UPoly::to_polynomial(int nvars, int var) const {
    Polynomial p(nvars);
    for (size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0) continue;
        Exps e(nvars, 0);
        e[var] = (int)i;
        p.add_term(e, c_[i]);
    }
    return p;
}

std::string UPoly::to_string(const std::string& var) const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (size_t i = c_.size(); i-- > 0;) {
        if (c_[i] == 0) continue;
        Rational a = rat_abs(c_[i]);
        if (first) {
            if (c_[i] < 0) os << "-";
            first = false;
        } else {
            os << (c_[i] < 0 ? "-" : "+");
        }
        if (a != 1 || i == 0) os << rat_str(a);
        if (i > 0) {
            if (a != 1) os << "*";
            os << var;
            if (i > 1) os << "^" << i;
        }
    }
    return os.str();
}

std::pair<UPoly, UPoly> upoly_divmod(const UPoly& a, const UPoly& b) {
    assert(!b.is_zero());
    std::vector<Rational> r(a.coeffs());
    int db = b.degree();
    std::vector<Rational> q(r.size() > (size_t)db ? r.size() - db : 0, Rational(0));
    Rational lcb = b.lc();
    for (int i = (int)r.size() - 1; i >= db; --i) {
        if (r[(size_t)i] == 0) continue;
        Rational f = r[(size_t)i] / lcb;
        q[(size_t)(i - db)] = f;
        for (int j = 0; j <= db; ++j) r[(size_t)(i - db + j)] -= f * b[(size_t)j];
    }
    return {UPoly(std::move(q)), UPoly(std::move(r))};
}

UPoly upoly_gcd(const UPoly& a, const UPoly& b) {
    UPoly x = a, y = b;
    while (!y.is_zero()) {
        poll_deadline();
        UPoly r = upoly_divmod(x, y).second;
        x = y;
        y = r.is_zero() ? r : r.monic();
    }
    if (x.is_zero()) return x;
    return x.primitive();
}

UPoly squarefree_part(const UPoly& p) {
    if (p.is_zero()) throw std::invalid_argument("zero-polynomial");
    if (p.degree() == 0) return UPoly::constant(Rational(1));
    UPoly g = upoly_gcd(p, p.derivative());
    if (g.degree() <= 0) return p.primitive();
    UPoly q = upoly_divmod(p, g).first;
    return q.primitive();
}

Rational cauchy_bound(const UPoly& p) {
    assert(!p.is_zero());
    Rational lc = rat_abs(p.lc());
    Rational m(0);
    for (int i = 0; i < p.degree(); ++i) m = std::max(m, rat_abs(p[(size_t)i]));
    return Rational(1) + m / lc;
}

static int sign_variations(const UPoly& p) {
    int v = 0, prev = 0;
    for (const Rational& c : p.coeffs()) {
        int s = sign_of(c);
        if (s == 0) continue;
        if (prev != 0 && s != prev) ++v;
        prev = s;
    }
    return v;
}

int descartes_bound(const UPoly& p, const Rational& a, const Rational& b) {
    assert(a < b);
    // map (a, b) to (0, 1), then (0, 1) to (0, inf) via reverse + shift
    UPoly q = p.taylor_shift(a).scale_arg(b - a); // roots in (0,1)
    UPoly t = q.reversed().taylor_shift(Rational(1));
    return sign_variations(t);
}

namespace {

void isolate_rec(const UPoly& p, const Rational& a, const Rational& b,
                 std::vector<IsolatedRoot>& out) {
    poll_deadline();
    int v = descartes_bound(p, a, b);
    if (v == 0) return;
    if (v == 1) {
        // exactly one root in (a,b); endpoints are known non-roots
        IsolatedRoot r;
        r.lo = a;
        r.hi = b;
        out.push_back(r);
        return;
    }
    Rational mid = (a + b) / 2;
    if (p.sign_at(mid) == 0) {
        // exact rational root at the bisection point; carve out a root-free
        // margin on both sides so sub-interval endpoints stay non-roots
        Rational l = (a + mid) / 2;
        while (p.sign_at(l) == 0 || descartes_bound(p, l, mid) > 0) l = (l + mid) / 2;
        Rational r = (mid + b) / 2;
        while (p.sign_at(r) == 0 || descartes_bound(p, mid, r) > 0) r = (mid + r) / 2;
        isolate_rec(p, a, l, out);
        IsolatedRoot root;
        root.exact = true;
        root.value = mid;
        root.lo = l;
        root.hi = r;
        out.push_back(root);
        isolate_rec(p, r, b, out);
    } else {
        isolate_rec(p, a, mid, out);
        isolate_rec(p, mid, b, out);
    }
}

} // namespace

std::vector<IsolatedRoot> isolate_real_roots_upoly(const UPoly& p) {
    if (p.is_zero()) throw std::invalid_argument("zero-polynomial");
    UPoly sf = squarefree_part(p);
    std::vector<IsolatedRoot> out;
    if (sf.degree() <= 0) return out;
    Rational bound = cauchy_bound(sf);
    // nudge the bound until it is not itself a root
    while (sf.sign_at(bound) == 0 || sf.sign_at(-bound) == 0) bound += 1;
    isolate_rec(sf, -bound, bound, out);
    // tighten: callers expect intervals that localize the root well
    const Rational target = make_rational(1, 4);
    for (IsolatedRoot& r : out) {
        if (r.exact) continue;
        while (r.hi - r.lo > target) {
            Rational mid = (r.lo + r.hi) / 2;
            int sm = sf.sign_at(mid);
            if (sm == 0) {
                r.exact = true;
                r.value = mid;
                break;
            }
            if (sf.sign_at(r.lo) * sm < 0)
                r.hi = mid;
            else
                r.lo = mid;
        }
    }
    return out;
}

} // namespace geoineq
