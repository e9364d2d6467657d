#include "geoineq/polynomial.hpp"

#include <algorithm>

#include "geoineq/deadline.hpp"
#include <cassert>
#include <cctype>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace geoineq {

// ---------------------------------------------------------------------------
// MonomialOrder

MonomialOrder MonomialOrder::block(const std::set<int>& elim_vars, int nvars) {
    MonomialOrder ord;
    ord.kind = OrderKind::Block;
    ord.elim.assign(nvars, 0);
    for (int v : elim_vars) ord.elim.at(v) = 1;
    return ord;
}

static int cmp_lex(const Exps& a, const Exps& b) {
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
    }
    return 0;
}

static int cmp_grevlex(const Exps& a, const Exps& b) {
    long da = std::accumulate(a.begin(), a.end(), 0L);
    long db = std::accumulate(b.begin(), b.end(), 0L);
    if (da != db) return da < db ? -1 : 1;
    // reverse lexicographic on the reversed exponent difference
    for (size_t i = a.size(); i-- > 0;) {
        if (a[i] != b[i]) return a[i] > b[i] ? -1 : 1;
    }
    return 0;
}

int MonomialOrder::cmp(const Exps& a, const Exps& b) const {
    assert(a.size() == b.size());
    switch (kind) {
        case OrderKind::Lex:
            return cmp_lex(a, b);
        case OrderKind::Grevlex:
            return cmp_grevlex(a, b);
        case OrderKind::Block: {
            Exps ae(a.size(), 0), be(a.size(), 0), ar(a.size(), 0), br(a.size(), 0);
            for (size_t i = 0; i < a.size(); ++i) {
                if (i < elim.size() && elim[i]) {
                    ae[i] = a[i];
                    be[i] = b[i];
                } else {
                    ar[i] = a[i];
                    br[i] = b[i];
                }
            }
            if (int c = cmp_grevlex(ae, be)) return c;
            return cmp_grevlex(ar, br);
        }
    }
    return 0;
}

// ---------------------------------------------------------------------------
// Polynomial basics

Polynomial Polynomial::constant(int nvars, const Rational& c) {
    Polynomial p(nvars);
    if (c != 0) p.terms_[Exps(nvars, 0)] = c;
    return p;
}

Polynomial Polynomial::variable(int nvars, int v, int exp, const Rational& c) {
    assert(v >= 0 && v < nvars);
    Polynomial p(nvars);
    if (c != 0) {
        Exps e(nvars, 0);
        e[v] = exp;
        p.terms_[e] = c;
    }
    return p;
}

bool Polynomial::is_constant() const {
    if (terms_.empty()) return true;
    return terms_.size() == 1 && terms_.begin()->first == Exps(nvars_, 0);
}

Rational Polynomial::constant_value() const {
    auto it = terms_.find(Exps(nvars_, 0));
    return it == terms_.end() ? Rational(0) : it->second;
}

int Polynomial::degree(int v) const {
    int d = terms_.empty() ? -1 : 0;
    for (const auto& [e, c] : terms_) d = std::max(d, e[v]);
    return d;
}

int Polynomial::total_degree() const {
    int d = -1;
    for (const auto& [e, c] : terms_) {
        int t = std::accumulate(e.begin(), e.end(), 0);
        d = std::max(d, t);
    }
    return d;
}

std::set<int> Polynomial::vars() const {
    std::set<int> out;
    for (const auto& [e, c] : terms_)
        for (int v = 0; v < nvars_; ++v)
            if (e[v] > 0) out.insert(v);
    return out;
}

void Polynomial::add_term(const Exps& e, const Rational& c) {
    assert((int)e.size() == nvars_);
    if (c == 0) return;
    auto it = terms_.find(e);
    if (it == terms_.end()) {
        terms_[e] = c;
    } else {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

Polynomial Polynomial::operator-() const {
    Polynomial r(nvars_);
    for (const auto& [e, c] : terms_) r.terms_[e] = -c;
    return r;
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
    assert(nvars_ == o.nvars_);
    Polynomial r = *this;
    for (const auto& [e, c] : o.terms_) r.add_term(e, c);
    return r;
}

Polynomial Polynomial::operator-(const Polynomial& o) const {
    assert(nvars_ == o.nvars_);
    Polynomial r = *this;
    for (const auto& [e, c] : o.terms_) r.add_term(e, -c);
    return r;
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
    assert(nvars_ == o.nvars_);
    Polynomial r(nvars_);
    for (const auto& [e1, c1] : terms_) {
        poll_deadline();
        for (const auto& [e2, c2] : o.terms_) {
            Exps e(nvars_);
            for (int i = 0; i < nvars_; ++i) e[i] = e1[i] + e2[i];
            r.add_term(e, c1 * c2);
        }
    }
    return r;
}

Polynomial Polynomial::operator*(const Rational& c) const {
    Polynomial r(nvars_);
    if (c == 0) return r;
    for (const auto& [e, k] : terms_) r.terms_[e] = k * c;
    return r;
}

bool Polynomial::operator<(const Polynomial& o) const {
    if (nvars_ != o.nvars_) return nvars_ < o.nvars_;
    auto it = terms_.begin(), jt = o.terms_.begin();
    for (; it != terms_.end() && jt != o.terms_.end(); ++it, ++jt) {
        if (it->first != jt->first) return it->first < jt->first;
        if (it->second != jt->second) return it->second < jt->second;
    }
    return jt != o.terms_.end();
}

Polynomial Polynomial::pow(unsigned e) const {
    Polynomial acc = Polynomial::constant(nvars_, 1);
    Polynomial b = *this;
    while (e) {
        if (e & 1u) acc = acc * b;
        b = b * b;
        e >>= 1u;
    }
    return acc;
}

Polynomial Polynomial::derivative(int v) const {
    Polynomial r(nvars_);
    for (const auto& [e, c] : terms_) {
        if (e[v] == 0) continue;
        Exps d = e;
        d[v] -= 1;
        r.add_term(d, c * e[v]);
    }
    return r;
}

Exps Polynomial::leading_monomial(const MonomialOrder& ord) const {
    assert(!terms_.empty());
    auto best = terms_.begin();
    for (auto it = std::next(terms_.begin()); it != terms_.end(); ++it) {
        if (ord.cmp(it->first, best->first) > 0) best = it;
    }
    return best->first;
}

Rational Polynomial::leading_coeff(const MonomialOrder& ord) const {
    return terms_.at(leading_monomial(ord));
}

std::vector<Polynomial> Polynomial::coeffs_in(int v) const {
    int d = degree(v);
    std::vector<Polynomial> out(std::max(d + 1, 1), Polynomial(nvars_));
    for (const auto& [e, c] : terms_) {
        Exps f = e;
        int k = f[v];
        f[v] = 0;
        out[k].add_term(f, c);
    }
    return out;
}

Polynomial Polynomial::from_coeffs_in(int v, const std::vector<Polynomial>& coeffs) {
    assert(!coeffs.empty());
    Polynomial r(coeffs[0].nvars());
    for (size_t k = 0; k < coeffs.size(); ++k) {
        for (const auto& [e, c] : coeffs[k].terms()) {
            Exps f = e;
            f[v] += (int)k;
            r.add_term(f, c);
        }
    }
    return r;
}

Polynomial Polynomial::coeff_of(int v, int deg) const {
    Polynomial r(nvars_);
    for (const auto& [e, c] : terms_) {
        if (e[v] != deg) continue;
        Exps f = e;
        f[v] = 0;
        r.add_term(f, c);
    }
    return r;
}

Polynomial Polynomial::subst_rational(int v, const Rational& val) const {
    Polynomial r(nvars_);
    for (const auto& [e, c] : terms_) {
        Exps f = e;
        int k = f[v];
        f[v] = 0;
        r.add_term(f, c * rat_pow(val, (unsigned)k));
    }
    return r;
}

Polynomial Polynomial::subst_poly(int v, const Polynomial& repl) const {
    assert(repl.nvars() == nvars_);
    auto cs = coeffs_in(v);
    Polynomial r(nvars_);
    // Horner
    for (size_t k = cs.size(); k-- > 0;) r = r * repl + cs[k];
    return r;
}

Polynomial Polynomial::subst_cleared(int v, const Polynomial& num, const Polynomial& den) const {
    auto cs = coeffs_in(v);
    int d = (int)cs.size() - 1;
    Polynomial r(nvars_);
    for (int k = 0; k <= d; ++k) {
        r = r + cs[k] * num.pow((unsigned)k) * den.pow((unsigned)(d - k));
    }
    return r;
}

Rational Polynomial::eval(const std::vector<Rational>& point) const {
    assert((int)point.size() == nvars_);
    Rational acc(0);
    for (const auto& [e, c] : terms_) {
        Rational t = c;
        for (int i = 0; i < nvars_; ++i)
            if (e[i]) t *= rat_pow(point[i], (unsigned)e[i]);
        acc += t;
    }
    return acc;
}

double Polynomial::eval_double(const std::vector<double>& point) const {
    assert((int)point.size() == nvars_);
    double acc = 0;
    for (const auto& [e, c] : terms_) {
        double t = rat_double(c);
        for (int i = 0; i < nvars_; ++i)
            if (e[i]) t *= std::pow(point[i], e[i]);
        acc += t;
    }
    return acc;
}

Polynomial Polynomial::primitive_part(bool normalize_sign) const {
    if (terms_.empty()) return *this;
    Integer num_gcd(0), den_lcm(1);
    for (const auto& [e, c] : terms_) {
        mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), c.get_num().get_mpz_t());
        mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den().get_mpz_t());
    }
    Rational scale = make_rational(den_lcm, num_gcd);
    if (scale < 0) scale = -scale;
    Polynomial r = *this * scale;
    if (normalize_sign) {
        if (r.leading_coeff(MonomialOrder::grevlex()) < 0) r = -r;
    }
    return r;
}

Polynomial Polynomial::with_nvars(int nvars) const {
    Polynomial r(nvars);
    for (const auto& [e, c] : terms_) {
        Exps f(nvars, 0);
        for (int i = 0; i < nvars_; ++i) {
            if (e[i]) {
                if (i >= nvars) throw std::invalid_argument("with_nvars: variable out of range");
                f[i] = e[i];
            }
        }
        r.terms_[f] = c;
    }
    return r;
}

// ---------------------------------------------------------------------------
// Printing / parsing

std::string Polynomial::to_string(const std::vector<std::string>& names) const {
    if (terms_.empty()) return "0";
    // print in decreasing grevlex order
    std::vector<const std::pair<const Exps, Rational>*> ts;
    for (const auto& t : terms_) ts.push_back(&t);
    MonomialOrder ord = MonomialOrder::grevlex();
    std::sort(ts.begin(), ts.end(),
              [&](auto* a, auto* b) { return ord.cmp(a->first, b->first) > 0; });
    std::ostringstream os;
    bool first = true;
    for (auto* t : ts) {
        const Rational& c = t->second;
        Rational ac = rat_abs(c);
        if (first) {
            if (c < 0) os << "-";
            first = false;
        } else {
            os << (c < 0 ? "-" : "+");
        }
        bool is_const_mon = std::all_of(t->first.begin(), t->first.end(), [](int x) { return x == 0; });
        bool printed_coeff = false;
        if (ac != 1 || is_const_mon) {
            os << rat_str(ac);
            printed_coeff = true;
        }
        for (int v = 0; v < nvars_; ++v) {
            int e = t->first[v];
            if (!e) continue;
            if (printed_coeff) os << "*";
            printed_coeff = true;
            os << (v < (int)names.size() ? names[v] : "x" + std::to_string(v));
            if (e > 1) os << "^" << e;
        }
    }
    return os.str();
}

namespace {

struct Parser {
    const std::string& s;
    size_t pos = 0;
    const std::vector<std::string>& names;
    int nvars;

    explicit Parser(const std::string& str, const std::vector<std::string>& nm)
        : s(str), names(nm), nvars((int)nm.size()) {}

    void skip_ws() {
        while (pos < s.size() && std::isspace((unsigned char)s[pos])) ++pos;
    }
    bool eat(char c) {
        skip_ws();
        if (pos < s.size() && s[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }
    char peek() {
        skip_ws();
        return pos < s.size() ? s[pos] : '\0';
    }
    [[noreturn]] void fail(const std::string& msg) {
        throw std::invalid_argument("polynomial parse error at position " + std::to_string(pos) + ": " + msg);
    }

    Polynomial parse_expr() {
        Polynomial acc = parse_term();
        while (true) {
            char c = peek();
            if (c == '+') {
                ++pos;
                acc = acc + parse_term();
            } else if (c == '-') {
                ++pos;
                acc = acc - parse_term();
            } else {
                break;
            }
        }
        return acc;
    }

    Polynomial parse_term() {
        Polynomial acc = parse_factor();
        while (true) {
            char c = peek();
            if (c == '*') {
                ++pos;
                acc = acc * parse_factor();
            } else if (c == '/') {
                ++pos;
                Polynomial d = parse_factor();
                if (!d.is_constant() || d.is_zero()) fail("division only by nonzero constants");
                acc = acc * Rational(Rational(1) / d.constant_value());
            } else {
                break;
            }
        }
        return acc;
    }

    Polynomial parse_factor() {
        Polynomial base = parse_atom();
        if (peek() == '^') {
            ++pos;
            skip_ws();
            size_t start = pos;
            while (pos < s.size() && std::isdigit((unsigned char)s[pos])) ++pos;
            if (pos == start) fail("expected exponent");
            base = base.pow((unsigned)std::stoul(s.substr(start, pos - start)));
        }
        return base;
    }

    Polynomial parse_atom() {
        char c = peek();
        if (c == '(') {
            ++pos;
            Polynomial inner = parse_expr();
            if (!eat(')')) fail("expected ')'");
            return inner;
        }
        if (c == '-') {
            ++pos;
            return -parse_factor();
        }
        if (std::isdigit((unsigned char)c)) {
            size_t start = pos;
            while (pos < s.size() && (std::isdigit((unsigned char)s[pos]))) ++pos;
            Integer num(s.substr(start, pos - start));
            if (pos < s.size() && s[pos] == '/' && pos + 1 < s.size() && std::isdigit((unsigned char)s[pos + 1])) {
                ++pos;
                size_t dstart = pos;
                while (pos < s.size() && std::isdigit((unsigned char)s[pos])) ++pos;
                Integer den(s.substr(dstart, pos - dstart));
                return Polynomial::constant(nvars, make_rational(num, den));
            }
            return Polynomial::constant(nvars, Rational(num));
        }
        if (std::isalpha((unsigned char)c) || c == '_') {
            size_t start = pos;
            while (pos < s.size() && (std::isalnum((unsigned char)s[pos]) || s[pos] == '_' || s[pos] == '\'')) ++pos;
            std::string name = s.substr(start, pos - start);
            for (int v = 0; v < nvars; ++v)
                if (names[v] == name) return Polynomial::variable(nvars, v);
            fail("unknown variable '" + name + "'");
        }
        fail("unexpected character");
    }
};

} // namespace

Polynomial Polynomial::parse(const std::string& text, const std::vector<std::string>& names) {
    Parser p(text, names);
    Polynomial r = p.parse_expr();
    p.skip_ws();
    if (p.pos != text.size()) p.fail("trailing input");
    return r;
}

// ---------------------------------------------------------------------------
// Division, resultants, subresultants

Polynomial pseudo_rem(const Polynomial& a, const Polynomial& b, int x) {
    int db = b.degree(x);
    assert(db >= 0 && !b.is_zero());
    Polynomial lcb = b.coeff_of(x, db);
    Polynomial r = a;
    int dr = r.degree(x);
    int steps = dr - db + 1;
    int performed = 0;
    while (!r.is_zero() && (dr = r.degree(x)) >= db) {
        poll_deadline();
        Polynomial lcr = r.coeff_of(x, dr);
        Polynomial xshift = Polynomial::variable(r.nvars(), x, dr - db);
        r = r * lcb - lcr * xshift * b;
        ++performed;
    }
    // pad the multiplier so the result is exactly lcb^(da-db+1) * a mod b
    for (; performed < steps; ++performed) r = r * lcb;
    return r;
}

std::optional<Polynomial> try_divide_exact(const Polynomial& p, const Polynomial& q) {
    if (q.is_zero()) return std::nullopt;
    if (p.is_zero()) return Polynomial::zero(p.nvars());
    MonomialOrder ord = MonomialOrder::grevlex();
    Polynomial r = p;
    Polynomial quot(p.nvars());
    Exps lmq = q.leading_monomial(ord);
    Rational lcq = q.terms().at(lmq);
    while (!r.is_zero()) {
        poll_deadline();
        Exps lmr = r.leading_monomial(ord);
        Exps diff(p.nvars());
        for (int i = 0; i < p.nvars(); ++i) {
            diff[i] = lmr[i] - lmq[i];
            if (diff[i] < 0) return std::nullopt;
        }
        Rational c = r.terms().at(lmr) / lcq;
        Polynomial mono(p.nvars());
        mono.add_term(diff, c);
        quot = quot + mono;
        r = r - mono * q;
    }
    return quot;
}

// Resultant of p, q w.r.t. x via the subresultant PRS.
Polynomial resultant(const Polynomial& p, const Polynomial& q, int x) {
    if (p.is_zero() || q.is_zero()) return Polynomial::zero(p.nvars());
    int dp = p.degree(x), dq = q.degree(x);
    if (dp <= 0 && dq <= 0) throw std::invalid_argument("no-elimination-variable");
    if (dq == 0) return q.pow((unsigned)dp);
    if (dp == 0) return p.pow((unsigned)dq);

    Polynomial A = p, B = q;
    int s = 1;
    if (dp < dq) {
        std::swap(A, B);
        if ((dp & 1) && (dq & 1)) s = -s;
    }
    Polynomial g = Polynomial::constant(p.nvars(), 1);
    Polynomial h = g;
    while (true) {
        int da = A.degree(x), db = B.degree(x);
        int delta = da - db;
        if ((da & 1) && (db & 1)) s = -s;
        Polynomial R = pseudo_rem(A, B, x);
        if (R.is_zero()) return Polynomial::zero(p.nvars());
        A = B;
        Polynomial divisor = g * h.pow((unsigned)delta);
        auto Bn = try_divide_exact(R, divisor);
        assert(Bn.has_value());
        B = *Bn;
        g = A.coeff_of(x, A.degree(x));
        if (delta >= 1) {
            auto hn = try_divide_exact(g.pow((unsigned)delta), h.pow((unsigned)(delta - 1)));
            assert(hn.has_value());
            h = *hn;
        }
        if (B.degree(x) == 0) break;
    }
    int da = A.degree(x);
    Polynomial lb = B.coeff_of(x, 0); // B itself (constant in x)
    Polynomial res;
    if (da >= 1) {
        auto t = try_divide_exact(lb.pow((unsigned)da), h.pow((unsigned)(da - 1)));
        assert(t.has_value());
        res = *t;
    } else {
        res = lb;
    }
    return s < 0 ? -res : res;
}

Polynomial discriminant(const Polynomial& p, int x) {
    Polynomial d = p.derivative(x);
    if (d.is_zero()) return Polynomial::zero(p.nvars());
    if (p.degree(x) <= 0) throw std::invalid_argument("no-elimination-variable");
    int n = p.degree(x);
    Polynomial r = resultant(p, d, x);
    if ((n * (n - 1) / 2) % 2 != 0) r = -r;
    Polynomial lc = p.coeff_of(x, n);
    auto q = try_divide_exact(r, lc);
    return q ? *q : r;
}

// Fraction-free (Bareiss) determinant over Q[vars].
static Polynomial bareiss_det(std::vector<std::vector<Polynomial>> m) {
    size_t n = m.size();
    if (n == 0) return Polynomial(); // caller handles
    int nv = m[0][0].nvars();
    Polynomial prev = Polynomial::constant(nv, 1);
    int sign = 1;
    for (size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k].is_zero()) {
            size_t swap_row = k + 1;
            while (swap_row < n && m[swap_row][k].is_zero()) ++swap_row;
            if (swap_row == n) return Polynomial::zero(nv);
            std::swap(m[k], m[swap_row]);
            sign = -sign;
        }
        for (size_t i = k + 1; i < n; ++i) {
            for (size_t j = k + 1; j < n; ++j) {
                poll_deadline();
                Polynomial num = m[i][j] * m[k][k] - m[i][k] * m[k][j];
                auto q = try_divide_exact(num, prev);
                assert(q.has_value());
                m[i][j] = *q;
            }
            m[i][k] = Polynomial::zero(nv);
        }
        prev = m[k][k];
    }
    Polynomial det = m[n - 1][n - 1];
    return sign < 0 ? -det : det;
}

Polynomial psc(const Polynomial& p, const Polynomial& q, int x, int j) {
    int m = p.degree(x), n = q.degree(x);
    assert(m >= 1 && n >= 1);
    if (j >= std::min(m, n)) throw std::invalid_argument("psc index out of range");
    if (j == 0) return resultant(p, q, x);
    int size = m + n - 2 * j;
    auto pc = p.coeffs_in(x);
    auto qc = q.coeffs_in(x);
    auto coeff = [&](const std::vector<Polynomial>& cs, int deg) {
        if (deg < 0 || deg >= (int)cs.size()) return Polynomial::zero(p.nvars());
        return cs[deg];
    };
    // Rows: x^(n-j-1) p ... p, x^(m-j-1) q ... q; columns: degrees m+n-j-1 .. j.
    std::vector<std::vector<Polynomial>> mat((size_t)size, std::vector<Polynomial>((size_t)size, Polynomial::zero(p.nvars())));
    int col_hi = m + n - j - 1;
    for (int r = 0; r < n - j; ++r) {
        int shift = n - j - 1 - r;
        for (int c = 0; c < size; ++c) {
            int deg = col_hi - c;
            mat[(size_t)r][(size_t)c] = coeff(pc, deg - shift);
        }
    }
    for (int r = 0; r < m - j; ++r) {
        int shift = m - j - 1 - r;
        for (int c = 0; c < size; ++c) {
            int deg = col_hi - c;
            mat[(size_t)(n - j + r)][(size_t)c] = coeff(qc, deg - shift);
        }
    }
    return bareiss_det(std::move(mat));
}

Polynomial gcd_in_var(const Polynomial& p, const Polynomial& q, int x) {
    if (p.is_zero()) return q;
    if (q.is_zero()) return p;
    Polynomial A = p, B = q;
    if (A.degree(x) < B.degree(x)) std::swap(A, B);
    if (B.degree(x) == 0) return Polynomial::constant(p.nvars(), 1);
    while (true) {
        poll_deadline();
        Polynomial R = pseudo_rem(A, B, x);
        if (R.is_zero()) break;
        if (R.degree(x) == 0) return Polynomial::constant(p.nvars(), 1);
        A = B;
        B = R.primitive_part();
    }
    // the PRS gcd carries content in the remaining variables; strip it
    Polynomial c = content_in_var(B, x);
    if (!c.is_constant()) {
        auto pp = try_divide_exact(B, c);
        if (pp) B = *pp;
    }
    return B.primitive_part();
}

Polynomial poly_gcd(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    if (a.is_constant() || b.is_constant()) return Polynomial::constant(a.nvars(), 1);
    poll_deadline();
    int x = *a.vars().begin();
    if (!b.contains_var(x)) return poly_gcd(content_in_var(a, x), b);
    Polynomial ca = content_in_var(a, x), cb = content_in_var(b, x);
    auto pa = try_divide_exact(a, ca), pb = try_divide_exact(b, cb);
    if (!pa || !pb) return Polynomial::constant(a.nvars(), 1); // defensive
    Polynomial g = gcd_in_var(*pa, *pb, x);
    // certify: PRS similarity can over-shoot when the division check fails
    if (g.degree(x) >= 1 && (!try_divide_exact(*pa, g) || !try_divide_exact(*pb, g)))
        g = Polynomial::constant(a.nvars(), 1);
    return (poly_gcd(ca, cb) * g).primitive_part(true);
}

Polynomial content_in_var(const Polynomial& p, int x) {
    Polynomial c = Polynomial::zero(p.nvars());
    for (const Polynomial& cf : p.coeffs_in(x)) {
        if (cf.is_zero()) continue;
        c = poly_gcd(c, cf);
        if (c.is_constant()) break;
    }
    if (c.is_zero()) return Polynomial::constant(p.nvars(), 1);
    return c.primitive_part(true);
}

Polynomial squarefree_part_in_var(const Polynomial& p, int x) {
    if (p.degree(x) <= 0) return p;
    Polynomial g = gcd_in_var(p, p.derivative(x), x);
    if (g.degree(x) <= 0) return p;
    auto q = try_divide_exact(p, g);
    return q ? *q : p;
}

} // namespace geoineq
