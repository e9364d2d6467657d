#include "geoineq/algebraize.hpp"

#include <numeric>
#include <sstream>
#include <stdexcept>

namespace geoineq {

std::string rel_str(Rel r) {
    switch (r) {
    case Rel::Eq: return "=";
    case Rel::Neq: return "!=";
    case Rel::Gt: return ">";
    case Rel::Ge: return ">=";
    case Rel::Lt: return "<";
    case Rel::Le: return "<=";
    }
    return "?";
}

std::string SemiAlgebraicSystem::dump() const {
    std::ostringstream os;
    for (const auto& p : he) os << p.to_string(var_names) << " = 0\n";
    for (const auto& [p, r] : hi) os << p.to_string(var_names) << " " << rel_str(r) << " 0\n";
    return os.str();
}

QuerySpec QuerySpec::compare(std::string q1, std::string q2) {
    QuerySpec q;
    q.mode = Mode::Compare;
    q.q1 = std::move(q1);
    q.q2 = std::move(q2);
    return q;
}

QuerySpec QuerySpec::prove(const std::string& text, const Construction& c) {
    static const std::vector<std::pair<std::string, Rel>> ops = {
        {">=", Rel::Ge}, {"<=", Rel::Le}, {"!=", Rel::Neq},
        {">", Rel::Gt},  {"<", Rel::Lt}, {"=", Rel::Eq},
    };
    for (const auto& [op, rel] : ops) {
        size_t pos = text.find(op);
        if (pos == std::string::npos) continue;
        QuerySpec q;
        q.mode = Mode::Prove;
        q.rel = rel;
        auto names = c.quantity_names();
        Polynomial lhs = Polynomial::parse(text.substr(0, pos), names);
        Polynomial rhs = Polynomial::parse(text.substr(pos + op.size()), names);
        q.stmt = lhs - rhs;
        return q;
    }
    throw std::runtime_error("statement has no relation operator: " + text);
}

namespace {

int count_vars(const Construction& c) {
    int n = 0;
    for (const auto& e : c.elements) {
        switch (e.kind) {
        case ElemKind::FreePoint: n += 2; break;
        case ElemKind::RegularPolygon: n += 2 + 2 * (e.ngon - 2); break;
        case ElemKind::Triangle: break;
        default: n += 2; break;
        }
    }
    n += (int)c.quantities.size();
    return n + 1;  // reserve the ratio variable slot
}

struct Translator {
    SemiAlgebraicSystem s;
    const AlgebraizeOptions& opts;
    int next = 0;

    explicit Translator(const Construction& c, const AlgebraizeOptions& o) : opts(o) {
        s.nvars = count_vars(c);
        s.var_names.resize(s.nvars);
        for (int i = 0; i + 1 < s.nvars; ++i) s.var_names[i] = "v" + std::to_string(i + 1);
        s.var_names[s.nvars - 1] = "m";
    }

    int fresh() { return next++; }
    void add_point(const std::string& label) {
        int x = fresh(), y = fresh();
        s.point_vars[label] = {x, y};
    }
    Polynomial var(int v) const { return Polynomial::variable(s.nvars, v); }
    Polynomial X(const std::string& p) const { return var(s.point_vars.at(p)[0]); }
    Polynomial Y(const std::string& p) const { return var(s.point_vars.at(p)[1]); }
    // cross product (B-A) x (C-A): positive when ABC is counterclockwise
    Polynomial orient(const std::string& a, const std::string& b, const std::string& c) const {
        return (X(b) - X(a)) * (Y(c) - Y(a)) - (Y(b) - Y(a)) * (X(c) - X(a));
    }
    Polynomial dist2(const std::string& p, const std::string& q) const {
        return (X(q) - X(p)) * (X(q) - X(p)) + (Y(q) - Y(p)) * (Y(q) - Y(p));
    }

    void element(const GeoElement& e) {
        switch (e.kind) {
        case ElemKind::FreePoint:
            add_point(e.defines[0]);
            break;
        case ElemKind::RegularPolygon: {
            int cv = fresh(), sv = fresh();
            s.polygon_trig[e.defines[0]] = {cv, sv};
            for (const auto& g : e.defines) add_point(g);
            Polynomial c = var(cv), sn = var(sv);
            UPoly minpoly = minpoly_cos(e.ngon);
            s.he.push_back(minpoly.to_polynomial(s.nvars, cv));
            s.he.push_back(c * c + sn * sn - Polynomial::constant(s.nvars, 1));
            // vertex chain V1=A, V2=B, V_{k+1} = V_k + Rot(c,s)(V_k - V_{k-1})
            std::vector<std::string> verts = {e.refs[0], e.refs[1]};
            verts.insert(verts.end(), e.defines.begin(), e.defines.end());
            for (size_t k = 2; k < verts.size(); ++k) {
                Polynomial dx = X(verts[k - 1]) - X(verts[k - 2]);
                Polynomial dy = Y(verts[k - 1]) - Y(verts[k - 2]);
                s.he.push_back(-X(verts[k]) + X(verts[k - 1]) + c * dx - sn * dy);
                s.he.push_back(-Y(verts[k]) + Y(verts[k - 1]) + sn * dx + c * dy);
            }
            // C in the upper half-plane of AB, and in the right half-plane of
            // the perpendicular to AB through B
            s.hi.emplace_back(orient(e.refs[0], e.refs[1], verts[2]), Rel::Gt);
            // the perpendicular half-plane atom selects cos(2*pi/n) among the
            // minimal polynomial's roots; with a linear minpoly the cosine is
            // already pinned and the atom would be wrong for n = 3, 4
            if (minpoly.degree() > 1) {
                Polynomial right = (X(verts[2]) - X(e.refs[1])) * (X(e.refs[1]) - X(e.refs[0])) +
                                   (Y(verts[2]) - Y(e.refs[1])) * (Y(e.refs[1]) - Y(e.refs[0]));
                s.hi.emplace_back(right, Rel::Gt);
            }
            break;
        }
        case ElemKind::PointOnSegment: {
            add_point(e.defines[0]);
            const std::string &f = e.defines[0], &p = e.refs[0], &q = e.refs[1];
            s.he.push_back(orient(p, q, f));  // collinear: det(Q-P, F-P) = 0
            Polynomial between = (X(f) - X(p)) * (X(q) - X(f)) + (Y(f) - Y(p)) * (Y(q) - Y(f));
            s.hi.emplace_back(between, Rel::Ge);
            break;
        }
        case ElemKind::Midpoint: {
            add_point(e.defines[0]);
            const std::string& mlabel = e.defines[0];
            s.he.push_back(X(mlabel) * Rational(2) - X(e.refs[0]) - X(e.refs[1]));
            s.he.push_back(Y(mlabel) * Rational(2) - Y(e.refs[0]) - Y(e.refs[1]));
            break;
        }
        case ElemKind::LineIntersection:
            add_point(e.defines[0]);
            s.he.push_back(orient(e.refs[0], e.refs[1], e.defines[0]));
            s.he.push_back(orient(e.refs[2], e.refs[3], e.defines[0]));
            break;
        case ElemKind::Circumcenter: {
            add_point(e.defines[0]);
            const std::string& o = e.defines[0];
            s.he.push_back(dist2(o, e.refs[0]) - dist2(o, e.refs[1]));
            s.he.push_back(dist2(o, e.refs[1]) - dist2(o, e.refs[2]));
            break;
        }
        case ElemKind::Triangle:
            s.hi.emplace_back(orient(e.refs[0], e.refs[1], e.refs[2]), Rel::Gt);
            break;
        }
    }

    void quantity(const Quantity& q, const Construction& c) {
        int w = fresh();
        s.quantity_vars[q.name] = w;
        if (q.kind == QtyKind::Distance) {
            s.he.push_back(var(w) * var(w) - dist2(q.a, q.b));
            s.hi.emplace_back(var(w), opts.allow_degenerate ? Rel::Ge : Rel::Gt);
        } else {
            // w = expr, expressed over the earlier quantities' variables
            Polynomial expr(s.nvars);
            for (const auto& [exps, coeff] : q.expr.terms()) {
                Exps mapped(s.nvars, 0);
                for (size_t i = 0; i < exps.size(); ++i)
                    if (exps[i] > 0) mapped[s.quantity_vars.at(c.quantities[i].name)] = exps[i];
                expr.add_term(mapped, coeff);
            }
            s.he.push_back(var(w) - expr);
        }
    }
};

} // namespace

SemiAlgebraicSystem algebraize(const Construction& c, const AlgebraizeOptions& opts) {
    Translator t(c, opts);
    for (const auto& e : c.elements) t.element(e);
    for (const auto& q : c.quantities) t.quantity(q, c);
    return std::move(t.s);
}

namespace {

UPoly minpoly_cos_any(int n) {
    if (n == 1) return UPoly({Rational(-1), Rational(1)});  // x - 1
    if (n == 2) return UPoly({Rational(1), Rational(1)});   // x + 1
    // Chebyshev T_n; cos(2*pi*k/n) are the roots of T_n - 1
    UPoly prev = UPoly::constant(Rational(1));
    UPoly cur({Rational(0), Rational(1)});
    UPoly twox({Rational(0), Rational(2)});
    for (int i = 1; i < n; ++i) {
        UPoly nxt = twox * cur - prev;
        prev = cur;
        cur = nxt;
    }
    UPoly p = squarefree_part(cur - UPoly::constant(Rational(1)));
    for (int d = 1; d < n; ++d) {
        if (n % d != 0) continue;
        auto [quot, rem] = upoly_divmod(p, minpoly_cos_any(d));
        if (!rem.is_zero()) throw std::logic_error("minpoly_cos: inexact division");
        p = quot;
    }
    return p.primitive();
}

} // namespace

UPoly minpoly_cos(int n) {
    if (n < 3 || n > 16) throw std::runtime_error("minpoly_cos: n out of supported range [3,16]");
    return minpoly_cos_any(n);
}

namespace {

// Homogeneity of the query under scaling, justifying the full (0,0)/(1,0) pin.
bool query_similarity_invariant(const QuerySpec& q, const Construction& c) {
    if (q.mode == QuerySpec::Mode::Compare) {
        int i1 = c.quantity_index(q.q1), i2 = c.quantity_index(q.q2);
        if (i1 < 0 || i2 < 0) return false;
        auto d1 = quantity_degree(c.quantities[i1], c);
        auto d2 = quantity_degree(c.quantities[i2], c);
        return d1 && d2 && *d1 > 0 && *d2 > 0;
    }
    // Prove: every monomial of the statement must have the same length degree
    std::optional<int> common;
    for (const auto& [exps, coeff] : q.stmt.terms()) {
        int d = 0;
        for (size_t i = 0; i < exps.size(); ++i) {
            if (exps[i] == 0) continue;
            auto qd = quantity_degree(c.quantities[i], c);
            if (!qd) return false;
            d += exps[i] * *qd;
        }
        if (common && *common != d) return false;
        common = d;
    }
    return true;
}

bool rational_sqrt(const Rational& r, Rational& out) {
    if (r < 0) return false;
    Integer num = r.get_num(), den = r.get_den();
    if (!mpz_perfect_square_p(num.get_mpz_t()) || !mpz_perfect_square_p(den.get_mpz_t())) return false;
    Integer sn, sd;
    mpz_sqrt(sn.get_mpz_t(), num.get_mpz_t());
    mpz_sqrt(sd.get_mpz_t(), den.get_mpz_t());
    out = make_rational(sn, sd);
    return true;
}

} // namespace

SemiAlgebraicSystem fix_wlog(const SemiAlgebraicSystem& s, const Construction& c, const QuerySpec* query) {
    // the two earliest free points get pinned
    std::vector<std::string> free_pts;
    for (const auto& e : c.elements)
        if (e.kind == ElemKind::FreePoint) free_pts.push_back(e.defines[0]);
    if (free_pts.size() < 2) throw std::runtime_error("wlog-unjustified");
    if (query && !query_similarity_invariant(*query, c)) throw std::runtime_error("wlog-unjustified");

    SemiAlgebraicSystem out = s;
    auto a = s.point_vars.at(free_pts[0]);
    auto b = s.point_vars.at(free_pts[1]);
    out.pinned[a[0]] = Rational(0);
    out.pinned[a[1]] = Rational(0);
    out.pinned[b[0]] = Rational(1);
    out.pinned[b[1]] = Rational(0);

    auto pin = [&](const Polynomial& p) {
        Polynomial q = p;
        for (const auto& [v, val] : out.pinned) q = q.subst_rational(v, val);
        return q;
    };
    out.he.clear();
    for (const auto& p : s.he) {
        Polynomial q = pin(p);
        if (q.is_constant()) {
            if (q.constant_value() != 0) throw std::runtime_error("wlog-contradiction");
            continue;
        }
        out.he.push_back(q);
    }
    out.hi.clear();
    for (const auto& [p, r] : s.hi) {
        Polynomial q = pin(p);
        if (q.is_constant()) {
            int sg = sign_of(q.constant_value());
            bool ok = (r == Rel::Gt) ? sg > 0 : sg >= 0;
            if (!ok) throw std::runtime_error("wlog-contradiction");
            continue;
        }
        out.hi.emplace_back(q, r);
    }

    // length definitions that collapsed to a*w^2 - b = 0 with w > 0 and b/a a
    // rational square become linear: w - sqrt(b/a) = 0
    for (auto& p : out.he) {
        auto vars = p.vars();
        if (vars.size() != 1) continue;
        int w = *vars.begin();
        if (p.degree(w) != 2 || !p.coeff_of(w, 1).is_zero()) continue;
        bool positive = false;
        for (const auto& [q, r] : out.hi)
            if (r == Rel::Gt && q == Polynomial::variable(s.nvars, w)) positive = true;
        if (!positive) continue;
        Rational a2 = p.coeff_of(w, 2).constant_value();
        Rational b0 = -p.coeff_of(w, 0).constant_value();
        Rational root;
        if (a2 != 0 && rational_sqrt(Rational(b0 / a2), root) && root > 0)
            p = Polynomial::variable(s.nvars, w) - Polynomial::constant(s.nvars, root);
    }
    return out;
}

SemiAlgebraicSystem attach_query(const SemiAlgebraicSystem& s, QuerySpec& q, const Construction& c) {
    SemiAlgebraicSystem out = s;
    if (q.mode == QuerySpec::Mode::Compare) {
        int i1 = c.quantity_index(q.q1), i2 = c.quantity_index(q.q2);
        if (i1 < 0 || i2 < 0) throw std::runtime_error("unknown quantity in query");
        auto d1 = quantity_degree(c.quantities[i1], c);
        auto d2 = quantity_degree(c.quantities[i2], c);
        if (!d1 || !d2 || *d1 <= 0 || *d2 <= 0) throw std::runtime_error("degree-balance-failed");
        int g = std::gcd(*d1, *d2);
        q.e1 = *d2 / g;
        q.e2 = *d1 / g;
        int m = s.nvars - 1;
        out.ratio_var = m;
        Polynomial Q1 = Polynomial::variable(s.nvars, s.quantity_vars.at(q.q1));
        Polynomial Q2 = Polynomial::variable(s.nvars, s.quantity_vars.at(q.q2));
        out.he.push_back(Polynomial::variable(s.nvars, m) * Q1.pow((unsigned)q.e1) - Q2.pow((unsigned)q.e2));
        std::pair<Polynomial, Rel> pos{Q1, Rel::Gt};
        bool present = false;
        for (const auto& atom : out.hi)
            if (atom == pos) present = true;
        if (!present) out.hi.push_back(pos);
        return out;
    }
    // Prove: remap the statement onto system variables and append its negation
    Polynomial stmt(s.nvars);
    for (const auto& [exps, coeff] : q.stmt.terms()) {
        Exps mapped(s.nvars, 0);
        for (size_t i = 0; i < exps.size(); ++i)
            if (exps[i] > 0) mapped[s.quantity_vars.at(c.quantities[i].name)] = exps[i];
        stmt.add_term(mapped, coeff);
    }
    switch (q.rel) {
    case Rel::Gt: out.hi.emplace_back(-stmt, Rel::Ge); break;
    case Rel::Ge: out.hi.emplace_back(-stmt, Rel::Gt); break;
    case Rel::Lt: out.hi.emplace_back(stmt, Rel::Ge); break;
    case Rel::Le: out.hi.emplace_back(stmt, Rel::Gt); break;
    case Rel::Eq: out.hi.emplace_back(stmt, Rel::Neq); break;
    case Rel::Neq: out.he.push_back(stmt); break;
    }
    return out;
}

} // namespace geoineq
