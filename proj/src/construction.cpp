#include "geoineq/construction.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace geoineq {

bool Construction::has_point(const std::string& label) const {
    return std::find(points.begin(), points.end(), label) != points.end();
}

int Construction::quantity_index(const std::string& name) const {
    for (size_t i = 0; i < quantities.size(); ++i)
        if (quantities[i].name == name) return (int)i;
    return -1;
}

std::vector<std::string> Construction::quantity_names() const {
    std::vector<std::string> names;
    for (const auto& q : quantities) names.push_back(q.name);
    return names;
}

namespace {

struct Stmt {
    int line;
    std::string text;
};

// split into statements on ';' and newline, dropping '#' comments
std::vector<Stmt> split_statements(const std::string& text) {
    std::vector<Stmt> out;
    std::string cur;
    int line = 1, stmt_line = 1;
    bool in_comment = false;
    auto flush = [&] {
        size_t a = cur.find_first_not_of(" \t\r");
        if (a != std::string::npos) {
            size_t b = cur.find_last_not_of(" \t\r");
            out.push_back({stmt_line, cur.substr(a, b - a + 1)});
        }
        cur.clear();
        stmt_line = line;
    };
    for (char ch : text) {
        if (ch == '\n') {
            in_comment = false;
            flush();
            ++line;
            stmt_line = line;
            continue;
        }
        if (in_comment) continue;
        if (ch == '#') {
            in_comment = true;
            continue;
        }
        if (ch == ';') {
            flush();
            continue;
        }
        cur += ch;
    }
    flush();
    return out;
}

std::vector<std::string> tokenize(const std::string& s) {
    std::istringstream is(s);
    std::vector<std::string> toks;
    std::string t;
    while (is >> t) toks.push_back(t);
    return toks;
}

bool valid_label(const std::string& s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isalnum((unsigned char)c) && c != '_') return false;
    return std::isalpha((unsigned char)s[0]) || s[0] == '_';
}

} // namespace

Construction parse_construction(const std::string& text) {
    Construction c;
    auto need_point = [&](int ln, const std::string& label) {
        if (!c.has_point(label)) throw ParseError(ln, "dangling reference to point '" + label + "'");
    };
    auto add_point = [&](int ln, const std::string& label) {
        if (!valid_label(label)) throw ParseError(ln, "invalid label '" + label + "'");
        if (c.has_point(label)) throw ParseError(ln, "duplicate label '" + label + "'");
        c.points.push_back(label);
    };

    for (const Stmt& st : split_statements(text)) {
        auto toks = tokenize(st.text);
        if (toks.empty()) continue;
        const std::string& kw = toks[0];
        const int ln = st.line;
        auto arity = [&](size_t n) {
            if (toks.size() != n) throw ParseError(ln, "'" + kw + "' expects " + std::to_string(n - 1) + " arguments");
        };

        if (kw == "point") {
            arity(2);
            add_point(ln, toks[1]);
            c.elements.push_back({ElemKind::FreePoint, {toks[1]}, {}, 0});
        } else if (kw == "regular_polygon") {
            if (toks.size() < 6 || toks[4] != "->")
                throw ParseError(ln, "expected: regular_polygon A B n -> C ...");
            need_point(ln, toks[1]);
            need_point(ln, toks[2]);
            int n;
            try {
                n = std::stoi(toks[3]);
            } catch (...) {
                throw ParseError(ln, "invalid polygon order '" + toks[3] + "'");
            }
            if (n < 3) throw ParseError(ln, "regular polygon needs n >= 3");
            std::vector<std::string> gen(toks.begin() + 5, toks.end());
            if ((int)gen.size() != n - 2)
                throw ParseError(ln, "regular_polygon with n=" + std::to_string(n) + " must name " +
                                         std::to_string(n - 2) + " generated vertices");
            for (const auto& g : gen) add_point(ln, g);
            c.elements.push_back({ElemKind::RegularPolygon, gen, {toks[1], toks[2]}, n});
        } else if (kw == "on_segment") {
            arity(4);
            need_point(ln, toks[2]);
            need_point(ln, toks[3]);
            add_point(ln, toks[1]);
            c.elements.push_back({ElemKind::PointOnSegment, {toks[1]}, {toks[2], toks[3]}, 0});
        } else if (kw == "midpoint") {
            arity(4);
            need_point(ln, toks[2]);
            need_point(ln, toks[3]);
            add_point(ln, toks[1]);
            c.elements.push_back({ElemKind::Midpoint, {toks[1]}, {toks[2], toks[3]}, 0});
        } else if (kw == "intersect") {
            arity(6);
            for (int i = 2; i <= 5; ++i) need_point(ln, toks[i]);
            add_point(ln, toks[1]);
            c.elements.push_back({ElemKind::LineIntersection, {toks[1]}, {toks[2], toks[3], toks[4], toks[5]}, 0});
        } else if (kw == "circumcenter") {
            arity(5);
            for (int i = 2; i <= 4; ++i) need_point(ln, toks[i]);
            add_point(ln, toks[1]);
            c.elements.push_back({ElemKind::Circumcenter, {toks[1]}, {toks[2], toks[3], toks[4]}, 0});
        } else if (kw == "triangle") {
            arity(4);
            for (int i = 1; i <= 3; ++i) need_point(ln, toks[i]);
            c.elements.push_back({ElemKind::Triangle, {}, {toks[1], toks[2], toks[3]}, 0});
        } else if (kw == "distance") {
            arity(4);
            need_point(ln, toks[2]);
            need_point(ln, toks[3]);
            if (toks[2] == toks[3]) throw ParseError(ln, "degenerate distance on single point '" + toks[2] + "'");
            if (c.quantity_index(toks[1]) >= 0) throw ParseError(ln, "duplicate quantity '" + toks[1] + "'");
            if (!valid_label(toks[1])) throw ParseError(ln, "invalid quantity name '" + toks[1] + "'");
            Quantity q;
            q.name = toks[1];
            q.kind = QtyKind::Distance;
            q.a = toks[2];
            q.b = toks[3];
            c.quantities.push_back(q);
        } else if (kw == "expr") {
            size_t eq = st.text.find('=');
            if (toks.size() < 2 || eq == std::string::npos)
                throw ParseError(ln, "expected: expr NAME = POLY");
            const std::string& name = toks[1];
            if (!valid_label(name)) throw ParseError(ln, "invalid quantity name '" + name + "'");
            if (c.quantity_index(name) >= 0) throw ParseError(ln, "duplicate quantity '" + name + "'");
            Quantity q;
            q.name = name;
            q.kind = QtyKind::Expression;
            try {
                q.expr = Polynomial::parse(st.text.substr(eq + 1), c.quantity_names());
            } catch (const std::exception& e) {
                throw ParseError(ln, std::string("bad expression: ") + e.what());
            }
            c.quantities.push_back(q);
        } else {
            throw ParseError(ln, "unknown element kind '" + kw + "'");
        }
    }
    return c;
}

std::string print_construction(const Construction& c) {
    std::ostringstream os;
    std::vector<std::string> qnames;
    // elements and quantities interleave in their own orders; quantities can
    // only reference earlier quantities, so emitting all elements first is safe
    for (const GeoElement& e : c.elements) {
        switch (e.kind) {
        case ElemKind::FreePoint:
            os << "point " << e.defines[0];
            break;
        case ElemKind::RegularPolygon:
            os << "regular_polygon " << e.refs[0] << " " << e.refs[1] << " " << e.ngon << " ->";
            for (const auto& g : e.defines) os << " " << g;
            break;
        case ElemKind::PointOnSegment:
            os << "on_segment " << e.defines[0] << " " << e.refs[0] << " " << e.refs[1];
            break;
        case ElemKind::Midpoint:
            os << "midpoint " << e.defines[0] << " " << e.refs[0] << " " << e.refs[1];
            break;
        case ElemKind::LineIntersection:
            os << "intersect " << e.defines[0] << " " << e.refs[0] << " " << e.refs[1] << " " << e.refs[2]
               << " " << e.refs[3];
            break;
        case ElemKind::Circumcenter:
            os << "circumcenter " << e.defines[0] << " " << e.refs[0] << " " << e.refs[1] << " " << e.refs[2];
            break;
        case ElemKind::Triangle:
            os << "triangle " << e.refs[0] << " " << e.refs[1] << " " << e.refs[2];
            break;
        }
        os << "\n";
    }
    for (const Quantity& q : c.quantities) {
        if (q.kind == QtyKind::Distance)
            os << "distance " << q.name << " " << q.a << " " << q.b << "\n";
        else
            os << "expr " << q.name << " = " << q.expr.to_string(qnames) << "\n";
        qnames.push_back(q.name);
    }
    return os.str();
}

namespace {

std::optional<int> expr_degree(const Polynomial& expr, const std::vector<std::optional<int>>& deg) {
    std::optional<int> result;
    for (const auto& [e, coeff] : expr.terms()) {
        int d = 0;
        for (size_t v = 0; v < e.size(); ++v) {
            if (e[v] == 0) continue;
            if (!deg[v]) return std::nullopt;  // inhomogeneous ingredient in use
            d += e[v] * *deg[v];
        }
        if (result && *result != d) return std::nullopt;
        result = d;
    }
    return result ? result : std::optional<int>(0);
}

} // namespace

std::optional<int> quantity_degree(const Quantity& q, const Construction& c) {
    if (q.kind == QtyKind::Distance) return 1;
    // degrees of earlier quantities, built up in definition order
    std::vector<std::optional<int>> deg;
    for (const auto& earlier : c.quantities) {
        if (&earlier == &q) break;
        if (earlier.kind == QtyKind::Distance)
            deg.push_back(1);
        else
            deg.push_back(expr_degree(earlier.expr, deg));
    }
    deg.resize(c.quantities.size(), std::nullopt);
    return expr_degree(q.expr, deg);
}

} // namespace geoineq
