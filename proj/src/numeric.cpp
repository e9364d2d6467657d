#include "geoineq/numeric.hpp"

#include <cmath>

namespace geoineq {

namespace {

using Pt = std::array<double, 2>;

double cross(const Pt& u, const Pt& v) { return u[0] * v[1] - u[1] * v[0]; }
Pt sub(const Pt& a, const Pt& b) { return {a[0] - b[0], a[1] - b[1]}; }
double norm(const Pt& u) { return std::hypot(u[0], u[1]); }

} // namespace

std::optional<Instance> random_instance(const Construction& c, std::mt19937& rng,
                                        bool pin_first_two) {
    std::uniform_real_distribution<double> coord(-3.0, 3.0), unit(0.0, 1.0);
    Instance inst;
    int free_seen = 0;
    for (const auto& e : c.elements) {
        switch (e.kind) {
        case ElemKind::FreePoint: {
            Pt p;
            if (pin_first_two && free_seen == 0)
                p = {0.0, 0.0};
            else if (pin_first_two && free_seen == 1)
                p = {1.0, 0.0};
            else
                p = {coord(rng), coord(rng)};
            ++free_seen;
            inst.pts[e.defines[0]] = p;
            break;
        }
        case ElemKind::RegularPolygon: {
            Pt a = inst.pts.at(e.refs[0]), b = inst.pts.at(e.refs[1]);
            if (norm(sub(b, a)) < 1e-6) return std::nullopt;
            double th = 2 * M_PI / e.ngon, cs = std::cos(th), sn = std::sin(th);
            Pt prev2 = a, prev = b;
            for (const auto& g : e.defines) {
                Pt d = sub(prev, prev2);
                Pt nxt = {prev[0] + cs * d[0] - sn * d[1], prev[1] + sn * d[0] + cs * d[1]};
                inst.pts[g] = nxt;
                prev2 = prev;
                prev = nxt;
            }
            break;
        }
        case ElemKind::PointOnSegment: {
            Pt p = inst.pts.at(e.refs[0]), q = inst.pts.at(e.refs[1]);
            double t = unit(rng);
            inst.pts[e.defines[0]] = {p[0] + t * (q[0] - p[0]), p[1] + t * (q[1] - p[1])};
            break;
        }
        case ElemKind::Midpoint: {
            Pt p = inst.pts.at(e.refs[0]), q = inst.pts.at(e.refs[1]);
            inst.pts[e.defines[0]] = {(p[0] + q[0]) / 2, (p[1] + q[1]) / 2};
            break;
        }
        case ElemKind::LineIntersection: {
            Pt p1 = inst.pts.at(e.refs[0]), p2 = inst.pts.at(e.refs[1]);
            Pt p3 = inst.pts.at(e.refs[2]), p4 = inst.pts.at(e.refs[3]);
            Pt d1 = sub(p2, p1), d2 = sub(p4, p3);
            double det = cross(d1, d2);
            if (std::abs(det) < 1e-9) return std::nullopt;
            double t = cross(sub(p3, p1), d2) / det;
            inst.pts[e.defines[0]] = {p1[0] + t * d1[0], p1[1] + t * d1[1]};
            break;
        }
        case ElemKind::Circumcenter: {
            Pt a = inst.pts.at(e.refs[0]), b = inst.pts.at(e.refs[1]), cc = inst.pts.at(e.refs[2]);
            // perpendicular bisector intersection, 2x2 linear solve
            double ax = b[0] - a[0], ay = b[1] - a[1];
            double bx = cc[0] - b[0], by = cc[1] - b[1];
            double det = 2 * (ax * by - ay * bx);
            if (std::abs(det) < 1e-9) return std::nullopt;
            double r1 = (b[0] * b[0] - a[0] * a[0] + b[1] * b[1] - a[1] * a[1]);
            double r2 = (cc[0] * cc[0] - b[0] * b[0] + cc[1] * cc[1] - b[1] * b[1]);
            double ox = (r1 * by - r2 * ay) / det;
            double oy = (ax * r2 - bx * r1) / det;
            inst.pts[e.defines[0]] = {ox, oy};
            break;
        }
        case ElemKind::Triangle: {
            Pt a = inst.pts.at(e.refs[0]), b = inst.pts.at(e.refs[1]), cc = inst.pts.at(e.refs[2]);
            if (cross(sub(b, a), sub(cc, a)) < 1e-6) return std::nullopt;  // need ccw
            break;
        }
        }
    }
    for (const auto& q : c.quantities) {
        if (q.kind == QtyKind::Distance) {
            double d = norm(sub(inst.pts.at(q.b), inst.pts.at(q.a)));
            if (d < 1e-9) return std::nullopt;  // strict positivity by default
            inst.qty[q.name] = d;
        } else {
            std::vector<double> args;
            for (const auto& earlier : c.quantities) {
                if (earlier.name == q.name) break;
                args.push_back(inst.qty.at(earlier.name));
            }
            args.resize(q.expr.nvars(), 0.0);
            inst.qty[q.name] = q.expr.eval_double(args);
        }
    }
    return inst;
}

std::vector<double> instance_vars(const Instance& inst, const SemiAlgebraicSystem& s,
                                  const Construction& c, const QuerySpec* query) {
    std::vector<double> v(s.nvars, 0.0);
    for (const auto& [label, xy] : s.point_vars) {
        v[xy[0]] = inst.pts.at(label)[0];
        v[xy[1]] = inst.pts.at(label)[1];
    }
    for (const auto& e : c.elements) {
        if (e.kind != ElemKind::RegularPolygon) continue;
        auto it = s.polygon_trig.find(e.defines[0]);
        if (it == s.polygon_trig.end()) continue;
        double th = 2 * M_PI / e.ngon;
        v[it->second[0]] = std::cos(th);
        v[it->second[1]] = std::sin(th);
    }
    for (const auto& [name, var] : s.quantity_vars) v[var] = inst.qty.at(name);
    if (query && query->mode == QuerySpec::Mode::Compare && s.ratio_var)
        v[*s.ratio_var] = instance_ratio(inst, *query);
    return v;
}

Instance instance_from_coords(const Construction& c,
                              const std::map<std::string, std::array<double, 2>>& coords) {
    auto fail = []() -> Pt { throw std::runtime_error("invalid-instance"); };
    auto given = [&](const std::string& label) -> Pt {
        auto it = coords.find(label);
        return it != coords.end() ? it->second : fail();
    };
    Instance inst;
    for (const auto& e : c.elements) {
        switch (e.kind) {
        case ElemKind::FreePoint:
        case ElemKind::PointOnSegment:
            inst.pts[e.defines[0]] = given(e.defines[0]);
            break;
        case ElemKind::RegularPolygon: {
            Pt a = inst.pts.at(e.refs[0]), b = inst.pts.at(e.refs[1]);
            if (norm(sub(b, a)) < 1e-9) fail();
            double th = 2 * M_PI / e.ngon, cs = std::cos(th), sn = std::sin(th);
            Pt prev2 = a, prev = b;
            for (const auto& g : e.defines) {
                Pt d = sub(prev, prev2);
                Pt nxt = {prev[0] + cs * d[0] - sn * d[1], prev[1] + sn * d[0] + cs * d[1]};
                inst.pts[g] = nxt;
                prev2 = prev;
                prev = nxt;
            }
            break;
        }
        case ElemKind::Midpoint: {
            Pt p = inst.pts.at(e.refs[0]), q = inst.pts.at(e.refs[1]);
            inst.pts[e.defines[0]] = {(p[0] + q[0]) / 2, (p[1] + q[1]) / 2};
            break;
        }
        case ElemKind::LineIntersection: {
            Pt p1 = inst.pts.at(e.refs[0]), p2 = inst.pts.at(e.refs[1]);
            Pt p3 = inst.pts.at(e.refs[2]), p4 = inst.pts.at(e.refs[3]);
            Pt d1 = sub(p2, p1), d2 = sub(p4, p3);
            double det = cross(d1, d2);
            if (std::abs(det) < 1e-12) fail();
            double t = cross(sub(p3, p1), d2) / det;
            inst.pts[e.defines[0]] = {p1[0] + t * d1[0], p1[1] + t * d1[1]};
            break;
        }
        case ElemKind::Circumcenter: {
            Pt a = inst.pts.at(e.refs[0]), b = inst.pts.at(e.refs[1]), cc = inst.pts.at(e.refs[2]);
            double ax = b[0] - a[0], ay = b[1] - a[1];
            double bx = cc[0] - b[0], by = cc[1] - b[1];
            double det = 2 * (ax * by - ay * bx);
            if (std::abs(det) < 1e-12) fail();
            double r1 = (b[0] * b[0] - a[0] * a[0] + b[1] * b[1] - a[1] * a[1]);
            double r2 = (cc[0] * cc[0] - b[0] * b[0] + cc[1] * cc[1] - b[1] * b[1]);
            inst.pts[e.defines[0]] = {(r1 * by - r2 * ay) / det, (ax * r2 - bx * r1) / det};
            break;
        }
        case ElemKind::Triangle:
            for (const auto& label : e.refs)
                if (!inst.pts.count(label)) inst.pts[label] = given(label);
            break;
        }
    }
    for (const auto& q : c.quantities) {
        if (q.kind == QtyKind::Distance) {
            inst.qty[q.name] = norm(sub(inst.pts.at(q.b), inst.pts.at(q.a)));
        } else {
            std::vector<double> args;
            for (const auto& earlier : c.quantities) {
                if (earlier.name == q.name) break;
                args.push_back(inst.qty.at(earlier.name));
            }
            args.resize(q.expr.nvars(), 0.0);
            inst.qty[q.name] = q.expr.eval_double(args);
        }
    }
    return inst;
}

double instance_ratio(const Instance& inst, const QuerySpec& q) {
    double a = std::pow(inst.qty.at(q.q1), q.e1);
    double b = std::pow(inst.qty.at(q.q2), q.e2);
    return b / a;
}

} // namespace geoineq
