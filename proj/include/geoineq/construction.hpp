#ifndef GEOINEQ_CONSTRUCTION_HPP
#define GEOINEQ_CONSTRUCTION_HPP

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "geoineq/polynomial.hpp"

namespace geoineq {

enum class ElemKind {
    FreePoint,
    RegularPolygon,
    PointOnSegment,
    Midpoint,
    LineIntersection,
    Circumcenter,
    Triangle,
};

// One construction statement. `defines` are the point labels introduced by
// the element (empty for Triangle), `refs` the previously defined points it
// depends on. For RegularPolygon, refs = {A, B} and defines lists the n-2
// generated vertices in chain order.
struct GeoElement {
    ElemKind kind;
    std::vector<std::string> defines;
    std::vector<std::string> refs;
    int ngon = 0;
};

enum class QtyKind { Distance, Expression };

struct Quantity {
    std::string name;
    QtyKind kind = QtyKind::Distance;
    std::string a, b;  // Distance endpoints
    Polynomial expr;   // Expression: variables indexed by quantity position
};

struct Construction {
    std::vector<GeoElement> elements;
    std::vector<Quantity> quantities;
    std::vector<std::string> points;  // all point labels, definition order

    bool has_point(const std::string& label) const;
    int quantity_index(const std::string& name) const;  // -1 when absent
    std::vector<std::string> quantity_names() const;
};

struct ParseError : std::runtime_error {
    int line;
    ParseError(int line_, const std::string& what_)
        : std::runtime_error("line " + std::to_string(line_) + ": " + what_), line(line_) {}
};

// Parse the line-oriented DSL (statements separated by ';' or newline,
// '#' comments). Rejects forward/dangling references, duplicate labels,
// regular polygons with n < 3, and degenerate distances.
Construction parse_construction(const std::string& text);

// Canonical text form; parse(print(c)) reproduces c.
std::string print_construction(const Construction& c);

// Homogeneous length degree of a quantity (Distance -> 1); nullopt when the
// expression mixes monomials of different length degrees.
std::optional<int> quantity_degree(const Quantity& q, const Construction& c);

} // namespace geoineq

#endif
