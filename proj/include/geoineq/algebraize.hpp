#ifndef GEOINEQ_ALGEBRAIZE_HPP
#define GEOINEQ_ALGEBRAIZE_HPP

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "geoineq/construction.hpp"
#include "geoineq/polynomial.hpp"
#include "geoineq/upoly.hpp"

namespace geoineq {

enum class Rel { Eq, Neq, Gt, Ge, Lt, Le };

std::string rel_str(Rel r);

// Semi-algebraic translation H = H_e (equalities) U H_i (sign conditions) of a
// construction. Variables are v1..vk in allocation order plus the ratio
// variable m; all polynomials share the same arity nvars (m's slot is
// reserved up front so attaching the query never reindexes).
struct SemiAlgebraicSystem {
    int nvars = 0;
    std::vector<std::string> var_names;
    std::map<std::string, std::array<int, 2>> point_vars;  // label -> (x, y)
    std::map<std::string, int> quantity_vars;              // quantity -> variable
    std::map<std::string, std::array<int, 2>> polygon_trig;  // first generated
        // vertex label -> (cos, sin) variables of its regular polygon
    std::map<int, Rational> pinned;                        // WLOG-substituted variables
    std::vector<Polynomial> he;
    std::vector<std::pair<Polynomial, Rel>> hi;  // Gt/Ge from translation; other
                                                 // relations only via attach_query
    std::optional<int> ratio_var;

    // One atom per line, `poly REL 0`, diffable against golden fixtures.
    std::string dump() const;
};

struct QuerySpec {
    enum class Mode { Compare, Prove };
    Mode mode = Mode::Compare;
    std::string q1, q2;       // Compare
    Polynomial stmt;          // Prove: stmt rel 0, variables = quantity indices
    Rel rel = Rel::Gt;        // Prove relation
    int e1 = 1, e2 = 1;       // Compare balancing exponents, set by attach_query

    static QuerySpec compare(std::string q1, std::string q2);
    // Parse e.g. "a^2+b^2 > c^2/2" over the construction's quantity names.
    static QuerySpec prove(const std::string& text, const Construction& c);
};

struct AlgebraizeOptions {
    bool allow_degenerate = false;  // length positivity w >= 0 instead of w > 0
};

// Translate every element and quantity into polynomial constraints
// (orientation and half-plane atoms for regular polygons, collinearity +
// betweenness for on-segment points, squared length definitions, ...).
SemiAlgebraicSystem algebraize(const Construction& c, const AlgebraizeOptions& opts = {});

// Minimal polynomial of cos(2*pi/n) over Q, 3 <= n <= 16; integer
// coefficients, positive leading coefficient.
UPoly minpoly_cos(int n);

// Pin the first two free points to (0,0) and (1,0). Valid only for
// similarity-invariant queries (both compared quantities homogeneous of a
// common balanced degree); throws std::runtime_error("wlog-unjustified")
// otherwise, or when fewer than two free points exist. Length equalities that
// become w^2 = r^2 with w > 0 are rewritten to w = r.
SemiAlgebraicSystem fix_wlog(const SemiAlgebraicSystem& s, const Construction& c,
                             const QuerySpec* query = nullptr);

// Compare: add m with m*q1^e1 - q2^e2 = 0 (balanced exponents written back
// into q) plus q1 > 0. Prove: append the negated statement for refutation.
// Throws std::runtime_error("degree-balance-failed") when Compare quantities
// cannot be balanced.
SemiAlgebraicSystem attach_query(const SemiAlgebraicSystem& s, QuerySpec& q, const Construction& c);

} // namespace geoineq

#endif
