#ifndef GEOINEQ_ALGPOINT_HPP
#define GEOINEQ_ALGPOINT_HPP

#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

#include "geoineq/polynomial.hpp"
#include "geoineq/realalg.hpp"

namespace geoineq {

// Sample point: per-variable exact coordinates (rational or algebraic).
using SamplePoint = std::map<int, RealAlg>;

struct UndecidableSample : std::runtime_error {
    UndecidableSample() : std::runtime_error("cad-sample-undecidable") {}
};

// Exact sign of p at the point; every variable of p must be bound.
// Multiple algebraic coordinates are decided by interval refinement with an
// iterated-resultant annihilator certifying the zero case.
int sign_at(const Polynomial& p, const SamplePoint& pt);

struct RootsAbove {
    bool vanishes = false;        // p is identically zero at the point
    std::vector<RealAlg> roots;   // distinct real roots of p(pt, x), increasing
};

// Real roots of p specialized at the point, viewed as univariate in x.
// All variables of p except x must be bound.
RootsAbove roots_above(const Polynomial& p, const SamplePoint& pt, int x);

// Allowed signs for a polynomial at a point (e.g. {pos, zero} encodes >= 0).
struct SignReq {
    Polynomial poly;
    bool neg = false, zero = false, pos = false;
};

// Interval-only decision for the last lifting level: does some real root y of
// q(pt, x) satisfy every sign requirement at (pt, y)? Roots are bracketed by
// certified sign changes of q(pt, .), so no algebraic-number construction is
// needed. Only effective degrees 1 and 2 with interval-certified leading
// coefficient and discriminant are handled; nullopt means undecided (the
// caller falls back to exact lifting).
std::optional<bool> satisfiable_on_sections(const Polynomial& q, SamplePoint pt, int x,
                                            const std::vector<SignReq>& reqs);

} // namespace geoineq

#endif
