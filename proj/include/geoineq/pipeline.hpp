#ifndef GEOINEQ_PIPELINE_HPP
#define GEOINEQ_PIPELINE_HPP

#include <array>
#include <chrono>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "geoineq/cad.hpp"
#include "geoineq/construction.hpp"
#include "geoineq/groebner.hpp"
#include "geoineq/numeric.hpp"

namespace geoineq {

// Maximal interval with algebraic endpoints; an absent endpoint is infinite.
struct Interval {
    std::optional<RealAlg> lo, hi;
    bool lo_closed = false, hi_closed = false;
};

// Sorted, disjoint, merged (touching intervals coalesced).
struct IntervalSet {
    std::vector<Interval> parts;
    bool empty() const { return parts.empty(); }
    bool contains(const Rational& x) const;
    std::string str() const;
};

// Exact satisfying set of a single-free-variable formula.
IntervalSet formula_to_intervals(const QfFormula1V& f);
IntervalSet interval_union(const IntervalSet& a, const IntervalSet& b);
// Intersection with the open ray (0, +inf).
IntervalSet restrict_positive(const IntervalSet& s);

struct StageTimings {
    long translate = 0, wlog_elim = 0, delinearize = 0, qe = 0, interval = 0, format = 0;
    long total() const { return translate + wlog_elim + delinearize + qe + interval + format; }
    // the six display lines, e.g. "translate: 12 ms"
    std::vector<std::pair<std::string, long>> lines() const;
};

struct PipelineOptions {
    std::chrono::milliseconds timeout{30000};
    int max_cad_vars = 6;
    bool allow_degenerate = false;
    bool skip_groebner = false;
    int jobs = 0;  // 0 = one worker per branch, capped by hardware
    GroebnerBudget groebner;
    std::vector<std::string>* trace = nullptr;
};

struct ComparisonResult {
    enum class Kind { FixedRatio, Range, Inconclusive };
    Kind kind = Kind::Inconclusive;
    RealAlg fixed;                              // FixedRatio
    RealAlg min, max;                           // Range (finite by m > 0 and boundedness;
    bool min_attained = false, max_attained = false;  // unbounded max flagged below)
    bool max_unbounded = false;
    IntervalSet set;                            // Range: the full ratio set
    std::string reason;                         // Inconclusive
    std::string ratio_text;                     // e.g. "k/f" or "c^2/d"
    StageTimings timings;
    std::string pretty;
};

struct ProofResult {
    enum class Verdict { Proved, Disproved, Inconclusive };
    Verdict verdict = Verdict::Inconclusive;
    std::string reason;  // Inconclusive
    StageTimings timings;
    std::string pretty;
};

struct RelationReport {
    double v1 = 0, v2 = 0, ratio = 0;  // numeric phase at the instance
    ComparisonResult symbolic;
};

// Sharp bounds on the balanced ratio q2^e2 / q1^e1 over all admissible
// instances: elimination-ideal fast path (FixedRatio) or CAD range.
ComparisonResult compare(const Construction& c, const std::string& q1, const std::string& q2,
                         const PipelineOptions& opts = {});

// Refutation proof of a polynomial statement over the quantities.
ProofResult prove(const Construction& c, const std::string& statement,
                  const PipelineOptions& opts = {});

// Numeric evaluation at a concrete instance followed by the symbolic compare.
// Throws std::runtime_error("invalid-instance") when the coordinates violate
// the construction's constraints (tolerance 1e-9).
RelationReport relation(const Construction& c, const std::string& q1, const std::string& q2,
                        const std::map<std::string, std::array<double, 2>>& coords,
                        const PipelineOptions& opts = {});

} // namespace geoineq

#endif
