#ifndef GEOINEQ_CAD_HPP
#define GEOINEQ_CAD_HPP

#include <chrono>
#include <optional>
#include <vector>

#include "geoineq/algpoint.hpp"
#include "geoineq/preprocess.hpp"

namespace geoineq {

struct CadTrace {
    std::vector<size_t> level_poly_counts;  // per level, innermost first
    long cells_visited = 0;
};

struct CadOptions {
    int max_cad_vars = 6;
    std::optional<std::chrono::steady_clock::time_point> deadline;
    CadTrace* trace = nullptr;
};

// Cell decomposition of the free-variable axis with truth flags:
// truth[2i] is the sector before roots[i], truth[2i+1] the section at
// roots[i], truth.back() the unbounded sector on the right.
struct QfFormula1V {
    std::vector<RealAlg> roots;
    std::vector<bool> truth;

    static QfFormula1V verum() { return {{}, {true}}; }
    static QfFormula1V falsum() { return {{}, {false}}; }
    bool never_true() const;
    bool holds_at(const Rational& m) const;
};

// Elimination order, base (projected-to-last) variable first: the free
// variable if present, then existentials by lowest max-degree, fewest
// occurrences, then id.
std::vector<int> choose_order(const Conjunction& c);

// levels[k] holds the level-(k+1) polynomials: those whose variables all lie
// in order[0..k], square-free, primitive, pairwise distinct. eq[k] flags the
// equational ones: polynomials that vanish at every solution of the
// conjunction (equality atoms and resultants of two equational constraints).
struct ProjectionSet {
    std::vector<std::vector<Polynomial>> levels;
    std::vector<std::vector<char>> eq;
};

// Reduced Collins-style projection: coefficients, discriminant chains over
// the reducta (stopping at a constant leading coefficient) and pairwise
// resultants. When `is_eq` marks a level polynomial as an equational
// constraint of the conjunction, that level projects only the pivot's chains
// and its resultants against the other polynomials (the conjunction is false
// off the pivot's sections). Throws std::runtime_error("cad-dimension-cap")
// when the order exceeds max_cad_vars.
ProjectionSet project(const std::vector<Polynomial>& polys, const std::vector<int>& order,
                      const CadOptions& opts = {}, const std::vector<char>* is_eq = nullptr);

// { m : exists existentials. c } as a sign-invariant cell decomposition of
// the m-axis. Requires c.free_var. Errors: "cad-dimension-cap", "timeout",
// UndecidableSample ("cad-sample-undecidable").
QfFormula1V qe_exists(const Conjunction& c, const CadOptions& opts = {});

// Satisfiability of a conjunction with no free variable (Prove refutations).
bool qe_decide(const Conjunction& c, const CadOptions& opts = {});

} // namespace geoineq

#endif
