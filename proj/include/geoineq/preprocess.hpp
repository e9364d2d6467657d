#ifndef GEOINEQ_PREPROCESS_HPP
#define GEOINEQ_PREPROCESS_HPP

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "geoineq/algebraize.hpp"
#include "geoineq/groebner.hpp"
#include "geoineq/polynomial.hpp"

namespace geoineq {

struct Atom {
    Polynomial poly;
    Rel rel;
    bool operator==(const Atom& o) const { return rel == o.rel && poly == o.poly; }
};

// Record of an eliminated variable: var = num / den (den constant 1 for plain
// rational or polynomial substitutions). Lets tests and callers lift a
// solution of the reduced problem back to the original variables.
struct Substitution {
    int var;
    Polynomial num, den;
};

// Existentially quantified conjunction over `exist`, with at most one free
// variable (the ratio m). is_false marks the contradiction sentinel.
struct Conjunction {
    std::set<int> exist;
    std::vector<Atom> atoms;
    std::optional<int> free_var;
    bool is_false = false;
    std::vector<Substitution> subst_log;

    static Conjunction falsum();
    std::string dump(const std::vector<std::string>& names) const;
};

struct DisjunctiveProblem {
    std::vector<Conjunction> branches;
};

// Equisatisfiable cleanup: constant and duplicate atoms removed, existential
// variables fixed to a rational by a linear atom substituted away, single-
// variable linear bounds propagated; contradictions collapse to falsum.
Conjunction simplify_quick(Conjunction c);

// Substitute away variables defined by total-degree-1 equalities. Unprotected
// variables are eliminated and their defining equation dropped; protected
// variables are substituted only when fixed to a rational constant, keeping
// the equation. `log`, when given, records the eliminations.
std::vector<Polynomial> delinearize(std::vector<Polynomial> he, const std::set<int>& protect,
                                    std::vector<Substitution>* log = nullptr);

// For an existential variable x occurring only with even exponents outside
// its own single-term sign atoms, substitute u = x^2 (degrees halved):
//   exists x (phi(x^2) /\ x > 0)  <->  exists u (phi(u) /\ u > 0)
//   exists x  phi(x^2)            <->  exists u (phi(u) /\ u >= 0)
// Applied to fixpoint; the free variable is never touched. Equisatisfiable
// over the existential block but not solution-preserving, so nothing is
// recorded in the substitution log.
Conjunction reduce_even_powers(Conjunction c);

// Replace the equalities by a reduced Groebner basis of their ideal and every
// other atom by its normal form modulo that basis. Sound on the variety of
// the equalities (which stay in the conjunction), and caps the degrees of
// variables pinned by low-degree equations. 1 in the ideal collapses to
// falsum. On "groebner-budget-exceeded" the conjunction is returned
// unchanged.
Conjunction groebner_reduce(Conjunction c, const GroebnerBudget& budget = {});

// Remove equalities implied by the remaining ones: an equality in the ideal
// generated by the others (certified by a zero normal form against their
// Groebner basis) vanishes wherever they do, so the atom is redundant.
// Shrinks the polynomial set handed to quantifier elimination.
Conjunction drop_implied_equalities(Conjunction c, const GroebnerBudget& budget = {});

// qfr-style splitting: for an equality c(y)*x + r(y) = 0 linear in an
// existential x, either substitute x := -r/c (branch c != 0; inequalities
// cleared by even powers of c) or branch into c = 0 /\ r = 0. Constant c
// substitutes without splitting. Throws
// std::runtime_error("case-split-budget") beyond branch_cap branches.
DisjunctiveProblem case_split(const Conjunction& c, int branch_cap = 64);

} // namespace geoineq

#endif
