#ifndef GEOINEQ_GROEBNER_HPP
#define GEOINEQ_GROEBNER_HPP

#include <optional>
#include <set>
#include <vector>

#include "geoineq/algebraize.hpp"
#include "geoineq/polynomial.hpp"
#include "geoineq/realalg.hpp"

namespace geoineq {

struct GroebnerBudget {
    long max_pair_reductions = 50000;
    int max_degree = 40;
};

struct GroebnerBasis {
    std::vector<Polynomial> gens;  // reduced; integer primitive, positive lc;
                                   // sorted by leading monomial
    MonomialOrder order;
};

// Full normal form of p modulo basis under ord (every term reduced).
Polynomial normal_form(const Polynomial& p, const std::vector<Polynomial>& basis,
                       const MonomialOrder& ord);

// Reduced Groebner basis via Buchberger with Gebauer-Moller pair pruning.
// Deterministic for fixed input. Throws
// std::runtime_error("groebner-budget-exceeded") at the budget caps.
GroebnerBasis buchberger(const std::vector<Polynomial>& gens, const MonomialOrder& ord,
                         const GroebnerBudget& budget = {});

// Generators of <gens> intersect Q[keep], via a block elimination order.
// Variables outside `keep` defined linearly with a constant coefficient are
// substituted away first (a Gaussian step; the elimination ideal is unchanged).
std::vector<Polynomial> eliminate(const std::vector<Polynomial>& gens, const std::set<int>& keep,
                                  int nvars, const GroebnerBudget& budget = {});

// Fast-path candidates for the ratio m. nullopt when elim is empty (the ideal
// is positive-dimensional; continue to QE). Otherwise the real roots of the
// gcd of the generators, with the geometrically realized root selected by a
// numeric instance of the construction (within 1e-6). Throws
// std::runtime_error("ratio-verification-failed") when no root matches.
std::optional<std::vector<RealAlg>> candidate_ratios(const std::vector<Polynomial>& elim,
                                                     const SemiAlgebraicSystem& s,
                                                     const Construction& c, const QuerySpec& q);

} // namespace geoineq

#endif
