#include "geoineq/preprocess.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace geoineq {

Conjunction Conjunction::falsum() {
    Conjunction c;
    c.is_false = true;
    return c;
}

std::string Conjunction::dump(const std::vector<std::string>& names) const {
    if (is_false) return "false";
    std::ostringstream os;
    if (!exist.empty()) {
        os << "exists";
        for (int v : exist) os << " " << names[v];
        os << " ";
    }
    os << "[ ";
    for (size_t i = 0; i < atoms.size(); ++i) {
        if (i) os << " /\\ ";
        os << atoms[i].poly.to_string(names) << " " << rel_str(atoms[i].rel) << " 0";
    }
    os << " ]";
    return os.str();
}

namespace {

// Scale by a positive rational so coefficients are integer with content 1;
// the sign is preserved (safe for every relation).
Polynomial scale_positive(const Polynomial& p) {
    if (p.is_zero()) return p;
    Polynomial prim = p.primitive_part(true);
    // primitive_part may flip the sign; undo that if it did
    for (const auto& [e, c] : p.terms()) {
        Rational pc = prim.terms().count(e) ? prim.terms().at(e) : Rational(0);
        if (sign_of(c) != sign_of(pc)) return -prim;
        break;
    }
    return prim;
}

Atom normalize_atom(Atom a) {
    if (a.rel == Rel::Lt) {
        a.poly = -a.poly;
        a.rel = Rel::Gt;
    } else if (a.rel == Rel::Le) {
        a.poly = -a.poly;
        a.rel = Rel::Ge;
    }
    if (a.rel == Rel::Eq || a.rel == Rel::Neq)
        a.poly = a.poly.primitive_part(true);
    else
        a.poly = scale_positive(a.poly);
    return a;
}

// truth of "sign rel 0"
bool const_holds(int sg, Rel r) {
    switch (r) {
    case Rel::Eq: return sg == 0;
    case Rel::Neq: return sg != 0;
    case Rel::Gt: return sg > 0;
    case Rel::Ge: return sg >= 0;
    case Rel::Lt: return sg < 0;
    case Rel::Le: return sg <= 0;
    }
    return false;
}

struct VarBounds {
    std::optional<Rational> lo, hi;
    bool lo_strict = false, hi_strict = false;

    bool add_lower(const Rational& v, bool strict) {
        if (!lo || v > *lo || (v == *lo && strict)) {
            lo = v;
            lo_strict = strict;
        }
        return !empty();
    }
    bool add_upper(const Rational& v, bool strict) {
        if (!hi || v < *hi || (v == *hi && strict)) {
            hi = v;
            hi_strict = strict;
        }
        return !empty();
    }
    bool empty() const {
        if (!lo || !hi) return false;
        if (*lo > *hi) return true;
        return *lo == *hi && (lo_strict || hi_strict);
    }
};

} // namespace

Conjunction simplify_quick(Conjunction c) {
    if (c.is_false) return c;
    bool changed = true;
    while (changed) {
        changed = false;
        // normalize, drop constants, dedupe
        std::vector<Atom> atoms;
        for (Atom a : c.atoms) {
            a = normalize_atom(a);
            if (a.poly.is_constant()) {
                if (const_holds(sign_of(a.poly.constant_value()), a.rel)) continue;
                return Conjunction::falsum();
            }
            if (std::find(atoms.begin(), atoms.end(), a) == atoms.end()) atoms.push_back(a);
        }
        if (atoms.size() != c.atoms.size()) changed = true;
        c.atoms = std::move(atoms);

        // substitute existential variables fixed to a rational by a linear atom
        for (size_t i = 0; i < c.atoms.size(); ++i) {
            const Atom& a = c.atoms[i];
            if (a.rel != Rel::Eq) continue;
            auto vars = a.poly.vars();
            if (vars.size() != 1) continue;
            int v = *vars.begin();
            if (!c.exist.count(v) || a.poly.degree(v) != 1) continue;
            Rational val = -a.poly.coeff_of(v, 0).constant_value() / a.poly.coeff_of(v, 1).constant_value();
            Polynomial numP = Polynomial::constant(a.poly.nvars(), val);
            c.subst_log.push_back({v, numP, Polynomial::constant(a.poly.nvars(), 1)});
            c.exist.erase(v);
            std::vector<Atom> next;
            for (size_t j = 0; j < c.atoms.size(); ++j) {
                if (j == i) continue;
                next.push_back({c.atoms[j].poly.subst_rational(v, val), c.atoms[j].rel});
            }
            c.atoms = std::move(next);
            changed = true;
            break;
        }
        if (changed) continue;

        // single-variable linear bound propagation
        std::map<int, VarBounds> bounds;
        for (const Atom& a : c.atoms) {
            auto vars = a.poly.vars();
            if (vars.size() != 1) continue;
            int v = *vars.begin();
            if (a.poly.degree(v) != 1) continue;
            Rational coef = a.poly.coeff_of(v, 1).constant_value();
            Rational val = -a.poly.coeff_of(v, 0).constant_value() / coef;
            bool pos = coef > 0;  // atom is coef*(v - val) rel 0
            VarBounds& b = bounds[v];
            bool ok = true;
            switch (a.rel) {
            case Rel::Eq: ok = b.add_lower(val, false) && b.add_upper(val, false); break;
            case Rel::Gt: ok = pos ? b.add_lower(val, true) : b.add_upper(val, true); break;
            case Rel::Ge: ok = pos ? b.add_lower(val, false) : b.add_upper(val, false); break;
            default: break;  // Neq contributes no interval bound
            }
            if (!ok) return Conjunction::falsum();
        }
        // drop bounds dominated by a tighter one on the same variable
        std::vector<Atom> kept;
        for (const Atom& a : c.atoms) {
            auto vars = a.poly.vars();
            bool dominated = false;
            if (vars.size() == 1 && a.poly.degree(*vars.begin()) == 1 &&
                (a.rel == Rel::Gt || a.rel == Rel::Ge)) {
                int v = *vars.begin();
                Rational coef = a.poly.coeff_of(v, 1).constant_value();
                Rational val = -a.poly.coeff_of(v, 0).constant_value() / coef;
                const VarBounds& b = bounds.at(v);
                if (coef > 0) {
                    dominated = b.lo && (*b.lo > val || (*b.lo == val && b.lo_strict && a.rel == Rel::Ge));
                } else {
                    dominated = b.hi && (*b.hi < val || (*b.hi == val && b.hi_strict && a.rel == Rel::Ge));
                }
            }
            if (!dominated) kept.push_back(a);
        }
        if (kept.size() != c.atoms.size()) {
            c.atoms = std::move(kept);
            changed = true;
        }
    }
    return c;
}

std::vector<Polynomial> delinearize(std::vector<Polynomial> he, const std::set<int>& protect,
                                    std::vector<Substitution>* log) {
    std::erase_if(he, [](const Polynomial& p) { return p.is_zero(); });
    bool progress = true;
    while (progress) {
        progress = false;
        for (size_t i = 0; i < he.size() && !progress; ++i) {
            if (he[i].total_degree() != 1) continue;
            auto vars = he[i].vars();
            // eliminate an unprotected variable, dropping the equation
            for (int v : vars) {
                if (protect.count(v)) continue;
                Rational a = he[i].coeff_of(v, 1).constant_value();
                Polynomial rest = he[i].subst_rational(v, Rational(0));
                Polynomial repl = rest * Rational(Rational(-1) / a);
                if (log) log->push_back({v, repl, Polynomial::constant(he[i].nvars(), 1)});
                for (size_t j = 0; j < he.size(); ++j)
                    if (j != i) he[j] = he[j].subst_poly(v, repl);
                he.erase(he.begin() + (long)i);
                progress = true;
                break;
            }
            if (progress) break;
            // protected variable pinned to a rational: substitute, keep the equation
            if (vars.size() == 1) {
                int v = *vars.begin();
                Rational val = -he[i].coeff_of(v, 0).constant_value() / he[i].coeff_of(v, 1).constant_value();
                bool used = false;
                for (size_t j = 0; j < he.size(); ++j) {
                    if (j == i || !he[j].contains_var(v)) continue;
                    he[j] = he[j].subst_rational(v, val);
                    used = true;
                }
                if (used) progress = true;
            }
        }
        std::erase_if(he, [](const Polynomial& p) { return p.is_zero(); });
    }
    return he;
}

namespace {

// halve every exponent of x (caller guarantees they are all even)
Polynomial halve_exponents(const Polynomial& p, int x) {
    Polynomial out(p.nvars());
    for (const auto& [e, c] : p.terms()) {
        Exps h = e;
        h[x] /= 2;
        out.add_term(h, c);
    }
    return out;
}

} // namespace

Conjunction reduce_even_powers(Conjunction c) {
    if (c.is_false) return c;
    bool changed = true;
    while (changed) {
        changed = false;
        for (int x : std::vector<int>(c.exist.begin(), c.exist.end())) {
            bool reducible = true, has_even = false;
            std::vector<std::pair<size_t, Rel>> sign_atoms;  // index, relation on x itself
            for (size_t i = 0; i < c.atoms.size() && reducible; ++i) {
                const Polynomial& p = c.atoms[i].poly;
                if (p.degree(x) <= 0) continue;
                if (p.term_count() == 1 && p.degree(x) == 1 && p.vars().size() == 1) {
                    // c*x rel 0: the relation on x, mirrored for a negative c
                    Rel r = c.atoms[i].rel;
                    if (sign_of(p.coeff_of(x, 1).constant_value()) < 0) {
                        switch (r) {
                        case Rel::Gt: r = Rel::Lt; break;
                        case Rel::Ge: r = Rel::Le; break;
                        case Rel::Lt: r = Rel::Gt; break;
                        case Rel::Le: r = Rel::Ge; break;
                        default: break;
                        }
                    }
                    sign_atoms.emplace_back(i, r);
                    continue;
                }
                for (const auto& [e, coeff] : p.terms())
                    if (e[x] % 2 != 0) {
                        reducible = false;
                        break;
                    }
                if (reducible && p.degree(x) > 0) has_even = true;
            }
            if (!reducible || !has_even) continue;

            std::vector<Atom> next;
            for (size_t i = 0; i < c.atoms.size(); ++i) {
                bool is_sign = false;
                Rel sr = Rel::Eq;
                for (const auto& [idx, r] : sign_atoms)
                    if (idx == i) {
                        is_sign = true;
                        sr = r;
                    }
                if (!is_sign) {
                    next.push_back({halve_exponents(c.atoms[i].poly, x), c.atoms[i].rel});
                    continue;
                }
                // x rel 0 in terms of u = x^2
                Polynomial u = Polynomial::variable(c.atoms[i].poly.nvars(), x);
                switch (sr) {
                case Rel::Eq: next.push_back({u, Rel::Eq}); break;
                case Rel::Gt:
                case Rel::Lt:
                case Rel::Neq: next.push_back({u, Rel::Gt}); break;
                case Rel::Ge:
                case Rel::Le: break;  // subsumed by u >= 0 below
                }
            }
            int nv = next.empty() ? 0 : next.front().poly.nvars();
            for (const Atom& a : c.atoms) nv = std::max(nv, a.poly.nvars());
            next.push_back({Polynomial::variable(nv, x), Rel::Ge});
            c.atoms = std::move(next);
            changed = true;
        }
    }
    return simplify_quick(std::move(c));
}

Conjunction groebner_reduce(Conjunction c, const GroebnerBudget& budget) {
    if (c.is_false) return c;
    std::vector<Polynomial> eqs;
    for (const Atom& a : c.atoms)
        if (a.rel == Rel::Eq && !a.poly.is_zero()) eqs.push_back(a.poly);
    if (eqs.empty()) return c;
    MonomialOrder ord = MonomialOrder::grevlex();
    GroebnerBasis gb;
    try {
        gb = buchberger(eqs, ord, budget);
    } catch (const std::runtime_error& e) {
        if (std::string(e.what()) == "groebner-budget-exceeded") return c;
        throw;
    }
    for (const Polynomial& g : gb.gens)
        if (g.is_constant() && !g.is_zero()) return Conjunction::falsum();
    std::vector<Atom> next;
    for (const Polynomial& g : gb.gens) next.push_back({g, Rel::Eq});
    for (const Atom& a : c.atoms) {
        if (a.rel == Rel::Eq) continue;
        next.push_back({normal_form(a.poly, gb.gens, ord), a.rel});
    }
    c.atoms = std::move(next);
    return simplify_quick(std::move(c));
}

Conjunction drop_implied_equalities(Conjunction c, const GroebnerBudget& budget) {
    if (c.is_false) return c;
    std::vector<size_t> eq_idx;
    for (size_t i = 0; i < c.atoms.size(); ++i)
        if (c.atoms[i].rel == Rel::Eq && !c.atoms[i].poly.is_zero()) eq_idx.push_back(i);
    if (eq_idx.size() < 2) return c;
    // try to drop the bulkiest equalities first
    std::sort(eq_idx.begin(), eq_idx.end(), [&](size_t a, size_t b) {
        const Polynomial &pa = c.atoms[a].poly, &pb = c.atoms[b].poly;
        return pa.term_count() * (pa.total_degree() + 1) > pb.term_count() * (pb.total_degree() + 1);
    });
    MonomialOrder ord = MonomialOrder::grevlex();
    std::set<size_t> dropped;
    for (size_t cand : eq_idx) {
        if (eq_idx.size() - dropped.size() < 2) break;
        std::vector<Polynomial> others;
        for (size_t i : eq_idx)
            if (i != cand && !dropped.count(i)) others.push_back(c.atoms[i].poly);
        try {
            GroebnerBasis gb = buchberger(others, ord, budget);
            if (normal_form(c.atoms[cand].poly, gb.gens, ord).is_zero()) dropped.insert(cand);
        } catch (const std::runtime_error& e) {
            if (std::string(e.what()) != "groebner-budget-exceeded") throw;
        }
    }
    if (dropped.empty()) return c;
    std::vector<Atom> kept;
    for (size_t i = 0; i < c.atoms.size(); ++i)
        if (!dropped.count(i)) kept.push_back(c.atoms[i]);
    c.atoms = std::move(kept);
    return c;
}

namespace {

// substitute x := num/den into an atom, clearing the denominator sign-safely
Atom subst_cleared_atom(const Atom& a, int x, const Polynomial& num, const Polynomial& den) {
    int d = a.poly.degree(x);
    Polynomial q = a.poly.subst_cleared(x, num, den);  // den^d * p
    if (a.rel != Rel::Eq && a.rel != Rel::Neq && d % 2 != 0) q = q * den;  // even power
    return {q, a.rel};
}

} // namespace

DisjunctiveProblem case_split(const Conjunction& c, int branch_cap) {
    std::vector<Conjunction> work = {simplify_quick(c)};
    std::vector<Conjunction> done;
    while (!work.empty()) {
        Conjunction cur = std::move(work.back());
        work.pop_back();
        if (cur.is_false) continue;

        // best linear equality to eliminate: constant coefficients first,
        // then least growth of the substituted atoms
        int best_atom = -1, best_var = -1;
        bool best_const = false;
        long best_growth = 0;
        for (size_t i = 0; i < cur.atoms.size(); ++i) {
            const Atom& a = cur.atoms[i];
            if (a.rel != Rel::Eq) continue;
            for (int v : a.poly.vars()) {
                if (!cur.exist.count(v) || a.poly.degree(v) != 1) continue;
                Polynomial coef = a.poly.coeff_of(v, 1);
                bool cconst = coef.is_constant();
                long growth = 0;
                for (const Atom& o : cur.atoms)
                    if (o.poly.contains_var(v)) growth += (long)o.poly.term_count() * (long)coef.term_count();
                if (best_atom < 0 || (cconst && !best_const) ||
                    (cconst == best_const && growth < best_growth)) {
                    best_atom = (int)i;
                    best_var = v;
                    best_const = cconst;
                    best_growth = growth;
                }
            }
        }
        if (best_atom < 0) {
            done.push_back(std::move(cur));
            if ((int)(done.size() + work.size()) > branch_cap)
                throw std::runtime_error("case-split-budget");
            continue;
        }

        Atom eq = cur.atoms[best_atom];
        int x = best_var;
        Polynomial coef = eq.poly.coeff_of(x, 1);
        Polynomial rest = eq.poly.subst_rational(x, Rational(0));
        Polynomial num = -rest;

        // branch 1: coef != 0, substitute x := -rest/coef
        Conjunction b1 = cur;
        b1.atoms.erase(b1.atoms.begin() + best_atom);
        b1.exist.erase(x);
        for (Atom& a : b1.atoms) a = subst_cleared_atom(a, x, num, coef);
        if (!coef.is_constant()) b1.atoms.push_back({coef, Rel::Neq});
        b1.subst_log.push_back({x, num, coef});
        b1 = simplify_quick(std::move(b1));
        if (!b1.is_false) work.push_back(std::move(b1));

        // branch 2 (only for a nonconstant coefficient): coef = 0 /\ rest = 0
        if (!coef.is_constant()) {
            Conjunction b2 = cur;
            b2.atoms.erase(b2.atoms.begin() + best_atom);
            b2.atoms.push_back({coef, Rel::Eq});
            b2.atoms.push_back({rest, Rel::Eq});
            b2 = simplify_quick(std::move(b2));
            if (!b2.is_false) work.push_back(std::move(b2));
        }
        if ((int)(done.size() + work.size()) > branch_cap)
            throw std::runtime_error("case-split-budget");
    }
    DisjunctiveProblem out;
    out.branches = std::move(done);
    return out;
}

} // namespace geoineq
