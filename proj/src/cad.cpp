#include "geoineq/cad.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <stdexcept>

#include "geoineq/deadline.hpp"

#include <cstdio>
#include <cstdlib>
static const bool kCadDebug = std::getenv("GEOINEQ_CAD_DEBUG") != nullptr;

namespace geoineq {

bool QfFormula1V::never_true() const {
    return std::none_of(truth.begin(), truth.end(), [](bool b) { return b; });
}

bool QfFormula1V::holds_at(const Rational& m) const {
    for (size_t i = 0; i < roots.size(); ++i) {
        int c = roots[i].cmp(m);
        if (c > 0) return truth[2 * i];      // left of section i
        if (c == 0) return truth[2 * i + 1]; // on section i
    }
    return truth.back();
}

std::vector<int> choose_order(const Conjunction& c) {
    std::map<int, std::pair<int, int>> info; // var -> (max degree, occurrences)
    std::map<int, int> pinned; // var -> degree of a defining univariate equality
    for (const Atom& a : c.atoms) {
        for (int v : a.poly.vars()) {
            auto& [deg, occ] = info[v];
            deg = std::max(deg, a.poly.degree(v));
            ++occ;
        }
        if (a.rel == Rel::Eq && a.poly.vars().size() == 1) {
            int v = *a.poly.vars().begin();
            int d = a.poly.degree(v);
            auto it = pinned.find(v);
            if (it == pinned.end() || d < it->second) pinned[v] = d;
        }
    }
    std::vector<int> order;
    if (c.free_var) {
        order.push_back(*c.free_var);
        info.erase(*c.free_var);
        pinned.erase(*c.free_var);
    }
    // variables fixed to finitely many values by a univariate equality go
    // right after the free variable: their levels are pure sections and the
    // equality reduces every projection polynomial above them
    std::vector<int> early, rest;
    for (const auto& [v, di] : info) (pinned.count(v) ? early : rest).push_back(v);
    std::sort(early.begin(), early.end(), [&](int a, int b) {
        return pinned[a] != pinned[b] ? pinned[a] < pinned[b] : a < b;
    });
    std::sort(rest.begin(), rest.end(), [&](int a, int b) {
        return info[a] != info[b] ? info[a] < info[b] : a < b;
    });
    order.insert(order.end(), early.begin(), early.end());
    order.insert(order.end(), rest.begin(), rest.end());
    return order;
}

namespace {

bool rel_holds(int sg, Rel r) {
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

// reducta of p w.r.t. v: p, then p with its leading v-term removed, ...
// down to (and excluding) the v-free tail
std::vector<Polynomial> reducta(const Polynomial& p, int v) {
    std::vector<Polynomial> out;
    Polynomial cur = p;
    while (cur.degree(v) >= 1) {
        out.push_back(cur);
        int d = cur.degree(v);
        cur = cur - cur.coeff_of(v, d) * Polynomial::variable(cur.nvars(), v, d);
    }
    return out;
}

struct Cad {
    const Conjunction& c;
    const CadOptions& opts;
    std::vector<int> order;               // order[k] lifted at level k+1
    std::vector<int> pos;                 // var -> level index, -1 otherwise
    ProjectionSet proj;
    std::vector<std::vector<const Atom*>> atoms_at; // atoms fully bound at level k+1

    Cad(const Conjunction& conj, const CadOptions& o) : c(conj), opts(o) {
        order = choose_order(c);
        std::vector<Polynomial> polys;
        std::vector<char> eqf;
        for (const Atom& a : c.atoms)
            if (!a.poly.is_constant()) {
                polys.push_back(a.poly);
                eqf.push_back(a.rel == Rel::Eq ? 1 : 0);
            }
        proj = project(polys, order, opts, &eqf);
        pos.assign(poly_nvars(), -1);
        for (size_t k = 0; k < order.size(); ++k) pos[order[k]] = (int)k;
        atoms_at.resize(std::max<size_t>(1, order.size()));
        for (const Atom& a : c.atoms) {
            int lvl = 0;
            for (int v : a.poly.vars()) lvl = std::max(lvl, pos[v]);
            atoms_at[lvl].push_back(&a);
        }
    }

    int poly_nvars() const {
        int n = 0;
        for (const Atom& a : c.atoms) n = std::max(n, a.poly.nvars());
        for (int v : order) n = std::max(n, v + 1);
        return n;
    }

    void check_deadline() const {
        if (opts.deadline && std::chrono::steady_clock::now() > *opts.deadline)
            throw std::runtime_error("timeout");
    }

    // section_of: polynomial whose section the newest coordinate sits on;
    // equality atoms matching it hold by construction and are skipped
    bool atoms_hold(int level, const SamplePoint& pt, const Polynomial* section_of = nullptr) const {
        for (const Atom* a : atoms_at[level]) {
            if (section_of && a->rel == Rel::Eq && a->poly == *section_of) continue;
            auto a0 = std::chrono::steady_clock::now();
            int sg = sign_at(a->poly, pt);
            if (kCadDebug) {
                long msd = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - a0).count();
                if (msd > 200) fprintf(stderr, "[cad] lvl %d sign_at %ld ms (%zu terms)\n", level, msd, a->poly.term_count());
            }
            if (!rel_holds(sg, a->rel)) return false;
        }
        return true;
    }

    // index of the cheapest equational polynomial at a level, -1 when none
    int eq_pivot(int level) const {
        int v = order[level];
        int best = -1;
        for (size_t i = 0; i < proj.levels[level].size(); ++i) {
            const Polynomial& p = proj.levels[level][i];
            if (!proj.eq[level][i] || p.degree(v) < 1) continue;
            if (best < 0 || p.degree(v) < proj.levels[level][(size_t)best].degree(v))
                best = (int)i;
        }
        return best;
    }

    // cell samples for order[level] above pt: sections at the roots of the
    // level's projection polynomials, rational samples in the sectors. With
    // an equational polynomial at the level only its sections can carry
    // solutions, so the stack shrinks to those.
    std::vector<RealAlg> stack_samples(int level, const SamplePoint& pt,
                                       const Polynomial** section_of = nullptr) const {
        auto dbg_t0 = std::chrono::steady_clock::now();
        if (section_of) *section_of = nullptr;
        int pivot = eq_pivot(level);
        if (pivot >= 0) {
            RootsAbove ra = roots_above(proj.levels[level][(size_t)pivot], pt, order[level]);
            if (kCadDebug) {
                long msd = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - dbg_t0).count();
                if (msd > 200) fprintf(stderr, "[cad] lvl %d pivot roots_above %ld ms (%zu terms) -> %zu roots\n", level, msd, proj.levels[level][(size_t)pivot].term_count(), ra.roots.size());
            }
            if (!ra.vanishes) {
                if (section_of) *section_of = &proj.levels[level][(size_t)pivot];
                return ra.roots;  // solutions only on the pivot's sections
            }
        }
        std::vector<RealAlg> roots;
        for (const Polynomial& p : proj.levels[level]) {
            auto p0 = std::chrono::steady_clock::now();
            RootsAbove ra = roots_above(p, pt, order[level]);
            if (kCadDebug) {
                long msd = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - p0).count();
                if (msd > 200) fprintf(stderr, "[cad] lvl %d roots_above %ld ms (%zu terms deg %d) -> %zu roots\n", level, msd, p.term_count(), p.degree(order[level]), ra.roots.size());
            }
            for (const RealAlg& r : ra.roots) roots.push_back(r);
        }
        std::sort(roots.begin(), roots.end(), [](const RealAlg& a, const RealAlg& b) { return a < b; });
        roots.erase(std::unique(roots.begin(), roots.end(),
                                [](const RealAlg& a, const RealAlg& b) { return a == b; }),
                    roots.end());
        std::vector<RealAlg> samples;
        if (roots.empty()) {
            samples.push_back(RealAlg::from_rational(Rational(0)));
            return samples;
        }
        samples.push_back(RealAlg::from_rational(roots.front().rational_below()));
        for (size_t i = 0; i < roots.size(); ++i) {
            samples.push_back(roots[i]);
            if (i + 1 < roots.size())
                samples.push_back(RealAlg::from_rational(rational_between(roots[i], roots[i + 1])));
        }
        samples.push_back(RealAlg::from_rational(roots.back().rational_above()));
        return samples;
    }

    // exists-truth of the conjunction above a partial sample bound through
    // order[0..level-1]
    bool exists_above(SamplePoint& pt, size_t level) {
        if (kCadDebug) fprintf(stderr, "[cad] enter lvl %zu\n", level);
        check_deadline();
        if (level == order.size()) return true; // all atoms checked on the way down
        if (level + 1 == order.size()) {
            // Innermost level with an equational polynomial: its roots are
            // never lifted further, so interval arithmetic alone can usually
            // settle the level without constructing algebraic numbers.
            int pivot = eq_pivot((int)level);
            if (pivot >= 0) {
                const Polynomial& pp = proj.levels[level][(size_t)pivot];
                std::vector<SignReq> reqs;
                for (const Atom* a : atoms_at[level]) {
                    if (a->rel == Rel::Eq && a->poly == pp) continue;
                    SignReq r{a->poly, rel_holds(-1, a->rel), rel_holds(0, a->rel),
                              rel_holds(1, a->rel)};
                    reqs.push_back(std::move(r));
                }
                auto dbg_f0 = std::chrono::steady_clock::now();
                auto fast = satisfiable_on_sections(pp, pt, order[level], reqs);
                if (kCadDebug) {
                    long msd = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - dbg_f0).count();
                    if (msd > 100 || !fast) fprintf(stderr, "[cad] lvl %zu fastpath %ld ms -> %s\n", level, msd, fast ? (*fast ? "T" : "F") : "undecided");
                }
                if (fast) {
                    if (opts.trace) ++opts.trace->cells_visited;
                    return *fast;
                }
            }
        }
        const Polynomial* section_of = nullptr;
        for (const RealAlg& s : stack_samples((int)level, pt, &section_of)) {
            if (opts.trace) ++opts.trace->cells_visited;
            pt[order[level]] = s;
            bool ok = atoms_hold((int)level, pt, section_of) && exists_above(pt, level + 1);
            pt.erase(order[level]);
            if (ok) return true;
        }
        return false;
    }
};

} // namespace

ProjectionSet project(const std::vector<Polynomial>& polys, const std::vector<int>& order,
                      const CadOptions& opts, const std::vector<char>* is_eq) {
    if ((int)order.size() > opts.max_cad_vars) throw std::runtime_error("cad-dimension-cap");
    DeadlineScope scope(opts.deadline);
    std::vector<int> pos;
    for (size_t k = 0; k < order.size(); ++k) {
        if (order[k] >= (int)pos.size()) pos.resize(order[k] + 1, -1);
        pos[order[k]] = (int)k;
    }

    ProjectionSet ps;
    ps.levels.resize(order.size());
    ps.eq.resize(order.size());
    std::vector<std::vector<char>>& eq_flags = ps.eq;
    // Univariate equational constraints double as modular reducers: every
    // solution lies on their sections, so any projection polynomial can be
    // pseudo-reduced modulo them (constant positive leading coefficient keeps
    // signs there) without disturbing the cells that can carry solutions.
    std::vector<std::pair<int, Polynomial>> reducers;
    if (is_eq)
        for (size_t i = 0; i < polys.size(); ++i)
            if ((*is_eq)[i] && polys[i].vars().size() == 1 && polys[i].total_degree() >= 1)
                reducers.emplace_back(*polys[i].vars().begin(), polys[i].primitive_part(true));
    // Normalization before storing: squarefree part in the level variable and
    // the x-free content split off and projected on its own (it lives at a
    // lower level). A split equational polynomial loses its flag: the product
    // vanishing on the solutions constrains neither factor by itself.
    std::function<void(const Polynomial&, bool)> add = [&](const Polynomial& q0, bool eq) {
        Polynomial q = q0;
        for (const auto& [rv, u] : reducers) {
            if (q.degree(rv) < u.degree(rv) || q.primitive_part(true) == u) continue;
            Polynomial r = pseudo_rem(q, u, rv);
            if (r.is_zero()) return; // multiple of the reducer: no news on its sections
            q = r;
        }
        if (q.is_zero() || q.is_constant()) return;
        int lvl = -1;
        for (int v : q.vars()) {
            if (v >= (int)pos.size() || pos[v] < 0)
                throw std::runtime_error("cad-unordered-variable");
            lvl = std::max(lvl, pos[v]);
        }
        int x = order[lvl];
        Polynomial n = q;
        Polynomial content = Polynomial::constant(q.nvars(), 1);
        try {
            // cap the gcd work; settle for the raw polynomial when expensive
            DeadlineScope guard(std::chrono::steady_clock::now() +
                                std::chrono::milliseconds(1500));
            n = squarefree_part_in_var(n, x);
            Polynomial c = content_in_var(n, x);
            if (!c.is_constant()) {
                auto pp = try_divide_exact(n, c);
                if (pp) {
                    content = c;
                    n = *pp;
                    // a product content * pp vanishing at every solution says
                    // nothing about either factor alone
                    eq = false;
                }
            }
        } catch (const std::runtime_error&) {
        }
        add(content, false); // the x-free content projects on its own
        n = n.primitive_part(true);
        for (size_t i = 0; i < ps.levels[lvl].size(); ++i)
            if (ps.levels[lvl][i] == n) {
                if (eq) eq_flags[lvl][i] = 1;
                return;
            }
        ps.levels[lvl].push_back(n);
        eq_flags[lvl].push_back(eq ? 1 : 0);
    };
    for (size_t i = 0; i < polys.size(); ++i) add(polys[i], is_eq && (*is_eq)[i]);

    auto check_deadline = [&]() {
        if (opts.deadline && std::chrono::steady_clock::now() > *opts.deadline)
            throw std::runtime_error("timeout");
    };
    auto own_chains = [&](const Polynomial& p, int v) {
        check_deadline();
        for (const Polynomial& cf : p.coeffs_in(v)) add(cf, false);
        // discriminant chain: own and, when the leading coefficient can
        // vanish, of the reducta as well
        for (const Polynomial& r : reducta(p, v)) {
            if (r.degree(v) >= 2) add(resultant(r, r.derivative(v), v), false);
            if (r.coeff_of(v, r.degree(v)).is_constant()) break;
        }
    };
    // McCallum-style pair projection: the full resultant only (coefficient
    // sets added by own_chains cover a vanishing leading coefficient). The
    // resultant of two equational constraints vanishes wherever both do, so
    // it is equational one level down. A vanishing resultant means a shared
    // factor: split it off and project the three pieces against each other so
    // the root-crossing boundaries are not lost.
    std::function<void(const Polynomial&, const Polynomial&, int, bool)> res_pair =
        [&](const Polynomial& a, const Polynomial& b, int v, bool both_eq) {
            check_deadline();
            if (a.degree(v) < 1 || b.degree(v) < 1) return;
            Polynomial r = resultant(a, b, v);
            if (!r.is_zero()) {
                add(r, both_eq);
                return;
            }
            Polynomial g = gcd_in_var(a, b, v);
            auto a2 = try_divide_exact(a, g);
            auto b2 = try_divide_exact(b, g);
            if (g.degree(v) < 1 || !a2 || !b2) {
                own_chains(a, v); // split failed; at least keep both delineable
                own_chains(b, v);
                return;
            }
            own_chains(g, v);
            res_pair(g, *a2, v, false);
            res_pair(g, *b2, v, false);
            res_pair(*a2, *b2, v, false);
        };
    for (size_t k = order.size(); k-- > 1;) {
        int v = order[k];
        const std::vector<Polynomial> level = ps.levels[k]; // fixed before projecting
        // equational pivot: smallest equality at the level, if any
        int pivot = -1;
        for (size_t i = 0; i < level.size(); ++i) {
            if (!eq_flags[k][i] || level[i].degree(v) < 1) continue;
            if (pivot < 0 || level[i].degree(v) < level[pivot].degree(v) ||
                (level[i].degree(v) == level[pivot].degree(v) &&
                 level[i].term_count() < level[pivot].term_count()))
                pivot = (int)i;
        }
        if (pivot >= 0) {
            own_chains(level[(size_t)pivot], v);
            for (size_t i = 0; i < level.size(); ++i)
                if ((int)i != pivot)
                    res_pair(level[(size_t)pivot], level[i], v, eq_flags[k][i] != 0);
        } else {
            for (const Polynomial& p : level) own_chains(p, v);
            for (size_t i = 0; i < level.size(); ++i)
                for (size_t j2 = i + 1; j2 < level.size(); ++j2)
                    res_pair(level[i], level[j2], v,
                             eq_flags[k][i] != 0 && eq_flags[k][j2] != 0);
        }
    }
    if (opts.trace) {
        opts.trace->level_poly_counts.clear();
        for (const auto& lv : ps.levels) opts.trace->level_poly_counts.push_back(lv.size());
    }
    return ps;
}

QfFormula1V qe_exists(const Conjunction& c, const CadOptions& opts) {
    if (c.is_false) return QfFormula1V::falsum();
    if (!c.free_var) throw std::runtime_error("cad-missing-free-variable");
    DeadlineScope scope(opts.deadline);
    Cad cad(c, opts);
    int m = *c.free_var;

    // base phase: roots of the level-1 (univariate in m) polynomials
    std::vector<RealAlg> roots;
    for (const Polynomial& p : cad.proj.levels[0]) {
        if (kCadDebug) fprintf(stderr, "[cad] base roots_of deg %d, %zu terms\n", p.total_degree(), p.term_count());
        for (const RealAlg& r : RealAlg::roots_of(UPoly::from_polynomial(p, m)))
            roots.push_back(r);
    }
    if (kCadDebug) fprintf(stderr, "[cad] base roots: %zu\n", roots.size());
    std::sort(roots.begin(), roots.end(), [](const RealAlg& a, const RealAlg& b) { return a < b; });
    roots.erase(std::unique(roots.begin(), roots.end(),
                            [](const RealAlg& a, const RealAlg& b) { return a == b; }),
                roots.end());

    std::vector<RealAlg> samples;
    if (roots.empty()) {
        samples.push_back(RealAlg::from_rational(Rational(0)));
    } else {
        samples.push_back(RealAlg::from_rational(roots.front().rational_below()));
        for (size_t i = 0; i < roots.size(); ++i) {
            samples.push_back(roots[i]);
            if (i + 1 < roots.size())
                samples.push_back(RealAlg::from_rational(rational_between(roots[i], roots[i + 1])));
        }
        samples.push_back(RealAlg::from_rational(roots.back().rational_above()));
    }

    QfFormula1V f;
    f.roots = roots;
    for (const RealAlg& s : samples) {
        if (opts.trace) ++opts.trace->cells_visited;
        if (kCadDebug) fprintf(stderr, "[cad] base cell %zu/%zu at %s\n", f.truth.size() + 1, samples.size(), s.str().c_str());
        SamplePoint pt;
        pt[m] = s;
        auto dbg_c0 = std::chrono::steady_clock::now();
        f.truth.push_back(cad.atoms_hold(0, pt) && cad.exists_above(pt, 1));
        if (kCadDebug) fprintf(stderr, "[cad]   -> %d (%ld ms)\n", (int)f.truth.back(),
                               (long)std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - dbg_c0).count());
    }
    return f;
}

bool qe_decide(const Conjunction& c, const CadOptions& opts) {
    if (c.is_false) return false;
    if (c.atoms.empty()) return true;
    DeadlineScope scope(opts.deadline);
    Conjunction probe = c; // treat the whole conjunction as existential
    probe.free_var.reset();
    Cad cad(probe, opts);
    if (cad.order.empty()) { // constant atoms only
        SamplePoint pt;
        return cad.atoms_hold(0, pt);
    }
    SamplePoint pt;
    return cad.exists_above(pt, 0);
}

} // namespace geoineq
