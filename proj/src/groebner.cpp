#include "geoineq/groebner.hpp"

#include <algorithm>
#include <stdexcept>

#include "geoineq/deadline.hpp"
#include "geoineq/numeric.hpp"

namespace geoineq {

namespace {

bool divides(const Exps& a, const Exps& b) {  // monomial a | b
    for (size_t i = 0; i < a.size(); ++i)
        if (a[i] > b[i]) return false;
    return true;
}

Exps lcm_exps(const Exps& a, const Exps& b) {
    Exps r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = std::max(a[i], b[i]);
    return r;
}

bool coprime(const Exps& a, const Exps& b) {
    for (size_t i = 0; i < a.size(); ++i)
        if (a[i] > 0 && b[i] > 0) return false;
    return true;
}

Polynomial mono_mul(const Polynomial& p, const Exps& e, const Rational& c) {
    Polynomial r(p.nvars());
    for (const auto& [pe, pc] : p.terms()) {
        Exps ne = pe;
        for (size_t i = 0; i < ne.size(); ++i) ne[i] += e[i];
        r.add_term(ne, pc * c);
    }
    return r;
}

struct Reducer {
    const std::vector<Polynomial>& basis;
    const MonomialOrder& ord;
    std::vector<Exps> lms;
    std::vector<Rational> lcs;

    Reducer(const std::vector<Polynomial>& b, const MonomialOrder& o) : basis(b), ord(o) {
        for (const auto& g : b) {
            if (g.is_zero()) {
                lms.emplace_back();
                lcs.emplace_back(0);
                continue;
            }
            lms.push_back(g.leading_monomial(o));
            lcs.push_back(g.leading_coeff(o));
        }
    }

    Polynomial full_reduce(Polynomial p) const {
        Polynomial out(p.nvars());
        while (!p.is_zero()) {
            poll_deadline();
            Exps lm = p.leading_monomial(ord);
            Rational lc = p.leading_coeff(ord);
            bool reduced = false;
            for (size_t i = 0; i < basis.size(); ++i) {
                if (basis[i].is_zero() || !divides(lms[i], lm)) continue;
                Exps q = lm;
                for (size_t k = 0; k < q.size(); ++k) q[k] -= lms[i][k];
                p = p - mono_mul(basis[i], q, Rational(lc / lcs[i]));
                reduced = true;
                break;
            }
            if (!reduced) {
                out.add_term(lm, lc);
                Polynomial t(p.nvars());
                t.add_term(lm, lc);
                p = p - t;
            }
        }
        return out;
    }
};

Polynomial spair(const Polynomial& f, const Polynomial& g, const MonomialOrder& ord) {
    Exps lf = f.leading_monomial(ord), lg = g.leading_monomial(ord);
    Exps l = lcm_exps(lf, lg);
    Exps ef = l, eg = l;
    for (size_t i = 0; i < l.size(); ++i) {
        ef[i] -= lf[i];
        eg[i] -= lg[i];
    }
    return mono_mul(f, ef, Rational(1) / f.leading_coeff(ord)) -
           mono_mul(g, eg, Rational(1) / g.leading_coeff(ord));
}

} // namespace

Polynomial normal_form(const Polynomial& p, const std::vector<Polynomial>& basis,
                       const MonomialOrder& ord) {
    return Reducer(basis, ord).full_reduce(p);
}

GroebnerBasis buchberger(const std::vector<Polynomial>& gens, const MonomialOrder& ord,
                         const GroebnerBudget& budget) {
    std::vector<Polynomial> G;
    for (const auto& g : gens)
        if (!g.is_zero()) G.push_back(g.primitive_part());
    if (G.empty()) return {{}, ord};

    struct Pair {
        size_t i, j;
        Exps lcm;
    };
    std::vector<Pair> pairs;
    auto add_pairs_for = [&](size_t j) {
        // Gebauer-Moller style pruning on insertion
        Exps lj = G[j].leading_monomial(ord);
        std::vector<Pair> fresh;
        for (size_t i = 0; i < j; ++i) {
            if (G[i].is_zero()) continue;
            fresh.push_back({i, j, lcm_exps(G[i].leading_monomial(ord), lj)});
        }
        // drop old pairs whose lcm is a proper multiple of lcm(i,j) through lj
        std::erase_if(pairs, [&](const Pair& p) {
            return divides(lj, p.lcm) &&
                   lcm_exps(G[p.i].leading_monomial(ord), lj) != p.lcm &&
                   lcm_exps(G[p.j].leading_monomial(ord), lj) != p.lcm;
        });
        // among the fresh pairs keep one representative per distinct lcm, and
        // drop those strictly divisible by another fresh lcm
        std::sort(fresh.begin(), fresh.end(), [&](const Pair& a, const Pair& b) {
            return ord.cmp(a.lcm, b.lcm) < 0 || (a.lcm == b.lcm && a.i < b.i);
        });
        std::vector<Pair> kept;
        for (const auto& p : fresh) {
            bool redundant = false;
            for (const auto& k : kept)
                if (divides(k.lcm, p.lcm)) {
                    redundant = true;
                    break;
                }
            if (!redundant) kept.push_back(p);
        }
        for (const auto& p : kept) {
            if (coprime(G[p.i].leading_monomial(ord), G[p.j].leading_monomial(ord))) continue;
            pairs.push_back(p);
        }
    };
    for (size_t j = 1; j < G.size(); ++j) add_pairs_for(j);

    long reductions = 0;
    while (!pairs.empty()) {
        // smallest lcm first (normal selection)
        auto it = std::min_element(pairs.begin(), pairs.end(), [&](const Pair& a, const Pair& b) {
            return ord.cmp(a.lcm, b.lcm) < 0;
        });
        Pair p = *it;
        pairs.erase(it);
        if (++reductions > budget.max_pair_reductions)
            throw std::runtime_error("groebner-budget-exceeded");
        Polynomial r = normal_form(spair(G[p.i], G[p.j], ord), G, ord);
        if (r.is_zero()) continue;
        if (r.total_degree() > budget.max_degree)
            throw std::runtime_error("groebner-budget-exceeded");
        G.push_back(r.primitive_part());
        add_pairs_for(G.size() - 1);
    }

    // minimalize: drop generators whose lead is divisible by another's
    std::vector<Polynomial> minimal;
    for (size_t i = 0; i < G.size(); ++i) {
        if (G[i].is_zero()) continue;
        Exps li = G[i].leading_monomial(ord);
        bool drop = false;
        for (size_t j = 0; j < G.size(); ++j) {
            if (i == j || G[j].is_zero()) continue;
            Exps lj = G[j].leading_monomial(ord);
            if (divides(lj, li) && (lj != li || j < i)) {
                drop = true;
                break;
            }
        }
        if (!drop) minimal.push_back(G[i]);
    }
    // inter-reduce to the reduced basis
    std::vector<Polynomial> reduced = minimal;
    for (size_t i = 0; i < reduced.size(); ++i) {
        std::vector<Polynomial> others;
        for (size_t j = 0; j < reduced.size(); ++j)
            if (j != i) others.push_back(reduced[j]);
        reduced[i] = normal_form(reduced[i], others, ord).primitive_part();
    }
    std::erase_if(reduced, [](const Polynomial& p) { return p.is_zero(); });
    std::sort(reduced.begin(), reduced.end(), [&](const Polynomial& a, const Polynomial& b) {
        return ord.cmp(a.leading_monomial(ord), b.leading_monomial(ord)) < 0;
    });
    return {std::move(reduced), ord};
}

std::vector<Polynomial> eliminate(const std::vector<Polynomial>& gens, const std::set<int>& keep,
                                  int nvars, const GroebnerBudget& budget) {
    // Gaussian pre-step: substitute away non-kept variables that some
    // generator defines linearly with a rational constant coefficient
    std::vector<Polynomial> work;
    for (const auto& g : gens)
        if (!g.is_zero()) work.push_back(g);
    bool progress = true;
    while (progress) {
        progress = false;
        for (size_t i = 0; i < work.size() && !progress; ++i) {
            for (int v : work[i].vars()) {
                if (keep.count(v) || work[i].degree(v) != 1) continue;
                Polynomial cv = work[i].coeff_of(v, 1);
                if (!cv.is_constant()) continue;
                Polynomial rest = work[i].subst_rational(v, Rational(0));
                Polynomial repl = rest * Rational(Rational(-1) / cv.constant_value());
                for (size_t j = 0; j < work.size(); ++j)
                    if (j != i) work[j] = work[j].subst_poly(v, repl);
                work.erase(work.begin() + (long)i);
                progress = true;
                break;
            }
        }
    }
    std::erase_if(work, [](const Polynomial& p) { return p.is_zero(); });
    if (work.empty()) return {};

    std::set<int> elim;
    for (const auto& g : work)
        for (int v : g.vars())
            if (!keep.count(v)) elim.insert(v);
    MonomialOrder ord = elim.empty() ? MonomialOrder::grevlex() : MonomialOrder::block(elim, nvars);
    GroebnerBasis gb = buchberger(work, ord, budget);
    std::vector<Polynomial> out;
    for (const auto& g : gb.gens) {
        bool pure = true;
        for (int v : g.vars())
            if (!keep.count(v)) pure = false;
        if (pure) out.push_back(g);
    }
    return out;
}

std::optional<std::vector<RealAlg>> candidate_ratios(const std::vector<Polynomial>& elim,
                                                     const SemiAlgebraicSystem& s,
                                                     const Construction& c, const QuerySpec& q) {
    if (elim.empty()) return std::nullopt;
    if (!s.ratio_var) throw std::runtime_error("ratio-verification-failed");
    int m = *s.ratio_var;
    UPoly g;
    for (const auto& p : elim) {
        UPoly u = UPoly::from_polynomial(p, m);
        g = g.is_zero() ? u : upoly_gcd(g, u);
    }
    if (g.degree() < 1) throw std::runtime_error("ratio-verification-failed");
    auto roots = RealAlg::roots_of(g);

    // pick the root realized by an actual instance of the construction
    std::mt19937 rng(2024);
    for (int attempt = 0; attempt < 64; ++attempt) {
        auto inst = random_instance(c, rng, true);
        if (!inst) continue;
        double target = instance_ratio(*inst, q);
        for (const auto& r : roots)
            if (std::abs(r.approx() - target) < 1e-6) return std::vector<RealAlg>{r};
        break;  // a valid instance that matches no root: verification failed
    }
    throw std::runtime_error("ratio-verification-failed");
}

} // namespace geoineq
