#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "geoineq/cad.hpp"
#include "oracles.hpp"

using namespace geoineq;

namespace {

const std::vector<std::string> MX = {"m", "x", "y"};
Polynomial P(const std::string& s) { return Polynomial::parse(s, MX); }

Conjunction conj1v(std::vector<Atom> atoms) {
    Conjunction c;
    c.free_var = 0;
    c.exist = {1};
    c.atoms = std::move(atoms);
    return c;
}

bool contains_pm(const std::vector<Polynomial>& set, const Polynomial& p) {
    for (const auto& q : set)
        if (q == p || q == -p) return true;
    return false;
}

// Exact one-existential-variable satisfiability oracle at a fixed rational m,
// built only on univariate root isolation and algebraic sign evaluation:
// candidate witnesses are the roots of every atom polynomial plus rational
// sector samples between them.
bool oracle_exists_1v(const std::vector<Atom>& atoms, const Rational& m) {
    std::vector<UPoly> ups;
    std::vector<Rel> rels;
    for (const Atom& a : atoms) {
        Polynomial p = a.poly.subst_rational(0, m);
        if (p.is_constant()) {
            int sg = sign_of(p.constant_value());
            bool ok = false;
            switch (a.rel) {
            case Rel::Eq: ok = sg == 0; break;
            case Rel::Neq: ok = sg != 0; break;
            case Rel::Gt: ok = sg > 0; break;
            case Rel::Ge: ok = sg >= 0; break;
            case Rel::Lt: ok = sg < 0; break;
            case Rel::Le: ok = sg <= 0; break;
            }
            if (!ok) return false;
            continue;
        }
        ups.push_back(UPoly::from_polynomial(p, 1));
        rels.push_back(a.rel);
    }
    if (ups.empty()) return true;
    std::vector<RealAlg> cands;
    for (const auto& u : ups)
        for (const auto& r : RealAlg::roots_of(u)) cands.push_back(r);
    std::sort(cands.begin(), cands.end(), [](const RealAlg& a, const RealAlg& b) { return a < b; });
    cands.erase(std::unique(cands.begin(), cands.end(),
                            [](const RealAlg& a, const RealAlg& b) { return a == b; }),
                cands.end());
    std::vector<RealAlg> samples;
    if (cands.empty()) {
        samples.push_back(RealAlg::from_rational(Rational(0)));
    } else {
        samples.push_back(RealAlg::from_rational(cands.front().rational_below()));
        for (size_t i = 0; i < cands.size(); ++i) {
            samples.push_back(cands[i]);
            if (i + 1 < cands.size())
                samples.push_back(RealAlg::from_rational(rational_between(cands[i], cands[i + 1])));
        }
        samples.push_back(RealAlg::from_rational(cands.back().rational_above()));
    }
    for (const RealAlg& s : samples) {
        bool all = true;
        for (size_t i = 0; i < ups.size() && all; ++i) {
            int sg = s.sign_of(ups[i]);
            switch (rels[i]) {
            case Rel::Eq: all = sg == 0; break;
            case Rel::Neq: all = sg != 0; break;
            case Rel::Gt: all = sg > 0; break;
            case Rel::Ge: all = sg >= 0; break;
            case Rel::Lt: all = sg < 0; break;
            case Rel::Le: all = sg <= 0; break;
            }
        }
        if (all) return true;
    }
    return false;
}

} // namespace

TEST_CASE("choose_order puts the free variable at the base") {
    Conjunction c1 = conj1v({{P("m^2-2"), Rel::Le}});
    c1.exist.clear();
    CHECK(choose_order(c1) == std::vector<int>{0});

    Conjunction c2 = conj1v({{P("x^2-m"), Rel::Eq}, {P("x"), Rel::Ge}});
    CHECK(choose_order(c2) == std::vector<int>{0, 1});

    // heuristic: lowest max-degree existential first
    Conjunction c3 = conj1v({{P("x^3-m"), Rel::Eq}, {P("y-x"), Rel::Ge}});
    c3.exist = {1, 2};
    CHECK(choose_order(c3) == std::vector<int>{0, 2, 1});
}

TEST_CASE("project spec examples") {
    // {x^2 + m}: discriminant -4m enters the base level as m
    auto ps1 = project({P("x^2+m")}, {0, 1});
    REQUIRE(ps1.levels.size() == 2);
    CHECK(contains_pm(ps1.levels[1], P("x^2+m")));
    CHECK(contains_pm(ps1.levels[0], P("m")));

    // {x - m}: no discriminant; only coefficient content
    auto ps2 = project({P("x-m")}, {0, 1});
    CHECK(contains_pm(ps2.levels[1], P("x-m")));

    // {x^2 - m, x - 1}: pairwise resultant 1 - m
    auto ps3 = project({P("x^2-m"), P("x-1")}, {0, 1});
    CHECK(contains_pm(ps3.levels[0], P("m-1")));

    CadOptions tight;
    tight.max_cad_vars = 1;
    CHECK_THROWS_WITH((void)project({P("x^2+m")}, {0, 1}, tight), "cad-dimension-cap");
}

TEST_CASE("qe unit identities") {
    // exists x (x^2 + m x + 1 = 0)  <=>  m <= -2 \/ m >= 2
    QfFormula1V f1 = qe_exists(conj1v({{P("x^2+m*x+1"), Rel::Eq}}));
    // cell boundaries must include the exact endpoints -2 and 2 (extra
    // sections from coefficient chains are allowed)
    auto has_root = [&](const QfFormula1V& f, const Rational& r) {
        for (const auto& root : f.roots)
            if (root.cmp(r) == 0) return true;
        return false;
    };
    CHECK(has_root(f1, Rational(-2)));
    CHECK(has_root(f1, Rational(2)));
    for (int num = -50; num <= 50; ++num) {
        Rational m = make_rational(num, 10);
        CHECK(f1.holds_at(m) == (m * m >= 4));
    }

    // exists x (x^2 = m /\ x >= 0)  <=>  m >= 0
    QfFormula1V f2 = qe_exists(conj1v({{P("x^2-m"), Rel::Eq}, {P("x"), Rel::Ge}}));
    CHECK(f2.holds_at(Rational(0)));
    for (int num = -30; num <= 30; ++num) {
        Rational m = make_rational(num, 7);
        CHECK(f2.holds_at(m) == (m >= 0));
    }

    // exists x (x^2 + 1 = 0 /\ x >= 0)  <=>  false
    QfFormula1V f3 = qe_exists(conj1v({{P("x^2+1"), Rel::Eq}, {P("x"), Rel::Ge}}));
    CHECK(f3.never_true());
}

TEST_CASE("two-existential-variable identities") {
    Conjunction c1 = conj1v({{P("x^2+y^2-m"), Rel::Eq}});
    c1.exist = {1, 2};
    QfFormula1V f1 = qe_exists(c1);
    for (int num = -12; num <= 12; ++num) {
        Rational m = make_rational(num, 3);
        CHECK(f1.holds_at(m) == (m >= 0));
    }

    // min of x^2 + y^2 on the line x + y = 2 is 2
    Conjunction c2 = conj1v({{P("x^2+y^2-m"), Rel::Eq}, {P("x+y-2"), Rel::Eq}});
    c2.exist = {1, 2};
    QfFormula1V f2 = qe_exists(c2);
    CHECK(f2.holds_at(Rational(2)));
    for (int num = -12; num <= 12; ++num) {
        Rational m = make_rational(num, 3);
        CHECK(f2.holds_at(m) == (m >= 2));
    }
}

TEST_CASE("qe_decide on closed conjunctions") {
    Conjunction sat;
    sat.exist = {1};
    sat.atoms = {{P("x^2-2"), Rel::Eq}, {P("x"), Rel::Gt}};
    CHECK(qe_decide(sat));

    Conjunction unsat;
    unsat.exist = {1};
    unsat.atoms = {{P("x^2+1"), Rel::Eq}};
    CHECK(!qe_decide(unsat));

    Conjunction contradiction;
    contradiction.exist = {1};
    contradiction.atoms = {{P("x"), Rel::Gt}, {P("x"), Rel::Lt}};
    CHECK(!qe_decide(contradiction));

    Conjunction empty;
    CHECK(qe_decide(empty));
    CHECK(!qe_decide(Conjunction::falsum()));

    Conjunction two;
    two.exist = {1, 2};
    two.atoms = {{P("x^2+y^2-1"), Rel::Eq}, {P("x-y"), Rel::Eq}, {P("x"), Rel::Gt}};
    CHECK(qe_decide(two));
    two.atoms.push_back({P("x-2"), Rel::Ge});
    CHECK(!qe_decide(two));
}

TEST_CASE("qe against the exact one-variable oracle on random conjunctions") {
    std::mt19937 rng(4242);
    int done = 0;
    while (done < 150) {
        std::vector<Atom> atoms;
        // one equation quadratic-or-linear in x plus up to two side conditions
        int na = 1 + (int)(rng() % 3);
        for (int i = 0; i < na; ++i) {
            Polynomial p(3);
            int dx = 1 + (int)(rng() % 2);
            p.add_term({0, dx, 0}, oracles::random_rational(rng, 3, 1));
            if (rng() % 2) p.add_term({1, 1, 0}, oracles::random_rational(rng, 2, 1));
            p.add_term({(int)(rng() % 2), 0, 0}, oracles::random_rational(rng, 3, 1));
            p.add_term({0, 0, 0}, oracles::random_rational(rng, 3, 2));
            if (p.is_constant()) continue;
            Rel rel = i == 0 ? Rel::Eq : std::vector<Rel>{Rel::Gt, Rel::Ge, Rel::Le, Rel::Neq}[rng() % 4];
            atoms.push_back({p, rel});
        }
        if (atoms.empty() || !atoms[0].poly.contains_var(1)) continue;
        ++done;
        QfFormula1V f = qe_exists(conj1v(atoms));
        for (int num = -8; num <= 8; ++num) {
            Rational m = make_rational(num, 4);
            REQUIRE(f.holds_at(m) == oracle_exists_1v(atoms, m));
        }
    }
}

TEST_CASE("projection polynomials are sign-invariant on sampled cells") {
    // decomposition induced by x^2 + m x + 1 over m
    auto ps = project({P("x^2+m*x+1")}, {0, 1});
    std::vector<RealAlg> roots;
    for (const auto& q : ps.levels[0])
        for (const auto& r : RealAlg::roots_of(UPoly::from_polynomial(q, 0))) roots.push_back(r);
    std::sort(roots.begin(), roots.end());
    roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
    REQUIRE(roots.size() >= 2);
    std::mt19937 rng(7);
    auto check_sector = [&](const Rational& lo, const Rational& hi) {
        for (const auto& q : ps.levels[0]) {
            UPoly base = UPoly::from_polynomial(q, 0);
            int ref = 0;
            for (int k = 0; k < 3; ++k) {
                Rational t = make_rational(1 + (int)(rng() % 7), 8);
                Rational m = lo + (hi - lo) * t;
                int sg = base.sign_at(m);
                if (k == 0) ref = sg;
                CHECK(sg == ref);
                CHECK(sg != 0);
                // level-2 polynomial sign between its own roots above this m
                SamplePoint pt;
                pt[0] = RealAlg::from_rational(m);
                RootsAbove ra = roots_above(ps.levels[1][0], pt, 1);
                if (ra.roots.size() == 2) {
                    Rational mid = rational_between(ra.roots[0], ra.roots[1]);
                    pt[1] = RealAlg::from_rational(mid);
                    CHECK(sign_at(ps.levels[1][0], pt) < 0);
                }
            }
        }
    };
    for (size_t i = 0; i + 1 < roots.size(); ++i) {
        Rational lo = roots[i].rational_above();
        Rational hi = roots[i + 1].rational_below();
        if (lo < hi) check_sector(lo, hi);
    }
    check_sector(roots.front().rational_below() - 2, roots.front().rational_below());
    check_sector(roots.back().rational_above(), roots.back().rational_above() + 2);
}

TEST_CASE("deadline aborts with the documented error") {
    CadOptions opts;
    opts.deadline = std::chrono::steady_clock::now() - std::chrono::seconds(1);
    Conjunction c = conj1v({{P("x^2-m"), Rel::Eq}});
    CHECK_THROWS_WITH((void)qe_exists(c, opts), "timeout");
}
