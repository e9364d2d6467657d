#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "geoineq/preprocess.hpp"
#include "oracles.hpp"

using namespace geoineq;

namespace {

const std::vector<std::string> MXY = {"m", "x", "y"};
Polynomial P(const std::string& s) { return Polynomial::parse(s, MXY); }

const char* PENTAGON =
    "point A; point B; regular_polygon A B 5 -> C D E; on_segment F A E; "
    "on_segment G B C; distance f A B; distance k F G";

bool contains_pm(const std::vector<Polynomial>& set, const Polynomial& p) {
    for (const auto& q : set)
        if (q == p || q == -p) return true;
    return false;
}

bool atom_present(const Conjunction& c, const Polynomial& p, Rel r) {
    for (const auto& a : c.atoms)
        if (a.rel == r && (a.poly == p || (r == Rel::Eq && a.poly == -p) || (r == Rel::Neq && a.poly == -p)))
            return true;
    return false;
}

// evaluate an atom at an exact rational point
bool atom_holds(const Atom& a, const std::vector<Rational>& pt) {
    int sg = sign_of(a.poly.eval(pt));
    switch (a.rel) {
    case Rel::Eq: return sg == 0;
    case Rel::Neq: return sg != 0;
    case Rel::Gt: return sg > 0;
    case Rel::Ge: return sg >= 0;
    case Rel::Lt: return sg < 0;
    case Rel::Le: return sg <= 0;
    }
    return false;
}

bool conj_holds(const Conjunction& c, const std::vector<Rational>& pt) {
    if (c.is_false) return false;
    for (const auto& a : c.atoms)
        if (!atom_holds(a, pt)) return false;
    return true;
}

// reconstruct eliminated coordinates from the substitution log (last first)
bool lift_point(const std::vector<Substitution>& log, std::vector<Rational>& pt) {
    for (auto it = log.rbegin(); it != log.rend(); ++it) {
        Rational den = it->den.eval(pt);
        if (den == 0) return false;
        pt[it->var] = it->num.eval(pt) / den;
    }
    return true;
}

} // namespace

TEST_CASE("simplify_quick spec examples") {
    Conjunction c;
    c.free_var = 0;
    c.exist = {1};
    // {x - 1 = 0, x > 0, m*x - 2 = 0}: x substituted by 1, x > 0 dropped
    c.atoms = {{P("x-1"), Rel::Eq}, {P("x"), Rel::Gt}, {P("m*x-2"), Rel::Eq}};
    Conjunction r = simplify_quick(c);
    REQUIRE(!r.is_false);
    REQUIRE(r.atoms.size() == 1);
    CHECK(r.atoms[0].poly == P("m-2"));
    CHECK(r.exist.empty());

    Conjunction contradiction;
    contradiction.exist = {1};
    contradiction.atoms = {{P("x"), Rel::Gt}, {P("x"), Rel::Lt}};
    CHECK(simplify_quick(contradiction).is_false);

    Conjunction dup;
    dup.exist = {1};
    dup.atoms = {{P("x"), Rel::Ge}, {P("x"), Rel::Ge}};
    CHECK(simplify_quick(dup).atoms.size() == 1);

    Conjunction dominated;
    dominated.exist = {1};
    dominated.atoms = {{P("x-1"), Rel::Ge}, {P("x"), Rel::Ge}};
    Conjunction rd = simplify_quick(dominated);
    REQUIRE(rd.atoms.size() == 1);
    CHECK(rd.atoms[0].poly == P("x-1"));
}

TEST_CASE("delinearize spec examples") {
    // {x - y = 0, x^2 + y^2 - 1 = 0}, eliminate x -> {2y^2 - 1}
    auto out = delinearize({P("x-y"), P("x^2+y^2-1")}, {0, 2});
    REQUIRE(out.size() == 1);
    CHECK(contains_pm(out, P("2*y^2-1")));
    CHECK(delinearize({}, {}).empty());
    // protected variable pinned to a rational keeps its equation
    auto pinned = delinearize({P("y-2"), P("m*y-x")}, {0, 1, 2});
    REQUIRE(pinned.size() == 2);
    CHECK(contains_pm(pinned, P("y-2")));
    CHECK(contains_pm(pinned, P("2*m-x")));
}

TEST_CASE("pentagon delinearization reproduces the reference 11-equation list") {
    Construction c = parse_construction(PENTAGON);
    QuerySpec q = QuerySpec::compare("f", "k");
    SemiAlgebraicSystem s = attach_query(fix_wlog(algebraize(c), c, &q), q, c);
    std::set<int> protect = {*s.ratio_var};
    for (const auto& [p, r] : s.hi)
        for (int v : p.vars()) protect.insert(v);
    auto out = delinearize(s.he, protect);

    std::vector<std::string> N;
    for (int i = 1; i <= 16; ++i) N.push_back("v" + std::to_string(i));
    N.push_back("v19");
    N.push_back("v20");
    N.push_back("m");
    auto PP = [&](const std::string& t) { return Polynomial::parse(t, N); };

    REQUIRE(out.size() == 11);
    CHECK(contains_pm(out, PP("-v13^2+2*v13*v15-v15^2-v14^2+2*v14*v16-v16^2+v20^2")));
    CHECK(contains_pm(out, PP("v10*v7-2*v7*v8-v12+v8*v9+v8")));
    CHECK(contains_pm(out, PP("-v10*v8+v8^2-v11-v7^2+v7*v9+v7")));
    CHECK(contains_pm(out, PP("v7^2-2*v7+v8^2")));
    CHECK(contains_pm(out, PP("4*v7^2-6*v7+1")));
    CHECK(contains_pm(out, PP("-v15*v8+v8+v16*v7-v16")));
    CHECK(contains_pm(out, PP("-v10+2*v7*v8-v8")));
    CHECK(contains_pm(out, PP("v7^2-v7-v8^2-v9+1")));
    CHECK(contains_pm(out, PP("-v11*v14+v12*v13")));
    CHECK(contains_pm(out, PP("-m+v20")));
    CHECK(contains_pm(out, PP("-v19+1")));
}

TEST_CASE("case_split spec examples") {
    // {y*x - 1 = 0, x > 0}, x existential, y free
    Conjunction c;
    c.free_var = 2;
    c.exist = {1};
    c.atoms = {{P("y*x-1"), Rel::Eq}, {P("x"), Rel::Gt}};
    DisjunctiveProblem d = case_split(c);
    REQUIRE(d.branches.size() == 1);  // the y = 0 branch is contradictory
    CHECK(atom_present(d.branches[0], P("y"), Rel::Gt));
    CHECK(atom_present(d.branches[0], P("y"), Rel::Neq));
    CHECK(d.branches[0].exist.empty());

    // constant leading coefficient: single branch, no split
    Conjunction c2;
    c2.free_var = 2;
    c2.exist = {1};
    c2.atoms = {{P("2*x-y"), Rel::Eq}, {P("x"), Rel::Ge}};
    DisjunctiveProblem d2 = case_split(c2);
    REQUIRE(d2.branches.size() == 1);
    REQUIRE(d2.branches[0].atoms.size() == 1);
    CHECK(d2.branches[0].atoms[0].poly == P("y"));
    CHECK(d2.branches[0].atoms[0].rel == Rel::Ge);

    // fixpoint: nothing linear to do
    Conjunction c3;
    c3.free_var = 0;
    c3.exist = {1};
    c3.atoms = {{P("x^2-m"), Rel::Eq}};
    DisjunctiveProblem d3 = case_split(c3);
    REQUIRE(d3.branches.size() == 1);
    CHECK(d3.branches[0].atoms.size() == 1);

    // genuine two-way split: (m*x - 1 = 0 \/ ...) with x also quadratic
    Conjunction c4;
    c4.free_var = 0;
    c4.exist = {1};
    c4.atoms = {{P("m*x-1"), Rel::Eq}, {P("x^2-4"), Rel::Eq}};
    DisjunctiveProblem d4 = case_split(c4);
    REQUIRE(d4.branches.size() == 1);  // m=0 branch forces 1=0, dropped
    CHECK(atom_present(d4.branches[0], P("m"), Rel::Neq));
    // x := 1/m into x^2 - 4, cleared by m^2: 1 - 4m^2
    CHECK(atom_present(d4.branches[0], P("4*m^2-1"), Rel::Eq));
}

TEST_CASE("case_split branch cap") {
    // chain of split-forcing equalities to overflow a tiny cap
    Conjunction c;
    c.free_var = 0;
    c.exist = {1, 2};
    c.atoms = {{P("y*x-m"), Rel::Eq}, {P("x"), Rel::Ge}};
    CHECK_THROWS_WITH((void)case_split(c, 1), "case-split-budget");
}

TEST_CASE("preprocessing preserves the solution set on a rational grid") {
    std::mt19937 rng(2718);
    const std::vector<Rational> grid_vals = {make_rational(-2), make_rational(-1), make_rational(0),
                                             make_rational(1, 2), make_rational(1), make_rational(2)};
    int done = 0;
    while (done < 500) {
        // random conjunction: 3 variables (m free, x and y existential)
        Conjunction c;
        c.free_var = 0;
        c.exist = {1, 2};
        int na = 2 + (int)(rng() % 3);
        for (int i = 0; i < na; ++i) {
            Polynomial p(3);
            int nt = 1 + (int)(rng() % 3);
            for (int t = 0; t < nt; ++t) {
                Exps e(3, 0);
                e[rng() % 3] = 1 + (int)(rng() % 2);
                if (rng() % 2) e[rng() % 3] += 1;
                p.add_term(e, oracles::random_rational(rng, 3, 2));
            }
            p.add_term(Exps(3, 0), oracles::random_rational(rng, 3, 2));
            if (p.is_zero()) continue;
            Rel rel = std::vector<Rel>{Rel::Eq, Rel::Gt, Rel::Ge, Rel::Le}[rng() % 4];
            c.atoms.push_back({p, rel});
        }
        if (c.atoms.empty()) continue;
        DisjunctiveProblem d;
        try {
            d = case_split(c);
        } catch (const std::runtime_error&) {
            continue;
        }
        ++done;

        for (const Rational& mv : grid_vals)
            for (const Rational& xv : grid_vals)
                for (const Rational& yv : grid_vals) {
                    std::vector<Rational> pt = {mv, xv, yv};
                    bool orig = conj_holds(c, pt);
                    if (orig) {
                        // some branch must hold at this witness (its atoms
                        // never mention the eliminated variables)
                        bool any = false;
                        for (const auto& b : d.branches)
                            if (conj_holds(b, pt)) any = true;
                        REQUIRE(any);
                    }
                    // and every branch witness lifts back to an original one
                    for (const auto& b : d.branches) {
                        if (!conj_holds(b, pt)) continue;
                        std::vector<Rational> lifted = pt;
                        REQUIRE(lift_point(b.subst_log, lifted));
                        REQUIRE(lifted[0] == mv);  // free variable untouched
                        REQUIRE(conj_holds(c, lifted));
                    }
                }
    }
}

TEST_CASE("delinearize drops eliminated variables and preserves the variety") {
    std::mt19937 rng(555);
    const std::vector<Rational> grid_vals = {make_rational(-1), make_rational(0), make_rational(1),
                                             make_rational(2)};
    for (int iter = 0; iter < 120; ++iter) {
        std::vector<Polynomial> he;
        int ne = 2 + (int)(rng() % 2);
        for (int i = 0; i < ne; ++i) {
            Polynomial p(3);
            int nt = 1 + (int)(rng() % 3);
            for (int t = 0; t < nt; ++t) {
                Exps e(3, 0);
                e[rng() % 3] = 1;
                if (rng() % 3 == 0) e[rng() % 3] += 1;
                p.add_term(e, oracles::random_rational(rng, 3, 2));
            }
            p.add_term(Exps(3, 0), oracles::random_rational(rng, 2, 1));
            if (!p.is_zero()) he.push_back(p);
        }
        std::set<int> protect = {0};
        std::vector<Substitution> log;
        auto out = delinearize(he, protect, &log);
        CHECK(out.size() <= he.size());
        std::set<int> gone;
        for (const auto& sub : log) gone.insert(sub.var);
        for (const auto& p : out)
            for (int v : p.vars()) CHECK(!gone.count(v));

        for (const Rational& a : grid_vals)
            for (const Rational& b : grid_vals)
                for (const Rational& cc : grid_vals) {
                    std::vector<Rational> pt = {a, b, cc};
                    bool orig = true;
                    for (const auto& p : he) orig = orig && p.eval(pt) == 0;
                    bool red = true;
                    for (const auto& p : out) red = red && p.eval(pt) == 0;
                    if (orig) REQUIRE(red);  // reduced system is a consequence
                    if (red) {
                        std::vector<Rational> lifted = pt;
                        REQUIRE(lift_point(log, lifted));
                        for (const auto& p : he) REQUIRE(p.eval(lifted) == 0);
                    }
                }
    }
}
