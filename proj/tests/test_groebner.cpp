#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "geoineq/groebner.hpp"
#include "geoineq/numeric.hpp"
#include "oracles.hpp"

using namespace geoineq;

namespace {

const std::vector<std::string> XY = {"x", "y"};
const std::vector<std::string> XYZ = {"x", "y", "z"};

Polynomial P2(const std::string& s) { return Polynomial::parse(s, XY); }
Polynomial P3(const std::string& s) { return Polynomial::parse(s, XYZ); }

Polynomial random_poly(std::mt19937& rng, int nvars, int max_deg, int max_terms) {
    Polynomial p(nvars);
    int nt = 1 + (int)(rng() % (unsigned)max_terms);
    for (int i = 0; i < nt; ++i) {
        Exps e(nvars, 0);
        for (int v = 0; v < nvars; ++v) e[v] = (int)(rng() % (unsigned)(max_deg + 1));
        p.add_term(e, oracles::random_rational(rng, 5, 2));
    }
    return p;
}

Polynomial spoly(const Polynomial& f, const Polynomial& g, const MonomialOrder& ord) {
    Exps lf = f.leading_monomial(ord), lg = g.leading_monomial(ord);
    Exps l(lf.size()), ef(lf.size()), eg(lf.size());
    for (size_t i = 0; i < l.size(); ++i) {
        l[i] = std::max(lf[i], lg[i]);
        ef[i] = l[i] - lf[i];
        eg[i] = l[i] - lg[i];
    }
    auto shift = [](const Polynomial& p, const Exps& e, const Rational& c) {
        Polynomial r(p.nvars());
        for (const auto& [pe, pc] : p.terms()) {
            Exps ne = pe;
            for (size_t i = 0; i < ne.size(); ++i) ne[i] += e[i];
            r.add_term(ne, pc * c);
        }
        return r;
    };
    return shift(f, ef, Rational(1) / f.leading_coeff(ord)) -
           shift(g, eg, Rational(1) / g.leading_coeff(ord));
}

} // namespace

TEST_CASE("buchberger spec examples") {
    MonomialOrder lex = MonomialOrder::lex();
    auto gb = buchberger({P2("x^2+y^2-1"), P2("x-y")}, lex);
    REQUIRE(gb.gens.size() == 2);
    CHECK(gb.gens[0] == P2("2*y^2-1"));
    CHECK(gb.gens[1] == P2("x-y"));

    auto idem = buchberger({P2("x"), P2("x")}, lex);
    REQUIRE(idem.gens.size() == 1);
    CHECK(idem.gens[0] == P2("x"));

    auto unit = buchberger({P2("x*y-1"), P2("x^2")}, lex);
    REQUIRE(unit.gens.size() == 1);
    CHECK(unit.gens[0].is_constant());
}

TEST_CASE("budget cap raises the documented error") {
    GroebnerBudget tiny;
    tiny.max_pair_reductions = 1;
    std::vector<Polynomial> gens = {P3("x^3*y+z"), P3("y^3*z+x"), P3("z^3*x+y"), P3("x*y*z-1")};
    CHECK_THROWS_WITH((void)buchberger(gens, MonomialOrder::grevlex(), tiny),
                      "groebner-budget-exceeded");
}

TEST_CASE("eliminate spec examples") {
    // {m*v19 - v20, v19 - 1, v20 - 2} keep {m} -> {m - 2}; vars: m=0, v19=1, v20=2
    std::vector<std::string> names = {"m", "a", "b"};
    auto P = [&](const std::string& t) { return Polynomial::parse(t, names); };
    auto out = eliminate({P("m*a-b"), P("a-1"), P("b-2")}, {0}, 3);
    REQUIRE(out.size() == 1);
    CHECK(out[0] == P("m-2"));
    // zero elimination ideal
    auto none = eliminate({P("m*a-b")}, {0}, 3);
    CHECK(none.empty());
}

TEST_CASE("groebner property suite on random small ideals") {
    std::mt19937 rng(71);
    int done = 0;
    while (done < 200) {
        int nv = 2 + (int)(rng() % 2);
        std::vector<Polynomial> gens;
        int ng = 2 + (int)(rng() % 2);
        for (int i = 0; i < ng; ++i) {
            Polynomial p = random_poly(rng, nv, 2, 3);
            if (!p.is_zero()) gens.push_back(p);
        }
        if (gens.empty()) continue;
        MonomialOrder ord = (rng() % 2) ? MonomialOrder::lex() : MonomialOrder::grevlex();
        GroebnerBasis gb;
        try {
            gb = buchberger(gens, ord);
        } catch (const std::runtime_error&) {
            continue;  // budget blowup on a degenerate draw
        }
        if (gb.gens.empty()) continue;
        // every input generator reduces to zero
        for (const auto& g : gens) REQUIRE(normal_form(g, gb.gens, ord).is_zero());
        // all S-pairs of the output reduce to zero
        for (size_t i = 0; i < gb.gens.size(); ++i)
            for (size_t j = i + 1; j < gb.gens.size(); ++j)
                REQUIRE(normal_form(spoly(gb.gens[i], gb.gens[j], ord), gb.gens, ord).is_zero());
        // reduced: no generator's term is divisible by another's lead
        for (size_t i = 0; i < gb.gens.size(); ++i) {
            Exps li = gb.gens[i].leading_monomial(ord);
            for (size_t j = 0; j < gb.gens.size(); ++j) {
                if (i == j) continue;
                for (const auto& [e, coeff] : gb.gens[j].terms()) {
                    bool div = true;
                    for (size_t k = 0; k < e.size(); ++k)
                        if (li[k] > e[k]) div = false;
                    REQUIRE(!div);
                }
            }
        }
        ++done;
    }
}

TEST_CASE("ideal membership is order independent") {
    std::mt19937 rng(99);
    int done = 0;
    while (done < 40) {
        std::vector<Polynomial> gens = {random_poly(rng, 2, 2, 2), random_poly(rng, 2, 2, 2)};
        Polynomial member = gens[0] * random_poly(rng, 2, 1, 2) + gens[1] * random_poly(rng, 2, 1, 2);
        Polynomial probe = random_poly(rng, 2, 2, 3);
        GroebnerBasis lex, grev;
        try {
            lex = buchberger(gens, MonomialOrder::lex());
            grev = buchberger(gens, MonomialOrder::grevlex());
        } catch (const std::runtime_error&) {
            continue;
        }
        REQUIRE(normal_form(member, lex.gens, lex.order).is_zero());
        REQUIRE(normal_form(member, grev.gens, grev.order).is_zero());
        bool in_lex = normal_form(probe, lex.gens, lex.order).is_zero();
        bool in_grev = normal_form(probe, grev.gens, grev.order).is_zero();
        REQUIRE(in_lex == in_grev);
        ++done;
    }
}

TEST_CASE("eliminate output mentions only kept variables") {
    std::mt19937 rng(123);
    for (int t = 0; t < 40; ++t) {
        std::vector<Polynomial> gens = {random_poly(rng, 3, 2, 3), random_poly(rng, 3, 2, 3),
                                        random_poly(rng, 3, 1, 2)};
        std::vector<Polynomial> out;
        try {
            out = eliminate(gens, {0}, 3);
        } catch (const std::runtime_error&) {
            continue;
        }
        for (const auto& p : out)
            for (int v : p.vars()) CHECK(v == 0);
    }
}

TEST_CASE("candidate_ratios selects the realized root") {
    // synthetic midpoint system: m = |AB| / |AM| = 2
    Construction c = parse_construction("point A; point B; midpoint M A B; distance g A M; distance f A B");
    QuerySpec q = QuerySpec::compare("g", "f");
    SemiAlgebraicSystem s = attach_query(fix_wlog(algebraize(c), c, &q), q, c);
    // {m^2 - 4} with sampled ratio ~2.0 -> root 2 picked, -2 rejected
    int m = *s.ratio_var;
    Polynomial gen = Polynomial::variable(s.nvars, m).pow(2) - Polynomial::constant(s.nvars, 4);
    auto picked = candidate_ratios({gen}, s, c, q);
    REQUIRE(picked.has_value());
    REQUIRE(picked->size() == 1);
    CHECK((*picked)[0].cmp(Rational(2)) == 0);

    // {m - 2} -> 2
    Polynomial lin = Polynomial::variable(s.nvars, m) - Polynomial::constant(s.nvars, 2);
    auto one = candidate_ratios({lin}, s, c, q);
    REQUIRE(one.has_value());
    CHECK((*one)[0].cmp(Rational(2)) == 0);

    // {} -> none
    CHECK(!candidate_ratios({}, s, c, q).has_value());

    // no root matches the sampled ratio
    Polynomial wrong = Polynomial::variable(s.nvars, m) - Polynomial::constant(s.nvars, 7);
    CHECK_THROWS_WITH((void)candidate_ratios({wrong}, s, c, q), "ratio-verification-failed");
}

TEST_CASE("full elimination fast path on the midpoint system") {
    Construction c = parse_construction("point A; point B; midpoint M A B; distance g A M; distance f A B");
    QuerySpec q = QuerySpec::compare("g", "f");
    SemiAlgebraicSystem s = attach_query(fix_wlog(algebraize(c), c, &q), q, c);
    auto elim = eliminate(s.he, {*s.ratio_var}, s.nvars);
    REQUIRE(!elim.empty());
    auto picked = candidate_ratios(elim, s, c, q);
    REQUIRE(picked.has_value());
    CHECK((*picked)[0].cmp(Rational(2)) == 0);
}
