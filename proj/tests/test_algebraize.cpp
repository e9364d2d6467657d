#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "geoineq/algebraize.hpp"
#include "geoineq/numeric.hpp"
#include "geoineq/realalg.hpp"

using namespace geoineq;

namespace {

const char* PENTAGON =
    "point A; point B; regular_polygon A B 5 -> C D E; on_segment F A E; "
    "on_segment G B C; distance f A B; distance k F G";

const char* TRIANGLE =
    "point A; point B; point C; triangle A B C; "
    "distance a B C; distance b A C; distance c A B";

// the pentagon system's variable names, with the two length variables renamed
// to v19/v20 as in the reference list (v17, v18 unused there)
std::vector<std::string> pentagon_names() {
    std::vector<std::string> n;
    for (int i = 1; i <= 16; ++i) n.push_back("v" + std::to_string(i));
    n.push_back("v19");
    n.push_back("v20");
    n.push_back("m");
    return n;
}

bool he_contains(const SemiAlgebraicSystem& s, const Polynomial& p) {
    for (const auto& q : s.he)
        if (q == p || q == -p) return true;
    return false;
}

bool hi_contains(const SemiAlgebraicSystem& s, const Polynomial& p, Rel r) {
    for (const auto& [q, qr] : s.hi)
        if (qr == r && (q == p || q == -p)) return true;
    return false;
}

} // namespace

TEST_CASE("minpoly_cos known values") {
    CHECK(minpoly_cos(5).to_string() == "4*x^2+2*x-1");
    CHECK(minpoly_cos(3).to_string() == "2*x+1");
    CHECK(minpoly_cos(6).to_string() == "2*x-1");
    CHECK(minpoly_cos(4).to_string() == "x");
    for (int n = 3; n <= 16; ++n) {
        UPoly p = minpoly_cos(n);
        CHECK(std::abs(p.eval_double(std::cos(2 * M_PI / n))) < 1e-9);
        CHECK(p.lc() > 0);
    }
    CHECK_THROWS(minpoly_cos(2));
    CHECK_THROWS(minpoly_cos(17));
}

TEST_CASE("pentagon translation matches the reference polynomial list") {
    Construction c = parse_construction(PENTAGON);
    SemiAlgebraicSystem s = algebraize(c);
    auto N = pentagon_names();
    REQUIRE((int)s.var_names.size() == 19);

    auto P = [&](const std::string& t) { return Polynomial::parse(t, N); };

    CHECK(s.he.size() == 12);
    CHECK(he_contains(s, P("-1+2*v5+4*v5^2")));
    CHECK(he_contains(s, P("-1+v6^2+v5^2")));
    // vertex chain
    CHECK(he_contains(s, P("-v7-v6*v4+v3+v5*v3+v6*v2-v5*v1")));
    CHECK(he_contains(s, P("-v8+v4+v5*v4+v6*v3-v5*v2-v6*v1")));
    CHECK(he_contains(s, P("-v9+v7-v8*v6+v7*v5+v6*v4-v5*v3")));
    CHECK(he_contains(s, P("-v10+v8+v7*v6+v8*v5-v5*v4-v6*v3")));
    CHECK(he_contains(s, P("-v11+v9-v10*v6+v8*v6+v9*v5-v7*v5")));
    CHECK(he_contains(s, P("-v12+v10+v9*v6-v7*v6+v10*v5-v8*v5")));
    // F on AE, G on BC: collinearity
    CHECK(he_contains(s, P("v13*v12-v14*v11-v13*v2+v11*v2+v14*v1-v12*v1")));
    CHECK(he_contains(s, P("v15*v8-v16*v7-v15*v4+v7*v4+v16*v3-v8*v3")));
    // length definitions
    CHECK(he_contains(s, P("v19^2-v4^2-v3^2+2*v4*v2-v2^2+2*v3*v1-v1^2")));
    CHECK(he_contains(s, P("v20^2-v16^2-v15^2+2*v16*v14-v14^2+2*v15*v13-v13^2")));

    CHECK(s.hi.size() == 6);
    CHECK(hi_contains(s, P("-v7*v4+v8*v3+v7*v2-v3*v2-v8*v1+v4*v1"), Rel::Gt));
    CHECK(hi_contains(s, P("v8*v4-v4^2+v7*v3-v3^2-v8*v2+v4*v2-v7*v1+v3*v1"), Rel::Gt));
    CHECK(hi_contains(s, P("-v14^2-v13^2+v14*v12+v13*v11+v14*v2-v12*v2+v13*v1-v11*v1"), Rel::Ge));
    CHECK(hi_contains(s, P("-v16^2-v15^2+v16*v8+v15*v7+v16*v4-v8*v4+v15*v3-v7*v3"), Rel::Ge));
    CHECK(hi_contains(s, P("v19"), Rel::Gt));
    CHECK(hi_contains(s, P("v20"), Rel::Gt));
}

TEST_CASE("triangle translation") {
    Construction c = parse_construction(TRIANGLE);
    SemiAlgebraicSystem s = algebraize(c);
    CHECK(s.point_vars.size() == 3);
    CHECK(s.quantity_vars.size() == 3);
    CHECK(s.he.size() == 3);  // three squared length definitions
    CHECK(s.hi.size() == 4);  // orientation + three positivities
    AlgebraizeOptions deg;
    deg.allow_degenerate = true;
    SemiAlgebraicSystem s2 = algebraize(c, deg);
    int ge = 0;
    for (const auto& [p, r] : s2.hi) ge += (r == Rel::Ge);
    CHECK(ge == 3);
}

TEST_CASE("midpoint of pinned segment") {
    Construction c = parse_construction("point A; point B; midpoint M A B; distance h A M");
    SemiAlgebraicSystem s = fix_wlog(algebraize(c), c);
    auto N = s.var_names;
    auto P = [&](const std::string& t) { return Polynomial::parse(t, N); };
    CHECK(he_contains(s, P("2*v5-1")));
    CHECK(he_contains(s, P("2*v6")));
    // the squared length stays quadratic here; it turns linear only once
    // delinearization substitutes M's coordinates
    CHECK(he_contains(s, P("v7^2-v5^2-v6^2")));
}

TEST_CASE("fix_wlog pins and rewrites the pentagon base length") {
    Construction c = parse_construction(PENTAGON);
    SemiAlgebraicSystem s0 = algebraize(c);
    QuerySpec q = QuerySpec::compare("f", "k");
    SemiAlgebraicSystem s = fix_wlog(s0, c, &q);
    auto N = pentagon_names();
    CHECK(s.pinned.size() == 4);
    CHECK(he_contains(s, Polynomial::parse("v19-1", N)));
    for (const auto& p : s.he) {
        CHECK(!p.contains_var(0));
        CHECK(!p.contains_var(2));
    }
}

TEST_CASE("fix_wlog rejections") {
    Construction c1 = parse_construction("point A; point B; distance c A B");
    CHECK_THROWS_WITH(
        (void)fix_wlog(algebraize(parse_construction("point A")), parse_construction("point A")),
        "wlog-unjustified");
    QuerySpec bad = QuerySpec::prove("c > 1", c1);  // not scale invariant
    CHECK_THROWS_WITH((void)fix_wlog(algebraize(c1), c1, &bad), "wlog-unjustified");
    QuerySpec good = QuerySpec::prove("c > 0", c1);
    CHECK_NOTHROW((void)fix_wlog(algebraize(c1), c1, &good));
}

TEST_CASE("attach_query compare adds the ratio definition") {
    Construction c = parse_construction(PENTAGON);
    QuerySpec q = QuerySpec::compare("f", "k");
    SemiAlgebraicSystem s = attach_query(fix_wlog(algebraize(c), c, &q), q, c);
    CHECK(q.e1 == 1);
    CHECK(q.e2 == 1);
    REQUIRE(s.ratio_var.has_value());
    CHECK(s.var_names[*s.ratio_var] == "m");
    auto N = pentagon_names();
    CHECK(he_contains(s, Polynomial::parse("m*v19-v20", N)));
    // f > 0 exists already; no duplicate atom
    int count = 0;
    for (const auto& [p, r] : s.hi)
        if (p == Polynomial::parse("v19", N) && r == Rel::Gt) ++count;
    CHECK(count == 1);
}

TEST_CASE("attach_query balances mixed degrees") {
    Construction c = parse_construction(std::string(TRIANGLE) + "; expr d = a^2 + b^2");
    QuerySpec q = QuerySpec::compare("d", "c");
    SemiAlgebraicSystem s = attach_query(fix_wlog(algebraize(c), c, &q), q, c);
    CHECK(q.e1 == 1);
    CHECK(q.e2 == 2);
    int dv = s.quantity_vars.at("d"), cv = s.quantity_vars.at("c"), m = *s.ratio_var;
    Polynomial expect = Polynomial::variable(s.nvars, m) * Polynomial::variable(s.nvars, dv) -
                        Polynomial::variable(s.nvars, cv).pow(2);
    CHECK(he_contains(s, expect));
    CHECK(hi_contains(s, Polynomial::variable(s.nvars, dv), Rel::Gt));

    Construction bad = parse_construction(std::string(TRIANGLE) + "; expr w = a^2 + b");
    QuerySpec qb = QuerySpec::compare("w", "c");
    CHECK_THROWS_WITH((void)attach_query(algebraize(bad), qb, bad), "degree-balance-failed");
}

TEST_CASE("attach_query prove appends the negated statement") {
    Construction c = parse_construction(TRIANGLE);
    QuerySpec q = QuerySpec::prove("a+b > c", c);
    SemiAlgebraicSystem s = attach_query(fix_wlog(algebraize(c), c, &q), q, c);
    int av = s.quantity_vars.at("a"), bv = s.quantity_vars.at("b"), cv = s.quantity_vars.at("c");
    Polynomial neg = Polynomial::variable(s.nvars, cv) - Polynomial::variable(s.nvars, av) -
                     Polynomial::variable(s.nvars, bv);
    CHECK(hi_contains(s, neg, Rel::Ge));
    CHECK(!s.ratio_var.has_value());
}

TEST_CASE("random instances satisfy every emitted constraint") {
    std::mt19937 rng(41);
    for (const char* src :
         {PENTAGON, TRIANGLE,
          "point A; point B; point P; midpoint M A B; intersect X A M B P; "
          "circumcenter O A B P; triangle A B P; distance r O A; distance s M X"}) {
        Construction c = parse_construction(src);
        SemiAlgebraicSystem s = algebraize(c);
        int done = 0;
        while (done < 40) {
            auto inst = random_instance(c, rng, false);
            if (!inst) continue;
            auto v = instance_vars(*inst, s, c);
            for (const auto& p : s.he) REQUIRE(std::abs(p.eval_double(v)) < 1e-6);
            bool strict_ok = true;
            for (const auto& [p, r] : s.hi) {
                double val = p.eval_double(v);
                if (r == Rel::Gt && val < 1e-9) strict_ok = false;  // rare boundary draw
                if (r == Rel::Ge) REQUIRE(val > -1e-9);
            }
            if (strict_ok) ++done;
        }
    }
}

TEST_CASE("regular polygon constraints pin a unique solution for n in 3..6") {
    // With A=(0,0), B=(1,0): enumerate the minpoly roots and both sine signs;
    // exactly one combination satisfies the emitted sign conditions.
    for (int n = 3; n <= 6; ++n) {
        UPoly mp = minpoly_cos(n);
        int valid = 0;
        double chosen_c = 2, chosen_s = 2;
        for (const auto& root : RealAlg::roots_of(mp)) {
            double c0 = root.approx();
            if (std::abs(c0) > 1) continue;
            double s_abs = std::sqrt(1 - c0 * c0);
            for (double s0 : {s_abs, -s_abs}) {
                bool ok = s0 > 1e-12;                    // orientation: C above AB
                if (mp.degree() > 1) ok = ok && c0 > 0;  // perpendicular half-plane
                if (ok) {
                    ++valid;
                    chosen_c = c0;
                    chosen_s = s0;
                }
            }
        }
        CHECK(valid == 1);
        CHECK(chosen_c == doctest::Approx(std::cos(2 * M_PI / n)).epsilon(1e-9));
        CHECK(chosen_s == doctest::Approx(std::sin(2 * M_PI / n)).epsilon(1e-9));
    }
}
