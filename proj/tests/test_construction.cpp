#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "geoineq/construction.hpp"

using namespace geoineq;

namespace {

const char* PENTAGON =
    "point A; point B; regular_polygon A B 5 -> C D E; on_segment F A E; "
    "on_segment G B C; distance f A B; distance k F G";

const char* TRIANGLE =
    "point A; point B; point C; triangle A B C; "
    "distance a B C; distance b A C; distance c A B";

} // namespace

TEST_CASE("pentagon construction parses per the figure") {
    Construction c = parse_construction(PENTAGON);
    REQUIRE(c.elements.size() == 5);
    REQUIRE(c.quantities.size() == 2);
    CHECK(c.elements[2].kind == ElemKind::RegularPolygon);
    CHECK(c.elements[2].ngon == 5);
    CHECK(c.elements[2].defines == std::vector<std::string>{"C", "D", "E"});
    CHECK(c.elements[3].kind == ElemKind::PointOnSegment);
    CHECK(c.points == std::vector<std::string>{"A", "B", "C", "D", "E", "F", "G"});
    CHECK(c.quantities[0].name == "f");
    CHECK(c.quantities[1].kind == QtyKind::Distance);
}

TEST_CASE("triangle construction with side labels") {
    Construction c = parse_construction(TRIANGLE);
    REQUIRE(c.elements.size() == 4);
    CHECK(c.elements[3].kind == ElemKind::Triangle);
    CHECK(c.quantities.size() == 3);
    CHECK(c.quantity_index("b") == 1);
}

TEST_CASE("parse errors") {
    CHECK_THROWS_AS(parse_construction("point A; distance x A A"), ParseError);
    CHECK_THROWS_AS(parse_construction("point A; point A"), ParseError);
    CHECK_THROWS_AS(parse_construction("point A; point B; regular_polygon A B 2 ->"), ParseError);
    CHECK_THROWS_AS(parse_construction("squiggle A"), ParseError);
    CHECK_THROWS_AS(parse_construction("point A; on_segment F A E"), ParseError);    // dangling E
    CHECK_THROWS_AS(parse_construction("on_segment F A E; point A; point E"), ParseError); // forward ref
    CHECK_THROWS_AS(parse_construction("point A; point B; regular_polygon A B 5 -> C D"), ParseError);
    CHECK_THROWS_AS(parse_construction("point A; point B; distance c A B; expr d = c + q"), ParseError);
    // error message carries the line number
    try {
        parse_construction("point A\npoint A");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line == 2);
    }
}

TEST_CASE("comments and separators") {
    Construction c = parse_construction("# heading\npoint A # trailing\n\npoint B;point C\n");
    CHECK(c.points == std::vector<std::string>{"A", "B", "C"});
}

TEST_CASE("quantity degrees") {
    Construction c = parse_construction(
        "point A; point B; point C; triangle A B C;"
        "distance a B C; distance b A C; distance c A B;"
        "expr d = a^2 + b^2; expr bad = a^2 + b; expr sq = d*c^2; expr konst = 3");
    CHECK(quantity_degree(c.quantities[0], c) == 1);
    CHECK(quantity_degree(*(c.quantities.begin() + c.quantity_index("d")), c) == 2);
    CHECK(quantity_degree(c.quantities[c.quantity_index("bad")], c) == std::nullopt);
    CHECK(quantity_degree(c.quantities[c.quantity_index("sq")], c) == 4);
    CHECK(quantity_degree(c.quantities[c.quantity_index("konst")], c) == 0);
    // expressions built on an inhomogeneous ingredient are inhomogeneous
    Construction c2 = parse_construction(
        "point A; point B; distance c A B; expr bad = c^2 + c; expr worse = bad*c");
    CHECK(quantity_degree(c2.quantities[c2.quantity_index("worse")], c2) == std::nullopt);
}

TEST_CASE("parse after print is the identity") {
    for (const char* src : {PENTAGON, TRIANGLE,
                            "point A; point B; midpoint M A B; intersect X A M A B; "
                            "circumcenter O A B M; distance r O A; expr s = r^2"}) {
        Construction c = parse_construction(src);
        std::string printed = print_construction(c);
        Construction c2 = parse_construction(printed);
        REQUIRE(c2.elements.size() == c.elements.size());
        for (size_t i = 0; i < c.elements.size(); ++i) {
            CHECK(c2.elements[i].kind == c.elements[i].kind);
            CHECK(c2.elements[i].defines == c.elements[i].defines);
            CHECK(c2.elements[i].refs == c.elements[i].refs);
            CHECK(c2.elements[i].ngon == c.elements[i].ngon);
        }
        REQUIRE(c2.quantities.size() == c.quantities.size());
        for (size_t i = 0; i < c.quantities.size(); ++i) {
            CHECK(c2.quantities[i].name == c.quantities[i].name);
            CHECK(c2.quantities[i].kind == c.quantities[i].kind);
            CHECK(c2.quantities[i].expr == c.quantities[i].expr);
        }
        CHECK(print_construction(c2) == printed);
    }
}
