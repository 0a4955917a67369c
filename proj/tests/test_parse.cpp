#include <catch2/catch_amalgamated.hpp>

#include "coxkit/parse.hpp"

using namespace coxkit;

TEST_CASE("shorthand names") {
  auto a1 = parse_spec("A1");
  REQUIRE(a1.rank() == 1);
  REQUIRE(a1.edges().empty());
  auto h3 = parse_spec("H3");
  REQUIRE(h3.rank() == 3);
  REQUIRE(h3.label(0, 1) == 5);
  REQUIRE(h3.label(1, 2) == 3);
  auto i27 = parse_spec("I2(7)");
  REQUIRE(i27.label(0, 1) == 7);
  auto at2 = parse_spec("~A2");
  REQUIRE(at2.rank() == 3);
  REQUIRE(at2.label(0, 1) == 3);
  REQUIRE(at2.label(0, 2) == 3);
  REQUIRE(at2.label(1, 2) == 3);
  auto at1 = parse_spec("~A1");
  REQUIRE(at1.label(0, 1) == CoxeterGraph::infinity);
  auto ct3 = parse_spec("~C3");
  REQUIRE(ct3.rank() == 4);
  REQUIRE(ct3.label(0, 1) == 4);
  REQUIRE(ct3.label(1, 2) == 3);
  REQUIRE(ct3.label(2, 3) == 4);
}

TEST_CASE("product expressions are prefixed disjoint unions") {
  auto g = parse_spec("H3 x A1");
  REQUIRE(g.rank() == 4);
  auto comps = g.components();
  REQUIRE(comps.size() == 2);
  REQUIRE(comps[0].size() == 3);
  REQUIRE(comps[1].size() == 1);
  CoxeterGraph c0 = g.induced(comps[0]);
  REQUIRE(c0.label(0, 1) == 5);
  auto twice = parse_spec("A1 x A1");
  REQUIRE(twice.rank() == 2);
  REQUIRE(twice.components().size() == 2);
}

TEST_CASE("cycle lists build labeled cycles") {
  auto t = parse_spec("(3,3,7)");
  REQUIRE(t.rank() == 3);
  REQUIRE(t.label(0, 1) == 3);
  REQUIRE(t.label(1, 2) == 3);
  REQUIRE(t.label(0, 2) == 7);
  REQUIRE_THROWS_AS(parse_spec("(3,3)"), ParseError);
}

TEST_CASE("explicit format") {
  auto g = parse_spec("vertices: a b\nedge: a b inf\n");
  REQUIRE(g.rank() == 2);
  REQUIRE(g.label(0, 1) == CoxeterGraph::infinity);
  auto h = parse_spec("# a comment\nvertices: x y z # trailing comment\nedge: x y 4\nedge: y z 3\n");
  REQUIRE(h.label(0, 1) == 4);
  REQUIRE(h.label(1, 2) == 3);
  // label 2 is accepted and means no edge
  auto k = parse_spec("vertices: a b\nedge: a b 2\n");
  REQUIRE(k.label(0, 1) == 2);
}

TEST_CASE("parse errors carry positions and kinds") {
  REQUIRE_THROWS_AS(parse_spec(""), ParseError);
  REQUIRE_THROWS_AS(parse_spec("vertices: a b\nedge: a c 3\n"), ParseError);   // unknown vertex
  REQUIRE_THROWS_AS(parse_spec("vertices: a b\nedge: a b 1\n"), ParseError);   // label < 2
  REQUIRE_THROWS_AS(parse_spec("vertices: a b\nedge: a b 3\nedge: a b 4\n"),
                    ParseError);                                               // conflict
  REQUIRE_THROWS_AS(parse_spec("vertices: a a\n"), ParseError);                // duplicate vertex
  REQUIRE_THROWS_AS(parse_spec("Q5"), ParseError);                             // unknown family
  REQUIRE_THROWS_AS(parse_spec("H5"), ParseError);                             // out of range
  REQUIRE_THROWS_AS(parse_spec("~H3"), ParseError);
  REQUIRE_THROWS_AS(parse_spec("D3 x"), ParseError);
  REQUIRE_THROWS_AS(parse_spec("vertices:\n"), ParseError);                    // empty vertex set
  try {
    parse_spec("vertices: a b\nedge: a b banana\n");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    REQUIRE(e.line() == 2);
  }
}

TEST_CASE("aliases normalize") {
  REQUIRE(labeled_isomorphic(parse_spec("I2(3)"), parse_spec("A2")));
  REQUIRE(labeled_isomorphic(parse_spec("I2(4)"), parse_spec("B2")));
  REQUIRE(labeled_isomorphic(parse_spec("I2(6)"), parse_spec("G2")));
  REQUIRE(labeled_isomorphic(parse_spec("D3"), parse_spec("A3")));
  REQUIRE(labeled_isomorphic(parse_spec("~C2"), parse_spec("~B2")));
}

TEST_CASE("round trips through both serial forms") {
  for (const char* spec : {"H3 x ~A2 x I2(7)", "(3,3,7) x B3", "~C3", "A1"}) {
    CoxeterGraph g = parse_spec(spec);
    CoxeterGraph t = parse_spec(serialize_text(g));
    REQUIRE(t.vertex_names() == g.vertex_names());
    REQUIRE(t.same_labels(g));
    CoxeterGraph j = parse_spec(serialize_json(g).dump());
    REQUIRE(j.vertex_names() == g.vertex_names());
    REQUIRE(j.same_labels(g));
  }
}
