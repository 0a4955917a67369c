#include <catch2/catch_amalgamated.hpp>

#include "coxkit/finite_group.hpp"
#include "coxkit/parse.hpp"

using namespace coxkit;

namespace {

FiniteGroupTable table_of(const char* spec) {
  Realization r(parse_spec(spec));
  return FiniteGroupTable::enumerate(r);
}

}  // namespace

TEST_CASE("orders by breadth-first closure") {
  REQUIRE(table_of("A1").order() == 2);
  REQUIRE(table_of("A2").order() == 6);
  REQUIRE(table_of("A3").order() == 24);
  REQUIRE(table_of("B2").order() == 8);
  REQUIRE(table_of("B3").order() == 48);
  REQUIRE(table_of("H3").order() == 120);
  REQUIRE(table_of("I2(5)").order() == 10);
  REQUIRE(table_of("I2(12)").order() == 24);
  REQUIRE(table_of("A1 x A2").order() == 12);
  REQUIRE_THROWS_AS(table_of("~A1"), PreconditionError);
}

TEST_CASE("the longest element is unique with w0^2 = 1 and w0 S w0 = S") {
  for (const char* spec : {"A2", "A3", "B3", "H3", "I2(7)", "D4"}) {
    auto t = table_of(spec);
    INFO(spec);
    REQUIRE(t.length(t.longest()) == t.positive_root_count());
    REQUIRE(t.mult(t.longest(), t.longest()) == t.identity());
    auto th = t.theta();  // throws if w0 does not permute the generators
    REQUIRE(th.size() == t.rank());
  }
}

TEST_CASE("centers match the theta rule") {
  auto b3 = table_of("B3");
  auto z = b3.center();
  REQUIRE(z.size() == 2);
  REQUIRE(z[0] == b3.identity());
  REQUIRE(z[1] == b3.longest());
  REQUIRE(table_of("A3").center().size() == 1);
  REQUIRE(table_of("I2(5)").center().size() == 1);
  REQUIRE(table_of("I2(8)").center().size() == 2);
  REQUIRE(table_of("D4").center().size() == 2);
}

TEST_CASE("theta is nontrivial exactly on the known families") {
  auto nontrivial = [](const char* spec) {
    auto t = table_of(spec);
    auto th = t.theta();
    for (unsigned s = 0; s < th.size(); ++s)
      if (th[s] != s) return true;
    return false;
  };
  REQUIRE(nontrivial("A2"));
  REQUIRE(nontrivial("A3"));
  REQUIRE(nontrivial("I2(5)"));
  REQUIRE(nontrivial("I2(7)"));
  REQUIRE(!nontrivial("A1"));
  REQUIRE(!nontrivial("B3"));
  REQUIRE(!nontrivial("B4"));
  REQUIRE(!nontrivial("D4"));
  REQUIRE(!nontrivial("I2(6)"));
  REQUIRE(!nontrivial("I2(8)"));
  REQUIRE(!nontrivial("F4"));
  REQUIRE(!nontrivial("H3"));
}

TEST_CASE("centralizers are closed and exact") {
  auto a3 = table_of("A3");
  auto c = a3.centralizer({a3.generator(0)});
  for (auto e : c) REQUIRE(a3.commute(e, a3.generator(0)));
  // closure under multiplication
  for (auto x : c)
    for (auto y : c) {
      auto p = a3.mult(x, y);
      REQUIRE(std::find(c.begin(), c.end(), p) != c.end());
    }
}

TEST_CASE("exhaustive decompositions of the dihedral groups") {
  auto t5 = table_of("I2(5)");
  REQUIRE(t5.direct_decompositions().empty());
  auto t6 = table_of("I2(6)");
  auto dec = t6.direct_decompositions();
  REQUIRE(!dec.empty());
  auto z = t6.center();
  for (const auto& d : dec) {
    bool a_is_center = d.a == std::vector<std::uint32_t>(z.begin(), z.end());
    bool b_is_center = d.b == std::vector<std::uint32_t>(z.begin(), z.end());
    REQUIRE((a_is_center || b_is_center));
    REQUIRE(d.a.size() * d.b.size() == t6.order());
  }
  REQUIRE(table_of("I2(8)").direct_decompositions().empty());
  REQUIRE(table_of("I2(12)").direct_decompositions().empty());
  auto t10 = table_of("I2(10)");
  REQUIRE(!t10.direct_decompositions().empty());
}

TEST_CASE("B3 decomposes with the center as one factor") {
  auto tb = table_of("B3");
  auto dec = tb.direct_decompositions();
  REQUIRE(!dec.empty());
  auto z = tb.center();
  for (const auto& d : dec) {
    REQUIRE((d.a == std::vector<std::uint32_t>(z.begin(), z.end()) ||
             d.b == std::vector<std::uint32_t>(z.begin(), z.end())));
  }
}

TEST_CASE("indecomposable small groups have no decompositions") {
  for (const char* spec : {"A2", "A3", "B2", "D4"}) {
    INFO(spec);
    REQUIRE(table_of(spec).direct_decompositions().empty());
  }
}

TEST_CASE("isomorphism spot checks") {
  auto t6 = table_of("I2(6)");
  auto prod = table_of("A1 x A2");
  REQUIRE(FiniteGroupTable::isomorphic(t6, prod));
  REQUIRE(FiniteGroupTable::isomorphic(t6, t6));
  REQUIRE(!FiniteGroupTable::isomorphic(table_of("A2"), table_of("I2(5)")));
  // same order, different groups
  REQUIRE(!FiniteGroupTable::isomorphic(table_of("A3"), table_of("I2(12)")));
  REQUIRE(!FiniteGroupTable::isomorphic(table_of("A3"), table_of("A1 x I2(6)")));
  // B2 x A1 vs B2 x A1 with factors listed in the other order
  REQUIRE(FiniteGroupTable::isomorphic(table_of("B2 x A1"), table_of("A1 x B2")));
}

TEST_CASE("words recover elements") {
  auto t = table_of("B3");
  Realization r(parse_spec("B3"));
  for (std::uint32_t e = 0; e < t.order(); e += 7) {
    Word w = t.word_of(e);
    REQUIRE(w.size() == t.length(e));
    // the BFS word is reduced
    REQUIRE(r.length(w) == w.size());
  }
}
