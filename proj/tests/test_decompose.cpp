#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "coxkit/decompose.hpp"
#include "coxkit/finite_group.hpp"
#include "coxkit/parse.hpp"

using namespace coxkit;

TEST_CASE("standard decomposition orders components") {
  auto p = standard_decomposition(parse_spec("H3"));
  REQUIRE(p.a == 0);
  REQUIRE(p.b == 0);
  REQUIRE(p.l == 1);
  auto q = standard_decomposition(parse_spec("~A2 x H3"));
  REQUIRE(q.a == 0);
  REQUIRE(q.b == 1);
  REQUIRE(q.l == 2);
  REQUIRE(q.z2.size() == 3);
  REQUIRE(q.z3.size() == 3);
  auto r = standard_decomposition(parse_spec("(3,3,7) x ~A2 x H3 x B3"));
  REQUIRE(r.a == 1);
  REQUIRE(r.b == 2);
  REQUIRE(r.l == 4);
}

TEST_CASE("finite irreducible decomposability table") {
  struct Case {
    CatalogId id;
    bool decomposable;
    std::string quotient;
  };
  std::vector<Case> cases{
      {catalog_id(Family::I2, 6), true, "W(A2)"},
      {catalog_id(Family::I2, 10), true, "W(I2(5))"},
      {catalog_id(Family::I2, 5), false, ""},
      {catalog_id(Family::I2, 8), false, ""},
      {catalog_id(Family::I2, 12), false, ""},
      {catalog_id(Family::B, 3), true, "W(A3)"},
      {catalog_id(Family::B, 4), false, ""},
      {catalog_id(Family::B, 5), true, "W(D5)"},
      {catalog_id(Family::A, 3), false, ""},
      {catalog_id(Family::D, 4), false, ""},
      {catalog_id(Family::H, 3), true, "Alt5"},
      {catalog_id(Family::H, 4), false, ""},
      {catalog_id(Family::F, 4), false, ""},
      {catalog_id(Family::E, 6), false, ""},
      {catalog_id(Family::E, 7), true, "SO7(2)"},
      {catalog_id(Family::E, 8), false, ""},
  };
  for (const auto& c : cases) {
    INFO(c.id.str());
    auto fr = finite_irreducible_remak(c.id, /*runtime_check=*/true);
    REQUIRE(fr.decomposable == c.decomposable);
    if (c.decomposable) REQUIRE(fr.quotient.str() == c.quotient);
  }
  REQUIRE_THROWS_AS(finite_irreducible_remak(catalog_id(Family::A, 2, true)), PreconditionError);
}

TEST_CASE("table verdict equals the brute-force search on small groups") {
  for (const char* spec : {"A2", "A3", "B2", "B3", "I2(5)", "I2(6)", "I2(7)", "I2(8)",
                           "I2(9)", "I2(10)", "I2(11)", "I2(12)", "H3", "D4"}) {
    CoxeterGraph g = parse_spec(spec);
    auto id = identify(g);
    REQUIRE(id);
    auto fr = finite_irreducible_remak(*id);
    Realization r(g);
    auto t = FiniteGroupTable::enumerate(r);
    INFO(spec);
    REQUIRE(fr.decomposable == !t.direct_decompositions().empty());
  }
}

TEST_CASE("remak signatures") {
  auto s = remak_signature(parse_spec("I2(6)"));
  REQUIRE(s.infinite_factors.empty());
  REQUIRE(s.finite_factors.size() == 2);
  REQUIRE(s.m == 2);
  REQUIRE(s.finite_factors[0].kind == FactorKind::C2);
  REQUIRE(s.finite_factors[1].kind == FactorKind::Coxeter);
  REQUIRE(s.finite_factors[1].type->str() == "A2");

  auto s2 = remak_signature(parse_spec("B3 x H3 x ~A2 x (3,3,7)"));
  REQUIRE(s2.infinite_factors.size() == 2);
  REQUIRE(s2.finite_factors.size() == 4);
  REQUIRE(s2.m == 6);
  unsigned c2s = 0, alt5 = 0, a3 = 0;
  for (const auto& f : s2.finite_factors) {
    if (f.kind == FactorKind::C2) ++c2s;
    if (f.kind == FactorKind::Alt5) ++alt5;
    if (f.kind == FactorKind::Coxeter && f.type->str() == "A3") ++a3;
  }
  REQUIRE(c2s == 2);
  REQUIRE(alt5 == 1);
  REQUIRE(a3 == 1);

  auto s3 = remak_signature(parse_spec("E6"));
  REQUIRE(s3.finite_factors.size() == 1);
  REQUIRE(s3.finite_factors[0].type->str() == "E6");

  // A1 components are C2 factors
  auto s4 = remak_signature(parse_spec("A1 x A1"));
  REQUIRE(s4.finite_factors.size() == 2);
  REQUIRE(s4.finite_factors[0].kind == FactorKind::C2);
  REQUIRE(s4.m == 2);
}

TEST_CASE("affine dimension and virtual signatures") {
  REQUIRE(affine_dimension(parse_spec("~A2")) == 2);
  REQUIRE(affine_dimension(parse_spec("~A1 x ~A1")) == 2);
  REQUIRE(affine_dimension(parse_spec("H3")) == 0);
  auto v = virtual_signature(parse_spec("(3,3,7) x ~A2 x H3"));
  REQUIRE(v.indefinite_factors.size() == 1);
  REQUIRE(v.d == 2);
  REQUIRE(v.m == 3);
  auto v2 = virtual_signature(parse_spec("~A1 x ~A1"));
  REQUIRE(v2.d == 2);
  REQUIRE(v2.m == 2);
}

TEST_CASE("signatures are invariant under relabeling and reordering") {
  std::mt19937 rng(2718);
  std::vector<std::string> corpus{"A1", "A2", "B3", "H3", "I2(6)", "I2(10)", "~A1",
                                  "~A2", "~C3", "(3,3,7)", "(3,4,5)", "E6"};
  for (int iter = 0; iter < 30; ++iter) {
    std::shuffle(corpus.begin(), corpus.end(), rng);
    std::uniform_int_distribution<std::size_t> kd(1, 4);
    std::size_t k = kd(rng);
    std::string expr = corpus[0];
    for (std::size_t i = 1; i < k; ++i) expr += " x " + corpus[i];
    CoxeterGraph g = parse_spec(expr);
    auto rs = remak_signature(g);
    auto vs = virtual_signature(g);
    // m-laws
    unsigned b = 0, q = 0;
    auto parts = classify(g);
    for (const auto& ci : parts.components)
      if (ci.type != TypeClass::Spherical) ++b;
    q = static_cast<unsigned>(rs.finite_factors.size());
    REQUIRE(rs.m == b + q);
    REQUIRE(vs.m == parts.a + vs.d);
    REQUIRE(vs.d == parts.z2.size() - (parts.b - parts.a));
    // relabel: shuffle vertices
    std::vector<unsigned> perm(g.rank());
    for (unsigned i = 0; i < g.rank(); ++i) perm[i] = i;
    std::shuffle(perm.begin(), perm.end(), rng);
    CoxeterGraph h = g.permuted(perm);
    auto rs2 = remak_signature(h);
    auto vs2 = virtual_signature(h);
    REQUIRE(rs2.finite_factors == rs.finite_factors);
    REQUIRE(rs2.infinite_factors == rs.infinite_factors);
    REQUIRE(vs2.indefinite_factors == vs.indefinite_factors);
    REQUIRE(vs2.d == vs.d);
  }
}

TEST_CASE("isomorphism comparison") {
  REQUIRE(compare_iso(parse_spec("I2(6)"), parse_spec("A1 x A2")) == IsoVerdict::Isomorphic);
  REQUIRE(compare_iso(parse_spec("~A2 x H3"), parse_spec("~A2 x B3")) ==
          IsoVerdict::NotIsomorphic);
  REQUIRE(compare_iso(parse_spec("~A1"), parse_spec("~A1")) == IsoVerdict::Isomorphic);
  // B3 = C2 x W(A3) = A3 x A1 as groups
  REQUIRE(compare_iso(parse_spec("B3"), parse_spec("A3 x A1")) == IsoVerdict::Isomorphic);
  REQUIRE(compare_iso(parse_spec("B3"), parse_spec("A3")) == IsoVerdict::NotIsomorphic);
  // infinite components differing only in infinite labels stay unknown
  CoxeterGraph u1 = parse_spec("vertices: a b c\nedge: a b inf\nedge: b c 3\n");
  CoxeterGraph u2 = parse_spec("vertices: a b c\nedge: a b inf\nedge: b c 4\n");
  REQUIRE(compare_iso(u1, u2) == IsoVerdict::Unknown);
  // no infinite labels: rigidity applies
  REQUIRE(compare_iso(parse_spec("(3,3,7)"), parse_spec("(3,3,8)")) == IsoVerdict::NotIsomorphic);
  // symmetry and reflexivity over a corpus
  for (const char* spec : {"I2(6)", "~A2 x H3", "(3,3,7) x B3", "A1"}) {
    CoxeterGraph g = parse_spec(spec);
    REQUIRE(compare_iso(g, g) == IsoVerdict::Isomorphic);
  }
  REQUIRE(compare_iso(parse_spec("A1 x A2"), parse_spec("I2(6)")) == IsoVerdict::Isomorphic);
}

TEST_CASE("commensurability comparison") {
  REQUIRE(compare_commensurable(parse_spec("~A2"), parse_spec("~A1 x ~A1")) ==
          CommVerdict::Commensurable);
  REQUIRE(compare_commensurable(parse_spec("~A2"), parse_spec("~A1")) ==
          CommVerdict::NotCommensurable);
  REQUIRE(compare_commensurable(parse_spec("(3,3,7) x ~A1"), parse_spec("(3,3,8) x ~A1")) ==
          CommVerdict::Unknown);
  // finite parts are irrelevant
  REQUIRE(compare_commensurable(parse_spec("~A2 x H3"), parse_spec("~B2 x E8")) ==
          CommVerdict::Commensurable);
  REQUIRE(compare_commensurable(parse_spec("H3"), parse_spec("E8 x A1")) ==
          CommVerdict::Commensurable);
  REQUIRE(compare_commensurable(parse_spec("(3,3,7)"), parse_spec("~A1")) ==
          CommVerdict::NotCommensurable);
}

TEST_CASE("compare_iso is confirmed by the element-level oracle") {
  auto t1 = FiniteGroupTable::enumerate(Realization(parse_spec("I2(6)")));
  auto t2 = FiniteGroupTable::enumerate(Realization(parse_spec("A1 x A2")));
  REQUIRE(FiniteGroupTable::isomorphic(t1, t2));
  auto t3 = FiniteGroupTable::enumerate(Realization(parse_spec("B3")));
  auto t4 = FiniteGroupTable::enumerate(Realization(parse_spec("A3 x A1")));
  REQUIRE(FiniteGroupTable::isomorphic(t3, t4));
  auto t5 = FiniteGroupTable::enumerate(Realization(parse_spec("H3")));
  REQUIRE(!FiniteGroupTable::isomorphic(t3, t5));
}
