#include <catch2/catch_amalgamated.hpp>

#include "coxkit/json_io.hpp"

using namespace coxkit;

TEST_CASE("scalar JSON round trip in the theta power basis") {
  for (unsigned L : {2u, 5u, 12u, 30u}) {
    auto f = CycloField::get(L);
    Scalar x = f->theta() * Rational(7, 3) - f->one() * Rational(1, 2);
    json j = scalar_to_json(x);
    REQUIRE(j.at("L").get<unsigned>() == L);
    Scalar back = scalar_from_json(j);
    REQUIRE(back == x);
  }
  auto f = CycloField::get(6);
  json j = scalar_to_json(f->rational(Rational(3, 4)));
  REQUIRE(j["poly"].size() == 1);
  REQUIRE(j["poly"][0].get<std::string>() == "3/4");
}

TEST_CASE("word and root JSON round trips") {
  CoxeterGraph g = parse_spec("B3");
  Word w{0, 2, 1, 0};
  json jw = word_to_json(g, w);
  REQUIRE(jw.size() == 4);
  REQUIRE(jw[0].get<std::string>() == "s1");
  REQUIRE(word_from_json(g, jw) == w);
  Realization r(g);
  Vec beta = r.apply_word(w, r.simple_root(2));
  json jr = root_to_json(beta);
  REQUIRE(jr.size() == 3);
  Vec back;
  for (const auto& c : jr) back.push_back(scalar_from_json(c));
  REQUIRE(r.vec_key(back) == r.vec_key(beta));
}

TEST_CASE("graph JSON mirror") {
  CoxeterGraph g = parse_spec("H3 x ~A1");
  json j = serialize_json(g);
  CoxeterGraph back = parse_spec(j.dump());
  REQUIRE(back.vertex_names() == g.vertex_names());
  REQUIRE(back.same_labels(g));
  bool saw_inf = false;
  for (const auto& e : j["edges"])
    if (e["m"].is_string() && e["m"] == "inf") saw_inf = true;
  REQUIRE(saw_inf);
}

TEST_CASE("verdict payloads serialize") {
  CoxeterGraph g = parse_spec("~A1");
  Realization r(g);
  auto p = root_parity(r, {0, 1}, r.simple_root(0));
  json jp = parity_to_json(p);
  REQUIRE(jp["verdict"] == "odd");
  REQUIRE(jp["separations"] == 1);
  auto v = essentiality(r, {0, 1});
  json jv = essentiality_to_json(g, v);
  REQUIRE(jv["verdict"] == "essential");
  REQUIRE(jv["certificate"] == "odd_roots_generate");
  auto d = definiteness(g);
  json jd = definiteness_to_json(d);
  REQUIRE(jd["verdict"] == "positive_semidefinite_degenerate");
  REQUIRE(jd["radical_basis"].size() == 1);
  auto e = nondegenerate_extension(g);
  json je = extension_to_json(e);
  REQUIRE(je["identity_holds"] == true);
  auto sig = remak_signature(parse_spec("I2(6)"));
  json js = remak_to_json(sig);
  REQUIRE(js["m"] == 2);
  REQUIRE(js["finite"].size() == 2);
}
