#pragma once

// JSON forms of the library's value types. Scalars serialize into the power
// basis of theta_L = 2cos(pi/L) with rational coefficients as "num/den"
// strings; words as arrays of vertex names; roots as coordinate arrays.

#include <string>
#include <vector>

#include <json.hpp>

#include "coxkit/bilinear.hpp"
#include "coxkit/catalog.hpp"
#include "coxkit/decompose.hpp"
#include "coxkit/dynamics.hpp"
#include "coxkit/parse.hpp"
#include "coxkit/words.hpp"

namespace coxkit {

using json = nlohmann::json;

inline json scalar_to_json(const Scalar& s) {
  json j;
  j["L"] = s.field()->cos_order();
  json poly = json::array();
  for (const auto& c : s.field()->theta_coordinates(s)) poly.push_back(c.get_str());
  while (poly.size() > 1 && poly.back() == "0") poly.erase(poly.size() - 1);
  j["poly"] = poly;
  return j;
}

inline Rational rational_from_string(const std::string& s) {
  Rational q;
  if (q.set_str(s, 10) != 0) throw ParseError("bad rational '" + s + "'");
  q.canonicalize();
  return q;
}

inline Scalar scalar_from_json(const json& j) {
  auto f = CycloField::get(j.at("L").get<unsigned>());
  std::vector<Rational> coords;
  for (const auto& c : j.at("poly")) coords.push_back(rational_from_string(c.get<std::string>()));
  return f->from_theta_coordinates(coords);
}

inline json word_to_json(const CoxeterGraph& g, const Word& w) {
  json a = json::array();
  for (unsigned s : w) a.push_back(g.vertex_name(s));
  return a;
}

inline Word word_from_json(const CoxeterGraph& g, const json& a) {
  Word w;
  for (const auto& t : a) w.push_back(g.index_of(t.get<std::string>()));
  return w;
}

inline json root_to_json(const Vec& v) {
  json a = json::array();
  for (const auto& c : v) a.push_back(scalar_to_json(c));
  return a;
}

inline json root_to_json_compact(const Vec& v) {
  // exact human-oriented form alongside a float approximation
  json a = json::array();
  for (const auto& c : v) a.push_back(c.to_string());
  return a;
}

inline json parts_to_json(const CoxeterGraph& g, const PartsPartition& p) {
  json j;
  auto names = [&](const std::vector<unsigned>& vs) {
    json a = json::array();
    for (unsigned v : vs) a.push_back(g.vertex_name(v));
    return a;
  };
  j["components"] = json::array();
  for (const auto& ci : p.components) {
    json c;
    c["vertices"] = names(ci.vertices);
    c["type"] = type_class_str(ci.type);
    if (ci.name) c["name"] = ci.name->str();
    j["components"].push_back(c);
  }
  j["z1"] = names(p.z1);
  j["z2"] = names(p.z2);
  j["z3"] = names(p.z3);
  j["a"] = p.a;
  j["b"] = p.b;
  j["l"] = p.l;
  return j;
}

inline json factor_to_json(const FactorDescriptor& f) {
  json j;
  switch (f.kind) {
    case FactorKind::C2: j["kind"] = "C2"; break;
    case FactorKind::Coxeter:
      j["kind"] = "coxeter";
      j["type"] = f.type->str();
      break;
    case FactorKind::Alt5: j["kind"] = "Alt5"; break;
    case FactorKind::SO7_2: j["kind"] = "SO7(2)"; break;
  }
  return j;
}

inline json remak_to_json(const RemakSignature& s) {
  json j;
  j["infinite"] = json::array();
  for (const auto& f : s.infinite_factors) j["infinite"].push_back(f.str());
  j["finite"] = json::array();
  for (const auto& f : s.finite_factors) j["finite"].push_back(factor_to_json(f));
  j["m"] = s.m;
  return j;
}

inline json virtual_to_json(const VirtualSignature& s) {
  json j;
  j["indefinite"] = json::array();
  for (const auto& f : s.indefinite_factors) j["indefinite"].push_back(f.str());
  j["d"] = s.d;
  j["m"] = s.m;
  return j;
}

inline json definiteness_to_json(const Definiteness& d) {
  json j;
  switch (d.kind) {
    case DefinitenessKind::PositiveDefinite: j["verdict"] = "positive_definite"; break;
    case DefinitenessKind::PositiveSemidefiniteDegenerate:
      j["verdict"] = "positive_semidefinite_degenerate";
      break;
    case DefinitenessKind::Indefinite: j["verdict"] = "indefinite"; break;
  }
  if (!d.radical_basis.empty()) {
    j["radical_basis"] = json::array();
    for (const auto& v : d.radical_basis) j["radical_basis"].push_back(root_to_json_compact(v));
  }
  if (!d.witness.empty()) {
    j["witness"] = root_to_json_compact(d.witness);
    j["witness_value"] = d.witness_value.to_string();
  }
  return j;
}

inline json parity_to_json(const ParityResult& p) {
  json j;
  switch (p.kind) {
    case ParityKind::Periodic:
      j["verdict"] = "periodic";
      j["period"] = p.period;
      break;
    case ParityKind::Even:
      j["verdict"] = "even";
      j["separations"] = p.separations();
      j["separation_indices"] = p.separation_indices;
      break;
    case ParityKind::Odd:
      j["verdict"] = "odd";
      j["separations"] = p.separations();
      j["separation_indices"] = p.separation_indices;
      break;
    case ParityKind::Unknown:
      j["verdict"] = "unknown";
      j["bound_used"] = p.bound_used;
      break;
  }
  return j;
}

inline json essentiality_to_json(const CoxeterGraph& g, const EssentialityVerdict& v) {
  json j;
  switch (v.kind) {
    case EssentialityKind::Essential: {
      j["verdict"] = "essential";
      j["certificate"] = v.certificate == EssentialCertificate::FiniteFixedSpaceTrivial
                             ? "finite_fixed_space_trivial"
                             : "odd_roots_generate";
      if (!v.odd_root_list.empty()) {
        j["odd_roots"] = json::array();
        for (const auto& r : v.odd_root_list) j["odd_roots"].push_back(root_to_json_compact(r));
      }
      break;
    }
    case EssentialityKind::NotEssential: {
      j["verdict"] = "not_essential";
      j["witness_u"] = word_to_json(g, v.witness_u);
      json xs = json::array();
      for (unsigned x : v.witness_x) xs.push_back(g.vertex_name(x));
      j["witness_x"] = xs;
      break;
    }
    case EssentialityKind::Unknown:
      j["verdict"] = "unknown";
      j["reason"] = v.reason;
      break;
  }
  return j;
}

inline json extension_to_json(const Extension& e) {
  json j;
  j["extended"] = serialize_json(e.extended);
  json x0 = json::array(), x1 = json::array();
  for (unsigned v : e.x0) x0.push_back(e.extended.vertex_name(v));
  for (unsigned v : e.x1) x1.push_back(e.extended.vertex_name(v));
  j["x0"] = x0;
  j["x1"] = x1;
  json twins = json::object();
  for (auto& [v, t] : e.twin) twins[e.extended.vertex_name(v)] = e.extended.vertex_name(t);
  j["twins"] = twins;
  j["det_x0"] = scalar_to_json(e.det_x0);
  j["det_x0_str"] = e.det_x0.to_string();
  j["det_extended"] = scalar_to_json(e.det_extended);
  j["det_extended_str"] = e.det_extended.to_string();
  bool sign_flip = e.x1.size() % 2 == 1;
  Scalar predicted = sign_flip ? -e.det_x0 : e.det_x0;
  j["identity_holds"] = (predicted == e.det_extended);
  return j;
}

}  // namespace coxkit
