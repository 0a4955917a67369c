#pragma once

// Input formats for Coxeter graphs.
//
//   explicit:  lines "vertices: v1 v2 ..." and "edge: u v LABEL" with LABEL
//              in {3,4,...} or "inf" (2 = omit the line); '#' comments
//   shorthand: catalog names ("H3", "I2(7)", "~A2"), cycle lists
//              "(3,3,7)", and products "H3 x ~A2 x I2(7)"
//   json:      {"vertices":[...],"edges":[{"u":..,"v":..,"m":4|"inf"}]}
//
// Product factors become disjoint renamed copies with per-factor prefixes.

#include <cctype>
#include <sstream>
#include <string>
#include <vector>

#include "coxkit/catalog.hpp"
#include "coxkit/graph.hpp"

#include <json.hpp>

namespace coxkit {

namespace detail {

inline unsigned parse_label_token(const std::string& tok, std::size_t line) {
  if (tok == "inf" || tok == "infinity" || tok == "oo")
    return CoxeterGraph::infinity;
  for (char c : tok)
    if (!std::isdigit(static_cast<unsigned char>(c)))
      throw ParseError("bad label '" + tok + "'", line);
  unsigned long v = std::stoul(tok);
  if (v < 2) throw ParseError("label " + tok + " is below 2", line);
  return static_cast<unsigned>(v);
}

inline CoxeterGraph parse_explicit(const std::string& text) {
  CoxeterGraph g;
  std::istringstream in(text);
  std::string raw;
  std::size_t lineno = 0;
  bool saw_vertices = false;
  while (std::getline(in, raw)) {
    ++lineno;
    auto hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    std::istringstream ls(raw);
    std::string head;
    if (!(ls >> head)) continue;
    if (head == "vertices:") {
      std::string name;
      while (ls >> name) g.add_vertex(name);
      saw_vertices = true;
    } else if (head == "edge:") {
      std::string u, v, m;
      if (!(ls >> u >> v >> m)) throw ParseError("edge line needs 'edge: u v LABEL'", lineno);
      std::string extra;
      if (ls >> extra) throw ParseError("trailing token '" + extra + "' on edge line", lineno);
      auto iu = g.find_vertex(u), iv = g.find_vertex(v);
      if (!iu) throw ParseError("unknown vertex '" + u + "'", lineno);
      if (!iv) throw ParseError("unknown vertex '" + v + "'", lineno);
      if (*iu == *iv) throw ParseError("self-edge on '" + u + "'", lineno);
      unsigned lbl = parse_label_token(m, lineno);
      try {
        g.set_label(*iu, *iv, lbl);
      } catch (const Error& e) {
        throw ParseError(e.what(), lineno);
      }
    } else {
      throw ParseError("unrecognized line head '" + head + "'", lineno);
    }
  }
  if (!saw_vertices) throw ParseError("missing 'vertices:' line");
  if (g.rank() == 0) throw ParseError("empty vertex set");
  return g;
}

inline CoxeterGraph parse_json_graph(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("bad JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("vertices")) throw ParseError("JSON graph needs 'vertices'");
  CoxeterGraph g;
  for (const auto& v : j.at("vertices")) g.add_vertex(v.get<std::string>());
  if (g.rank() == 0) throw ParseError("empty vertex set");
  if (j.contains("edges")) {
    for (const auto& e : j.at("edges")) {
      unsigned m;
      if (e.at("m").is_string())
        m = parse_label_token(e.at("m").get<std::string>(), 0);
      else
        m = e.at("m").get<unsigned>();
      if (m < 2) throw ParseError("label below 2 in JSON edge");
      auto iu = g.find_vertex(e.at("u").get<std::string>());
      auto iv = g.find_vertex(e.at("v").get<std::string>());
      if (!iu || !iv) throw ParseError("unknown vertex in JSON edge");
      g.set_label(*iu, *iv, m);
    }
  }
  return g;
}

// NAME := family rank | "I2(" p ")" | "~" family rank | "(" l1 "," l2 ... ")"
inline CoxeterGraph parse_factor(const std::string& tok) {
  std::string s = tok;
  if (s.empty()) throw ParseError("empty graph name");
  if (s.front() == '(') {
    if (s.back() != ')') throw ParseError("unterminated cycle list '" + tok + "'");
    std::string body = s.substr(1, s.size() - 2);
    std::vector<unsigned> labels;
    std::string cur;
    auto flush = [&] {
      if (cur.empty()) throw ParseError("empty entry in cycle list '" + tok + "'");
      labels.push_back(parse_label_token(cur, 0));
      cur.clear();
    };
    for (char c : body) {
      if (c == ',')
        flush();
      else if (!std::isspace(static_cast<unsigned char>(c)))
        cur += c;
    }
    flush();
    if (labels.size() < 3) throw ParseError("cycle list needs at least 3 labels");
    CoxeterGraph g;
    for (std::size_t i = 0; i < labels.size(); ++i) g.add_vertex("c" + std::to_string(i));
    for (std::size_t i = 0; i < labels.size(); ++i)
      g.set_label(static_cast<unsigned>(i), static_cast<unsigned>((i + 1) % labels.size()),
                  labels[i]);
    return g;
  }
  bool affine = false;
  std::size_t pos = 0;
  if (s[pos] == '~') {
    affine = true;
    ++pos;
  }
  if (pos >= s.size()) throw ParseError("missing family in '" + tok + "'");
  char fam = s[pos];
  if (s.compare(pos, 3, "I2(") == 0) {
    if (s.back() != ')') throw ParseError("unterminated I2(p) in '" + tok + "'");
    std::string p = s.substr(pos + 3, s.size() - pos - 4);
    unsigned pv = parse_label_token(p, 0);
    if (affine) throw ParseError("no affine I2 family");
    if (pv == CoxeterGraph::infinity) return catalog_graph(catalog_id(Family::A, 1, true));
    return catalog_graph(catalog_id(Family::I2, pv));
  }
  std::string rank_str = s.substr(pos + 1);
  if (rank_str.empty()) throw ParseError("missing rank in '" + tok + "'");
  for (char c : rank_str)
    if (!std::isdigit(static_cast<unsigned char>(c)))
      throw ParseError("bad rank '" + rank_str + "' in '" + tok + "'");
  unsigned r = static_cast<unsigned>(std::stoul(rank_str));
  try {
    switch (fam) {
      case 'A': return catalog_graph(catalog_id(Family::A, r, affine));
      case 'B': return catalog_graph(catalog_id(Family::B, r, affine));
      case 'C':
        if (!affine) throw ParseError("spherical C is written B (C" + rank_str + " = B" + rank_str + ")");
        return catalog_graph(catalog_id_affine_c(r));
      case 'D': return catalog_graph(catalog_id(Family::D, r, affine));
      case 'E': return catalog_graph(catalog_id(Family::E, r, affine));
      case 'F': return catalog_graph(catalog_id(Family::F, r, affine));
      case 'G': return catalog_graph(catalog_id(Family::G, r, affine));
      case 'H':
        if (affine) throw ParseError("no affine H family");
        return catalog_graph(catalog_id(Family::H, r));
      default: throw ParseError("unknown family '" + std::string(1, fam) + "' in '" + tok + "'");
    }
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    throw ParseError(e.what());
  }
}

inline CoxeterGraph parse_shorthand(const std::string& text) {
  // split on 'x' tokens
  std::vector<std::string> factors;
  std::string cur;
  std::istringstream in(text);
  std::string tok;
  while (in >> tok) {
    if (tok == "x" || tok == "X") {
      if (cur.empty()) throw ParseError("dangling 'x' in product expression");
      factors.push_back(cur);
      cur.clear();
    } else {
      if (!cur.empty()) throw ParseError("missing 'x' between factors near '" + tok + "'");
      cur = tok;
    }
  }
  if (cur.empty()) throw ParseError("empty graph expression");
  factors.push_back(cur);
  std::vector<CoxeterGraph> parts;
  parts.reserve(factors.size());
  for (const auto& f : factors) parts.push_back(parse_factor(f));
  if (parts.size() == 1) return parts[0];
  return CoxeterGraph::disjoint_union(parts, /*prefix_names=*/true);
}

}  // namespace detail

inline CoxeterGraph parse_spec(const std::string& text) {
  // skip leading whitespace to dispatch on the first significant character
  std::size_t i = 0;
  while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  if (i == text.size()) throw ParseError("empty graph specification");
  if (text[i] == '{') return detail::parse_json_graph(text);
  if (text.find("vertices:") != std::string::npos) return detail::parse_explicit(text);
  return detail::parse_shorthand(text);
}

inline std::string serialize_text(const CoxeterGraph& g) {
  std::string out = "vertices:";
  for (const auto& n : g.vertex_names()) out += " " + n;
  out += "\n";
  for (auto& [i, j, m] : g.edges()) {
    out += "edge: " + g.vertex_name(i) + " " + g.vertex_name(j) + " ";
    out += (m == CoxeterGraph::infinity) ? "inf" : std::to_string(m);
    out += "\n";
  }
  return out;
}

inline nlohmann::json serialize_json(const CoxeterGraph& g) {
  nlohmann::json j;
  j["vertices"] = g.vertex_names();
  j["edges"] = nlohmann::json::array();
  for (auto& [i, j2, m] : g.edges()) {
    nlohmann::json e;
    e["u"] = g.vertex_name(i);
    e["v"] = g.vertex_name(j2);
    if (m == CoxeterGraph::infinity)
      e["m"] = "inf";
    else
      e["m"] = m;
    j["edges"].push_back(e);
  }
  return j;
}

}  // namespace coxkit
