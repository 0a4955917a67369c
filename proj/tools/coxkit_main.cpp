// coxkit command-line frontend.
//
// Subcommands: classify, decompose, essential, roots, parity, extend,
// compare, oracle. Every subcommand reads a graph specification (shorthand,
// explicit text, or JSON; '-' reads stdin) and emits a human-readable or
// --json report. Exit codes: 0 ok, 1 parse error, 2 precondition violation,
// 3 resource cap exceeded.

#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "coxkit/coxkit.hpp"

namespace {

using namespace coxkit;

std::string read_spec_arg(const std::string& arg) {
  if (arg != "-") return arg;
  std::ostringstream ss;
  ss << std::cin.rdbuf();
  return ss.str();
}

Word parse_word_arg(const CoxeterGraph& g, const std::string& text) {
  Word w;
  std::istringstream in(text);
  std::string tok;
  while (in >> tok) {
    auto v = g.find_vertex(tok);
    if (v) {
      w.push_back(*v);
      continue;
    }
    // 1-based position fallback for convenience
    bool digits = !tok.empty();
    for (char c : tok)
      if (!std::isdigit(static_cast<unsigned char>(c))) digits = false;
    if (digits) {
      unsigned long p = std::stoul(tok);
      if (p >= 1 && p <= g.rank()) {
        w.push_back(static_cast<unsigned>(p - 1));
        continue;
      }
    }
    throw ParseError("word letter '" + tok + "' is not a vertex of the graph");
  }
  return w;
}

// coordinate := rational | p(c0;c1;...) in the theta power basis
Vec parse_root_arg(const CoxeterGraph& g, const std::string& text) {
  auto field = g.field();
  std::vector<std::string> parts;
  std::string cur;
  int depth = 0;
  for (char c : text) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == ',' && depth == 0) {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  parts.push_back(cur);
  if (parts.size() != g.rank())
    throw ParseError("root needs " + std::to_string(g.rank()) + " coordinates");
  Vec v;
  for (auto& p : parts) {
    std::string s;
    for (char c : p)
      if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    if (s.rfind("p(", 0) == 0 && s.back() == ')') {
      std::vector<Rational> coords;
      std::string body = s.substr(2, s.size() - 3), acc;
      for (char c : body) {
        if (c == ';') {
          coords.push_back(rational_from_string(acc));
          acc.clear();
        } else {
          acc += c;
        }
      }
      if (!acc.empty()) coords.push_back(rational_from_string(acc));
      v.push_back(field->from_theta_coordinates(coords));
    } else {
      v.push_back(field->rational(rational_from_string(s)));
    }
  }
  return v;
}

struct Options {
  bool json = false;
  unsigned long seed = 0;
  bool seed_given = false;
  std::size_t max_order = 3000000;
};

void emit(const json& report, const Options& opt, const std::string& human) {
  if (opt.json)
    std::cout << report.dump(2) << "\n";
  else
    std::cout << human;
}

json base_report(const std::string& command, const CoxeterGraph& g) {
  json j;
  j["command"] = command;
  j["input"] = serialize_json(g);
  j["diagnostics"] = json::object();
  return j;
}

std::string names_of(const CoxeterGraph& g, const std::vector<unsigned>& vs) {
  std::string s = "{";
  for (std::size_t i = 0; i < vs.size(); ++i) {
    if (i) s += ",";
    s += g.vertex_name(vs[i]);
  }
  return s + "}";
}

int cmd_classify(const std::string& spec, const Options& opt) {
  CoxeterGraph g = parse_spec(read_spec_arg(spec));
  auto parts = classify(g);
  json rep = base_report("classify", g);
  rep["result"] = parts_to_json(g, parts);
  std::ostringstream h;
  h << "components: " << parts.l << " (indefinite " << parts.a << ", affine "
    << parts.b - parts.a << ", spherical " << parts.l - parts.b << ")\n";
  for (const auto& ci : parts.components) {
    h << "  " << names_of(g, ci.vertices) << " : " << type_class_str(ci.type);
    if (ci.name) h << " = " << ci.name->str();
    h << "\n";
  }
  h << "Z1 " << names_of(g, parts.z1) << "  Z2 " << names_of(g, parts.z2) << "  Z3 "
    << names_of(g, parts.z3) << "\n";
  emit(rep, opt, h.str());
  return 0;
}

int cmd_decompose(const std::string& spec, const Options& opt) {
  CoxeterGraph g = parse_spec(read_spec_arg(spec));
  auto parts = classify(g);
  auto rs = remak_signature(g);
  auto vs = virtual_signature(g);
  json rep = base_report("decompose", g);
  rep["result"]["parts"] = parts_to_json(g, parts);
  rep["result"]["remak"] = remak_to_json(rs);
  rep["result"]["virtual"] = virtual_to_json(vs);
  bool rigid_infinite = true;
  for (const auto& f : rs.infinite_factors)
    if (f.has_infinite_label) rigid_infinite = false;
  rep["result"]["infinite_components_rigid"] = rigid_infinite;
  if (opt.seed_given) {
    // randomized relabeling demo: the signatures must not move
    std::mt19937_64 rng(opt.seed);
    std::vector<unsigned> perm(g.rank());
    for (unsigned i = 0; i < g.rank(); ++i) perm[i] = i;
    std::shuffle(perm.begin(), perm.end(), rng);
    auto rs2 = remak_signature(g.permuted(perm));
    auto vs2 = virtual_signature(g.permuted(perm));
    bool stable = rs2.finite_factors == rs.finite_factors &&
                  rs2.infinite_factors == rs.infinite_factors && vs2.d == vs.d &&
                  vs2.indefinite_factors == vs.indefinite_factors;
    rep["diagnostics"]["relabeling_invariant"] = stable;
    rep["diagnostics"]["seed"] = opt.seed;
  }
  std::ostringstream h;
  h << "remak: m = " << rs.m << "\n";
  for (const auto& f : rs.infinite_factors) h << "  infinite factor: " << f.str() << "\n";
  for (const auto& f : rs.finite_factors) h << "  finite factor:   " << f.str() << "\n";
  h << "virtual: m = " << vs.m << "  (a = " << vs.indefinite_factors.size()
    << ", affine dimension d = " << vs.d << ")\n";
  for (const auto& f : vs.indefinite_factors) h << "  indefinite factor: " << f.str() << "\n";
  emit(rep, opt, h.str());
  return 0;
}

int cmd_essential(const std::string& spec, const std::string& word, unsigned depth, long bound,
                  unsigned radius, const Options& opt) {
  CoxeterGraph g = parse_spec(read_spec_arg(spec));
  if (!g.is_connected())
    throw PreconditionError("essential needs a connected graph");
  Realization r(g);
  Word w = parse_word_arg(g, word);
  DynamicsParams params;
  params.depth = depth;
  params.bound = bound;
  params.conj_radius = radius;
  auto v = essentiality(r, w, params);
  json rep = base_report("essential", g);
  rep["result"] = essentiality_to_json(g, v);
  rep["diagnostics"]["depth"] = depth;
  rep["diagnostics"]["bound"] = bound > 0 ? bound : 16L * std::max<long>(1, r.reduce(w).size());
  std::ostringstream h;
  switch (v.kind) {
    case EssentialityKind::Essential:
      h << "essential ("
        << (v.certificate == EssentialCertificate::FiniteFixedSpaceTrivial
                ? "trivial fixed space"
                : "odd roots generate, " + std::to_string(v.odd_root_list.size()) + " odd roots")
        << ")\n";
      break;
    case EssentialityKind::NotEssential: {
      h << "not essential: conjugate by u = [";
      for (std::size_t i = 0; i < v.witness_u.size(); ++i)
        h << (i ? " " : "") << g.vertex_name(v.witness_u[i]);
      h << "] lies in W_X, X = " << names_of(g, v.witness_x) << "\n";
      break;
    }
    case EssentialityKind::Unknown: h << "unknown: " << v.reason << "\n"; break;
  }
  emit(rep, opt, h.str());
  return 0;
}

int cmd_roots(const std::string& spec, const std::string& word, const Options& opt) {
  CoxeterGraph g = parse_spec(read_spec_arg(spec));
  Realization r(g);
  Word w = parse_word_arg(g, word);
  auto inv = r.inversion_set(w);
  auto red = r.reduce(w);
  json rep = base_report("roots", g);
  rep["result"]["length"] = inv.size();
  rep["result"]["reduced_word"] = word_to_json(g, red);
  rep["result"]["inversion_set"] = json::array();
  for (const auto& b : inv) rep["result"]["inversion_set"].push_back(root_to_json_compact(b));
  std::ostringstream h;
  h << "length " << inv.size() << ", reduced word:";
  for (unsigned s : red) h << " " << g.vertex_name(s);
  h << "\ninversion set:\n";
  for (const auto& b : inv) {
    h << "  (";
    for (std::size_t i = 0; i < b.size(); ++i) h << (i ? ", " : "") << b[i].to_string();
    h << ")\n";
  }
  emit(rep, opt, h.str());
  return 0;
}

int cmd_parity(const std::string& spec, const std::string& word, const std::string& root,
               long bound, const Options& opt) {
  CoxeterGraph g = parse_spec(read_spec_arg(spec));
  Realization r(g);
  Word w = parse_word_arg(g, word);
  Vec alpha = parse_root_arg(g, root);
  r.root_sign(alpha);  // rejects mixed-sign input early
  auto p = root_parity(r, w, alpha, bound);
  json rep = base_report("parity", g);
  rep["result"] = parity_to_json(p);
  std::ostringstream h;
  switch (p.kind) {
    case ParityKind::Periodic: h << "periodic with period " << p.period << "\n"; break;
    case ParityKind::Even:
    case ParityKind::Odd: {
      h << (p.kind == ParityKind::Even ? "even" : "odd") << " (" << p.separations()
        << " separations at m =";
      for (long m : p.separation_indices) h << " " << m;
      h << ")\n";
      break;
    }
    case ParityKind::Unknown: h << "unknown within bound " << p.bound_used << "\n"; break;
  }
  emit(rep, opt, h.str());
  return 0;
}

int cmd_extend(const std::string& spec, const Options& opt) {
  CoxeterGraph g = parse_spec(read_spec_arg(spec));
  auto e = nondegenerate_extension(g);
  json rep = base_report("extend", g);
  rep["result"] = extension_to_json(e);
  std::ostringstream h;
  h << "X0 = " << names_of(e.extended, e.x0) << ", X1 = " << names_of(e.extended, e.x1) << "\n";
  h << "det B_X0 = " << e.det_x0.to_string() << "\n";
  h << "det B_extended = " << e.det_extended.to_string() << " (= (-1)^" << e.x1.size()
    << " * det B_X0: " << (rep["result"]["identity_holds"].get<bool>() ? "holds" : "FAILS")
    << ")\n";
  h << "extended graph:\n" << serialize_text(e.extended);
  emit(rep, opt, h.str());
  return 0;
}

int cmd_compare(const std::string& spec1, const std::string& spec2, const std::string& mode,
                const Options& opt) {
  CoxeterGraph g1 = parse_spec(read_spec_arg(spec1));
  CoxeterGraph g2 = parse_spec(spec2 == "-" ? spec1 : read_spec_arg(spec2));
  json rep;
  rep["command"] = "compare";
  rep["input"] = serialize_json(g1);
  rep["input2"] = serialize_json(g2);
  rep["diagnostics"] = json::object();
  std::ostringstream h;
  if (mode == "iso") {
    auto v = compare_iso(g1, g2);
    rep["result"]["mode"] = "iso";
    rep["result"]["verdict"] = v == IsoVerdict::Isomorphic      ? "isomorphic"
                               : v == IsoVerdict::NotIsomorphic ? "not_isomorphic"
                                                                : "unknown";
    h << rep["result"]["verdict"].get<std::string>() << "\n";
  } else if (mode == "comm") {
    auto v = compare_commensurable(g1, g2);
    rep["result"]["mode"] = "comm";
    rep["result"]["verdict"] = v == CommVerdict::Commensurable      ? "commensurable"
                               : v == CommVerdict::NotCommensurable ? "not_commensurable"
                                                                    : "unknown";
    h << rep["result"]["verdict"].get<std::string>() << "\n";
  } else {
    throw PreconditionError("compare mode must be iso or comm");
  }
  emit(rep, opt, h.str());
  return 0;
}

int cmd_oracle(const std::string& spec, bool decompositions, const Options& opt) {
  CoxeterGraph g = parse_spec(read_spec_arg(spec));
  Realization r(g);
  auto t = FiniteGroupTable::enumerate(r, opt.max_order);
  json rep = base_report("oracle", g);
  rep["result"]["order"] = t.order();
  rep["result"]["positive_roots"] = t.positive_root_count();
  rep["result"]["longest_length"] = t.length(t.longest());
  rep["result"]["longest_word"] = word_to_json(g, t.word_of(t.longest()));
  auto z = t.center();
  rep["result"]["center_order"] = z.size();
  auto th = t.theta();
  json thj = json::object();
  bool theta_id = true;
  for (unsigned s = 0; s < th.size(); ++s) {
    thj[g.vertex_name(s)] = g.vertex_name(th[s]);
    if (th[s] != s) theta_id = false;
  }
  rep["result"]["theta"] = thj;
  rep["result"]["theta_is_identity"] = theta_id;
  std::ostringstream h;
  h << "order " << t.order() << ", |Phi+| = " << t.positive_root_count() << ", l(w0) = "
    << t.length(t.longest()) << ", |Z(W)| = " << z.size()
    << (theta_id ? ", theta = id" : ", theta != id") << "\n";
  if (decompositions) {
    auto dec = t.direct_decompositions();
    rep["result"]["decompositions"] = json::array();
    h << "direct decompositions: " << dec.size() << "\n";
    for (auto& d : dec) {
      json dj;
      dj["order_a"] = d.a.size();
      dj["order_b"] = d.b.size();
      json wa = json::array(), wb = json::array();
      for (auto e : d.a) wa.push_back(word_to_json(g, t.word_of(e)));
      for (auto e : d.b) wb.push_back(word_to_json(g, t.word_of(e)));
      dj["a"] = wa;
      dj["b"] = wb;
      rep["result"]["decompositions"].push_back(dj);
      h << "  " << d.a.size() << " x " << d.b.size() << "\n";
    }
  }
  emit(rep, opt, h.str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact computations with Coxeter graphs: classification, root dynamics, "
               "essentiality, and direct-product invariants"};
  app.require_subcommand(1);
  Options opt;
  app.add_flag("--json", opt.json, "emit a JSON report");
  auto* seed_opt = app.add_option("--seed", opt.seed, "seed for randomized property demos");
  app.add_option("--max-order", opt.max_order, "enumeration cap for the oracle");

  std::string spec, spec2, word, root, mode = "iso";
  unsigned depth = 12;
  long bound = 0;
  unsigned radius = 8;
  bool decomps = false;

  auto* c_classify = app.add_subcommand("classify", "classify components against the catalogs");
  c_classify->add_option("SPEC", spec)->required();
  auto* c_decomp = app.add_subcommand("decompose", "standard decomposition and product signatures");
  c_decomp->add_option("SPEC", spec)->required();
  auto* c_ess = app.add_subcommand("essential", "essentiality of a group element");
  c_ess->add_option("SPEC", spec)->required();
  c_ess->add_option("--word", word, "space-separated vertex names")->required();
  c_ess->add_option("--depth", depth, "root enumeration depth");
  c_ess->add_option("--bound", bound, "orbit scan bound");
  c_ess->add_option("--radius", radius, "conjugation search radius");
  auto* c_roots = app.add_subcommand("roots", "inversion set and length of a word");
  c_roots->add_option("SPEC", spec)->required();
  c_roots->add_option("--word", word)->required();
  auto* c_par = app.add_subcommand("parity", "orbit parity of a root under a word");
  c_par->add_option("SPEC", spec)->required();
  c_par->add_option("--word", word)->required();
  c_par->add_option("--root", root, "comma-separated coordinates")->required();
  c_par->add_option("--bound", bound);
  auto* c_ext = app.add_subcommand("extend", "non-degenerate extension and determinant identity");
  c_ext->add_option("SPEC", spec)->required();
  auto* c_cmp = app.add_subcommand("compare", "isomorphism or commensurability of two graphs");
  c_cmp->add_option("SPEC1", spec)->required();
  c_cmp->add_option("SPEC2", spec2)->required();
  c_cmp->add_option("--mode", mode, "iso|comm");
  auto* c_orc = app.add_subcommand("oracle", "brute-force data for a finite group");
  c_orc->add_option("SPEC", spec)->required();
  c_orc->add_flag("--decompositions", decomps, "exhaustive direct-product decompositions");

  CLI11_PARSE(app, argc, argv);
  opt.seed_given = seed_opt->count() > 0;

  try {
    if (c_classify->parsed()) return cmd_classify(spec, opt);
    if (c_decomp->parsed()) return cmd_decompose(spec, opt);
    if (c_ess->parsed()) return cmd_essential(spec, word, depth, bound, radius, opt);
    if (c_roots->parsed()) return cmd_roots(spec, word, opt);
    if (c_par->parsed()) return cmd_parity(spec, word, root, bound, opt);
    if (c_ext->parsed()) return cmd_extend(spec, opt);
    if (c_cmp->parsed()) return cmd_compare(spec, spec2, mode, opt);
    if (c_orc->parsed()) return cmd_oracle(spec, decomps, opt);
  } catch (const coxkit::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 1;
  } catch (const coxkit::PreconditionError& e) {
    std::cerr << "precondition violated: " << e.what() << "\n";
    return 2;
  } catch (const coxkit::ResourceError& e) {
    std::cerr << "resource cap: " << e.what() << "\n";
    return 3;
  } catch (const coxkit::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  }
  return 0;
}
