#pragma once

// Direct-product invariants of a Coxeter group: the standard decomposition
// into irreducible components, the finite-part decomposability table with a
// runtime cross-check, the canonical product signature over indecomposable
// factors, the commensurability signature with the affine dimension, and the
// graph-level comparison verdicts built on them.

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "coxkit/catalog.hpp"
#include "coxkit/words.hpp"

namespace coxkit {

inline PartsPartition standard_decomposition(const CoxeterGraph& g) { return classify(g); }

enum class FactorKind { C2, Coxeter, Alt5, SO7_2 };

// One indecomposable factor of the finite part. Coxeter quotients are stored
// under their canonical catalog name (I2(p/2) normalized through the usual
// aliases, D3 = A3).
struct FactorDescriptor {
  FactorKind kind = FactorKind::C2;
  std::optional<CatalogId> type;  // Coxeter kind only

  std::string str() const {
    switch (kind) {
      case FactorKind::C2: return "C2";
      case FactorKind::Coxeter: return "W(" + type->str() + ")";
      case FactorKind::Alt5: return "Alt5";
      case FactorKind::SO7_2: return "SO7(2)";
    }
    return "?";
  }
  bool operator==(const FactorDescriptor& o) const { return !(*this < o) && !(o < *this); }
  bool operator<(const FactorDescriptor& o) const {
    if (kind != o.kind) return kind < o.kind;
    if (kind != FactorKind::Coxeter) return false;
    return *type < *o.type;
  }
};

struct FiniteRemak {
  bool decomposable = false;
  FactorDescriptor quotient;     // W/Z(W) when decomposable
  std::string quotient_origin;   // "I2(p/2)", "D_n", "Alt5", "SO7(2)" provenance
};

namespace detail {

// Runtime decomposability predicate from the longest element: the center is
// nontrivial (theta = id) and some odd-label block carries an odd letter
// count in a reduced word of w0, so a sign character splits off the center.
inline bool gamma_splitting_exists(const CoxeterGraph& g) {
  if (g.rank() < 2) return false;  // C2 itself: no nontrivial split
  Realization r(g);
  auto w0 = r.longest_element();
  bool theta_id = true;
  for (unsigned s = 0; s < g.rank(); ++s)
    if (w0.theta[s] != s) theta_id = false;
  if (!theta_id) return false;  // trivial center
  std::vector<unsigned> block_of(g.rank(), 0);
  auto blocks = g.odd_components();
  for (unsigned b = 0; b < blocks.size(); ++b)
    for (unsigned v : blocks[b]) block_of[v] = b;
  std::vector<unsigned> count(blocks.size(), 0);
  for (unsigned letter : w0.word) ++count[block_of[letter]];
  for (unsigned c : count)
    if (c % 2 == 1) return true;
  return false;
}

}  // namespace detail

// Decomposability of a connected spherical system, by the table, with the
// sign-character predicate cross-checked at runtime.
inline FiniteRemak finite_irreducible_remak(const CatalogId& id, bool runtime_check = true) {
  if (id.name.affine || id.affine_c)
    throw PreconditionError("finite_irreducible_remak needs a spherical type");
  FiniteRemak out;
  const CatalogName& nm = id.name;
  if (nm.family == Family::I2 && nm.param >= 6 && nm.param % 4 == 2) {
    out.decomposable = true;
    unsigned half = nm.param / 2;
    out.quotient = {FactorKind::Coxeter, catalog_id(Family::I2, half)};
    out.quotient_origin = "I2(" + std::to_string(half) + ")";
  } else if (nm.family == Family::G && nm.param == 2) {
    out.decomposable = true;  // G2 = I2(6)
    out.quotient = {FactorKind::Coxeter, catalog_id(Family::I2, 3)};
    out.quotient_origin = "I2(3)";
  } else if (nm.family == Family::B && nm.param >= 3 && nm.param % 2 == 1) {
    out.decomposable = true;
    out.quotient = {FactorKind::Coxeter,
                    nm.param == 3 ? catalog_id(Family::A, 3) : catalog_id(Family::D, nm.param)};
    out.quotient_origin = "D" + std::to_string(nm.param);
  } else if (nm.family == Family::H && nm.param == 3) {
    out.decomposable = true;
    out.quotient = {FactorKind::Alt5, std::nullopt};
    out.quotient_origin = "Alt5";
  } else if (nm.family == Family::E && nm.param == 7) {
    out.decomposable = true;
    out.quotient = {FactorKind::SO7_2, std::nullopt};
    out.quotient_origin = "SO7(2)";
  }
  if (runtime_check) {
    bool pred = detail::gamma_splitting_exists(catalog_graph(id));
    if (pred != out.decomposable)
      throw Error("internal: decomposability table disagrees with the character predicate for " +
                  id.str());
  }
  return out;
}

// Descriptor of one non-spherical irreducible component: catalog name when
// identified, otherwise the canonical labeled-graph key.
struct InfiniteFactor {
  std::optional<CatalogId> name;
  std::string graph_key;
  bool has_infinite_label = false;

  std::string str() const { return name ? name->str() : graph_key; }
  bool operator==(const InfiniteFactor& o) const { return str() == o.str(); }
  bool operator<(const InfiniteFactor& o) const { return str() < o.str(); }
};

struct RemakSignature {
  std::vector<InfiniteFactor> infinite_factors;  // the b non-spherical components
  std::vector<FactorDescriptor> finite_factors;  // the q factors of the finite part
  unsigned m = 0;                                // b + q
};

struct VirtualSignature {
  std::vector<InfiniteFactor> indefinite_factors;  // the a strongly indecomposable ones
  unsigned d = 0;                                  // affine dimension
  unsigned m = 0;                                  // a + d
};

namespace detail {

inline InfiniteFactor infinite_descriptor(const CoxeterGraph& host, const ComponentInfo& ci) {
  InfiniteFactor f;
  f.name = ci.name;
  CoxeterGraph comp = host.induced(ci.vertices);
  f.has_infinite_label = comp.has_infinite_label();
  if (!f.name) f.graph_key = graph_canonical_key(comp);
  return f;
}

}  // namespace detail

inline RemakSignature remak_signature(const CoxeterGraph& g, bool runtime_check = false) {
  auto parts = classify(g);
  RemakSignature sig;
  for (const auto& ci : parts.components) {
    if (ci.type != TypeClass::Spherical) {
      sig.infinite_factors.push_back(detail::infinite_descriptor(g, ci));
      continue;
    }
    const CatalogId& id = *ci.name;
    if (id.name.family == Family::A && id.name.param == 1 && !id.name.affine) {
      sig.finite_factors.push_back({FactorKind::C2, std::nullopt});
      continue;
    }
    auto fr = finite_irreducible_remak(id, runtime_check);
    if (!fr.decomposable) {
      sig.finite_factors.push_back({FactorKind::Coxeter, id});
    } else {
      sig.finite_factors.push_back({FactorKind::C2, std::nullopt});
      sig.finite_factors.push_back(fr.quotient);
    }
  }
  std::sort(sig.infinite_factors.begin(), sig.infinite_factors.end());
  std::sort(sig.finite_factors.begin(), sig.finite_factors.end());
  sig.m = static_cast<unsigned>(sig.infinite_factors.size() + sig.finite_factors.size());
  return sig;
}

inline unsigned affine_dimension(const CoxeterGraph& g) {
  auto parts = classify(g);
  unsigned d = 0;
  for (const auto& ci : parts.components)
    if (ci.type == TypeClass::Affine) d += static_cast<unsigned>(ci.vertices.size()) - 1;
  return d;
}

inline VirtualSignature virtual_signature(const CoxeterGraph& g) {
  auto parts = classify(g);
  VirtualSignature sig;
  for (const auto& ci : parts.components) {
    if (ci.type == TypeClass::Indefinite)
      sig.indefinite_factors.push_back(detail::infinite_descriptor(g, ci));
    else if (ci.type == TypeClass::Affine)
      sig.d += static_cast<unsigned>(ci.vertices.size()) - 1;
  }
  std::sort(sig.indefinite_factors.begin(), sig.indefinite_factors.end());
  sig.m = static_cast<unsigned>(sig.indefinite_factors.size()) + sig.d;
  return sig;
}

enum class IsoVerdict { Isomorphic, NotIsomorphic, Unknown };
enum class CommVerdict { Commensurable, NotCommensurable, Unknown };

namespace detail {

// Match two multisets of infinite components by labeled-graph isomorphism.
// Returns (perfect match achieved, every unmatched component rigid).
inline std::pair<bool, bool> match_components(std::vector<InfiniteFactor> x,
                                              std::vector<InfiniteFactor> y) {
  std::sort(x.begin(), x.end());
  std::sort(y.begin(), y.end());
  std::vector<InfiniteFactor> lx, ly;
  std::set_difference(x.begin(), x.end(), y.begin(), y.end(), std::back_inserter(lx));
  std::set_difference(y.begin(), y.end(), x.begin(), x.end(), std::back_inserter(ly));
  if (lx.empty() && ly.empty()) return {true, true};
  bool all_rigid = true;
  for (const auto& f : lx)
    if (f.has_infinite_label) all_rigid = false;
  for (const auto& f : ly)
    if (f.has_infinite_label) all_rigid = false;
  return {false, all_rigid};
}

}  // namespace detail

// Isomorphism of the groups defined by two graphs, decided through the
// canonical product signatures. The finite parts compare exactly; infinite
// components compare by labeled-graph isomorphism, which is conclusive for
// the negative answer only when the unmatched components carry no infinite
// labels (those groups are rigid).
inline IsoVerdict compare_iso(const CoxeterGraph& g1, const CoxeterGraph& g2) {
  auto s1 = remak_signature(g1);
  auto s2 = remak_signature(g2);
  if (s1.finite_factors != s2.finite_factors) return IsoVerdict::NotIsomorphic;
  if (s1.infinite_factors.size() != s2.infinite_factors.size()) return IsoVerdict::NotIsomorphic;
  auto [matched, rigid] = detail::match_components(s1.infinite_factors, s2.infinite_factors);
  if (matched) return IsoVerdict::Isomorphic;
  return rigid ? IsoVerdict::NotIsomorphic : IsoVerdict::Unknown;
}

// Commensurability through the virtual signature: the indefinite component
// multiset (up to commensurability) together with the affine dimension.
inline CommVerdict compare_commensurable(const CoxeterGraph& g1, const CoxeterGraph& g2) {
  auto s1 = virtual_signature(g1);
  auto s2 = virtual_signature(g2);
  if (s1.indefinite_factors.size() != s2.indefinite_factors.size())
    return CommVerdict::NotCommensurable;
  if (s1.d != s2.d) return CommVerdict::NotCommensurable;
  auto [matched, rigid] = detail::match_components(s1.indefinite_factors, s2.indefinite_factors);
  (void)rigid;
  if (matched) return CommVerdict::Commensurable;
  // isomorphic graphs would be commensurable; non-isomorphic indefinite
  // components may or may not be, and the graph level cannot decide
  return CommVerdict::Unknown;
}

}  // namespace coxkit
