#pragma once

// Coxeter graphs as immutable-style value types: a vertex list and a
// symmetric label map. A pair with no stored label has m = 2 (no edge);
// m_ss = 1 implicitly. Infinite labels use CoxeterGraph::infinity.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "coxkit/scalar.hpp"

namespace coxkit {

class CoxeterGraph {
 public:
  static constexpr unsigned infinity = std::numeric_limits<unsigned>::max();

  CoxeterGraph() = default;
  explicit CoxeterGraph(std::vector<std::string> names) {
    for (auto& n : names) add_vertex(std::move(n));
  }

  unsigned rank() const { return static_cast<unsigned>(names_.size()); }
  const std::vector<std::string>& vertex_names() const { return names_; }
  const std::string& vertex_name(unsigned i) const { return names_.at(i); }

  std::optional<unsigned> find_vertex(const std::string& name) const {
    for (unsigned i = 0; i < names_.size(); ++i)
      if (names_[i] == name) return i;
    return std::nullopt;
  }
  unsigned index_of(const std::string& name) const {
    auto i = find_vertex(name);
    if (!i) throw Error("unknown vertex '" + name + "'");
    return *i;
  }

  void add_vertex(std::string name) {
    if (find_vertex(name)) throw Error("duplicate vertex '" + name + "'");
    names_.push_back(std::move(name));
  }

  unsigned label(unsigned i, unsigned j) const {
    if (i == j) return 1;
    auto it = labels_.find(key(i, j));
    return it == labels_.end() ? 2 : it->second;
  }

  // m = 2 erases; re-setting a different finite label is a conflict
  void set_label(unsigned i, unsigned j, unsigned m) {
    if (i >= rank() || j >= rank()) throw Error("vertex index out of range");
    if (i == j) throw Error("self-labels are fixed to 1");
    if (m < 2) throw Error("label " + std::to_string(m) + " is not allowed (labels are >= 2 or inf)");
    auto k = key(i, j);
    auto it = labels_.find(k);
    if (it != labels_.end() && it->second != m)
      throw Error("conflicting labels for edge {" + names_[i] + "," + names_[j] + "}");
    if (m == 2) return;
    labels_.emplace(k, m);
  }

  // Sorted (i,j,m) with i < j and m >= 3 (or infinity).
  std::vector<std::tuple<unsigned, unsigned, unsigned>> edges() const {
    std::vector<std::tuple<unsigned, unsigned, unsigned>> e;
    e.reserve(labels_.size());
    for (const auto& [k, m] : labels_) e.emplace_back(k.first, k.second, m);
    return e;
  }

  bool has_infinite_label() const {
    for (const auto& [k, m] : labels_)
      if (m == infinity) return true;
    return false;
  }

  unsigned max_finite_label() const {
    unsigned mx = 2;
    for (const auto& [k, m] : labels_)
      if (m != infinity) mx = std::max(mx, m);
    return mx;
  }

  // lcm of all finite labels; 2 when there are none
  unsigned field_order() const {
    unsigned l = 2;
    for (const auto& [k, m] : labels_)
      if (m != infinity) l = std::lcm(l, m);
    return l;
  }
  CycloField::Ptr field() const { return CycloField::get(field_order()); }

  // Connected components of the underlying graph (edges are labels >= 3),
  // ordered by smallest vertex index.
  std::vector<std::vector<unsigned>> components() const {
    std::vector<int> comp(rank(), -1);
    std::vector<std::vector<unsigned>> out;
    for (unsigned v = 0; v < rank(); ++v) {
      if (comp[v] >= 0) continue;
      std::vector<unsigned> block{v};
      comp[v] = static_cast<int>(out.size());
      for (std::size_t h = 0; h < block.size(); ++h) {
        for (unsigned u = 0; u < rank(); ++u) {
          if (comp[u] < 0 && label(block[h], u) >= 3) {
            comp[u] = comp[v];
            block.push_back(u);
          }
        }
        std::sort(block.begin() + static_cast<long>(h) + 1, block.end());
      }
      std::sort(block.begin(), block.end());
      out.push_back(std::move(block));
    }
    return out;
  }

  bool is_connected() const { return rank() > 0 && components().size() == 1; }

  CoxeterGraph induced(const std::vector<unsigned>& verts) const {
    CoxeterGraph g;
    for (unsigned v : verts) {
      if (v >= rank()) throw Error("unknown vertex index in induced subgraph");
      g.add_vertex(names_[v]);
    }
    for (unsigned a = 0; a < verts.size(); ++a)
      for (unsigned b = a + 1; b < verts.size(); ++b) {
        unsigned m = label(verts[a], verts[b]);
        if (m >= 3) g.set_label(a, b, m);
      }
    return g;
  }

  // Blocks of the odd-label graph: edges are pairs with finite odd m.
  std::vector<std::vector<unsigned>> odd_components() const {
    std::vector<int> comp(rank(), -1);
    std::vector<std::vector<unsigned>> out;
    for (unsigned v = 0; v < rank(); ++v) {
      if (comp[v] >= 0) continue;
      std::vector<unsigned> block{v};
      comp[v] = static_cast<int>(out.size());
      for (std::size_t h = 0; h < block.size(); ++h) {
        for (unsigned u = 0; u < rank(); ++u) {
          unsigned m = label(block[h], u);
          if (comp[u] < 0 && m != infinity && m >= 3 && m % 2 == 1) {
            comp[u] = comp[v];
            block.push_back(u);
          }
        }
      }
      std::sort(block.begin(), block.end());
      out.push_back(std::move(block));
    }
    return out;
  }

  static CoxeterGraph disjoint_union(const std::vector<CoxeterGraph>& parts,
                                     bool prefix_names) {
    CoxeterGraph g;
    unsigned base = 0;
    for (std::size_t p = 0; p < parts.size(); ++p) {
      for (const auto& n : parts[p].names_)
        g.add_vertex(prefix_names ? std::to_string(p + 1) + "." + n : n);
      for (const auto& [k, m] : parts[p].labels_)
        g.set_label(base + k.first, base + k.second, m);
      base += parts[p].rank();
    }
    return g;
  }

  CoxeterGraph renamed(std::vector<std::string> names) const {
    if (names.size() != names_.size()) throw Error("rename size mismatch");
    CoxeterGraph g(std::move(names));
    g.labels_ = labels_;
    return g;
  }

  // Same labels, vertices reordered so that new index i is old perm[i].
  CoxeterGraph permuted(const std::vector<unsigned>& perm) const {
    CoxeterGraph g;
    for (unsigned i : perm) g.add_vertex(names_.at(i));
    for (unsigned a = 0; a < perm.size(); ++a)
      for (unsigned b = a + 1; b < perm.size(); ++b) {
        unsigned m = label(perm[a], perm[b]);
        if (m >= 3) g.set_label(a, b, m);
      }
    return g;
  }

  bool same_labels(const CoxeterGraph& o) const {
    return rank() == o.rank() && labels_ == o.labels_;
  }

 private:
  static std::pair<unsigned, unsigned> key(unsigned i, unsigned j) {
    return {std::min(i, j), std::max(i, j)};
  }

  std::vector<std::string> names_;
  std::map<std::pair<unsigned, unsigned>, unsigned> labels_;
};

namespace detail {

inline std::vector<std::vector<unsigned>> iso_vertex_classes(const CoxeterGraph& g) {
  const unsigned n = g.rank();
  // refine vertex classes by iterated multisets of (incident label, neighbor class)
  std::vector<unsigned> cls(n, 0);
  for (unsigned round = 0; round < n; ++round) {
    std::vector<std::string> sig(n);
    for (unsigned v = 0; v < n; ++v) {
      std::vector<std::pair<unsigned, unsigned>> inc;
      for (unsigned u = 0; u < n; ++u) {
        unsigned m = g.label(v, u);
        if (u != v && m >= 3) inc.emplace_back(m, cls[u]);
      }
      std::sort(inc.begin(), inc.end());
      sig[v] = std::to_string(cls[v]) + "|";
      for (auto& [m, c] : inc)
        sig[v] += std::to_string(m) + ":" + std::to_string(c) + ",";
    }
    std::vector<std::string> sorted = sig;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    std::vector<unsigned> next(n);
    for (unsigned v = 0; v < n; ++v)
      next[v] = static_cast<unsigned>(
          std::lower_bound(sorted.begin(), sorted.end(), sig[v]) - sorted.begin());
    if (next == cls) break;
    cls = next;
  }
  unsigned k = *std::max_element(cls.begin(), cls.end()) + 1;
  std::vector<std::vector<unsigned>> classes(k);
  for (unsigned v = 0; v < n; ++v) classes[cls[v]].push_back(v);
  return classes;
}

}  // namespace detail

// Exact labeled-graph isomorphism by backtracking with class pruning.
inline bool labeled_isomorphic(const CoxeterGraph& a, const CoxeterGraph& b) {
  const unsigned n = a.rank();
  if (n != b.rank()) return false;
  auto labels_multiset = [](const CoxeterGraph& g) {
    std::vector<unsigned> ms;
    for (auto& [i, j, m] : g.edges()) ms.push_back(m);
    std::sort(ms.begin(), ms.end());
    return ms;
  };
  if (labels_multiset(a) != labels_multiset(b)) return false;
  std::vector<int> map_ab(n, -1), used_b(n, 0);
  std::vector<unsigned> order(n);
  std::iota(order.begin(), order.end(), 0u);
  // match vertices in order; try all b-vertices (class pruning via degree sig)
  auto sig = [](const CoxeterGraph& g, unsigned v) {
    std::vector<unsigned> inc;
    for (unsigned u = 0; u < g.rank(); ++u)
      if (u != v && g.label(v, u) >= 3) inc.push_back(g.label(v, u));
    std::sort(inc.begin(), inc.end());
    return inc;
  };
  std::vector<std::vector<unsigned>> siga(n), sigb(n);
  for (unsigned v = 0; v < n; ++v) {
    siga[v] = sig(a, v);
    sigb[v] = sig(b, v);
  }
  std::function<bool(unsigned)> rec = [&](unsigned depth) -> bool {
    if (depth == n) return true;
    unsigned v = order[depth];
    for (unsigned w = 0; w < n; ++w) {
      if (used_b[w] || siga[v] != sigb[w]) continue;
      bool ok = true;
      for (unsigned d = 0; d < depth && ok; ++d) {
        unsigned v2 = order[d];
        if (a.label(v, v2) != b.label(static_cast<unsigned>(w), static_cast<unsigned>(map_ab[v2])))
          ok = false;
      }
      if (!ok) continue;
      map_ab[v] = static_cast<int>(w);
      used_b[w] = 1;
      if (rec(depth + 1)) return true;
      used_b[w] = 0;
      map_ab[v] = -1;
    }
    return false;
  };
  return rec(0);
}

// Canonical string key of a labeled graph: lexicographically least
// upper-triangle label matrix over vertex orderings compatible with the
// refinement classes. Used to put anonymous graphs into multisets.
inline std::string graph_canonical_key(const CoxeterGraph& g) {
  const unsigned n = g.rank();
  auto classes = detail::iso_vertex_classes(g);
  // class signature participates in the key so different refinements differ
  std::sort(classes.begin(), classes.end(),
            [&](const std::vector<unsigned>& x, const std::vector<unsigned>& y) {
              return x.size() != y.size() ? x.size() < y.size() : x < y;
            });
  std::vector<unsigned> order;
  for (auto& c : classes) order.insert(order.end(), c.begin(), c.end());
  std::string best;
  // permute within classes only
  std::vector<std::pair<std::size_t, std::size_t>> ranges;
  std::size_t pos = 0;
  for (auto& c : classes) {
    ranges.emplace_back(pos, pos + c.size());
    pos += c.size();
  }
  std::uint64_t tries = 0;
  std::function<void(std::size_t)> rec = [&](std::size_t ri) {
    if (++tries > 2000000) throw ResourceError("graph too symmetric for canonical labeling");
    if (ri == ranges.size()) {
      std::string key;
      key.reserve(n * n * 2);
      for (unsigned i = 0; i < n; ++i)
        for (unsigned j = i + 1; j < n; ++j) {
          unsigned m = g.label(order[i], order[j]);
          key += (m == CoxeterGraph::infinity) ? std::string("inf") : std::to_string(m);
          key += ';';
        }
      if (best.empty() || key < best) best = key;
      return;
    }
    auto [lo, hi] = ranges[ri];
    std::sort(order.begin() + static_cast<long>(lo), order.begin() + static_cast<long>(hi));
    do {
      rec(ri + 1);
    } while (std::next_permutation(order.begin() + static_cast<long>(lo),
                                   order.begin() + static_cast<long>(hi)));
  };
  rec(0);
  return "r" + std::to_string(n) + "[" + best + "]";
}

}  // namespace coxkit
