#pragma once

// Brute-force engine for finite Coxeter groups. Elements are permutations of
// the full root list, enumerated breadth-first by length; composition is
// permutation composition. Ground truth for the decomposition machinery.

#include <algorithm>
#include <cstdint>
#include <deque>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "coxkit/words.hpp"

namespace coxkit {

class FiniteGroupTable {
 public:
  using Perm = std::vector<std::uint16_t>;

  static FiniteGroupTable enumerate(const Realization& r, std::size_t cap = 3000000) {
    if (definiteness(r.form()).kind != DefinitenessKind::PositiveDefinite)
      throw PreconditionError("enumerate needs a spherical graph");
    FiniteGroupTable t;
    auto en = r.positive_roots(1000, cap);
    if (!en.complete) throw ResourceError("root system did not close");
    t.positive_count_ = static_cast<unsigned>(en.roots.size());
    std::vector<Vec> roots = en.roots;
    for (const auto& v : en.roots) {
      Vec neg(v.size(), r.field()->zero());
      for (std::size_t i = 0; i < v.size(); ++i) neg[i] = -v[i];
      roots.push_back(std::move(neg));
    }
    std::map<std::string, std::uint16_t> root_idx;
    for (std::size_t i = 0; i < roots.size(); ++i)
      root_idx.emplace(r.vec_key(roots[i]), static_cast<std::uint16_t>(i));
    const unsigned N = static_cast<unsigned>(roots.size());
    t.gen_perms_.resize(r.rank());
    for (unsigned s = 0; s < r.rank(); ++s) {
      Perm p(N);
      for (unsigned i = 0; i < N; ++i) {
        Vec img = r.reflect_simple(s, roots[i]);
        p[i] = root_idx.at(r.vec_key(img));
      }
      t.gen_perms_[s] = std::move(p);
    }
    Perm ident(N);
    for (unsigned i = 0; i < N; ++i) ident[i] = static_cast<std::uint16_t>(i);
    t.index_.emplace(ident, 0);
    t.perms_.push_back(std::move(ident));
    t.length_.push_back(0);
    t.parent_.push_back(0);
    t.parent_letter_.push_back(0);
    std::deque<std::uint32_t> queue{0};
    while (!queue.empty()) {
      std::uint32_t e = queue.front();
      queue.pop_front();
      for (unsigned s = 0; s < r.rank(); ++s) {
        // right multiplication: (x * s) acts by x(s(root))
        Perm q(N);
        const Perm& ep = t.perms_[e];
        const Perm& sp = t.gen_perms_[s];
        for (unsigned i = 0; i < N; ++i) q[i] = ep[sp[i]];
        auto it = t.index_.find(q);
        if (it != t.index_.end()) continue;
        if (t.perms_.size() >= cap) throw ResourceError("group order exceeds enumeration cap");
        auto id = static_cast<std::uint32_t>(t.perms_.size());
        t.index_.emplace(q, id);
        t.perms_.push_back(std::move(q));
        t.length_.push_back(t.length_[e] + 1);
        t.parent_.push_back(e);
        t.parent_letter_.push_back(s);
        queue.push_back(id);
      }
    }
    t.gens_.resize(r.rank());
    for (unsigned s = 0; s < r.rank(); ++s) t.gens_[s] = t.index_.at(t.gen_perms_[s]);
    // the unique longest element
    unsigned maxlen = 0;
    for (auto l : t.length_) maxlen = std::max(maxlen, l);
    std::vector<std::uint32_t> longest;
    for (std::uint32_t i = 0; i < t.perms_.size(); ++i)
      if (t.length_[i] == maxlen) longest.push_back(i);
    if (maxlen != t.positive_count_ || longest.size() != 1)
      throw Error("internal: longest element is not unique of length |Phi+|");
    t.w0_ = longest[0];
    return t;
  }

  std::size_t order() const { return perms_.size(); }
  unsigned rank() const { return static_cast<unsigned>(gens_.size()); }
  std::uint32_t identity() const { return 0; }
  std::uint32_t generator(unsigned s) const { return gens_.at(s); }
  std::uint32_t longest() const { return w0_; }
  unsigned positive_root_count() const { return positive_count_; }
  unsigned length(std::uint32_t e) const { return length_.at(e); }

  std::uint32_t mult(std::uint32_t a, std::uint32_t b) const {
    const Perm& pa = perms_[a];
    const Perm& pb = perms_[b];
    Perm q(pa.size());
    for (std::size_t i = 0; i < pa.size(); ++i) q[i] = pa[pb[i]];
    return index_.at(q);
  }
  std::uint32_t inverse(std::uint32_t a) const {
    const Perm& pa = perms_[a];
    Perm q(pa.size());
    for (std::size_t i = 0; i < pa.size(); ++i) q[pa[i]] = static_cast<std::uint16_t>(i);
    return index_.at(q);
  }
  unsigned element_order(std::uint32_t a) const {
    unsigned k = 1;
    std::uint32_t x = a;
    while (x != 0) {
      x = mult(x, a);
      ++k;
    }
    return k;
  }

  Word word_of(std::uint32_t e) const {
    Word w;
    while (e != 0) {
      w.push_back(parent_letter_[e]);
      e = parent_[e];
    }
    std::reverse(w.begin(), w.end());
    return w;
  }

  bool commute(std::uint32_t a, std::uint32_t b) const { return mult(a, b) == mult(b, a); }

  std::vector<std::uint32_t> center() const {
    std::vector<std::uint32_t> z;
    for (std::uint32_t e = 0; e < perms_.size(); ++e) {
      bool ok = true;
      for (auto g : gens_)
        if (!commute(e, g)) {
          ok = false;
          break;
        }
      if (ok) z.push_back(e);
    }
    return z;
  }

  std::vector<std::uint32_t> centralizer(const std::vector<std::uint32_t>& xs) const {
    std::vector<std::uint32_t> z;
    for (std::uint32_t e = 0; e < perms_.size(); ++e) {
      bool ok = true;
      for (auto x : xs)
        if (!commute(e, x)) {
          ok = false;
          break;
        }
      if (ok) z.push_back(e);
    }
    return z;
  }

  // theta(s) with w0 s w0 = theta(s); the table must be a full group table.
  std::vector<unsigned> theta() const {
    std::vector<unsigned> th(rank(), rank());
    for (unsigned s = 0; s < rank(); ++s) {
      std::uint32_t c = mult(mult(w0_, gens_[s]), w0_);
      for (unsigned u = 0; u < rank(); ++u)
        if (c == gens_[u]) {
          th[s] = u;
          break;
        }
      if (th[s] == rank()) throw Error("internal: w0 does not permute the generators");
    }
    return th;
  }

  std::vector<std::vector<std::uint32_t>> conjugacy_classes() const {
    std::vector<char> seen(perms_.size(), 0);
    std::vector<std::vector<std::uint32_t>> classes;
    for (std::uint32_t e = 0; e < perms_.size(); ++e) {
      if (seen[e]) continue;
      std::vector<std::uint32_t> cls{e};
      seen[e] = 1;
      for (std::size_t h = 0; h < cls.size(); ++h) {
        for (auto g : gens_) {
          std::uint32_t c = mult(mult(g, cls[h]), g);  // generators are involutions
          if (!seen[c]) {
            seen[c] = 1;
            cls.push_back(c);
          }
        }
      }
      std::sort(cls.begin(), cls.end());
      classes.push_back(std::move(cls));
    }
    return classes;
  }

  std::vector<std::uint32_t> subgroup_closure(std::vector<std::uint32_t> gens) const {
    std::set<std::uint32_t> sub{0};
    std::deque<std::uint32_t> fresh{0};
    std::sort(gens.begin(), gens.end());
    gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
    while (!fresh.empty()) {
      std::uint32_t e = fresh.front();
      fresh.pop_front();
      for (auto g : gens) {
        std::uint32_t p = mult(e, g);
        if (sub.insert(p).second) fresh.push_back(p);
      }
    }
    return {sub.begin(), sub.end()};
  }

  // Every normal subgroup, as the join closure of the normal closures of
  // single conjugacy classes. The join of two normal subgroups is their
  // elementwise product set.
  std::vector<std::vector<std::uint32_t>> normal_subgroups() const {
    auto classes = conjugacy_classes();
    std::set<std::vector<std::uint32_t>> normals;
    normals.insert({0});
    for (const auto& cls : classes) normals.insert(subgroup_closure(cls));
    auto join = [this](const std::vector<std::uint32_t>& A, const std::vector<std::uint32_t>& B) {
      std::set<std::uint32_t> s;
      for (auto a : A)
        for (auto b : B) s.insert(mult(a, b));
      return std::vector<std::uint32_t>(s.begin(), s.end());
    };
    bool grew = true;
    while (grew) {
      grew = false;
      std::vector<std::vector<std::uint32_t>> cur(normals.begin(), normals.end());
      for (std::size_t i = 0; i < cur.size(); ++i)
        for (std::size_t j = i + 1; j < cur.size(); ++j) {
          if (order() % (std::max(cur[i].size(), cur[j].size())) != 0) continue;
          auto joined = join(cur[i], cur[j]);
          if (order() % joined.size() != 0)
            throw Error("internal: join of normal subgroups is not a subgroup");
          if (normals.insert(std::move(joined)).second) grew = true;
        }
    }
    return {normals.begin(), normals.end()};
  }

  struct Decomposition {
    std::vector<std::uint32_t> a, b;  // G = <a> x <b>, both nontrivial
  };

  // Exhaustive direct-product decompositions via pairs of normal subgroups.
  std::vector<Decomposition> direct_decompositions() const {
    if (order() > 10000)
      throw ResourceError("direct decomposition search is capped at order 10^4");
    auto normals = normal_subgroups();
    std::vector<Decomposition> out;
    for (std::size_t i = 0; i < normals.size(); ++i)
      for (std::size_t j = i; j < normals.size(); ++j) {
        const auto& A = normals[i];
        const auto& B = normals[j];
        if (A.size() < 2 || B.size() < 2) continue;
        if (A.size() * B.size() != order()) continue;
        std::vector<std::uint32_t> inter;
        std::set_intersection(A.begin(), A.end(), B.begin(), B.end(), std::back_inserter(inter));
        if (inter.size() != 1) continue;
        bool commuting = true;
        for (auto a : A) {
          for (auto b : B)
            if (!commute(a, b)) {
              commuting = false;
              break;
            }
          if (!commuting) break;
        }
        if (!commuting) continue;
        // full product check
        std::set<std::uint32_t> prod;
        for (auto a : A) {
          for (auto b : B) prod.insert(mult(a, b));
          if (prod.size() == order()) break;
        }
        if (prod.size() != order()) continue;
        out.push_back({A, B});
      }
    return out;
  }

  // Group isomorphism for small tables by generator-image backtracking with
  // order-profile pruning.
  static bool isomorphic(const FiniteGroupTable& g, const FiniteGroupTable& h) {
    if (g.order() != h.order()) return false;
    if (g.order() > 2000 || h.order() > 2000)
      throw ResourceError("isomorphism test is capped at order 2000");
    auto profile = [](const FiniteGroupTable& t) {
      std::map<unsigned, unsigned> p;
      for (std::uint32_t e = 0; e < t.order(); ++e) ++p[t.element_order(e)];
      return p;
    };
    if (profile(g) != profile(h)) return false;
    std::vector<unsigned> gorder(g.order());
    for (std::uint32_t e = 0; e < g.order(); ++e) gorder[e] = g.element_order(e);
    std::vector<unsigned> horder(h.order());
    for (std::uint32_t e = 0; e < h.order(); ++e) horder[e] = h.element_order(e);

    const unsigned k = g.rank();
    std::vector<std::uint32_t> images(k, 0);
    std::uint64_t attempts = 0;
    std::function<bool(unsigned)> assign = [&](unsigned pos) -> bool {
      if (pos == k) return verify_map(g, h, images);
      for (std::uint32_t cand = 0; cand < h.order(); ++cand) {
        if (horder[cand] != gorder[g.generator(pos)]) continue;
        bool ok = true;
        for (unsigned p2 = 0; p2 < pos && ok; ++p2) {
          std::uint32_t prod_g = g.mult(g.generator(p2), g.generator(pos));
          std::uint32_t prod_h = h.mult(images[p2], cand);
          if (gorder[prod_g] != horder[prod_h]) ok = false;
        }
        if (!ok) continue;
        if (++attempts > 2000000) throw ResourceError("isomorphism search budget exceeded");
        images[pos] = cand;
        if (assign(pos + 1)) return true;
      }
      return false;
    };
    return assign(0);
  }

 private:
  struct PermHash {
    std::size_t operator()(const Perm& p) const {
      std::size_t hsh = 1469598103934665603ull;
      for (auto v : p) hsh = (hsh ^ v) * 1099511628211ull;
      return hsh;
    }
  };

  static bool verify_map(const FiniteGroupTable& g, const FiniteGroupTable& h,
                         const std::vector<std::uint32_t>& images) {
    // extend by BFS words, then check full multiplicativity and bijectivity
    std::vector<std::uint32_t> phi(g.order());
    phi[0] = 0;
    for (std::uint32_t e = 1; e < g.order(); ++e)
      phi[e] = h.mult(phi[g.parent_[e]], images[g.parent_letter_[e]]);
    std::vector<char> hit(h.order(), 0);
    for (auto v : phi) {
      if (hit[v]) return false;
      hit[v] = 1;
    }
    for (std::uint32_t a = 0; a < g.order(); ++a)
      for (auto s : g.gens_)
        if (phi[g.mult(a, s)] != h.mult(phi[a], phi[s])) return false;
    // generator-wise multiplicativity extends to products; double-check a few
    // random full products for safety
    std::uint64_t seed = 0x9e3779b97f4a7c15ull;
    for (unsigned t = 0; t < 64; ++t) {
      seed = seed * 6364136223846793005ull + 1442695040888963407ull;
      std::uint32_t a = static_cast<std::uint32_t>((seed >> 20) % g.order());
      std::uint32_t b = static_cast<std::uint32_t>((seed >> 44) % g.order());
      if (phi[g.mult(a, b)] != h.mult(phi[a], phi[b])) return false;
    }
    return true;
  }

  std::vector<Perm> gen_perms_;
  std::vector<Perm> perms_;
  std::unordered_map<Perm, std::uint32_t, PermHash> index_;
  std::vector<unsigned> length_;
  std::vector<std::uint32_t> parent_;
  std::vector<unsigned> parent_letter_;
  std::vector<std::uint32_t> gens_;
  std::uint32_t w0_ = 0;
  unsigned positive_count_ = 0;
};

}  // namespace coxkit
