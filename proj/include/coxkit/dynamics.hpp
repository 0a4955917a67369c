#pragma once

// Root-orbit dynamics: the periodic / even / odd trichotomy for roots under
// iteration of an element, harvesting of odd roots, and essentiality tests
// with certificates.

#include <algorithm>
#include <deque>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "coxkit/words.hpp"

namespace coxkit {

enum class ParityKind { Periodic, Even, Odd, Unknown };

struct ParityResult {
  ParityKind kind = ParityKind::Unknown;
  unsigned period = 0;                   // minimal period when Periodic
  std::vector<long> separation_indices;  // m with "alpha separates w^m and w^{m+1}"
  long bound_used = 0;

  unsigned separations() const { return static_cast<unsigned>(separation_indices.size()); }
};

struct DynamicsParams {
  unsigned depth = 12;      // positive-root enumeration depth
  long bound = 0;           // orbit scan bound; 0 = 16 * max(len(w), 1)
  unsigned conj_radius = 8; // conjugation search radius
  std::size_t node_cap = 20000;
};

// Precomputed iteration context for one element; reusable across many roots.
class OrbitScanner {
 public:
  OrbitScanner(const Realization& r, const Word& w)
      : r_(r), word_(r.reduce(w)), fwd_(r.word_matrix(w)) {
    Word rev(w.rbegin(), w.rend());
    bwd_ = r_.word_matrix(rev);
    // detect small finite order exactly
    Matrix p = fwd_;
    for (unsigned k = 1; k <= 64; ++k) {
      if (p.is_identity()) {
        finite_order_ = k;
        break;
      }
      p = p * fwd_;
    }
  }

  const Word& reduced_word() const { return word_; }
  unsigned length() const { return static_cast<unsigned>(word_.size()); }
  std::optional<unsigned> finite_order() const { return finite_order_; }
  const Matrix& forward() const { return fwd_; }

  long default_bound() const { return 16L * std::max<long>(1, length()); }

  // Scan the orbit w^m(alpha) for m in [-bound, bound] with exact revisiting
  // and sign tracking. Even/Odd are reported only when the scan reached a
  // sign-stable tail on both ends; otherwise Unknown.
  ParityResult parity(const Vec& alpha, long bound = 0) const {
    if (bound <= 0) bound = default_bound();
    ParityResult res;
    res.bound_used = bound;
    if (finite_order_) {
      Vec x = alpha;
      for (unsigned m = 1; m <= *finite_order_; ++m) {
        x = fwd_.apply(x);
        if (vec_eq(x, alpha)) {
          res.kind = ParityKind::Periodic;
          res.period = m;
          return res;
        }
      }
      throw Error("internal: orbit of finite-order element did not close");
    }
    const long window = std::min<long>(bound, std::max<long>(length(), 2));
    std::vector<long> seps;
    long fwd_run = 1, bwd_run = 1;
    // forward: signs of w^m alpha, m = 0,1,...,bound
    {
      Vec x = alpha;
      int prev = sign_of(x);
      for (long m = 1; m <= bound; ++m) {
        x = fwd_.apply(x);
        if (vec_eq(x, alpha)) {
          res.kind = ParityKind::Periodic;
          res.period = static_cast<unsigned>(m);
          return res;
        }
        int s = sign_of(x);
        if (s != prev) {
          seps.push_back(m - 1);  // separates w^{m-1} and w^m
          fwd_run = 1;
        } else {
          ++fwd_run;
        }
        prev = s;
      }
    }
    // backward: signs of w^m alpha, m = -1,-2,...,-bound
    {
      Vec x = alpha;
      int prev = sign_of(x);
      for (long k = 1; k <= bound; ++k) {
        x = bwd_.apply(x);
        if (vec_eq(x, alpha)) {
          res.kind = ParityKind::Periodic;
          res.period = static_cast<unsigned>(k);
          return res;
        }
        int s = sign_of(x);
        if (s != prev) {
          seps.push_back(-k);  // separates w^{-k} and w^{-k+1}
          bwd_run = 1;
        } else {
          ++bwd_run;
        }
        prev = s;
      }
    }
    if (fwd_run < window || bwd_run < window) {
      res.kind = ParityKind::Unknown;
      return res;
    }
    std::sort(seps.begin(), seps.end());
    res.separation_indices = std::move(seps);
    res.kind = (res.separation_indices.size() % 2 == 0) ? ParityKind::Even : ParityKind::Odd;
    return res;
  }

 private:
  int sign_of(const Vec& x) const {
    return r_.root_sign(x) == RootSign::Positive ? 1 : -1;
  }
  static bool vec_eq(const Vec& a, const Vec& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
      if (!(a[i] == b[i])) return false;
    return true;
  }

  const Realization& r_;
  Word word_;
  Matrix fwd_, bwd_;
  std::optional<unsigned> finite_order_;
};

inline ParityResult root_parity(const Realization& r, const Word& w, const Vec& alpha,
                                long bound = 0) {
  return OrbitScanner(r, w).parity(alpha, bound);
}

struct OddRoots {
  std::vector<Vec> roots;      // positive w-odd roots up to the depth
  unsigned unknown_count = 0;  // roots whose verdict stayed Unknown
  unsigned scanned = 0;
};

inline OddRoots odd_roots(const Realization& r, const Word& w, unsigned depth, long bound = 0) {
  if (depth < 1) throw PreconditionError("odd_roots needs depth >= 1");
  OrbitScanner scan(r, w);
  OddRoots out;
  auto en = r.positive_roots(depth);
  out.scanned = static_cast<unsigned>(en.roots.size());
  for (const auto& beta : en.roots) {
    auto p = scan.parity(beta, bound);
    if (p.kind == ParityKind::Odd)
      out.roots.push_back(beta);
    else if (p.kind == ParityKind::Unknown)
      ++out.unknown_count;
  }
  return out;
}

enum class EssentialityKind { Essential, NotEssential, Unknown };
enum class EssentialCertificate { FiniteFixedSpaceTrivial, OddRootsGenerate };

struct EssentialityVerdict {
  EssentialityKind kind = EssentialityKind::Unknown;
  EssentialCertificate certificate = EssentialCertificate::FiniteFixedSpaceTrivial;
  std::vector<Vec> odd_root_list;    // OddRootsGenerate payload
  Word witness_u;                    // NotEssential: u with u^-1 w u in W_X
  std::vector<unsigned> witness_x;   // NotEssential: proper subset X
  std::string reason;                // Unknown
};

namespace detail {

// Close a set of positive roots under mutual reflection, staying inside the
// given universe of enumerated roots. Returns true when every simple root
// ends up in the closure.
inline bool odd_closure_reaches_simples(const Realization& r, const std::vector<Vec>& seed,
                                        const std::vector<Vec>& universe,
                                        std::size_t cap) {
  std::map<std::string, std::size_t> uni;
  for (std::size_t i = 0; i < universe.size(); ++i) uni.emplace(r.vec_key(universe[i]), i);
  std::vector<std::size_t> simple_ids(r.rank());
  for (unsigned s = 0; s < r.rank(); ++s) {
    auto it = uni.find(r.vec_key(r.simple_root(s)));
    if (it == uni.end()) return false;
    simple_ids[s] = it->second;
  }
  std::vector<std::optional<Matrix>> refl(universe.size());
  auto reflection_of = [&](std::size_t i) -> const Matrix& {
    if (!refl[i]) refl[i] = r.reflection(universe[i]);
    return *refl[i];
  };
  std::set<std::size_t> closure;
  std::deque<std::size_t> fresh;
  auto add = [&](std::size_t i) {
    if (closure.insert(i).second) fresh.push_back(i);
  };
  for (const auto& b : seed) {
    auto it = uni.find(r.vec_key(b));
    if (it != uni.end()) add(it->second);
  }
  auto all_simples_in = [&] {
    for (std::size_t id : simple_ids)
      if (!closure.count(id)) return false;
    return true;
  };
  auto flip_positive = [&](Vec v) {
    if (r.root_sign(v) == RootSign::Negative)
      for (auto& c : v) c = -c;
    return v;
  };
  if (all_simples_in()) return true;
  while (!fresh.empty() && closure.size() < cap) {
    std::size_t bi = fresh.front();
    fresh.pop_front();
    const Matrix& rb = reflection_of(bi);
    std::vector<std::size_t> members(closure.begin(), closure.end());
    for (std::size_t gi : members) {
      Vec img = flip_positive(rb.apply(universe[gi]));
      auto it = uni.find(r.vec_key(img));
      if (it != uni.end()) add(it->second);
      Vec img2 = flip_positive(reflection_of(gi).apply(universe[bi]));
      auto it2 = uni.find(r.vec_key(img2));
      if (it2 != uni.end()) add(it2->second);
    }
    if (all_simples_in()) return true;
  }
  return all_simples_in();
}

struct WitnessSearch {
  bool found = false;
  Word u;
  std::vector<unsigned> x;
};

// Breadth-first search for a conjugate with proper support, following only
// length-non-increasing conjugations by single generators.
inline WitnessSearch conjugation_witness(const Realization& r, const Word& w,
                                         unsigned radius, std::size_t node_cap) {
  WitnessSearch out;
  Word start = r.reduce(w);
  struct Node {
    Word v;
    Word u;
  };
  auto key_of = [&](const Word& v) {
    Matrix m = r.word_matrix(v);
    std::string k;
    for (const auto& s : m.a) {
      k += s.key();
      k += ';';
    }
    return k;
  };
  std::set<std::string> seen{key_of(start)};
  std::deque<Node> queue{{start, {}}};
  std::size_t visited = 0;
  while (!queue.empty()) {
    Node n = queue.front();
    queue.pop_front();
    if (++visited > node_cap) break;
    if (r.support(n.v).size() < r.rank()) {
      out.found = true;
      out.u = n.u;
      out.x = r.support(n.v);
      return out;
    }
    if (n.u.size() >= radius) continue;
    for (unsigned s = 0; s < r.rank(); ++s) {
      Word cand;
      cand.push_back(s);
      cand.insert(cand.end(), n.v.begin(), n.v.end());
      cand.push_back(s);
      Word red = r.reduce(cand);
      if (red.size() > n.v.size()) continue;
      auto k = key_of(red);
      if (seen.count(k)) continue;
      seen.insert(std::move(k));
      Word u2 = n.u;
      u2.push_back(s);
      queue.push_back({std::move(red), std::move(u2)});
    }
  }
  return out;
}

}  // namespace detail

// Essentiality of a group element of an irreducible system. Strategy chain:
// proper support, then the finite fixed-space criterion, then odd-root
// generation, then a bounded conjugation search; Unknown is an honest
// fallback carrying the exhausted bounds.
inline EssentialityVerdict essentiality(const Realization& r, const Word& w,
                                        DynamicsParams params = {}) {
  if (!r.graph().is_connected())
    throw PreconditionError("essentiality is defined for connected graphs");
  EssentialityVerdict out;
  // (1) proper support
  auto supp = r.support(w);
  if (supp.size() < r.rank()) {
    out.kind = EssentialityKind::NotEssential;
    out.witness_u = {};
    out.witness_x = supp;
    return out;
  }
  // (2) finite case: essential iff the fixed space is trivial
  if (definiteness(r.form()).kind == DefinitenessKind::PositiveDefinite) {
    if (r.fixed_space(r.word_matrix(w)).empty()) {
      out.kind = EssentialityKind::Essential;
      out.certificate = EssentialCertificate::FiniteFixedSpaceTrivial;
      return out;
    }
    auto ws = detail::conjugation_witness(r, w, params.conj_radius, params.node_cap);
    if (ws.found) {
      Word check;
      for (auto it = ws.u.rbegin(); it != ws.u.rend(); ++it) check.push_back(*it);
      check.insert(check.end(), w.begin(), w.end());
      check.insert(check.end(), ws.u.begin(), ws.u.end());
      auto s2 = r.support(check);
      if (s2.size() >= r.rank()) throw Error("internal: witness verification failed");
      out.kind = EssentialityKind::NotEssential;
      out.witness_u = ws.u;
      out.witness_x = s2;
      return out;
    }
    out.kind = EssentialityKind::Unknown;
    out.reason = "nontrivial fixed space, but no conjugation witness within radius " +
                 std::to_string(params.conj_radius);
    return out;
  }
  // (3) infinite case: odd-root generation criterion, with iterative
  // deepening of the harvest
  for (unsigned depth : {params.depth / 3 + 2, params.depth / 2 + 2, params.depth}) {
    if (depth < 2) continue;
    auto en = r.positive_roots(depth);
    OrbitScanner scan(r, w);
    std::vector<Vec> odd;
    for (const auto& beta : en.roots)
      if (scan.parity(beta, params.bound).kind == ParityKind::Odd) odd.push_back(beta);
    if (odd.empty()) continue;
    if (detail::odd_closure_reaches_simples(r, odd, en.roots, params.node_cap)) {
      out.kind = EssentialityKind::Essential;
      out.certificate = EssentialCertificate::OddRootsGenerate;
      out.odd_root_list = std::move(odd);
      return out;
    }
    if (depth >= params.depth) break;
  }
  // (4) bounded witness search
  auto ws = detail::conjugation_witness(r, w, params.conj_radius, params.node_cap);
  if (ws.found) {
    out.kind = EssentialityKind::NotEssential;
    out.witness_u = ws.u;
    out.witness_x = ws.x;
    return out;
  }
  out.kind = EssentialityKind::Unknown;
  out.reason = "odd-root closure below generation (depth " + std::to_string(params.depth) +
               "), no proper-support conjugate within radius " +
               std::to_string(params.conj_radius);
  return out;
}

// Product of reflections along a basis of roots has trivial fixed space when
// the form is non-degenerate; returns that predicate for explicit checking.
inline bool reflection_basis_product_check(const Realization& r, const std::vector<Vec>& roots) {
  if (roots.size() != r.rank())
    throw PreconditionError("need exactly rank-many roots for a basis");
  GramMatrix coords;
  coords.field = r.field();
  coords.n = r.rank();
  coords.a.assign(static_cast<std::size_t>(coords.n) * coords.n, r.field()->zero());
  for (unsigned j = 0; j < coords.n; ++j)
    for (unsigned i = 0; i < coords.n; ++i) coords.at(i, j) = roots[j][i];
  if (determinant(coords).is_zero()) throw PreconditionError("roots do not form a basis");
  if (determinant(r.form()).is_zero())
    throw PreconditionError("reflection_basis_product_check needs a non-degenerate form");
  Matrix p = Matrix::identity(r.field(), r.rank());
  for (const auto& root : roots) p = r.reflection(root) * p;
  // p = r_{beta_m} ... r_{beta_1}: the first listed root acts first
  return r.fixed_space(p).empty();
}

}  // namespace coxkit
