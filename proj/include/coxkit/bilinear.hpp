#pragma once

// The canonical bilinear form of a Coxeter graph, exact determinants,
// definiteness certificates, and the non-degenerate graph extension.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "coxkit/graph.hpp"
#include "coxkit/scalar.hpp"

namespace coxkit {

// Symmetric matrix of exact scalars; entry (s,t) = -cos(pi/m_st) for finite
// labels, -1 for infinite ones, 1 on the diagonal.
struct GramMatrix {
  CycloField::Ptr field;
  unsigned n = 0;
  std::vector<Scalar> a;  // row-major n*n

  const Scalar& at(unsigned i, unsigned j) const { return a[i * n + j]; }
  Scalar& at(unsigned i, unsigned j) { return a[i * n + j]; }
};

inline GramMatrix gram(const CoxeterGraph& g) {
  GramMatrix B;
  B.field = g.field();
  B.n = g.rank();
  B.a.assign(static_cast<std::size_t>(B.n) * B.n, B.field->zero());
  for (unsigned i = 0; i < B.n; ++i) {
    B.at(i, i) = B.field->one();
    for (unsigned j = i + 1; j < B.n; ++j) {
      unsigned m = g.label(i, j);
      if (m == 2) continue;
      Scalar v = (m == CoxeterGraph::infinity) ? B.field->rational(Rational(-1))
                                               : B.field->minus_cos_label(m);
      B.at(i, j) = v;
      B.at(j, i) = v;
    }
  }
  return B;
}

namespace detail {

// Sparse element of Z[zeta + 1/zeta] written over the spanning set
// q_k = zeta^k + zeta^-k (q_0 = 2), indices folded into [0, L].
// Addition and multiplication are cheap and integral; the representation is
// not canonical, so zero tests go through conversion to a canonical Scalar.
class CosPoly {
 public:
  explicit CosPoly(unsigned L) : L_(L) {}
  static CosPoly term(unsigned L, unsigned k, long long c) {
    CosPoly p(L);
    if (c != 0) p.c_[fold(L, k)] = c;
    return p;
  }
  bool structurally_zero() const { return c_.empty(); }

  CosPoly& operator+=(const CosPoly& o) {
    for (auto& [k, v] : o.c_) add(k, v);
    return *this;
  }
  CosPoly operator*(const CosPoly& o) const {
    CosPoly r(L_);
    for (auto& [ka, va] : c_)
      for (auto& [kb, vb] : o.c_) {
        long long p = checked_mul(va, vb);
        r.add(fold(L_, ka + kb), p);
        r.add(fold(L_, ka >= kb ? ka - kb : kb - ka), p);
      }
    return r;
  }
  CosPoly operator-() const {
    CosPoly r(L_);
    for (auto& [k, v] : c_) r.c_[k] = -v;
    return r;
  }

  // Canonical scalar equal to this value divided by 2^scale_pow2.
  Scalar to_scalar(const CycloField::Ptr& f, unsigned scale_pow2) const {
    const unsigned phi = f->degree(), n2 = f->conductor();
    std::vector<Rational> acc(2 * phi - 1 > n2 + 1 ? 2 * phi - 1 : n2 + 1);
    Rational den(1);
    mpz_class two(2);
    mpz_pow_ui(den.get_den_mpz_t(), two.get_mpz_t(), scale_pow2);
    for (auto& [k, v] : c_) {
      Rational cv = Rational(static_cast<long>(v)) * den;
      if (k == 0) {
        acc[0] += cv * 2;  // q_0 = 2
      } else {
        acc[k] += cv;
        acc[n2 - k] += cv;  // zeta^-k = zeta^(2L-k)
      }
    }
    return Scalar::reduced(f, std::move(acc));
  }

 private:
  static unsigned fold(unsigned L, unsigned k) {
    k %= 2 * L;
    return k > L ? 2 * L - k : k;
  }
  void add(unsigned k, long long v) {
    if (v == 0) return;
    auto it = c_.find(k);
    if (it == c_.end()) {
      c_.emplace(k, v);
    } else {
      if (__builtin_add_overflow(it->second, v, &it->second))
        throw ResourceError("cosine-term coefficient overflow");
      if (it->second == 0) c_.erase(it);
    }
  }
  static long long checked_mul(long long a, long long b) {
    long long r;
    if (__builtin_mul_overflow(a, b, &r))
      throw ResourceError("cosine-term coefficient overflow");
    return r;
  }

  unsigned L_;
  std::map<unsigned, long long> c_;
};

// Integer cosine-term matrix of 2*B restricted to a vertex subset.
inline std::vector<CosPoly> doubled_gram_terms(const CoxeterGraph& g,
                                               const std::vector<unsigned>& verts,
                                               unsigned L,
                                               const std::vector<int>& diag_shift = {}) {
  const unsigned k = static_cast<unsigned>(verts.size());
  std::vector<CosPoly> m(static_cast<std::size_t>(k) * k, CosPoly(L));
  for (unsigned i = 0; i < k; ++i) {
    int d = 2 - (diag_shift.empty() ? 0 : 2 * diag_shift[i]);
    m[i * k + i] = CosPoly::term(L, 0, d / 2);  // q_0 = 2, so d = (d/2)*q_0
    for (unsigned j = i + 1; j < k; ++j) {
      unsigned lbl = g.label(verts[i], verts[j]);
      CosPoly e(L);
      if (lbl == CoxeterGraph::infinity)
        e = CosPoly::term(L, 0, -1);  // 2*(-1) = -q_0
      else if (lbl >= 3)
        e = CosPoly::term(L, L / lbl, -1);  // 2*(-cos(pi/m)) = -q_{L/m}
      m[i * k + j] = e;
      m[j * k + i] = std::move(e);
    }
  }
  return m;
}

// Division-free determinant of a k x k CosPoly matrix by Laplace expansion
// with memoization over column subsets.
inline CosPoly cospoly_det(const std::vector<CosPoly>& m, unsigned k, unsigned L) {
  if (k == 0) return CosPoly::term(L, 0, 1);
  std::vector<std::optional<CosPoly>> memo(1u << k);
  std::function<const CosPoly&(std::uint32_t)> det = [&](std::uint32_t cols) -> const CosPoly& {
    if (memo[cols]) return *memo[cols];
    unsigned r = static_cast<unsigned>(__builtin_popcount(cols)) - 1;  // row index
    CosPoly acc(L);
    int sign = (r % 2 == 0) ? 1 : -1;
    for (unsigned j = 0; j < k; ++j) {
      if (!(cols & (1u << j))) continue;
      const CosPoly& entry = m[r * k + j];
      if (!entry.structurally_zero()) {
        std::uint32_t rest = cols & ~(1u << j);
        CosPoly term = rest == 0 ? entry : entry * det(rest);
        acc += (sign > 0) ? term : -term;
      }
      sign = -sign;
    }
    memo[cols] = std::move(acc);
    return *memo[cols];
  };
  std::uint32_t full = (k == 32) ? 0xffffffffu : ((1u << k) - 1);
  return det(full);
}

}  // namespace detail

// Exact determinant of the canonical form restricted to a vertex subset,
// computed division-free in a sparse integral representation. diag_shift
// subtracts the given integers from the diagonal (used by the extension
// identity check through the Schur complement of the twin block).
inline Scalar gram_subset_determinant(const CoxeterGraph& g,
                                      const std::vector<unsigned>& verts,
                                      const std::vector<int>& diag_shift = {}) {
  const unsigned L = g.field_order();
  auto m = detail::doubled_gram_terms(g, verts, L, diag_shift);
  auto det2 = detail::cospoly_det(m, static_cast<unsigned>(verts.size()), L);
  return det2.to_scalar(g.field(), static_cast<unsigned>(verts.size()));
}

// Exact determinant of a general Gram-sized scalar matrix. Small orders use
// the division-free expansion; larger ones use elimination with exact field
// division.
inline Scalar determinant(const GramMatrix& B) {
  const unsigned n = B.n;
  if (n == 0) return B.field->one();
  if (n <= 7) {
    std::vector<std::optional<Scalar>> memo(1u << n);
    std::function<Scalar(std::uint32_t)> det = [&](std::uint32_t cols) -> Scalar {
      if (memo[cols]) return *memo[cols];
      unsigned r = static_cast<unsigned>(__builtin_popcount(cols)) - 1;
      Scalar acc = B.field->zero();
      int sign = (r % 2 == 0) ? 1 : -1;
      for (unsigned j = 0; j < n; ++j) {
        if (!(cols & (1u << j))) continue;
        const Scalar& e = B.at(r, j);
        if (!e.is_zero()) {
          std::uint32_t rest = cols & ~(1u << j);
          Scalar t = rest == 0 ? e : e * det(rest);
          acc = (sign > 0) ? acc + t : acc - t;
        }
        sign = -sign;
      }
      memo[cols] = acc;
      return acc;
    };
    return det((1u << n) - 1);
  }
  // Gaussian elimination with column pivoting
  std::vector<Scalar> a = B.a;
  auto at = [&](unsigned i, unsigned j) -> Scalar& { return a[i * n + j]; };
  Scalar det = B.field->one();
  for (unsigned c = 0; c < n; ++c) {
    unsigned piv = c;
    while (piv < n && at(piv, c).is_zero()) ++piv;
    if (piv == n) return B.field->zero();
    if (piv != c) {
      for (unsigned j = 0; j < n; ++j) std::swap(at(piv, j), at(c, j));
      det = -det;
    }
    det = det * at(c, c);
    Scalar inv = at(c, c).inverse();
    for (unsigned i = c + 1; i < n; ++i) {
      if (at(i, c).is_zero()) continue;
      Scalar f = at(i, c) * inv;
      for (unsigned j = c; j < n; ++j) at(i, j) = at(i, j) - f * at(c, j);
    }
  }
  return det;
}

enum class DefinitenessKind { PositiveDefinite, PositiveSemidefiniteDegenerate, Indefinite };

struct Definiteness {
  DefinitenessKind kind;
  // exact kernel basis of B when semidefinite-degenerate
  std::vector<std::vector<Scalar>> radical_basis;
  // exact witness with x^T B x < 0 when indefinite
  std::vector<Scalar> witness;
  Scalar witness_value;  // x^T B x, strictly negative
};

namespace detail {

inline std::vector<Scalar> matvec(const GramMatrix& B, const std::vector<Scalar>& x) {
  std::vector<Scalar> y(B.n, B.field->zero());
  for (unsigned i = 0; i < B.n; ++i)
    for (unsigned j = 0; j < B.n; ++j)
      if (!B.at(i, j).is_zero() && !x[j].is_zero()) y[i] += B.at(i, j) * x[j];
  return y;
}

inline Scalar quad_form(const GramMatrix& B, const std::vector<Scalar>& x) {
  auto y = matvec(B, x);
  Scalar s = B.field->zero();
  for (unsigned i = 0; i < B.n; ++i)
    if (!x[i].is_zero() && !y[i].is_zero()) s += x[i] * y[i];
  return s;
}

}  // namespace detail

// Exact LDL^T-style classification with symmetric pivoting. Pivot signs give
// the verdict; the accumulated congruence transform reconstructs an exact
// radical basis or an indefinite witness.
inline Definiteness definiteness(const GramMatrix& B0) {
  const unsigned n = B0.n;
  const auto& f = B0.field;
  GramMatrix B = B0;
  // x = P U y where U collects the congruence column operations; track U
  std::vector<Scalar> U(static_cast<std::size_t>(n) * n, f->zero());
  std::vector<unsigned> pos(n);  // pos[original index] = current index
  for (unsigned i = 0; i < n; ++i) {
    U[i * n + i] = f->one();
    pos[i] = i;
  }
  auto u_at = [&](unsigned i, unsigned j) -> Scalar& { return U[i * n + j]; };
  auto b_at = [&](unsigned i, unsigned j) -> Scalar& { return B.a[i * n + j]; };

  std::vector<int> pivot_sign;
  std::vector<unsigned> done_cols;
  std::vector<unsigned> active;
  for (unsigned i = 0; i < n; ++i) active.push_back(i);

  auto swap_cols = [&](unsigned x, unsigned y) {
    if (x == y) return;
    for (unsigned i = 0; i < n; ++i) {
      std::swap(b_at(i, x), b_at(i, y));
    }
    for (unsigned j = 0; j < n; ++j) {
      std::swap(b_at(x, j), b_at(y, j));
    }
    for (unsigned i = 0; i < n; ++i) std::swap(u_at(i, x), u_at(i, y));
  };

  unsigned k = 0;
  while (k < n) {
    // choose a nonzero diagonal pivot among remaining columns (smallest index)
    unsigned piv = n;
    for (unsigned c = k; c < n; ++c)
      if (!b_at(c, c).is_zero()) {
        piv = c;
        break;
      }
    if (piv == n) {
      // all remaining diagonal entries are zero
      unsigned x = n, y = n;
      for (unsigned i = k; i < n && x == n; ++i)
        for (unsigned j = i + 1; j < n; ++j)
          if (!b_at(i, j).is_zero()) {
            x = i;
            y = j;
            break;
          }
      if (x == n) {
        // remaining block is identically zero: columns k..n-1 span the radical
        break;
      }
      // hyperbolic pair: v = e_x - sgn(a_xy) e_y gives v^T B v = -2|a_xy| < 0
      Definiteness d;
      d.kind = DefinitenessKind::Indefinite;
      std::vector<Scalar> v(n, f->zero());
      int s = b_at(x, y).sign();
      v[x] = f->one();
      v[y] = f->rational(Rational(-s));
      // map back through U
      std::vector<Scalar> w(n, f->zero());
      for (unsigned i = 0; i < n; ++i)
        for (unsigned j = 0; j < n; ++j)
          if (!u_at(i, j).is_zero() && !v[j].is_zero()) w[i] += u_at(i, j) * v[j];
      d.witness = std::move(w);
      d.witness_value = detail::quad_form(B0, d.witness);
      if (d.witness_value.sign() >= 0) throw Error("internal: indefinite witness failed");
      return d;
    }
    swap_cols(k, piv);
    Scalar dkk = b_at(k, k);
    int s = dkk.sign();
    pivot_sign.push_back(s);
    if (s < 0) {
      Definiteness d;
      d.kind = DefinitenessKind::Indefinite;
      std::vector<Scalar> w(n, f->zero());
      for (unsigned i = 0; i < n; ++i) w[i] = u_at(i, k);
      d.witness = std::move(w);
      d.witness_value = detail::quad_form(B0, d.witness);
      if (d.witness_value.sign() >= 0) throw Error("internal: indefinite witness failed");
      return d;
    }
    // symmetric rank-1 elimination: B[i][j] -= B[i][k] B[k][j] / d for i,j > k
    Scalar inv = dkk.inverse();
    std::vector<Scalar> fac(n, f->zero());
    for (unsigned j = k + 1; j < n; ++j) fac[j] = b_at(k, j) * inv;
    for (unsigned i = k + 1; i < n; ++i) {
      if (b_at(i, k).is_zero()) continue;
      for (unsigned j = i; j < n; ++j) {
        if (fac[j].is_zero()) continue;
        Scalar v = b_at(i, j) - b_at(i, k) * fac[j];
        b_at(i, j) = v;
        b_at(j, i) = std::move(v);
      }
    }
    for (unsigned j = k + 1; j < n; ++j) {
      if (fac[j].is_zero()) continue;
      for (unsigned i = 0; i < n; ++i)
        if (!u_at(i, k).is_zero()) u_at(i, j) = u_at(i, j) - fac[j] * u_at(i, k);
      b_at(k, j) = f->zero();
      b_at(j, k) = f->zero();
    }
    ++k;
  }
  Definiteness d;
  if (k == n) {
    d.kind = DefinitenessKind::PositiveDefinite;
    return d;
  }
  d.kind = DefinitenessKind::PositiveSemidefiniteDegenerate;
  for (unsigned c = k; c < n; ++c) {
    std::vector<Scalar> v(n, f->zero());
    for (unsigned i = 0; i < n; ++i) v[i] = u_at(i, c);
    for (unsigned i = 0; i < n; ++i)
      if (!v[i].is_zero()) {  // normalize leading coordinate to 1
        Scalar inv = v[i].inverse();
        for (unsigned j = 0; j < n; ++j)
          if (!v[j].is_zero()) v[j] = v[j] * inv;
        break;
      }
    // exactness check: B v = 0
    auto bv = detail::matvec(B0, v);
    for (auto& e : bv)
      if (!e.is_zero()) throw Error("internal: radical vector not in kernel");
    d.radical_basis.push_back(std::move(v));
  }
  return d;
}

inline Definiteness definiteness(const CoxeterGraph& g) { return definiteness(gram(g)); }

// Non-degenerate extension: X0 is a maximum-cardinality vertex subset with
// nonzero Gram determinant (lexicographically first among ties); every
// vertex outside X0 receives a fresh twin joined by an infinity label.
struct Extension {
  CoxeterGraph extended;
  std::vector<unsigned> base_embedding;  // original index -> extended index
  std::vector<unsigned> x0, x1;          // original indices
  std::map<unsigned, unsigned> twin;     // original X1 index -> extended twin index
  Scalar det_x0;                         // det B_{X0}
  Scalar det_extended;                   // det of the extended form
};

inline Extension nondegenerate_extension(const CoxeterGraph& g) {
  const unsigned n = g.rank();
  if (n == 0) throw PreconditionError("non-degenerate extension needs a non-empty graph");
  if (n > 24) throw ResourceError("extension subset search capped at rank 24");
  // enumerate subsets by decreasing size, lexicographic within a size
  std::vector<unsigned> chosen;
  Scalar det_x0 = g.field()->zero();
  bool found = false;
  for (unsigned size = n; size > 0 && !found; --size) {
    std::vector<unsigned> idx(size);
    for (unsigned i = 0; i < size; ++i) idx[i] = i;
    while (true) {
      Scalar d = gram_subset_determinant(g, idx);
      if (!d.is_zero()) {
        chosen = idx;
        det_x0 = d;
        found = true;
        break;
      }
      // next combination
      int i = static_cast<int>(size) - 1;
      while (i >= 0 && idx[static_cast<unsigned>(i)] == n - size + static_cast<unsigned>(i)) --i;
      if (i < 0) break;
      ++idx[static_cast<unsigned>(i)];
      for (unsigned j = static_cast<unsigned>(i) + 1; j < size; ++j) idx[j] = idx[j - 1] + 1;
    }
  }
  if (!found) throw Error("internal: every nonempty subset has singular form");

  Extension ext;
  ext.x0 = chosen;
  std::vector<char> in_x0(n, 0);
  for (unsigned v : chosen) in_x0[v] = 1;
  for (unsigned v = 0; v < n; ++v)
    if (!in_x0[v]) ext.x1.push_back(v);
  ext.det_x0 = det_x0;

  CoxeterGraph e = g;
  for (unsigned v : ext.x1) {
    std::string tn = g.vertex_name(v) + "~";
    while (e.find_vertex(tn)) tn += "~";
    e.add_vertex(tn);
    unsigned t = e.rank() - 1;
    e.set_label(v, t, CoxeterGraph::infinity);
    ext.twin[v] = t;
  }
  ext.extended = std::move(e);
  ext.base_embedding.resize(n);
  for (unsigned v = 0; v < n; ++v) ext.base_embedding[v] = v;

  // determinant of the extended form through the Schur complement of the
  // identity twin block: det = det(B - diag(1 on X1))
  std::vector<unsigned> all(n);
  std::vector<int> shift(n, 0);
  for (unsigned v = 0; v < n; ++v) all[v] = v;
  for (unsigned v : ext.x1) shift[v] = 1;
  ext.det_extended = gram_subset_determinant(g, all, shift);
  if (ext.det_extended.is_zero()) throw Error("internal: extension is degenerate");
  return ext;
}

}  // namespace coxkit
