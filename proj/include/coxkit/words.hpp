#pragma once

// Words, roots, and the canonical representation of a Coxeter system.
//
// A Word is a sequence of generator indices; the product is taken in
// sequence order and the rightmost letter acts first on vectors, so
// w = s_k ... s_2 s_1 acts as s_k o ... o s_2 o s_1.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "coxkit/bilinear.hpp"
#include "coxkit/graph.hpp"

namespace coxkit {

using Word = std::vector<unsigned>;
using Vec = std::vector<Scalar>;

struct Matrix {
  CycloField::Ptr field;
  unsigned n = 0;
  std::vector<Scalar> a;

  static Matrix identity(const CycloField::Ptr& f, unsigned n) {
    Matrix m{f, n, std::vector<Scalar>(static_cast<std::size_t>(n) * n, f->zero())};
    for (unsigned i = 0; i < n; ++i) m.at(i, i) = f->one();
    return m;
  }
  const Scalar& at(unsigned i, unsigned j) const { return a[i * n + j]; }
  Scalar& at(unsigned i, unsigned j) { return a[i * n + j]; }

  Matrix operator*(const Matrix& o) const {
    Matrix r{field, n, std::vector<Scalar>(a.size(), field->zero())};
    for (unsigned i = 0; i < n; ++i)
      for (unsigned k = 0; k < n; ++k) {
        const Scalar& x = at(i, k);
        if (x.is_zero()) continue;
        for (unsigned j = 0; j < n; ++j)
          if (!o.at(k, j).is_zero()) r.at(i, j) += x * o.at(k, j);
      }
    return r;
  }
  Vec apply(const Vec& x) const {
    Vec y(n, field->zero());
    for (unsigned i = 0; i < n; ++i)
      for (unsigned j = 0; j < n; ++j)
        if (!at(i, j).is_zero() && !x[j].is_zero()) y[i] += at(i, j) * x[j];
    return y;
  }
  Matrix transpose() const {
    Matrix r{field, n, a};
    for (unsigned i = 0; i < n; ++i)
      for (unsigned j = 0; j < n; ++j) r.at(i, j) = at(j, i);
    return r;
  }
  bool operator==(const Matrix& o) const { return n == o.n && a == o.a; }
  bool is_identity() const {
    for (unsigned i = 0; i < n; ++i)
      for (unsigned j = 0; j < n; ++j) {
        if (i == j ? !(at(i, j) - field->one()).is_zero() : !at(i, j).is_zero()) return false;
      }
    return true;
  }
};

// A group element carried as its canonical-representation matrix together
// with an optional defining word.
struct GroupElement {
  Matrix matrix;
  std::optional<Word> word;
};

enum class RootSign { Positive, Negative };

class Realization {
 public:
  explicit Realization(CoxeterGraph g) : g_(std::move(g)), B_(gram(g_)) {
    f_ = B_.field;
    gens_.reserve(rank());
    for (unsigned s = 0; s < rank(); ++s) {
      Matrix m = Matrix::identity(f_, rank());
      for (unsigned t = 0; t < rank(); ++t)
        m.at(s, t) = (s == t ? f_->one() : f_->zero()) - B_.at(s, t) * Rational(2);
      gens_.push_back(std::move(m));
    }
  }

  const CoxeterGraph& graph() const { return g_; }
  const GramMatrix& form() const { return B_; }
  const CycloField::Ptr& field() const { return f_; }
  unsigned rank() const { return g_.rank(); }

  Vec zero_vec() const { return Vec(rank(), f_->zero()); }
  Vec simple_root(unsigned s) const {
    Vec v = zero_vec();
    v.at(s) = f_->one();
    return v;
  }

  Scalar pairing(const Vec& x, const Vec& y) const {
    Scalar acc = f_->zero();
    for (unsigned i = 0; i < rank(); ++i) {
      if (x[i].is_zero()) continue;
      for (unsigned j = 0; j < rank(); ++j)
        if (!B_.at(i, j).is_zero() && !y[j].is_zero()) acc += x[i] * B_.at(i, j) * y[j];
    }
    return acc;
  }

  // s(x) = x - 2<x, alpha_s> alpha_s
  Vec reflect_simple(unsigned s, Vec x) const {
    Scalar ip = f_->zero();
    for (unsigned t = 0; t < rank(); ++t)
      if (!B_.at(s, t).is_zero() && !x[t].is_zero()) ip += B_.at(s, t) * x[t];
    if (!ip.is_zero()) x[s] = x[s] - ip * Rational(2);
    return x;
  }

  Vec apply_word(const Word& w, Vec x) const {
    check_word(w);
    if (x.size() != rank()) throw Error("vector size does not match the graph rank");
    for (std::size_t i = w.size(); i-- > 0;) x = reflect_simple(w[i], std::move(x));
    return x;
  }

  const Matrix& generator_matrix(unsigned s) const { return gens_.at(s); }

  Matrix word_matrix(const Word& w) const {
    check_word(w);
    Matrix m = Matrix::identity(f_, rank());
    for (unsigned s : w) m = m * gens_[s];
    return m;
  }

  RootSign root_sign(const Vec& x) const {
    bool pos = false, neg = false;
    for (const auto& c : x) {
      int s = c.sign();
      if (s > 0) pos = true;
      if (s < 0) neg = true;
    }
    if (pos && !neg) return RootSign::Positive;
    if (neg && !pos) return RootSign::Negative;
    throw Error(pos ? "mixed-sign vector is not a root" : "zero vector is not a root");
  }

  std::string vec_key(const Vec& x) const {
    std::string k;
    for (const auto& c : x) {
      k += c.key();
      k += '|';
    }
    return k;
  }

  // Phi_w = { beta in Phi+ : w beta in Phi- }, by the right-to-left scan over
  // the word with exact cancellation of revisited roots.
  std::vector<Vec> inversion_set(const Word& w) const {
    check_word(w);
    std::map<std::string, Vec> set;
    Matrix uinv = Matrix::identity(f_, rank());
    for (std::size_t j = w.size(); j-- > 0;) {
      unsigned t = w[j];
      Vec delta(rank(), f_->zero());
      for (unsigned i = 0; i < rank(); ++i) delta[i] = uinv.at(i, t);
      if (root_sign(delta) == RootSign::Positive) {
        set.emplace(vec_key(delta), delta);
      } else {
        Vec nd(rank(), f_->zero());
        for (unsigned i = 0; i < rank(); ++i) nd[i] = -delta[i];
        auto it = set.find(vec_key(nd));
        if (it == set.end()) throw Error("internal: inversion cancellation missed");
        set.erase(it);
      }
      uinv = uinv * gens_[t];
    }
    std::vector<Vec> out;
    out.reserve(set.size());
    for (auto& [k, v] : set) out.push_back(std::move(v));
    return out;
  }

  unsigned length(const Word& w) const {
    return static_cast<unsigned>(inversion_set(w).size());
  }

  // Deterministic reduction: letters are appended left to right; a descent
  // deletes the leftmost letter allowed by the exchange property.
  Word reduce(const Word& w) const {
    check_word(w);
    Word r;
    for (unsigned t : w) {
      Vec img = apply_word(r, simple_root(t));
      if (root_sign(img) == RootSign::Positive) {
        r.push_back(t);
        continue;
      }
      // r(alpha_t) < 0: find leftmost i with r_{i+1}..r_m(alpha_t) = alpha_{r_i}
      std::vector<Vec> suffix(r.size() + 1, zero_vec());
      suffix[r.size()] = simple_root(t);
      for (std::size_t j = r.size(); j-- > 0;)
        suffix[j] = reflect_simple(r[j], suffix[j + 1]);
      bool deleted = false;
      for (std::size_t i = 0; i < r.size(); ++i) {
        if (vec_key(suffix[i + 1]) == vec_key(simple_root(r[i]))) {
          r.erase(r.begin() + static_cast<long>(i));
          deleted = true;
          break;
        }
      }
      if (!deleted) throw Error("internal: exchange deletion missed");
    }
    return r;
  }

  // Support of the group element (letters of any reduced word).
  std::vector<unsigned> support(const Word& w) const {
    Word r = reduce(w);
    std::vector<unsigned> s(r.begin(), r.end());
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    return s;
  }

  // r_beta(x) = x - 2<x,beta> beta for a unit root beta.
  Matrix reflection(const Vec& beta) const {
    Scalar norm = pairing(beta, beta);
    if (!(norm - f_->one()).is_zero())
      throw PreconditionError("reflection needs a unit-norm root");
    Vec bB(rank(), f_->zero());
    for (unsigned j = 0; j < rank(); ++j) {
      Scalar acc = f_->zero();
      for (unsigned i = 0; i < rank(); ++i)
        if (!beta[i].is_zero() && !B_.at(i, j).is_zero()) acc += beta[i] * B_.at(i, j);
      bB[j] = acc;
    }
    Matrix m = Matrix::identity(f_, rank());
    for (unsigned i = 0; i < rank(); ++i) {
      if (beta[i].is_zero()) continue;
      for (unsigned j = 0; j < rank(); ++j)
        if (!bB[j].is_zero()) m.at(i, j) = m.at(i, j) - beta[i] * bB[j] * Rational(2);
    }
    return m;
  }

  struct RootEnumeration {
    std::vector<Vec> roots;  // positive roots in breadth-first order
    bool complete = false;
    unsigned depth_reached = 0;
  };

  // Breadth-first closure of the simple roots under the generators, keeping
  // positive roots, to the given depth. Spherical systems stabilize and are
  // flagged complete.
  RootEnumeration positive_roots(unsigned depth_cap, std::size_t size_cap = 200000) const {
    if (depth_cap < 1) throw PreconditionError("positive_roots needs depth_cap >= 1");
    RootEnumeration out;
    std::map<std::string, std::size_t> seen;
    std::vector<Vec> frontier;
    for (unsigned s = 0; s < rank(); ++s) {
      Vec v = simple_root(s);
      seen.emplace(vec_key(v), out.roots.size());
      out.roots.push_back(v);
      frontier.push_back(std::move(v));
    }
    out.depth_reached = 1;
    for (unsigned depth = 1; depth < depth_cap; ++depth) {
      std::vector<Vec> next;
      for (const auto& x : frontier) {
        for (unsigned s = 0; s < rank(); ++s) {
          Vec y = reflect_simple(s, x);
          bool nonneg = true;
          for (const auto& c : y)
            if (c.sign() < 0) {
              nonneg = false;
              break;
            }
          if (!nonneg) continue;
          auto k = vec_key(y);
          if (seen.count(k)) continue;
          seen.emplace(std::move(k), out.roots.size());
          out.roots.push_back(y);
          next.push_back(std::move(y));
          if (out.roots.size() > size_cap) throw ResourceError("root enumeration cap exceeded");
        }
      }
      if (next.empty()) {
        out.complete = true;
        return out;
      }
      frontier = std::move(next);
      out.depth_reached = depth + 1;
    }
    // one more closure probe to detect completeness exactly at the cap
    bool more = false;
    for (const auto& x : frontier) {
      for (unsigned s = 0; s < rank() && !more; ++s) {
        Vec y = reflect_simple(s, x);
        bool nonneg = true;
        for (const auto& c : y)
          if (c.sign() < 0) {
            nonneg = false;
            break;
          }
        if (nonneg && !seen.count(vec_key(y))) more = true;
      }
      if (more) break;
    }
    out.complete = !more;
    return out;
  }

  // c = s_n ... s_2 s_1 for the given ordering (default: vertex order).
  Word coxeter_word(std::optional<std::vector<unsigned>> ordering = std::nullopt) const {
    std::vector<unsigned> ord;
    if (ordering) {
      ord = *ordering;
      std::vector<char> seen(rank(), 0);
      if (ord.size() != rank()) throw PreconditionError("ordering is not a permutation of S");
      for (unsigned v : ord) {
        if (v >= rank() || seen[v]) throw PreconditionError("ordering is not a permutation of S");
        seen[v] = 1;
      }
    } else {
      ord.resize(rank());
      for (unsigned i = 0; i < rank(); ++i) ord[i] = i;
    }
    Word w(ord.rbegin(), ord.rend());
    return w;
  }

  struct LongestElement {
    Word word;                   // reduced word for w0
    std::vector<unsigned> theta; // theta(s) with w0 s w0 = theta(s)
    Matrix matrix;
  };

  // Greedy ascent: repeatedly append the smallest generator whose simple
  // root still has a positive image. Requires a spherical graph.
  LongestElement longest_element() const {
    if (definiteness(B_).kind != DefinitenessKind::PositiveDefinite)
      throw PreconditionError("longest element exists only for spherical graphs");
    LongestElement out;
    Matrix v = Matrix::identity(f_, rank());
    const std::size_t safety = 2000000;
    while (out.word.size() < safety) {
      unsigned pick = rank();
      for (unsigned s = 0; s < rank(); ++s) {
        Vec img(rank(), f_->zero());
        for (unsigned i = 0; i < rank(); ++i) img[i] = v.at(i, s);
        if (root_sign(img) == RootSign::Positive) {
          pick = s;
          break;
        }
      }
      if (pick == rank()) break;
      out.word.push_back(pick);
      v = v * gens_[pick];
    }
    if (out.word.size() >= safety) throw Error("internal: longest element search diverged");
    out.matrix = v;
    if (!(v * v).is_identity()) throw Error("internal: w0 is not an involution");
    out.theta.assign(rank(), rank());
    for (unsigned s = 0; s < rank(); ++s) {
      Matrix c = v * gens_[s] * v;
      for (unsigned t = 0; t < rank(); ++t)
        if (c == gens_[t]) {
          out.theta[s] = t;
          break;
        }
      if (out.theta[s] == rank()) throw Error("internal: w0 does not normalize S");
    }
    for (unsigned s = 0; s < rank(); ++s)
      if (out.theta[out.theta[s]] != s) throw Error("internal: theta is not an involution");
    return out;
  }

  // Exact kernel basis of (m - identity).
  std::vector<Vec> fixed_space(const Matrix& m) const {
    const unsigned n = rank();
    std::vector<Scalar> a(static_cast<std::size_t>(n) * n, f_->zero());
    for (unsigned i = 0; i < n; ++i)
      for (unsigned j = 0; j < n; ++j)
        a[i * n + j] = m.at(i, j) - (i == j ? f_->one() : f_->zero());
    // row echelon with exact division
    std::vector<int> pivot_col_of_row(n, -1);
    std::vector<char> col_has_pivot(n, 0);
    unsigned row = 0;
    for (unsigned col = 0; col < n && row < n; ++col) {
      unsigned piv = row;
      while (piv < n && a[piv * n + col].is_zero()) ++piv;
      if (piv == n) continue;
      for (unsigned j = 0; j < n; ++j) std::swap(a[piv * n + j], a[row * n + j]);
      Scalar inv = a[row * n + col].inverse();
      for (unsigned j = 0; j < n; ++j)
        if (!a[row * n + j].is_zero()) a[row * n + j] = a[row * n + j] * inv;
      for (unsigned i = 0; i < n; ++i) {
        if (i == row || a[i * n + col].is_zero()) continue;
        Scalar fct = a[i * n + col];
        for (unsigned j = 0; j < n; ++j)
          if (!a[row * n + j].is_zero()) a[i * n + j] = a[i * n + j] - fct * a[row * n + j];
      }
      pivot_col_of_row[row] = static_cast<int>(col);
      col_has_pivot[col] = 1;
      ++row;
    }
    std::vector<Vec> basis;
    for (unsigned col = 0; col < n; ++col) {
      if (col_has_pivot[col]) continue;
      Vec v(n, f_->zero());
      v[col] = f_->one();
      for (unsigned r = 0; r < row; ++r) {
        int pc = pivot_col_of_row[r];
        if (pc >= 0) v[static_cast<unsigned>(pc)] = -a[r * n + col];
      }
      basis.push_back(std::move(v));
    }
    return basis;
  }

 private:
  void check_word(const Word& w) const {
    for (unsigned s : w)
      if (s >= rank()) throw Error("word letter out of range");
  }

  CoxeterGraph g_;
  GramMatrix B_;
  CycloField::Ptr f_;
  std::vector<Matrix> gens_;
};

}  // namespace coxkit
