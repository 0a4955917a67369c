#pragma once

// Exact arithmetic in the real cyclotomic field Q(2cos(pi/L)).
//
// Internally every value is stored as a canonical polynomial in
// zeta = exp(i*pi/L), reduced modulo the cyclotomic polynomial Phi_{2L}.
// The real subfield Q(zeta + 1/zeta) = Q(2cos(pi/L)) contains every entry
// -cos(pi/m) of a canonical bilinear form whose labels m divide L.
// The canonical reduction makes zero-testing and equality exact and cheap;
// sign of a nonzero value is decided by adaptive-precision ball arithmetic.

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>
#include <mpfr.h>

namespace coxkit {

using Rational = mpq_class;

class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line = 0, std::size_t col = 0)
      : Error(format(what, line, col)), line_(line), col_(col) {}
  std::size_t line() const { return line_; }
  std::size_t col() const { return col_; }

 private:
  static std::string format(const std::string& w, std::size_t line, std::size_t col) {
    if (line == 0) return w;
    return w + " (line " + std::to_string(line) + ", col " + std::to_string(col) + ")";
  }
  std::size_t line_, col_;
};

class PreconditionError : public Error {
 public:
  using Error::Error;
};

class ResourceError : public Error {
 public:
  using Error::Error;
};

namespace detail {

// Dense integer polynomials, lowest degree first.
using ZPoly = std::vector<mpz_class>;

inline ZPoly zpoly_xn_minus_1(unsigned n) {
  ZPoly p(n + 1, mpz_class(0));
  p[0] = -1;
  p[n] = 1;
  return p;
}

// Exact division by a monic divisor.
inline ZPoly zpoly_div_exact(ZPoly num, const ZPoly& den) {
  const std::size_t dn = num.size() - 1, dd = den.size() - 1;
  ZPoly q(dn - dd + 1, mpz_class(0));
  for (std::size_t k = dn - dd + 1; k-- > 0;) {
    mpz_class c = num[k + dd];
    if (c == 0) continue;
    q[k] = c;
    for (std::size_t j = 0; j <= dd; ++j) num[k + j] -= c * den[j];
  }
  for (const auto& c : num)
    if (c != 0) throw Error("internal: inexact polynomial division");
  return q;
}

inline std::vector<unsigned> divisors_of(unsigned n) {
  std::vector<unsigned> d;
  for (unsigned i = 1; i <= n; ++i)
    if (n % i == 0) d.push_back(i);
  return d;
}

inline ZPoly cyclotomic_poly(unsigned n) {
  std::map<unsigned, ZPoly> cache;
  for (unsigned d : divisors_of(n)) {
    ZPoly p = zpoly_xn_minus_1(d);
    for (unsigned e : divisors_of(d))
      if (e < d) p = zpoly_div_exact(std::move(p), cache.at(e));
    cache[d] = std::move(p);
  }
  return cache.at(n);
}

// Minimal RAII wrapper plus ball arithmetic around mpfr.
class Ball {
 public:
  explicit Ball(mpfr_prec_t prec) : prec_(prec) {
    mpfr_init2(mid_, prec);
    mpfr_init2(rad_, 64);
    mpfr_set_zero(mid_, 1);
    mpfr_set_zero(rad_, 1);
  }
  ~Ball() {
    mpfr_clear(mid_);
    mpfr_clear(rad_);
  }
  Ball(const Ball&) = delete;
  Ball& operator=(const Ball&) = delete;

  // this += q * [clo, chi]
  void add_scaled_interval(const mpq_class& q, mpfr_t clo, mpfr_t chi) {
    mpfr_t qv, t1, t2;
    mpfr_init2(qv, prec_);
    mpfr_init2(t1, prec_);
    mpfr_init2(t2, prec_);
    mpfr_set_q(qv, q.get_mpq_t(), MPFR_RNDN);
    // center of [clo,chi]
    mpfr_add(t1, clo, chi, MPFR_RNDN);
    mpfr_div_2ui(t1, t1, 1, MPFR_RNDN);
    // half-width, rounded up, padded for the roundings above
    mpfr_sub(t2, chi, clo, MPFR_RNDU);
    mpfr_div_2ui(t2, t2, 1, MPFR_RNDU);
    mpfr_t term;
    mpfr_init2(term, prec_);
    mpfr_mul(term, qv, t1, MPFR_RNDN);
    // radius contribution: |q| * (halfwidth + ulp) + ulp(term)
    mpfr_t aq, r;
    mpfr_init2(aq, 64);
    mpfr_init2(r, 64);
    mpfr_abs(aq, qv, MPFR_RNDU);
    mpfr_nextabove(aq);
    mpfr_add(t2, t2, eps(), MPFR_RNDU);
    mpfr_mul(r, aq, t2, MPFR_RNDU);
    mpfr_add(r, r, eps(), MPFR_RNDU);
    mpfr_add(rad_, rad_, r, MPFR_RNDU);
    mpfr_add(mid_, mid_, term, MPFR_RNDN);
    mpfr_add(rad_, rad_, eps(), MPFR_RNDU);
    mpfr_clears(qv, t1, t2, term, aq, r, (mpfr_ptr) nullptr);
  }

  // 0 not contained -> sign of mid; otherwise nullopt.
  std::optional<int> sign() const {
    mpfr_t am;
    mpfr_init2(am, 64);
    mpfr_abs(am, mid_, MPFR_RNDD);
    int decided = mpfr_cmp(am, rad_) > 0;
    mpfr_clear(am);
    if (!decided) return std::nullopt;
    return mpfr_sgn(mid_) > 0 ? 1 : -1;
  }

  double mid_double() const { return mpfr_get_d(mid_, MPFR_RNDN); }

 private:
  mpfr_t& eps() {
    if (!eps_init_) {
      mpfr_init2(epsv_, 64);
      mpfr_set_ui_2exp(epsv_, 4, -static_cast<long>(prec_), MPFR_RNDU);
      eps_init_ = true;
    }
    return epsv_;
  }
  mpfr_ptr eps() const { return const_cast<Ball*>(this)->eps(); }

  mpfr_prec_t prec_;
  mpfr_t mid_, rad_;
  mutable mpfr_t epsv_;
  mutable bool eps_init_ = false;
};

}  // namespace detail

class Scalar;

// The working field Q(zeta_{2L}) with its reduction tables. One instance is
// shared by every Scalar attached to the same Coxeter graph.
class CycloField : public std::enable_shared_from_this<CycloField> {
 public:
  using Ptr = std::shared_ptr<const CycloField>;

  // L = lcm of the finite labels of the working graph (at least 2).
  static Ptr get(unsigned L) {
    if (L < 2) L = 2;
    static std::mutex mu;
    static std::map<unsigned, Ptr> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(L);
    if (it != cache.end()) return it->second;
    Ptr f(new CycloField(L));
    cache.emplace(L, f);
    return f;
  }

  unsigned cos_order() const { return L_; }  // the L in 2cos(pi/L)
  unsigned conductor() const { return n_; }  // 2L
  unsigned degree() const { return phi_; }   // [Q(zeta):Q]
  unsigned real_degree() const { return phi_ / 2 ? phi_ / 2 : 1; }

  const std::vector<mpz_class>& reduction_row(unsigned k) const {
    return rows_.at(k - phi_);
  }

  Scalar zero() const;
  Scalar one() const;
  Scalar rational(const Rational& q) const;
  Scalar monomial(unsigned exponent, const Rational& coeff) const;  // coeff * zeta^e
  // 2cos(k*pi/L) as an exact field element
  Scalar two_cos_k(unsigned k) const;
  // -cos(pi/m) for a finite label m dividing L
  Scalar minus_cos_label(unsigned m) const;
  Scalar theta() const;  // 2cos(pi/L)

  // Coordinates of x in the power basis {theta^j : j < real_degree()}.
  std::vector<Rational> theta_coordinates(const Scalar& x) const;
  Scalar from_theta_coordinates(const std::vector<Rational>& coords) const;

 private:
  friend class Scalar;
  explicit CycloField(unsigned L) : L_(L), n_(2 * L) {
    cyclo_ = detail::cyclotomic_poly(n_);
    phi_ = static_cast<unsigned>(cyclo_.size() - 1);
    // rows_[k-phi] = zeta^k reduced, for k in [phi, 2n)
    rows_.reserve(2 * n_ - phi_);
    std::vector<mpz_class> row(phi_, mpz_class(0));
    for (unsigned j = 0; j < phi_; ++j) row[j] = -cyclo_[j];
    rows_.push_back(row);
    for (unsigned k = phi_ + 1; k < 2 * n_; ++k) {
      std::vector<mpz_class> next(phi_, mpz_class(0));
      const auto& prev = rows_.back();
      const mpz_class& top = prev[phi_ - 1];
      for (unsigned j = phi_; j-- > 1;) next[j] = prev[j - 1];
      if (top != 0) {
        const auto& r0 = rows_.front();
        for (unsigned j = 0; j < phi_; ++j) next[j] += top * r0[j];
      }
      rows_.push_back(std::move(next));
    }
  }

  void ensure_theta_solver() const;

  unsigned L_, n_, phi_;
  detail::ZPoly cyclo_;
  std::vector<std::vector<mpz_class>> rows_;

  // Lazy left-inverse sending a canonical zeta-vector to theta-power coords.
  mutable std::mutex solver_mu_;
  mutable bool solver_ready_ = false;
  mutable std::vector<std::vector<Rational>> theta_powers_;  // zeta-reps
  mutable std::vector<std::vector<Rational>> left_inverse_;  // real_degree x phi
};

class Scalar {
 public:
  Scalar() = default;
  Scalar(CycloField::Ptr f, std::vector<Rational> coeffs)
      : f_(std::move(f)), c_(std::move(coeffs)) {
    c_.resize(f_->degree());
  }

  const CycloField::Ptr& field() const { return f_; }
  const std::vector<Rational>& coeffs() const { return c_; }

  bool is_zero() const {
    for (const auto& q : c_)
      if (q != 0) return false;
    return true;
  }
  bool is_rational() const {
    for (std::size_t j = 1; j < c_.size(); ++j)
      if (c_[j] != 0) return false;
    return true;
  }
  Rational rational_value() const {
    if (!is_rational()) throw Error("scalar is irrational");
    return c_.empty() ? Rational(0) : c_[0];
  }

  Scalar operator-() const {
    std::vector<Rational> r(c_.size());
    for (std::size_t j = 0; j < c_.size(); ++j) r[j] = -c_[j];
    return Scalar(f_, std::move(r));
  }
  Scalar operator+(const Scalar& o) const {
    check_field(o);
    std::vector<Rational> r(c_.size());
    for (std::size_t j = 0; j < c_.size(); ++j) r[j] = c_[j] + o.c_[j];
    return Scalar(f_, std::move(r));
  }
  Scalar operator-(const Scalar& o) const {
    check_field(o);
    std::vector<Rational> r(c_.size());
    for (std::size_t j = 0; j < c_.size(); ++j) r[j] = c_[j] - o.c_[j];
    return Scalar(f_, std::move(r));
  }
  Scalar operator*(const Scalar& o) const {
    check_field(o);
    const unsigned phi = f_->degree();
    std::vector<Rational> prod(2 * phi - 1);
    for (unsigned a = 0; a < phi; ++a) {
      if (c_[a] == 0) continue;
      for (unsigned b = 0; b < phi; ++b) {
        if (o.c_[b] == 0) continue;
        prod[a + b] += c_[a] * o.c_[b];
      }
    }
    return reduced(f_, std::move(prod));
  }
  Scalar operator*(const Rational& q) const {
    std::vector<Rational> r(c_.size());
    for (std::size_t j = 0; j < c_.size(); ++j) r[j] = c_[j] * q;
    return Scalar(f_, std::move(r));
  }
  Scalar operator/(const Scalar& o) const { return *this * o.inverse(); }

  Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
  Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
  Scalar& operator*=(const Scalar& o) { return *this = *this * o; }

  bool operator==(const Scalar& o) const {
    if (f_.get() != o.f_.get()) return false;
    return c_ == o.c_;
  }
  bool operator!=(const Scalar& o) const { return !(*this == o); }

  Scalar inverse() const {
    if (is_zero()) throw Error("division by zero scalar");
    if (is_rational()) return f_->rational(Rational(1) / c_[0]);
    // extended Euclid in Q[x] against the cyclotomic modulus
    using QPoly = std::vector<Rational>;
    auto deg = [](const QPoly& p) -> long {
      for (std::size_t i = p.size(); i-- > 0;)
        if (p[i] != 0) return static_cast<long>(i);
      return -1;
    };
    const unsigned phi = f_->degree();
    QPoly r0(phi + 1), r1(c_.begin(), c_.end());
    for (unsigned j = 0; j <= phi; ++j) r0[j] = Rational(f_->cyclo_[j]);
    QPoly t0{Rational(0)}, t1{Rational(1)};
    while (deg(r1) > 0) {
      long d0 = deg(r0), d1 = deg(r1);
      QPoly q(static_cast<std::size_t>(d0 - d1 + 1));
      QPoly rem = r0;
      for (long k = d0 - d1; k >= 0; --k) {
        Rational c = rem[static_cast<std::size_t>(k + d1)] / r1[static_cast<std::size_t>(d1)];
        q[static_cast<std::size_t>(k)] = c;
        if (c == 0) continue;
        for (long j = 0; j <= d1; ++j)
          rem[static_cast<std::size_t>(k + j)] -= c * r1[static_cast<std::size_t>(j)];
      }
      while (!rem.empty() && rem.back() == 0) rem.pop_back();
      // t0 - q*t1
      QPoly tn(std::max(t0.size(), q.size() + t1.size()), Rational(0));
      for (std::size_t j = 0; j < t0.size(); ++j) tn[j] = t0[j];
      for (std::size_t a = 0; a < q.size(); ++a) {
        if (q[a] == 0) continue;
        for (std::size_t b = 0; b < t1.size(); ++b) tn[a + b] -= q[a] * t1[b];
      }
      r0 = std::move(r1);
      r1 = std::move(rem);
      t0 = std::move(t1);
      t1 = std::move(tn);
      // keep the remainder monic to tame coefficient growth
      long d = deg(r1);
      if (d >= 0) {
        Rational lead = r1[static_cast<std::size_t>(d)];
        if (lead != 1) {
          for (auto& x : r1) x /= lead;
          for (auto& x : t1) x /= lead;
        }
      }
    }
    if (deg(r1) != 0) throw Error("internal: scalar not invertible");
    Rational c = r1[0];
    std::vector<Rational> res(2 * phi - 1);
    for (std::size_t j = 0; j < t1.size() && j < res.size(); ++j) res[j] = t1[j] / c;
    return reduced(f_, std::move(res));
  }

  // Exact sign: 0 iff the canonical form is zero; otherwise decided by
  // refining a ball enclosure of sum_j c_j cos(j*pi/L) until 0 is excluded.
  int sign() const {
    if (is_zero()) return 0;
    if (is_rational()) return sgn(c_[0]);
    const unsigned L = f_->cos_order();
    for (mpfr_prec_t prec = 128; prec <= (mpfr_prec_t(1) << 20); prec *= 2) {
      detail::Ball acc(prec);
      mpfr_t pi_lo, pi_hi, a_lo, a_hi, c1, c2, w;
      mpfr_inits2(prec, pi_lo, pi_hi, a_lo, a_hi, c1, c2, w, (mpfr_ptr) nullptr);
      mpfr_const_pi(pi_lo, MPFR_RNDD);
      mpfr_const_pi(pi_hi, MPFR_RNDU);
      for (std::size_t j = 0; j < c_.size(); ++j) {
        if (c_[j] == 0) continue;
        if (j == 0) {
          mpfr_set_ui(c1, 1, MPFR_RNDN);
          mpfr_set_ui(c2, 1, MPFR_RNDN);
        } else {
          mpfr_mul_ui(a_lo, pi_lo, static_cast<unsigned long>(j), MPFR_RNDD);
          mpfr_div_ui(a_lo, a_lo, L, MPFR_RNDD);
          mpfr_mul_ui(a_hi, pi_hi, static_cast<unsigned long>(j), MPFR_RNDU);
          mpfr_div_ui(a_hi, a_hi, L, MPFR_RNDU);
          mpfr_cos(c1, a_lo, MPFR_RNDN);
          mpfr_cos(c2, a_hi, MPFR_RNDN);
          // pad by interval width: |cos'| <= 1
          mpfr_sub(w, a_hi, a_lo, MPFR_RNDU);
          if (mpfr_cmp(c1, c2) > 0) mpfr_swap(c1, c2);
          mpfr_sub(c1, c1, w, MPFR_RNDD);
          mpfr_add(c2, c2, w, MPFR_RNDU);
        }
        acc.add_scaled_interval(c_[j], c1, c2);
      }
      mpfr_clears(pi_lo, pi_hi, a_lo, a_hi, c1, c2, w, (mpfr_ptr) nullptr);
      auto s = acc.sign();
      if (s) return *s;
    }
    throw Error("internal: sign refinement exceeded precision cap");
  }

  bool is_positive() const { return sign() > 0; }
  bool is_negative() const { return sign() < 0; }

  double to_double() const {
    detail::Ball acc(64);
    double v = 0;
    (void)acc;
    const unsigned L = f_->cos_order();
    for (std::size_t j = 0; j < c_.size(); ++j) {
      if (c_[j] == 0) continue;
      v += c_[j].get_d() * std::cos(3.14159265358979323846 * double(j) / double(L));
    }
    return v;
  }

  std::size_t hash() const {
    std::size_t h = 1469598103934665603ull;
    auto mix = [&h](std::size_t v) {
      h ^= v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    };
    for (const auto& q : c_) {
      mix(mpz_fdiv_ui(q.get_num_mpz_t(), 1000000007ul));
      mix(mpz_fdiv_ui(q.get_den_mpz_t(), 998244353ul));
      mix(static_cast<std::size_t>(mpz_sgn(q.get_num_mpz_t()) + 1));
    }
    return h;
  }

  // Stable textual key for ordering and hashing containers of scalars.
  std::string key() const {
    std::string s;
    for (const auto& q : c_) {
      s += q.get_str();
      s += ',';
    }
    return s;
  }

  // Human-readable exact form as a cosine combination.
  std::string to_string() const {
    if (is_zero()) return "0";
    if (is_rational()) return c_[0].get_str();
    const unsigned L = f_->cos_order();
    std::string s;
    for (std::size_t j = 0; j < c_.size(); ++j) {
      if (c_[j] == 0) continue;
      Rational q = c_[j];
      if (!s.empty()) {
        s += (sgn(q) < 0) ? " - " : " + ";
        if (sgn(q) < 0) q = -q;
      }
      if (j == 0) {
        s += q.get_str();
      } else {
        if (q != 1) {
          s += q.get_str();
          s += "*";
        }
        s += "cos(" + std::to_string(j) + "pi/" + std::to_string(L) + ")";
      }
    }
    return s;
  }

  static Scalar reduced(const CycloField::Ptr& f, std::vector<Rational> prod) {
    const unsigned phi = f->degree();
    for (std::size_t k = prod.size(); k-- > phi;) {
      if (prod[k] == 0) continue;
      const auto& row = f->reduction_row(static_cast<unsigned>(k));
      for (unsigned j = 0; j < phi; ++j)
        if (row[j] != 0) prod[j] += prod[k] * Rational(row[j]);
      prod[k] = 0;
    }
    prod.resize(phi);
    return Scalar(f, std::move(prod));
  }

 private:
  void check_field(const Scalar& o) const {
    if (f_.get() != o.f_.get()) throw Error("scalar field mismatch");
  }

  CycloField::Ptr f_;
  std::vector<Rational> c_;
};

inline Scalar CycloField::zero() const {
  return Scalar(shared_from_this(), std::vector<Rational>(phi_));
}
inline Scalar CycloField::one() const { return rational(Rational(1)); }
inline Scalar CycloField::rational(const Rational& q) const {
  std::vector<Rational> c(phi_);
  c[0] = q;
  return Scalar(shared_from_this(), std::move(c));
}
inline Scalar CycloField::monomial(unsigned e, const Rational& coeff) const {
  e %= 2 * n_;
  std::vector<Rational> c(std::max(phi_, e + 1));
  c[e] = coeff;
  return Scalar::reduced(shared_from_this(), std::move(c));
}
inline Scalar CycloField::two_cos_k(unsigned k) const {
  k %= 2 * L_;  // cos(k pi/L) has period 2L in k
  if (k == 0) return rational(Rational(2));
  return monomial(k, Rational(1)) + monomial(n_ - k, Rational(1));
}
inline Scalar CycloField::minus_cos_label(unsigned m) const {
  if (m < 2 || L_ % m != 0) throw Error("label does not divide the field order");
  return two_cos_k(L_ / m) * Rational(-1, 2);
}
inline Scalar CycloField::theta() const { return two_cos_k(1); }

inline void CycloField::ensure_theta_solver() const {
  std::lock_guard<std::mutex> lock(solver_mu_);
  if (solver_ready_) return;
  const unsigned D = real_degree();
  // columns theta^j as canonical zeta-vectors
  theta_powers_.assign(D, {});
  Scalar th = theta();
  Scalar p = one();
  for (unsigned j = 0; j < D; ++j) {
    theta_powers_[j] = p.coeffs();
    p = p * th;
  }
  // row reduce [A | I] where A is phi x D with A[:,j] = theta^j
  const unsigned rows = phi_;
  std::vector<std::vector<Rational>> M(rows, std::vector<Rational>(D + rows));
  for (unsigned i = 0; i < rows; ++i) {
    for (unsigned j = 0; j < D; ++j) M[i][j] = theta_powers_[j][i];
    M[i][D + i] = 1;
  }
  unsigned r = 0;
  for (unsigned c = 0; c < D && r < rows; ++c) {
    unsigned piv = r;
    while (piv < rows && M[piv][c] == 0) ++piv;
    if (piv == rows) throw Error("internal: theta powers not independent");
    std::swap(M[piv], M[r]);
    Rational inv = Rational(1) / M[r][c];
    for (auto& x : M[r]) x *= inv;
    for (unsigned i = 0; i < rows; ++i) {
      if (i == r || M[i][c] == 0) continue;
      Rational f = M[i][c];
      for (unsigned j = c; j < D + rows; ++j) M[i][j] -= f * M[r][j];
    }
    ++r;
  }
  left_inverse_.assign(D, std::vector<Rational>(phi_));
  for (unsigned i = 0; i < D; ++i)
    for (unsigned j = 0; j < phi_; ++j) left_inverse_[i][j] = M[i][D + j];
  solver_ready_ = true;
}

inline std::vector<Rational> CycloField::theta_coordinates(const Scalar& x) const {
  ensure_theta_solver();
  const unsigned D = real_degree();
  std::vector<Rational> out(D);
  for (unsigned i = 0; i < D; ++i) {
    Rational acc(0);
    for (unsigned j = 0; j < phi_; ++j)
      if (x.coeffs()[j] != 0 && left_inverse_[i][j] != 0)
        acc += left_inverse_[i][j] * x.coeffs()[j];
    out[i] = acc;
  }
  // consistency: the coordinates must reproduce x exactly
  Scalar back = from_theta_coordinates(out);
  if (!(back == x)) throw Error("internal: scalar lies outside the real subfield");
  return out;
}

inline Scalar CycloField::from_theta_coordinates(const std::vector<Rational>& coords) const {
  Scalar th = theta();
  Scalar acc = zero();
  Scalar p = one();
  for (std::size_t j = 0; j < coords.size(); ++j) {
    if (coords[j] != 0) acc += p * coords[j];
    p = p * th;
  }
  return acc;
}

inline Scalar operator*(const Rational& q, const Scalar& s) { return s * q; }

}  // namespace coxkit
